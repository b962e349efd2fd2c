#include "wf/decomposable.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace wf {

HermitianOp pure_state_witness(const CVec& psi, Dims d) {
    if (psi.size() != d.n()) throw DimensionMismatch("psi length must be na*nb");
    double nrm = psi.norm();
    if (!(nrm > 0)) throw DimensionMismatch("psi must be nonzero");
    return HermitianOp::projector(d, psi / nrm);
}

CMat complement_basis(const std::vector<CVec>& vectors, int n, double tol) {
    if (vectors.empty()) return CMat::Identity(n, n);
    CMat z(n, vectors.size());
    for (size_t i = 0; i < vectors.size(); ++i) z.col(i) = vectors[i];
    Eigen::JacobiSVD<CMat> svd(z, Eigen::ComputeFullU);
    const RVec& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return svd.matrixU().rightCols(n - r);
}

namespace {

std::vector<CVec> kron_columns(const std::vector<ProductVector>& zs, bool conj) {
    std::vector<CVec> v;
    for (const auto& z : zs) v.push_back(kron_product(conj ? z.partial_conjugate() : z));
    return v;
}

CMat gram(const CMat& b, Rng& rng) {
    CMat x = rng.cmat(static_cast<int>(b.cols()), static_cast<int>(b.cols()));
    CMat u = b * x;
    return u * u.adjoint();
}

// Super-operator matrix of X -> f(X) in to_hvec coordinates.
template <class F>
RMat super_matrix(int n, F f) {
    const int m = n * n;
    RMat s(m, m);
    for (int k = 0; k < m; ++k) {
        RVec e = RVec::Zero(m);
        e(k) = 1;
        s.col(k) = to_hvec(f(from_hvec(e, n)));
    }
    return s;
}

// Orthonormal basis of the eigenvalue-one space of a symmetric projector.
RMat range_basis(const RMat& p) {
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (p + p.transpose()));
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 0.5) idx.push_back(static_cast<int>(i));
    RMat b(p.rows(), idx.size());
    for (size_t j = 0; j < idx.size(); ++j) b.col(j) = es.eigenvectors().col(idx[j]);
    return b;
}

} // namespace

DecompWitness with_prescribed_zeros(const std::vector<ProductVector>& zs, Dims d, Rng& rng) {
    const int n = d.n();
    for (const auto& z : zs)
        if (z.dims() != d) throw DimensionMismatch("zero does not match dims");
    CMat b1 = complement_basis(kron_columns(zs, false), n);
    CMat b2 = complement_basis(kron_columns(zs, true), n);
    if (b1.cols() == 0 || b2.cols() == 0) throw TooManyZeros("prescribed zeros span the whole space");
    DecompWitness w;
    w.d1 = static_cast<int>(b1.cols());
    w.d2 = static_cast<int>(b2.cols());
    w.rho = HermitianOp(d, gram(b1, rng));
    w.sigma = HermitianOp(d, gram(b2, rng));
    double tr = w.rho.trace() + w.sigma.trace();
    w.rho = w.rho * (1.0 / tr);
    w.sigma = w.sigma * (1.0 / tr);
    w.witness = w.rho + partial_transpose(w.sigma);
    return w;
}

OverlapProjectors overlap_projector(const std::vector<ProductVector>& zs, Dims d) {
    const int n = d.n();
    CMat b1 = complement_basis(kron_columns(zs, false), n);
    CMat b2 = complement_basis(kron_columns(zs, true), n);
    CMat p = b1 * b1.adjoint(), pt = b2 * b2.adjoint();
    OverlapProjectors r;
    r.d1 = static_cast<int>(b1.cols());
    r.d2 = static_cast<int>(b2.cols());
    r.p = super_matrix(n, [&](const CMat& x) { return CMat(p * x * p); });
    r.pt = super_matrix(n, [&](const CMat& x) {
        return partial_transpose(CMat(pt * partial_transpose(x, d) * pt), d);
    });
    r.rank_p = static_cast<int>(std::lround(r.p.trace()));
    r.rank_pt = static_cast<int>(std::lround(r.pt.trace()));
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (r.p + r.pt + (r.p + r.pt).transpose()));
    r.o = RMat::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - 2.0) < 1e-8) {
            r.o += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
            ++r.rank_o;
        }
    return r;
}

bool PartialDecomposition::decomposed(double tol) const {
    return rank_o == 0 && split_residual <= tol && rho1_min_eig >= -tol && sigma1_min_eig >= -tol;
}

PartialDecomposition partial_decompose(const HermitianOp& omega, const std::vector<ProductVector>& zs) {
    const Dims d = omega.dims();
    const int n = d.n();
    OverlapProjectors op = overlap_projector(zs, d);
    RVec w = to_hvec(omega.mat());
    RVec ow = op.o * w;
    RVec rest = w - ow;
    RMat b1 = range_basis(op.p - op.o), b2 = range_basis(op.pt - op.o);
    RMat m(w.size(), b1.cols() + b2.cols());
    m << b1, b2;
    PartialDecomposition r;
    r.rank_o = op.rank_o;
    RVec c = m.cols() ? RVec(m.completeOrthogonalDecomposition().solve(rest)) : RVec(RVec::Zero(0));
    RVec rho1 = b1 * c.head(b1.cols());
    RVec sig1p = b2 * c.tail(b2.cols());
    r.rho1 = HermitianOp(d, from_hvec(rho1, n));
    r.sigma1 = partial_transpose(HermitianOp(d, from_hvec(sig1p, n)));
    r.remainder = HermitianOp(d, from_hvec(ow, n));
    r.split_residual = (rest - rho1 - sig1p).norm() / std::max(w.norm(), 1e-300);
    r.rho1_min_eig = r.rho1.min_eigenvalue();
    r.sigma1_min_eig = r.sigma1.min_eigenvalue();
    return r;
}

double decomposition_residual(const HermitianOp& omega, const HermitianOp& rho, const HermitianOp& sigma,
                              const std::vector<ProductVector>& zs) {
    const Dims d = omega.dims();
    const CMat dr = omega.mat() - rho.mat();
    const CMat ds = partial_transpose(omega.mat(), d) - sigma.mat();
    double worst = 0;
    for (const auto& z : zs) {
        const CVec chic = z.chi.conjugate();
        for (int k = 0; k < d.na; ++k)
            for (int l = 0; l < d.nb; ++l) {
                CVec ek = CVec::Zero(d.na), el = CVec::Zero(d.nb);
                ek(k) = 1;
                el(l) = 1;
                CVec right = kron(z.phi, el);
                worst = std::max(worst, std::abs(kron(ek, z.chi).dot(dr * right)));
                worst = std::max(worst, std::abs(kron(ek, chic).dot(ds * right)));
            }
    }
    return worst;
}

int hessian_kernel_bound(Dims d, int d1, int d2) { return 2 * (d.na + d.nb - d1 - d2 - 2); }

double relative_smallest_singular(const std::vector<ProductVector>& pts, bool partial_conjugate) {
    if (pts.empty()) return 0;
    auto cols = kron_columns(pts, partial_conjugate);
    CMat m(cols[0].size(), cols.size());
    for (size_t i = 0; i < cols.size(); ++i) m.col(i) = cols[i];
    RVec s = Eigen::JacobiSVD<CMat>(m).singularValues();
    if (static_cast<Eigen::Index>(cols.size()) > m.rows()) return 0;
    return s(s.size() - 1) / s(0);
}

namespace {

struct DepState {
    std::vector<CVec> phi, chi;
    CVec c, dd;
};

CVec smallest_right_singular(const std::vector<CVec>& cols) {
    CMat m(cols[0].size(), cols.size());
    for (size_t i = 0; i < cols.size(); ++i) m.col(i) = cols[i];
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
    return svd.matrixV().col(cols.size() - 1);
}

// Residual [sum c_i phi_i (x) chi_i ; sum d_i phi_i (x) chi_i^*] plus the two
// normalizations of c and d, stacked as reals.
RVec dep_residual(const DepState& s, Dims d) {
    const int n = d.n(), k = static_cast<int>(s.phi.size());
    CVec r1 = CVec::Zero(n), r2 = CVec::Zero(n);
    for (int i = 0; i < k; ++i) {
        r1 += s.c(i) * kron(s.phi[i], s.chi[i]);
        r2 += s.dd(i) * kron(s.phi[i], CVec(s.chi[i].conjugate()));
    }
    RVec r(4 * n + 2);
    r << r1.real(), r1.imag(), r2.real(), r2.imag(), s.c.squaredNorm() - 1, s.dd.squaredNorm() - 1;
    return r;
}

RMat dep_jacobian(const DepState& s, Dims d) {
    const int n = d.n(), k = static_cast<int>(s.phi.size());
    const int per = 2 * (d.na + d.nb);
    RMat jac = RMat::Zero(4 * n + 2, k * per + 4 * k);
    const cd I(0, 1);
    auto put = [&](int col, const CVec& g1, const CVec& g2) {
        jac.col(col).segment(0, n) = g1.real();
        jac.col(col).segment(n, n) = g1.imag();
        jac.col(col).segment(2 * n, n) = g2.real();
        jac.col(col).segment(3 * n, n) = g2.imag();
    };
    for (int i = 0; i < k; ++i) {
        const CVec chic = s.chi[i].conjugate();
        int base = i * per;
        for (int a = 0; a < d.na; ++a) {
            CVec e = CVec::Zero(d.na);
            e(a) = 1;
            CVec u1 = s.c(i) * kron(e, s.chi[i]), u2 = s.dd(i) * kron(e, chic);
            put(base + 2 * a, u1, u2);
            put(base + 2 * a + 1, I * u1, I * u2);
        }
        base += 2 * d.na;
        for (int b = 0; b < d.nb; ++b) {
            CVec e = CVec::Zero(d.nb);
            e(b) = 1;
            CVec u1 = s.c(i) * kron(s.phi[i], e), u2 = s.dd(i) * kron(s.phi[i], e);
            put(base + 2 * b, u1, u2);
            put(base + 2 * b + 1, I * u1, -I * u2);
        }
        const int cc = k * per + 2 * i, dc = k * per + 2 * k + 2 * i;
        CVec psi = kron(s.phi[i], s.chi[i]), psit = kron(s.phi[i], chic);
        CVec zero = CVec::Zero(n);
        put(cc, psi, zero);
        put(cc + 1, I * psi, zero);
        put(dc, zero, psit);
        put(dc + 1, zero, I * psit);
        jac(4 * n, cc) = 2 * s.c(i).real();
        jac(4 * n, cc + 1) = 2 * s.c(i).imag();
        jac(4 * n + 1, dc) = 2 * s.dd(i).real();
        jac(4 * n + 1, dc + 1) = 2 * s.dd(i).imag();
    }
    return jac;
}

void dep_step(DepState& s, const RVec& x, Dims d) {
    const int k = static_cast<int>(s.phi.size()), per = 2 * (d.na + d.nb);
    const cd I(0, 1);
    for (int i = 0; i < k; ++i) {
        int base = i * per;
        for (int a = 0; a < d.na; ++a) s.phi[i](a) += x(base + 2 * a) + I * x(base + 2 * a + 1);
        base += 2 * d.na;
        for (int b = 0; b < d.nb; ++b) s.chi[i](b) += x(base + 2 * b) + I * x(base + 2 * b + 1);
        s.c(i) += x(k * per + 2 * i) + I * x(k * per + 2 * i + 1);
        s.dd(i) += x(k * per + 2 * k + 2 * i) + I * x(k * per + 2 * k + 2 * i + 1);
    }
}

} // namespace

std::vector<ProductVector> dependent_product_vectors(int count, Dims d, std::uint64_t seed, int max_starts) {
    if (count < 2 || count > d.n()) throw DimensionMismatch("count must lie in [2, N]");
    for (int start = 0; start < max_starts; ++start) {
        Rng rng(seed, "dependent", static_cast<std::uint64_t>(start));
        DepState s;
        for (int i = 0; i < count; ++i) {
            s.phi.push_back(rng.cvec(d.na).normalized());
            s.chi.push_back(rng.cvec(d.nb).normalized());
        }
        std::vector<CVec> cols, tcols;
        for (int i = 0; i < count; ++i) {
            cols.push_back(kron(s.phi[i], s.chi[i]));
            tcols.push_back(kron(s.phi[i], CVec(s.chi[i].conjugate())));
        }
        s.c = smallest_right_singular(cols);
        s.dd = smallest_right_singular(tcols);
        for (int it = 0; it < 200; ++it) {
            RVec r = dep_residual(s, d);
            if (r.norm() < 1e-14) break;
            RMat jac = dep_jacobian(s, d);
            RVec x = jac.completeOrthogonalDecomposition().solve(-r);
            double step = x.norm();
            if (step > 0.5) x *= 0.5 / step;
            dep_step(s, x, d);
            // keep factors away from zero; the relations are invariant under rescaling
            for (int i = 0; i < count; ++i) {
                double a = s.phi[i].norm(), b = s.chi[i].norm();
                s.phi[i] /= a;
                s.chi[i] /= b;
                s.c(i) *= a * b;
                s.dd(i) *= a * b;
            }
            double cn = s.c.norm(), dn = s.dd.norm();
            s.c /= cn;
            s.dd /= dn;
        }
        std::vector<ProductVector> pts;
        for (int i = 0; i < count; ++i) pts.emplace_back(s.phi[i], s.chi[i]);
        if (relative_smallest_singular(pts, false) > 1e-8 || relative_smallest_singular(pts, true) > 1e-8) continue;
        // reject trivial dependencies: repeated vectors or relations that skip some vectors
        bool ok = s.c.cwiseAbs().minCoeff() > 1e-4 * s.c.cwiseAbs().maxCoeff() &&
                  s.dd.cwiseAbs().minCoeff() > 1e-4 * s.dd.cwiseAbs().maxCoeff();
        for (int i = 0; i < count && ok; ++i)
            for (int j = 0; j < i && ok; ++j) ok = fidelity(pts[i], pts[j]) < 0.99;
        if (ok) return pts;
    }
    throw ConvergenceFailure("no nontrivially dependent product vectors found");
}

} // namespace wf
