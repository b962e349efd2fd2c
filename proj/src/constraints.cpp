#include "wf/constraints.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

namespace wf {

int m2_count(Dims d) { return 2 * (d.na + d.nb) - 3; }

int m4_count(Dims d, int k) { return 2 * k * (d.na + d.nb - 2) + k * (k + 1) * (k + 2) / 6; }

namespace {

CMat outer(const CVec& a, const CVec& b) { return a * b.adjoint(); }
CMat sym(const CVec& a, const CVec& b) { return a * b.adjoint() + b * a.adjoint(); }

HermitianOp row(Dims d, const CMat& a, const CMat& b) { return HermitianOp(d, kron(a, b)); }

Dims dims_of(const Zero& z) { return z.point.dims(); }

void split_kernel_vector(const Zero& z, const RVec& v, CVec& xi, CVec& zeta) {
    const TangentFrame& f = z.frame;
    xi = f.j0 * v.head(f.dim_x()).cast<cd>();
    zeta = f.k0 * v.tail(f.dim_y()).cast<cd>();
}

} // namespace

std::vector<HermitianOp> t01_rows(const Zero& z) {
    const Dims d = dims_of(z);
    const TangentFrame& f = z.frame;
    const CVec& phi = f.base.phi;
    const CVec& chi = f.base.chi;
    CMat pp = outer(phi, phi), cc = outer(chi, chi);
    std::vector<HermitianOp> rows;
    rows.reserve(m2_count(d));
    rows.push_back(row(d, pp, cc));
    for (int m = 0; m < f.dim_x(); ++m) rows.push_back(row(d, sym(f.j0.col(m), phi), cc));
    for (int n = 0; n < f.dim_y(); ++n) rows.push_back(row(d, pp, sym(f.k0.col(n), chi)));
    return rows;
}

std::vector<HermitianOp> t2_rows(const Zero& z) {
    if (z.hessian_kernel.empty()) throw NotQuartic("zero has no Hessian kernel");
    const Dims d = dims_of(z);
    const TangentFrame& f = z.frame;
    const CVec& phi = f.base.phi;
    const CVec& chi = f.base.chi;
    CMat pp = outer(phi, phi), cc = outer(chi, chi);
    std::vector<HermitianOp> rows;
    for (const RVec& v : z.hessian_kernel) {
        CVec xi, zeta;
        split_kernel_vector(z, v, xi, zeta);
        CMat zc = sym(zeta, chi), xp = sym(xi, phi);
        for (int m = 0; m < f.dim_x(); ++m) {
            const CVec& jm = f.j0.col(m);
            rows.push_back(HermitianOp(d, kron(sym(xi, jm), cc) + kron(sym(phi, jm), zc)));
        }
        for (int n = 0; n < f.dim_y(); ++n) {
            const CVec& kn = f.k0.col(n);
            rows.push_back(HermitianOp(d, kron(pp, sym(zeta, kn)) + kron(xp, sym(chi, kn))));
        }
    }
    return rows;
}

std::vector<HermitianOp> t3_rows(const Zero& z) {
    if (z.hessian_kernel.empty()) throw NotQuartic("zero has no Hessian kernel");
    const Dims d = dims_of(z);
    const CVec& phi = z.frame.base.phi;
    const CVec& chi = z.frame.base.chi;
    const int k = z.kernel_dim();
    std::vector<CVec> xi(k), zeta(k);
    for (int i = 0; i < k; ++i) split_kernel_vector(z, z.hessian_kernel[i], xi[i], zeta[i]);
    // cubic term coefficient for the ordered triple (a, b, c)
    auto h = [&](int a, int b, int c) {
        return CMat(kron(sym(xi[a], phi), CMat(zeta[b] * zeta[c].adjoint())) +
                    kron(CMat(xi[a] * xi[b].adjoint()), sym(zeta[c], chi)));
    };
    std::vector<HermitianOp> rows;
    for (int l = 0; l < k; ++l)
        for (int m = l; m < k; ++m)
            for (int n = m; n < k; ++n) {
                std::array<int, 3> idx{l, m, n};
                CMat acc = CMat::Zero(d.n(), d.n());
                int count = 0;
                do {
                    acc += h(idx[0], idx[1], idx[2]);
                    ++count;
                } while (std::next_permutation(idx.begin(), idx.end()));
                // each distinct ordering of the multiset once, which is the full symmetrization
                acc /= double(count);
                rows.push_back(HermitianOp(d, 0.5 * (acc + acc.adjoint())));
            }
    return rows;
}

RMat ConstraintSystem::matrix() const {
    const int n2 = dims.n() * dims.n();
    RMat m(rows.size(), n2);
    for (size_t i = 0; i < rows.size(); ++i) m.row(i) = to_hvec(rows[i].mat()).transpose();
    return m;
}

double ConstraintSystem::residual(const HermitianOp& b) const {
    double worst = 0;
    for (const auto& e : rows) {
        double nrm = e.norm();
        if (nrm > 0) worst = std::max(worst, std::abs(hs_inner(e, b)) / nrm);
    }
    return worst;
}

HermitianOp ConstraintSystem::project_to_kernel(const HermitianOp& b) const {
    HermitianOp out = HermitianOp::zero(dims);
    for (const auto& k : kernel_basis) out += k * hs_inner(k, b);
    return out;
}

ConstraintSystem solve_rows(Dims d, std::vector<HermitianOp> rows, double svd_tol) {
    ConstraintSystem cs;
    cs.dims = d;
    cs.rows = std::move(rows);
    const int n = d.n(), n2 = n * n;
    RMat m(cs.rows.size(), n2);
    Eigen::Index used = 0;
    for (const auto& e : cs.rows) {
        RVec v = to_hvec(e.mat());
        double nrm = v.norm();
        if (nrm < 1e-14) continue;
        m.row(used++) = v.transpose() / nrm;
    }
    m.conservativeResize(used, n2);
    if (used == 0) {
        cs.rank = 0;
        cs.spectral_gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n2; ++i) {
            RVec e = RVec::Zero(n2);
            e(i) = 1;
            cs.kernel_basis.push_back(HermitianOp(d, from_hvec(e, n)));
        }
        return cs;
    }
    Eigen::BDCSVD<RMat> svd(m, Eigen::ComputeFullV);
    cs.singular_values = svd.singularValues();
    const RVec& s = cs.singular_values;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > svd_tol * s(0)) ++rank;
    cs.rank = rank;
    if (rank < s.size() && s(rank) > 0)
        cs.spectral_gap = s(rank - 1) / s(rank);
    else
        cs.spectral_gap = std::numeric_limits<double>::infinity();
    const RMat& v = svd.matrixV();
    for (int i = rank; i < n2; ++i) cs.kernel_basis.push_back(HermitianOp(d, from_hvec(v.col(i), n)));
    return cs;
}

ConstraintSystem assemble_U(Dims d, const std::vector<Zero>& zeros, bool quartic, double svd_tol) {
    std::vector<HermitianOp> rows;
    for (const Zero& z : zeros) {
        if (z.point.dims() != d) throw DimensionMismatch("zero does not match dims");
        auto r = t01_rows(z);
        rows.insert(rows.end(), r.begin(), r.end());
        if (quartic && z.kind == ZeroKind::Quartic) {
            auto r2 = t2_rows(z);
            auto r3 = t3_rows(z);
            rows.insert(rows.end(), r2.begin(), r2.end());
            rows.insert(rows.end(), r3.begin(), r3.end());
        }
    }
    return solve_rows(d, std::move(rows), svd_tol);
}

ConstraintSystem assemble_U(const ZeroSet& zs, Dims d, bool quartic, double svd_tol) {
    return assemble_U(d, zs.all(), quartic, svd_tol);
}

ConstraintSystem assemble_from_points(Dims d, const std::vector<ProductVector>& pts, double svd_tol) {
    std::vector<Zero> zeros;
    for (const auto& p : pts) {
        Zero z;
        z.point = p;
        z.frame = tangent_frame(p);
        zeros.push_back(std::move(z));
    }
    return assemble_U(d, zeros, false, svd_tol);
}

void write_constraint_matrix(const std::string& path, const ConstraintSystem& cs) {
    RMat m = cs.matrix();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path);
    auto put_u64 = [&](std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        out.write(reinterpret_cast<const char*>(b), 8);
    };
    out.write("WFCMAT01", 8);
    put_u64(static_cast<std::uint64_t>(m.rows()));
    put_u64(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double x = m(i, j);
            std::uint64_t bits;
            std::memcpy(&bits, &x, 8);
            put_u64(bits);
        }
}

RMat read_constraint_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, "WFCMAT01", 8) != 0) throw ParseError("bad constraint matrix header");
    auto get_u64 = [&]() {
        unsigned char b[8];
        in.read(reinterpret_cast<char*>(b), 8);
        if (!in) throw ParseError("truncated constraint matrix");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
        return v;
    };
    std::uint64_t r = get_u64(), c = get_u64();
    RMat m(r, c);
    for (std::uint64_t i = 0; i < r; ++i)
        for (std::uint64_t j = 0; j < c; ++j) {
            std::uint64_t bits = get_u64();
            double x;
            std::memcpy(&x, &bits, 8);
            m(i, j) = x;
        }
    return m;
}

} // namespace wf
