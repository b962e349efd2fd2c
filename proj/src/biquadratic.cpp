#include "wf/biquadratic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

#include "wf/maps.hpp"

namespace wf {

double eval_form(const CMat& a, Dims d, const CVec& phi, const CVec& chi) {
    if (phi.size() != d.na || chi.size() != d.nb) throw DimensionMismatch("product vector does not match dims");
    CVec psi = kron(phi, chi);
    return psi.dot(a * psi).real();
}

double eval_form(const HermitianOp& a, const ProductVector& p) { return eval_form(a.mat(), a.dims(), p.phi, p.chi); }

double eval_normalized(const CMat& a, Dims d, const CVec& phi, const CVec& chi) {
    return eval_form(a, d, phi, chi) / (phi.squaredNorm() * chi.squaredNorm());
}

namespace {

CMat pair_columns(const CMat& q) {
    // q holds the base vector in column 0 and its orthonormal completion after it
    const Eigen::Index n = q.rows();
    CMat j(n, 2 * (n - 1));
    const cd I(0, 1);
    for (Eigen::Index l = 1; l < n; ++l) {
        j.col(2 * (l - 1)) = q.col(l);
        j.col(2 * (l - 1) + 1) = I * q.col(l);
    }
    return j;
}

CMat householder_completion(const CVec& v) {
    CMat col = v;
    Eigen::HouseholderQR<CMat> qr(col);
    return qr.householderQ() * CMat::Identity(v.size(), v.size());
}

CMat random_completion(const CVec& v, Rng& rng) {
    CMat m(v.size(), v.size());
    m.col(0) = v;
    m.rightCols(v.size() - 1) = rng.cmat(static_cast<int>(v.size()), static_cast<int>(v.size() - 1));
    Eigen::HouseholderQR<CMat> qr(m);
    return qr.householderQ() * CMat::Identity(v.size(), v.size());
}

} // namespace

TangentFrame tangent_frame(const ProductVector& p) {
    return {pair_columns(householder_completion(p.phi)), pair_columns(householder_completion(p.chi)), p};
}

TangentFrame tangent_frame(const ProductVector& p, Rng& rng) {
    CMat qa = random_completion(p.phi, rng);
    CMat qb = random_completion(p.chi, rng);
    return {pair_columns(qa), pair_columns(qb), p};
}

RVec gradient(const CMat& a, Dims d, const TangentFrame& f) {
    const CVec& phi = f.base.phi;
    const CVec& chi = f.base.chi;
    CVec v = a * kron(phi, chi);
    CVec wa(d.na), wb = CVec::Zero(d.nb);
    for (int i = 0; i < d.na; ++i) {
        auto seg = v.segment(i * d.nb, d.nb);
        wa(i) = chi.dot(seg);
        wb += std::conj(phi(i)) * seg;
    }
    RVec g(f.dim());
    g.head(f.dim_x()) = 2.0 * (f.j0.adjoint() * wa).real();
    g.tail(f.dim_y()) = 2.0 * (f.k0.adjoint() * wb).real();
    return g;
}

RVec gradient(const HermitianOp& a, const TangentFrame& f) { return gradient(a.mat(), a.dims(), f); }

RMat hessian(const CMat& a, Dims d, const TangentFrame& f) {
    const CVec& phi = f.base.phi;
    const CVec& chi = f.base.chi;
    const int na = d.na, nb = d.nb;
    CMat ma = transpose_map_of_vector(a, d, chi);
    CMat mb = map_of_vector(a, d, phi);
    CMat c = CMat::Zero(nb, na);
    for (int k = 0; k < na; ++k)
        for (int i = 0; i < na; ++i) c.col(k) += std::conj(phi(i)) * (a.block(i * nb, k * nb, nb, nb) * chi);
    CVec r = a.transpose() * kron(phi, chi).conjugate();  // (psi0^dagger A)^T
    CMat dmat(na, nb);
    for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l) dmat(k, l) = r(k * nb + l);

    RMat gxx = (f.j0.adjoint() * ma * f.j0).real();
    RMat gyy = (f.k0.adjoint() * mb * f.k0).real();
    RMat gyx = (f.k0.adjoint() * c * f.j0 + f.k0.transpose() * dmat.transpose() * f.j0).real();

    const int dx = f.dim_x(), dy = f.dim_y();
    RMat g(dx + dy, dx + dy);
    g.topLeftCorner(dx, dx) = 0.5 * (gxx + gxx.transpose());
    g.bottomRightCorner(dy, dy) = 0.5 * (gyy + gyy.transpose());
    g.bottomLeftCorner(dy, dx) = gyx;
    g.topRightCorner(dx, dy) = gyx.transpose();
    return g;
}

RMat hessian(const HermitianOp& a, const TangentFrame& f) { return hessian(a.mat(), a.dims(), f); }

std::array<double, 5> taylor_terms(const HermitianOp& a, const TangentFrame& f, const RVec& x, const RVec& y) {
    const CMat& m = a.mat();
    const CVec& phi = f.base.phi;
    const CVec& chi = f.base.chi;
    CVec xi = f.j0 * x.cast<cd>();
    CVec zeta = f.k0 * y.cast<cd>();
    CVec p0 = kron(phi, chi), pa = kron(xi, chi), pb = kron(phi, zeta), pc = kron(xi, zeta);
    auto q = [&](const CVec& u, const CVec& v) { return u.dot(m * v); };
    std::array<double, 5> t{};
    t[0] = q(p0, p0).real();
    t[1] = 2.0 * (q(pa, p0) + q(pb, p0)).real();
    t[2] = q(pa, pa).real() + q(pb, pb).real() + 2.0 * (q(pb, pa) + q(p0, pc)).real();
    t[3] = 2.0 * (q(pb, pc) + q(pa, pc)).real();
    t[4] = q(pc, pc).real();
    return t;
}

double hessian_cutoff(const RVec& eigenvalues, const Tolerances& tol) {
    double top = eigenvalues.size() ? eigenvalues.maxCoeff() : 0.0;
    return tol.hess * std::max(top, 1.0);
}

Zero make_zero(const HermitianOp& omega, const TangentFrame& frame, std::vector<RVec> kernel) {
    Zero z;
    z.point = frame.base;
    z.frame = frame;
    z.value = eval_form(omega, frame.base);
    z.gradient_norm = gradient(omega, frame).norm();
    z.hessian = hessian(omega, frame);
    Eigen::SelfAdjointEigenSolver<RMat> es(z.hessian);
    z.hessian_eigenvalues = es.eigenvalues();
    z.hessian_kernel = std::move(kernel);
    z.kind = z.hessian_kernel.empty() ? ZeroKind::Quadratic : ZeroKind::Quartic;
    return z;
}

Zero classify_zero(const HermitianOp& omega, const TangentFrame& frame, const Tolerances& tol) {
    if (frame.base.phi.size() != omega.dims().na || frame.base.chi.size() != omega.dims().nb)
        throw DimensionMismatch("zero candidate does not match witness dims");
    Zero z = make_zero(omega, frame, {});
    if (std::abs(z.value) > tol.zero) throw NotAZero("form value " + std::to_string(z.value));
    if (z.gradient_norm > tol.grad) throw NotAZero("gradient norm " + std::to_string(z.gradient_norm));
    Eigen::SelfAdjointEigenSolver<RMat> es(z.hessian);
    const RVec& ev = es.eigenvalues();
    double cut = hessian_cutoff(ev, tol);
    if (ev(0) < -cut) throw NegativeHessian("smallest Hessian eigenvalue " + std::to_string(ev(0)));
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) <= cut) z.hessian_kernel.push_back(es.eigenvectors().col(i));
    z.kind = z.hessian_kernel.empty() ? ZeroKind::Quadratic : ZeroKind::Quartic;
    return z;
}

Zero classify_zero(const HermitianOp& omega, const ProductVector& p, const Tolerances& tol) {
    return classify_zero(omega, tangent_frame(p), tol);
}

} // namespace wf
