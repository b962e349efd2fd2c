#include "wf/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace wf {

Dims::Dims(int a, int b) : na(a), nb(b) {
    if (a < 2 || b < 2)
        throw DimensionMismatch("factor dimensions must be at least 2, got " + std::to_string(a) +
                                "x" + std::to_string(b));
}

CVec canonical_unit(const CVec& v) {
    double nrm = v.norm();
    if (!(nrm > 0)) throw DimensionMismatch("zero vector cannot be normalized");
    CVec u = v / nrm;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        double a = std::abs(u(i));
        if (a > 1e-12) {
            u *= std::conj(u(i)) / a;
            u(i) = a;
            break;
        }
    }
    return u;
}

ProductVector::ProductVector(const CVec& p, const CVec& c) : phi(canonical_unit(p)), chi(canonical_unit(c)) {}

double fidelity(const ProductVector& a, const ProductVector& b) {
    if (a.phi.size() != b.phi.size() || a.chi.size() != b.chi.size())
        throw DimensionMismatch("product vectors of different shape");
    return std::norm(a.phi.dot(b.phi)) * std::norm(a.chi.dot(b.chi));
}

double geodesic_distance(const ProductVector& a, const ProductVector& b) {
    double f = std::min(1.0, std::max(0.0, fidelity(a, b)));
    return std::acos(std::sqrt(f));
}

bool same_point(const ProductVector& a, const ProductVector& b, double fid_threshold) {
    return fidelity(a, b) >= fid_threshold;
}

CVec kron(const CVec& a, const CVec& b) {
    CVec r(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
    return r;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

CVec kron_product(const ProductVector& p) { return kron(p.phi, p.chi); }

HermitianOp::HermitianOp(Dims d, const CMat& m) : dims_(d) {
    if (m.rows() != d.n() || m.cols() != d.n())
        throw DimensionMismatch("operator is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                ", expected " + std::to_string(d.n()));
    double dev = (m - m.adjoint()).norm();
    if (dev > 1e-9 * std::max(1.0, m.norm()))
        throw NotHermitian("deviation " + std::to_string(dev));
    m_ = (m + m.adjoint()) * 0.5;
}

HermitianOp HermitianOp::zero(Dims d) { return {d, CMat::Zero(d.n(), d.n()), Raw{}}; }
HermitianOp HermitianOp::identity(Dims d) { return {d, CMat::Identity(d.n(), d.n()), Raw{}}; }
HermitianOp HermitianOp::maximally_mixed(Dims d) {
    return {d, CMat::Identity(d.n(), d.n()) / double(d.n()), Raw{}};
}
HermitianOp HermitianOp::projector(Dims d, const CVec& psi) {
    if (psi.size() != d.n()) throw DimensionMismatch("vector length does not match dims");
    CMat m = psi * psi.adjoint();
    return {d, (m + m.adjoint()) * 0.5, Raw{}};
}

HermitianOp HermitianOp::normalized_trace() const {
    double t = trace();
    if (std::abs(t) < 1e-300) throw DimensionMismatch("cannot normalize a traceless operator");
    return {dims_, m_ / t, Raw{}};
}

RVec HermitianOp::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMat> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double HermitianOp::min_eigenvalue() const { return eigenvalues()(0); }

HermitianOp HermitianOp::operator+(const HermitianOp& o) const {
    if (dims_ != o.dims_) throw DimensionMismatch("operator sum");
    return {dims_, m_ + o.m_, Raw{}};
}
HermitianOp HermitianOp::operator-(const HermitianOp& o) const {
    if (dims_ != o.dims_) throw DimensionMismatch("operator difference");
    return {dims_, m_ - o.m_, Raw{}};
}
HermitianOp HermitianOp::operator*(double s) const { return {dims_, m_ * s, Raw{}}; }
HermitianOp& HermitianOp::operator+=(const HermitianOp& o) {
    if (dims_ != o.dims_) throw DimensionMismatch("operator sum");
    m_ += o.m_;
    return *this;
}

double hs_inner(const HermitianOp& a, const HermitianOp& b) {
    if (a.dims() != b.dims()) throw DimensionMismatch("inner product");
    // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B
    return (a.mat().array() * b.mat().array().conjugate()).real().sum();
}

CMat partial_transpose(const CMat& a, Dims d) {
    const int na = d.na, nb = d.nb;
    CMat r(a.rows(), a.cols());
    for (int i = 0; i < na; ++i)
        for (int k = 0; k < na; ++k)
            r.block(i * nb, k * nb, nb, nb) = a.block(i * nb, k * nb, nb, nb).transpose();
    return r;
}

HermitianOp partial_transpose(const HermitianOp& a) {
    return HermitianOp(a.dims(), partial_transpose(a.mat(), a.dims()));
}

bool is_ppt(const HermitianOp& a, double tol) { return partial_transpose(a).min_eigenvalue() >= -tol; }

HermitianOp sl_transform(const HermitianOp& a, const CMat& va, const CMat& vb) {
    const Dims& d = a.dims();
    if (va.rows() != d.na || va.cols() != d.na || vb.rows() != d.nb || vb.cols() != d.nb)
        throw DimensionMismatch("transform factors do not match dims");
    for (const CMat* v : {&va, &vb}) {
        Eigen::JacobiSVD<CMat> svd(*v);
        const RVec& s = svd.singularValues();
        if (!(s(s.size() - 1) > 1e-12 * s(0))) throw SingularTransform("factor is numerically singular");
    }
    CMat v = kron(va, vb);
    return HermitianOp(d, v * a.mat() * v.adjoint());
}

RVec to_hvec(const CMat& a) {
    const int n = static_cast<int>(a.rows());
    RVec v(n * n);
    const double s2 = std::sqrt(2.0);
    for (int i = 0; i < n; ++i) v(i) = a(i, i).real();
    int k = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            v(k++) = s2 * a(i, j).real();
            v(k++) = s2 * a(i, j).imag();
        }
    return v;
}

CMat from_hvec(const RVec& v, int n) {
    if (v.size() != n * n) throw DimensionMismatch("coordinate vector has wrong length");
    CMat a = CMat::Zero(n, n);
    const double r2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) a(i, i) = v(i);
    int k = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            cd z(v(k) * r2, v(k + 1) * r2);
            a(i, j) = z;
            a(j, i) = std::conj(z);
            k += 2;
        }
    return a;
}

} // namespace wf
