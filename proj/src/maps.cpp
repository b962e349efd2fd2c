#include "wf/maps.hpp"

#include <cmath>

namespace wf {

CMat map_of_vector(const CMat& a, Dims d, const CVec& phi) {
    const int na = d.na, nb = d.nb;
    CMat y = CMat::Zero(nb, nb);
    for (int i = 0; i < na; ++i) {
        cd ci = std::conj(phi(i));
        if (ci == cd(0)) continue;
        for (int k = 0; k < na; ++k) y.noalias() += (ci * phi(k)) * a.block(i * nb, k * nb, nb, nb);
    }
    return y;
}

CMat transpose_map_of_vector(const CMat& a, Dims d, const CVec& chi) {
    const int na = d.na, nb = d.nb;
    CMat x(na, na);
    for (int i = 0; i < na; ++i)
        for (int k = 0; k < na; ++k) x(i, k) = chi.dot(a.block(i * nb, k * nb, nb, nb) * chi);
    return x;
}

CMat apply_map(const HermitianOp& a, const CMat& x) {
    const Dims& d = a.dims();
    if (x.rows() != d.na || x.cols() != d.na) throw DimensionMismatch("apply_map input must be na x na");
    CMat y = CMat::Zero(d.nb, d.nb);
    for (int i = 0; i < d.na; ++i)
        for (int k = 0; k < d.na; ++k) y += x(k, i) * a.mat().block(i * d.nb, k * d.nb, d.nb, d.nb);
    return y;
}

CMat apply_transpose_map(const HermitianOp& a, const CMat& y) {
    const Dims& d = a.dims();
    if (y.rows() != d.nb || y.cols() != d.nb)
        throw DimensionMismatch("apply_transpose_map input must be nb x nb");
    CMat x(d.na, d.na);
    for (int i = 0; i < d.na; ++i)
        for (int k = 0; k < d.na; ++k)
            x(i, k) = (a.mat().block(i * d.nb, k * d.nb, d.nb, d.nb).array() * y.transpose().array()).sum();
    return x;
}

HermitianOp spa_mixture(const HermitianOp& omega, double p) {
    HermitianOp w = omega.normalized_trace();
    return w * (1.0 - p) + HermitianOp::maximally_mixed(w.dims()) * p;
}

namespace {
double mixing_parameter(double lambda, int n) {
    if (lambda >= 0) return 0.0;
    return -n * lambda / (1.0 - n * lambda);
}
} // namespace

SpaResult spa(const HermitianOp& omega) {
    HermitianOp w = omega.normalized_trace();
    const int n = w.n();
    SpaResult r;
    r.lambda1 = w.min_eigenvalue();
    r.lambda2 = partial_transpose(w).min_eigenvalue();
    r.p1 = mixing_parameter(r.lambda1, n);
    r.p2 = mixing_parameter(r.lambda2, n);
    r.spa_of_omega_is_ppt = is_ppt(spa_mixture(w, r.p1), 1e-10);
    r.spa_of_pt_is_ppt = is_ppt(spa_mixture(partial_transpose(w), r.p2), 1e-10);
    if (std::abs(r.p1 - r.p2) <= 1e-10) r.spa_of_omega_is_ppt = r.spa_of_pt_is_ppt = true;
    return r;
}

} // namespace wf
