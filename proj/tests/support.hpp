#pragma once

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "wf/hilbert.hpp"
#include "wf/rng.hpp"
#include "wf/zerofinder.hpp"

namespace wft {

using namespace wf;

inline CMat random_hermitian(int n, Rng& rng) {
    CMat g = rng.cmat(n, n);
    return 0.5 * (g + g.adjoint());
}

inline HermitianOp random_op(Dims d, Rng& rng) { return HermitianOp(d, random_hermitian(d.n(), rng)); }

// random separable state: mixture of pure product states
inline HermitianOp random_separable(Dims d, Rng& rng, int terms = 5) {
    HermitianOp s = HermitianOp::zero(d);
    for (int i = 0; i < terms; ++i) s += HermitianOp::projector(d, kron_product(random_product_vector(d, rng))) * rng.uniform();
    return s.normalized_trace();
}

// entry-by-entry partial transpose written out from the index formula
inline CMat naive_partial_transpose(const CMat& a, Dims d) {
    CMat r(d.n(), d.n());
    for (int i = 0; i < d.na; ++i)
        for (int j = 0; j < d.nb; ++j)
            for (int k = 0; k < d.na; ++k)
                for (int l = 0; l < d.nb; ++l) r(i * d.nb + j, k * d.nb + l) = a(i * d.nb + l, k * d.nb + j);
    return r;
}

inline double min_eig(const CMat& a) {
    return Eigen::SelfAdjointEigenSolver<CMat>(a, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

inline CVec unit_vec(int n, int i) {
    CVec v = CVec::Zero(n);
    v(i) = 1;
    return v;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace wft
