#pragma once

#include <utility>

#include "wf/hilbert.hpp"

namespace wf {

// Real symmetric witness on R^{2na} (x) R^{2nb}; coordinates of x are
// (Re phi, Im phi), likewise for y.
struct RealWitness {
    RMat matrix;
    Dims source_dims;

    Dims real_dims() const { return Dims(2 * source_dims.na, 2 * source_dims.nb); }
    // W = (U -V; V U) split along the real/imaginary halves of the first factor
    RMat u() const;
    RMat v() const;
};

// Partial transpose on a real matrix with the given block dims.
RMat real_partial_transpose(const RMat& w, Dims d);

// J x = x_re + i x_im for x of length 2n.
CVec complexify(const RVec& x);

// W = Re(Z + Z^P)/2 with Z = (J (x) K)^dagger Omega (J (x) K).
RealWitness to_real(const HermitianOp& omega);

// (x (x) y)^T W (x (x) y)
double g_form(const RealWitness& w, const RVec& x, const RVec& y);

// psi psi^dagger = W_r + W_i with forms (Re z)^2 and (Im z)^2, z = (phi (x) chi)^dagger psi.
std::pair<RealWitness, RealWitness> pure_state_split(const CVec& psi, Dims d);

} // namespace wf
