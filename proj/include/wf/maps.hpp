#pragma once

#include "wf/hilbert.hpp"

namespace wf {

// L_A X : Y_{jl} = sum_{ik} A_{ij;kl} X_{ki}   (na x na -> nb x nb)
CMat apply_map(const HermitianOp& a, const CMat& x);
// L_A^T Y : X_{ik} = sum_{jl} A_{ij;kl} Y_{lj} (nb x nb -> na x na)
CMat apply_transpose_map(const HermitianOp& a, const CMat& y);

// Fast paths for rank one arguments on a raw matrix:
// (phi (x) I_b)^dagger A (phi (x) I_b) and (I_a (x) chi)^dagger A (I_a (x) chi).
CMat map_of_vector(const CMat& a, Dims d, const CVec& phi);
CMat transpose_map_of_vector(const CMat& a, Dims d, const CVec& chi);

struct SpaResult {
    double p1 = 0;
    double p2 = 0;
    double lambda1 = 0;
    double lambda2 = 0;
    bool spa_of_omega_is_ppt = false;
    bool spa_of_pt_is_ppt = false;
    std::string p0_status = "requires separability oracle";
};

// Sigma(p) = (1-p) Omega + (p/N) I for trace-normalized Omega.
HermitianOp spa_mixture(const HermitianOp& omega, double p);
SpaResult spa(const HermitianOp& omega);

} // namespace wf
