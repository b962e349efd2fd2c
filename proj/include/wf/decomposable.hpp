#pragma once

#include <cstdint>
#include <vector>

#include "wf/hilbert.hpp"
#include "wf/rng.hpp"

namespace wf {

// psi psi^dagger; zeros are the product vectors orthogonal to psi.
HermitianOp pure_state_witness(const CVec& psi, Dims d);

struct DecompWitness {
    HermitianOp rho;
    HermitianOp sigma;
    HermitianOp witness;  // rho + sigma^P, trace one
    int d1 = 0;           // dim of the complement of the zeros
    int d2 = 0;           // same for the partial conjugates
};

// Orthonormal basis (columns) of the orthogonal complement of span{vectors}.
CMat complement_basis(const std::vector<CVec>& vectors, int n, double tol = 1e-10);

// rho = P X X^dagger P, sigma = P~ Y Y^dagger P~ with Gaussian X, Y of full rank.
DecompWitness with_prescribed_zeros(const std::vector<ProductVector>& zs, Dims d, Rng& rng);

// Super-projectors on the real space of Hermitian operators, in to_hvec coordinates.
struct OverlapProjectors {
    RMat p;   // X -> P X P
    RMat pt;  // X -> (P~ X^P P~)^P
    RMat o;   // projector onto the intersection of both ranges
    int d1 = 0, d2 = 0;
    int rank_p = 0, rank_pt = 0, rank_o = 0;

    // dimension of the set of unnormalized rho + sigma^P having the zeros
    int decomposable_dim() const { return rank_p + rank_pt - rank_o; }
};

OverlapProjectors overlap_projector(const std::vector<ProductVector>& zs, Dims d);

struct PartialDecomposition {
    HermitianOp rho1;
    HermitianOp sigma1;     // rho1 + sigma1^P approximates omega - O omega
    HermitianOp remainder;  // O omega, left undecomposed
    double split_residual = 0;  // |omega - O omega - rho1 - sigma1^P| / |omega|
    double rho1_min_eig = 0;
    double sigma1_min_eig = 0;
    int rank_o = 0;

    // true only when nothing is left over and both parts are positive
    bool decomposed(double tol = 1e-8) const;
};

PartialDecomposition partial_decompose(const HermitianOp& omega, const std::vector<ProductVector>& zs);

// Largest violation of the matrix-element identities a true split omega = rho + sigma^P
// must satisfy at the zeros zs; zero for a valid pair.
double decomposition_residual(const HermitianOp& omega, const HermitianOp& rho, const HermitianOp& sigma,
                              const std::vector<ProductVector>& zs);

// count product vectors such that both they and their partial conjugates are
// linearly dependent (smallest singular value <= 1e-8 relative).
std::vector<ProductVector> dependent_product_vectors(int count, Dims d, std::uint64_t seed, int max_starts = 20);

// 2(na + nb - d1 - d2 - 2), the bound on the Hessian kernel at any zero; may be negative.
int hessian_kernel_bound(Dims d, int d1, int d2);

// Smallest singular value of the matrix with columns kron_product(p), relative to the largest.
double relative_smallest_singular(const std::vector<ProductVector>& pts, bool partial_conjugate);

} // namespace wf
