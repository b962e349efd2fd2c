#pragma once

#include <cstdint>
#include <vector>

#include "wf/hilbert.hpp"

namespace wf {

// Simplex spanned by the pure product states psi_i psi_i^dagger.
struct SimplexFace {
    Dims dims;
    std::vector<ProductVector> vertices;

    std::vector<HermitianOp> states() const;
    bool degenerate(double tol = 1e-10) const;  // vertices linearly dependent as operators
};

SimplexFace face_from_zeros(const std::vector<ProductVector>& zeros);

// Squared Hilbert-Schmidt edge lengths |rho_i - rho_j|^2.
RMat edge_factors(const std::vector<HermitianOp>& vertices);
double cm_volume(const std::vector<HermitianOp>& vertices);
double cm_volume(const SimplexFace& f);
double v_reg(int n, double s);

double center_distance(const std::vector<HermitianOp>& vertices);
double center_distance(const SimplexFace& f);
double r_m(Dims d);

struct ClosestState {
    HermitianOp rho_min;
    RVec weights;
    double d_min = 0;
    int rank = 0;
    bool interior = false;
};

// Point of the simplex closest to I/N (Hilbert-Schmidt), by an active-set
// solve of min w^T Q w over the probability simplex.
ClosestState closest_state(const std::vector<HermitianOp>& vertices, double weight_eps = 1e-10);
ClosestState closest_state(const SimplexFace& f, double weight_eps = 1e-10);

enum class ShapeObjective { MaxVolume, MinCenterDistance };

struct ShapeResult {
    SimplexFace face;  // transformed face
    double value = 0;  // V* or d_c*
    double ratio = 0;  // V*/V_reg(n, sqrt 2) or d_c*/R_m
    double initial = 0;
    bool converged = false;
    CMat va, vb;
};

// Local optimum over SL x SL (factors exp of traceless matrices), Nelder-Mead
// from the identity plus a few seeded restarts.
ShapeResult optimize_shape(const SimplexFace& f, ShapeObjective obj, std::uint64_t seed = 0, int restarts = 2,
                           int max_evals = 6000);

// sigma = p rho + (1-p) I/N with rho the face center: PPT, yet negative on the witness.
struct EntangledPpt {
    HermitianOp rho;
    HermitianOp sigma;
    double lambda = 0;  // smallest eigenvalue of rho and rho^P
    double p_max = 0;   // 1/(1 - N lambda)
    double p = 0;       // midpoint of (1, p_max]
    double sigma_min_eig = 0;
    double sigma_pt_min_eig = 0;
    double witness_value = 0;  // Tr(Omega sigma)
};

EntangledPpt entangled_ppt(const HermitianOp& omega, const SimplexFace& f);

} // namespace wf
