#pragma once

#include <array>
#include <vector>

#include "wf/hilbert.hpp"
#include "wf/rng.hpp"

namespace wf {

// f_A(phi, chi) = (phi (x) chi)^dagger A (phi (x) chi); unit vectors are not enforced.
double eval_form(const CMat& a, Dims d, const CVec& phi, const CVec& chi);
double eval_form(const HermitianOp& a, const ProductVector& p);
// f divided by |phi|^2 |chi|^2
double eval_normalized(const CMat& a, Dims d, const CVec& phi, const CVec& chi);

// Real tangent parametrization at base = (phi0, chi0):
// xi = j0 x, zeta = k0 y with x in R^{2na-2}, y in R^{2nb-2}.
// Columns come in pairs (v_l, i v_l) for an orthonormal completion v_l of phi0.
struct TangentFrame {
    CMat j0;
    CMat k0;
    ProductVector base;

    int dim_x() const { return static_cast<int>(j0.cols()); }
    int dim_y() const { return static_cast<int>(k0.cols()); }
    int dim() const { return dim_x() + dim_y(); }
};

// Completion from a Householder reflection of the base vectors (no randomness).
TangentFrame tangent_frame(const ProductVector& p);
// Completion from QR of [phi0 | random block].
TangentFrame tangent_frame(const ProductVector& p, Rng& rng);

RVec gradient(const CMat& a, Dims d, const TangentFrame& f);
RVec gradient(const HermitianOp& a, const TangentFrame& f);
// G with f_2(x,y) = z^T G z, z = (x, y).
RMat hessian(const CMat& a, Dims d, const TangentFrame& f);
RMat hessian(const HermitianOp& a, const TangentFrame& f);

// f(phi0 + xi, chi0 + zeta) = f0 + f1 + f2 + f3 + f4, split by total order in (x, y).
std::array<double, 5> taylor_terms(const HermitianOp& a, const TangentFrame& f, const RVec& x, const RVec& y);

enum class ZeroKind { Quadratic, Quartic };

struct Zero {
    ProductVector point;
    double value = 0;
    double gradient_norm = 0;
    RMat hessian;
    RVec hessian_eigenvalues;
    ZeroKind kind = ZeroKind::Quadratic;
    std::vector<RVec> hessian_kernel;
    TangentFrame frame;
    bool continuum = false;  // provenance tag: sampled from a continuum of zeros

    int kernel_dim() const { return static_cast<int>(hessian_kernel.size()); }
};

// Hessian cutoff at a point: tol.hess * max(largest eigenvalue, 1).
double hessian_cutoff(const RVec& eigenvalues, const Tolerances& tol);

Zero classify_zero(const HermitianOp& omega, const ProductVector& p, const Tolerances& tol = {});
Zero classify_zero(const HermitianOp& omega, const TangentFrame& frame, const Tolerances& tol = {});
// Classification with a prescribed Hessian kernel (e.g. from a known event), skipping the value checks.
Zero make_zero(const HermitianOp& omega, const TangentFrame& frame, std::vector<RVec> kernel);

} // namespace wf
