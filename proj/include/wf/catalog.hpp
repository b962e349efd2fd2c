#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wf/hilbert.hpp"
#include "wf/rng.hpp"

namespace wf {

struct CatalogEntry {
    std::string name;
    HermitianOp witness;
    std::vector<ProductVector> analytic_zeros;            // isolated zeros known in closed form
    std::function<ProductVector(Rng&)> continuum_sampler;  // empty when no continuum is known
    int quartic_kernel_dim = -1;                           // Hessian kernel dimension at the analytic zeros
};

// 9x9 matrix Omega_K(a, b, c; theta) in 3x3.
HermitianOp choi_lam_matrix(double a, double b, double c, double theta);
CatalogEntry choi_lam(double a = 1, double b = 0, double c = 1, double theta = 0);
// phi = e1 + e^{i alpha} e2 + e^{i beta} e3, chi = phi^*
ProductVector choi_lam_continuum_zero(double alpha, double beta);

// Members of the one-parameter family: theta = 0, 0 <= a <= 1, a+b+c = 2, bc = (1-a)^2.
// Returns (b, c) with b <= c, so that a = 1 gives the Choi-Lam point.
std::pair<double, double> ha_kye_bc(double a);
bool ha_kye_member(double a, double b, double c, double theta, double tol = 1e-12);

HermitianOp robertson_matrix();
CatalogEntry robertson();
// Zero of the Robertson witness built from phi and the free pair (chi1, chi2).
ProductVector robertson_continuum_zero(const CVec& phi, cd chi1, cd chi2);

} // namespace wf
