#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "wf/biquadratic.hpp"

namespace wf {

// Smallest eigenvalue of L_A(phi phi^dagger) / |phi|^2.
double min_eig_map(const HermitianOp& a, const CVec& phi);

struct LocalMinOptions {
    int max_alternations = 400;
    int max_newton = 60;
    // Alternation stops once successive values differ by less than this (relative to max(1, |A|)).
    double alternation_tol = 1e-13;
    // Skip the Newton polish when the alternation value is above this (relative); such minima
    // cannot be zeros and need no further accuracy.
    double polish_below = std::numeric_limits<double>::infinity();
    // Return as soon as the value drops below this.
    double stop_below = -std::numeric_limits<double>::infinity();
    double grad_tol = 1e-7;
};

struct LocalMin {
    ProductVector point;
    double value = 0;          // f at the unit point
    double gradient_norm = 0;
    int iterations = 0;
    bool converged = false;    // gradient_norm <= grad_tol
};

// Alternating smallest-eigenvector iteration followed by a Newton polish in the
// tangent parametrization of the normalized form.
LocalMin local_minimize(const CMat& a, Dims d, const ProductVector& start, const LocalMinOptions& opt = {});
LocalMin local_minimize(const HermitianOp& a, const ProductVector& start, const LocalMinOptions& opt = {});

// Newton iterations only; used to sharpen points that are already close to a minimum.
// Point reached from f.base along tangent vector z scaled by alpha (unnormalized, then canonicalized).
ProductVector step_point(const TangentFrame& f, const RVec& z, double alpha);

LocalMin newton_polish(const CMat& a, Dims d, const ProductVector& start, int max_iter = 60, double grad_tol = 1e-7);

// Moves a quartic zero toward the point where its k smallest Hessian eigenvalues vanish.
ProductVector refine_quartic(const HermitianOp& omega, const Zero& z, const Tolerances& tol = {});

// Random product vector from a complex Gaussian.
ProductVector random_product_vector(Dims d, Rng& rng);

// Independent local minimizations from seeded random starts; entry r always uses
// the substream (seed, label, r), so the output does not depend on threading.
std::vector<LocalMin> multistart(const CMat& a, Dims d, int restarts, std::uint64_t seed, std::string_view label,
                                 const LocalMinOptions& opt, int threads = 0);

struct ZeroSet {
    std::vector<Zero> isolated;
    std::vector<Zero> continuum_samples;
    bool continuum_flag = false;
    double p_star = 0;
    int restarts = 0;
    std::vector<int> hits;      // restarts converging to each isolated zero
    int unclassified = 0;       // candidates rejected by classify_zero

    std::vector<Zero> all() const;
    int size() const { return static_cast<int>(isolated.size() + continuum_samples.size()); }
};

struct FindOptions {
    int restarts = 0;  // 0 means 100 N
    std::uint64_t seed = 0;
    Tolerances tol;
    int threads = 0;
    bool probe_continuum = true;
};

class NotAWitness : public Error {
public:
    NotAWitness(ProductVector p, double value);
    ProductVector certificate;
    double value;
};

ZeroSet find_zeros(const HermitianOp& omega, const FindOptions& opt = {});

// Moves along Hessian-kernel directions and re-minimizes; true if a different
// zero is reached nearby, meaning z lies on a continuum of zeros.
bool probe_continuum(const HermitianOp& omega, const Zero& z, std::uint64_t seed, const Tolerances& tol = {});

} // namespace wf
