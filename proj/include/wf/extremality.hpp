#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wf/constraints.hpp"

namespace wf {

struct Certificate {
    bool extremal = false;
    int kernel_dim = 0;
    int face_dim = 0;
    int rank = 0;
    int zero_count = 0;
    int quartic_count = 0;
    double spectral_gap = 0;
    double overlap = 0;  // |<B, Omega>| / (|B| |Omega|) for the kernel element when kernel_dim = 1
};

// Extremal iff the constraint kernel is one dimensional and parallel to omega.
Certificate certify(const HermitianOp& omega, const std::vector<Zero>& zeros, bool quartic = true,
                    const Tolerances& tol = {});
Certificate certify(const HermitianOp& omega, const ZeroSet& zeros, bool quartic = true, const Tolerances& tol = {});

enum class Trigger { None, NewZero, NewHessianZero };
const char* to_string(Trigger t);

struct BoundaryOptions {
    int restarts = 0;  // 0 means 100 N for validation, half that while bracketing
    std::uint64_t seed = 0;
    Tolerances tol;
    int threads = 0;
    double t_start = 1.0 / 16;  // bracket range, in units where |Gamma| = |Omega|
    double t_max = 1024;
    bool validate = true;
};

struct BoundaryResult {
    double t_c = 0;
    Trigger trigger = Trigger::None;
    ProductVector new_point;        // NewZero: the zero acquired at t_c
    int hessian_zero_index = -1;    // NewHessianZero: which existing zero
    RVec hessian_direction;         // NewHessianZero: kernel vector in that zero's frame
    HermitianOp gamma;              // direction actually used (projected, traceless)
    int multistarts = 0;
};

// Largest t such that omega + t gamma is still a witness with the given zeros.
BoundaryResult face_boundary(const HermitianOp& omega, const HermitianOp& gamma, const std::vector<Zero>& zeros,
                             const BoundaryOptions& opt = {});

// Smallest t > 0 at which the Hessian of omega + t gamma at z becomes singular
// on the complement of its current kernel; infinity if never. dir receives the null vector.
double hessian_event_time(const HermitianOp& omega, const HermitianOp& gamma, const Zero& z, const Tolerances& tol,
                          RVec* dir = nullptr);

enum class Termination { Extremal, QuarticStall, MaxSteps };
const char* to_string(Termination t);

struct DescentStep {
    HermitianOp witness;
    std::vector<Zero> zeros;
    int kernel_dim = 0;
    double t_c = 0;
    Trigger trigger = Trigger::None;
    std::string note;
};

struct FaceDescent {
    std::vector<DescentStep> steps;
    HermitianOp final;
    std::vector<Zero> final_zeros;
    Termination terminated = Termination::MaxSteps;
    std::vector<std::string> branches;  // near-quartic decisions taken along the way
    bool continuum = false;

    int quartic_count() const;
    bool quadratic_extremal() const { return terminated == Termination::Extremal && quartic_count() == 0; }
};

struct DescentOptions {
    std::uint64_t seed = 0;
    int restarts = 0;
    int max_steps = 0;        // 0 means N^2
    int stop_at_zeros = 0;    // stop early once this many zeros are collected (0: never)
    bool accept_quartic = true;
    int max_gamma_retries = 3;
    Tolerances tol;
    int threads = 0;
};

FaceDescent find_extremal(const HermitianOp& start, const DescentOptions& opt = {});
FaceDescent find_extremal(Dims d, const DescentOptions& opt = {});

int span_rank(const std::vector<ProductVector>& pts, bool partial_conjugate, double tol = 1e-8);

struct Optimality {
    bool optimal_if_spanning = false;
    bool nd_optimal_if_doubly_spanning = false;
    int span_rank = 0;
    int conjugate_span_rank = 0;
};

Optimality check_optimal(const HermitianOp& omega, const std::vector<Zero>& zeros);

} // namespace wf
