#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "wf/types.hpp"

namespace wf {

// Derive an independent 64-bit seed for a labeled substream.
// The same (root, label, index) always gives the same seed.
std::uint64_t substream_seed(std::uint64_t root, std::string_view label, std::uint64_t index = 0);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    Rng(std::uint64_t root, std::string_view label, std::uint64_t index = 0)
        : eng_(substream_seed(root, label, index)) {}

    double normal() { return gauss_(eng_); }
    double uniform() { return unif_(eng_); }
    cd cnormal() {
        double re = gauss_(eng_);
        double im = gauss_(eng_);
        return {re, im};
    }
    CVec cvec(int n);
    CMat cmat(int rows, int cols);
    RVec rvec(int n);
    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

} // namespace wf
