#include "wf/rng.hpp"

namespace wf {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t substream_seed(std::uint64_t root, std::string_view label, std::uint64_t index) {
    return splitmix(splitmix(root ^ fnv1a(label)) + index);
}

CVec Rng::cvec(int n) {
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = cnormal();
    return v;
}

CMat Rng::cmat(int rows, int cols) {
    CMat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cnormal();
    return m;
}

RVec Rng::rvec(int n) {
    RVec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
}

} // namespace wf
