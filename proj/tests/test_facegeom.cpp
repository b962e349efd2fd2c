#include <algorithm>
#include <numeric>

#include "support.hpp"
#include "wf/facegeom.hpp"

using namespace wft;

namespace {

std::vector<ProductVector> orthogonal_product_basis(Dims d, int count) {
    std::vector<ProductVector> v;
    for (int i = 0; i < d.na && static_cast<int>(v.size()) < count; ++i)
        for (int j = 0; j < d.nb && static_cast<int>(v.size()) < count; ++j) v.emplace_back(unit_vec(d.na, i), unit_vec(d.nb, j));
    return v;
}

std::vector<HermitianOp> states_of(const std::vector<ProductVector>& pts) { return SimplexFace{pts[0].dims(), pts}.states(); }

// volume from the Gram determinant of the edge vectors
double gram_volume(const std::vector<HermitianOp>& v) {
    const int n = static_cast<int>(v.size()) - 1;
    RMat e(v[0].n() * v[0].n(), n);
    for (int i = 0; i < n; ++i) e.col(i) = to_hvec((v[i + 1] - v[0]).mat());
    return std::sqrt(std::max(0.0, (e.transpose() * e).determinant())) / std::tgamma(n + 1.0);
}

// exhaustive support enumeration with KKT check
double brute_closest(const std::vector<HermitianOp>& v) {
    const int k = static_cast<int>(v.size());
    const Dims d = v[0].dims();
    RMat q(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) q(i, j) = hs_inner(v[i], v[j]);
    double best = 1e300;
    for (int mask = 1; mask < (1 << k); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1) s.push_back(i);
        const int m = static_cast<int>(s.size());
        RMat a = RMat::Zero(m + 1, m + 1);
        RVec b = RVec::Zero(m + 1);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) a(i, j) = 2 * q(s[i], s[j]);
            a(i, m) = a(m, i) = 1;
        }
        b(m) = 1;
        RVec x = a.fullPivLu().solve(b);
        if ((a * x - b).norm() > 1e-9) continue;
        RVec w = RVec::Zero(k);
        for (int i = 0; i < m; ++i) w(s[i]) = x(i);
        if (w.minCoeff() < -1e-12) continue;
        HermitianOp rho = HermitianOp::zero(d);
        for (int i = 0; i < k; ++i) rho += v[i] * w(i);
        best = std::min(best, (rho - HermitianOp::maximally_mixed(d)).norm());
    }
    return best;
}

} // namespace

TEST_CASE("Cayley-Menger volume basics") {
    Dims d(3, 3);
    auto basis = orthogonal_product_basis(d, 9);
    CHECK(cm_volume(states_of({basis[0], basis[1]})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(cm_volume(states_of({basis[0], basis[0]})) == 0.0);
    double v8 = cm_volume(states_of(basis));
    CHECK(std::abs(v8 - 3.0 / 40320.0) < 1e-12 * 3.0 / 40320.0);
    CHECK(std::abs(v8 - 7.440e-5) < 1e-8);
    CHECK(std::abs(v_reg(1, 1) - 1) < 1e-15);
    CHECK(std::abs(v_reg(2, 1) - std::sqrt(3.0) / 4) < 1e-15);
    CHECK(std::abs(v_reg(8, std::sqrt(2.0)) - 3.0 / 40320.0) < 1e-12 * 3.0 / 40320.0);
    for (int n = 1; n <= 8; ++n) {
        auto f = states_of(orthogonal_product_basis(d, n + 1));
        CHECK(std::abs(cm_volume(f) / v_reg(n, std::sqrt(2.0)) - 1) < 1e-12);
    }
}

TEST_CASE("Cayley-Menger volume against the Gram determinant") {
    Rng rng(1);
    Dims d(3, 3);
    for (int t = 0; t < 20; ++t) {
        int k = 2 + t % 8;
        std::vector<ProductVector> pts;
        for (int i = 0; i < k; ++i) pts.push_back(random_product_vector(d, rng));
        auto st = states_of(pts);
        double v = cm_volume(st), g = gram_volume(st);
        CHECK(std::abs(v - g) <= 1e-8 * g + 1e-14);
        // permutations leave it unchanged
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        for (int r = 0; r < 5; ++r) {
            std::shuffle(perm.begin(), perm.end(), std::mt19937_64(rng.next()));
            std::vector<HermitianOp> sh;
            for (int i : perm) sh.push_back(st[i]);
            CHECK(std::abs(cm_volume(sh) - v) <= 1e-10 * v + 1e-15);
        }
    }
    // affinely dependent: a vertex that is the midpoint of two others
    auto st = states_of({random_product_vector(d, rng), random_product_vector(d, rng), random_product_vector(d, rng)});
    st.push_back((st[0] + st[1]) * 0.5);
    CHECK(cm_volume(st) < 1e-7);
}

TEST_CASE("distances to the maximally mixed state") {
    CHECK(std::abs(r_m(Dims(3, 3)) - 1 / std::sqrt(72.0)) < 1e-15);
    CHECK(std::abs(r_m(Dims(3, 3)) - 0.1179) < 1e-4);
    Rng rng(2);
    for (Dims d : {Dims(2, 2), Dims(3, 3), Dims(3, 4)}) {
        SimplexFace f{d, {random_product_vector(d, rng)}};
        CHECK(std::abs(center_distance(f) - std::sqrt((d.n() - 1.0) / d.n())) < 1e-14);
    }
    SimplexFace full{Dims(3, 3), orthogonal_product_basis(Dims(3, 3), 9)};
    CHECK(center_distance(full) < 1e-15);
}

TEST_CASE("closest state") {
    Dims d(3, 3);
    SimplexFace full{d, orthogonal_product_basis(d, 9)};
    ClosestState c = closest_state(full);
    CHECK(c.d_min < 1e-12);
    CHECK(c.interior);
    CHECK(c.rank == 9);

    Rng rng(3);
    int interior_full = 0;
    for (int t = 0; t < 40; ++t) {
        int k = t < 20 ? 3 + t % 7 : 9;
        std::vector<ProductVector> pts;
        for (int i = 0; i < k; ++i) pts.push_back(random_product_vector(d, rng));
        auto st = states_of(pts);
        ClosestState r = closest_state(st);
        CHECK(r.weights.minCoeff() >= 0);
        CHECK(std::abs(r.weights.sum() - 1) < 1e-14);
        HermitianOp rec = HermitianOp::zero(d);
        for (int i = 0; i < k; ++i) rec += st[i] * r.weights(i);
        CHECK((rec - r.rho_min).norm() < 1e-10);
        CHECK(std::abs(r.d_min - brute_closest(st)) < 1e-9);
        CHECK(r.d_min < std::sqrt(8.0 / 9.0));
        if (k == 9) interior_full += r.interior && r.rank == 9;
    }
    // most random 9-vertex faces have an interior full-rank closest state
    CHECK(interior_full >= 14);
}

TEST_CASE("shape optimization") {
    Dims d(3, 3);
    SimplexFace reg{d, orthogonal_product_basis(d, 9)};
    ShapeResult r = optimize_shape(reg, ShapeObjective::MaxVolume, 1, 0, 3000);
    CHECK(r.ratio >= 1 - 1e-6);
    CHECK(r.initial == doctest::Approx(v_reg(8, std::sqrt(2.0))));
    ShapeResult c = optimize_shape(reg, ShapeObjective::MinCenterDistance, 1, 0, 3000);
    CHECK(c.value < 1e-6);
    // the transform acts through unimodular factors
    CHECK(std::abs(std::abs(r.va.determinant()) - 1) < 1e-10);
    CHECK(std::abs(std::abs(r.vb.determinant()) - 1) < 1e-10);

    SimplexFace one{d, {reg.vertices[0]}};
    CHECK_THROWS(optimize_shape(one, ShapeObjective::MaxVolume));
}
