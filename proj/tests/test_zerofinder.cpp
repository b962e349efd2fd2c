#include "support.hpp"
#include "wf/biquadratic.hpp"
#include "wf/catalog.hpp"
#include "wf/decomposable.hpp"

using namespace wft;

namespace {

bool contains(const std::vector<Zero>& zs, const ProductVector& p) {
    for (const auto& z : zs)
        if (same_point(z.point, p, 1 - 1e-6)) return true;
    return false;
}

} // namespace

TEST_CASE("min_eig_map") {
    Rng rng(1);
    Dims d(3, 3);
    CHECK(std::abs(min_eig_map(HermitianOp::identity(d), rng.cvec(3)) - 1) < 1e-14);
    HermitianOp c = choi_lam_matrix(1, 0, 1, 0);
    CHECK(std::abs(min_eig_map(c, unit_vec(3, 1))) < 1e-14);

    // sampling over chi can only approach the minimum from above
    Dims d2(3, 2);
    HermitianOp a = random_op(d2, rng);
    CVec phi = rng.cvec(3);
    double m = min_eig_map(a, phi), sampled = 1e300;
    for (int t = 0; t < 10000; ++t) {
        CVec chi = rng.cvec(2);
        sampled = std::min(sampled, eval_form(a.mat(), d2, phi, chi) / phi.squaredNorm() / chi.squaredNorm());
    }
    CHECK(sampled >= m - 1e-12);
    CHECK(sampled - m < 1e-2 * std::max(1.0, std::abs(m)));
}

TEST_CASE("local_minimize fixed points and identity") {
    Rng rng(2);
    HermitianOp c = choi_lam_matrix(1, 0, 1, 0);
    ProductVector z(unit_vec(3, 0), unit_vec(3, 2));
    LocalMin m = local_minimize(c, z);
    CHECK(m.value <= 1e-9);
    CHECK(same_point(m.point, z));
    Dims d(2, 3);
    for (int t = 0; t < 5; ++t) {
        LocalMin r = local_minimize(HermitianOp::identity(d), random_product_vector(d, rng));
        CHECK(std::abs(r.value - 1) < 1e-13);
        CHECK(r.converged);
    }
}

TEST_CASE("Choi-Lam zero search finds the isolated zeros and the continuum") {
    auto e = choi_lam();
    FindOptions fo;
    fo.restarts = 200;
    fo.seed = 4;
    ZeroSet zs = find_zeros(e.witness, fo);
    CHECK(std::abs(zs.p_star) < 1e-9);
    CHECK(zs.isolated.size() == 3);
    for (const auto& p : e.analytic_zeros) CHECK(contains(zs.isolated, p));
    for (const auto& z : zs.isolated) {
        CHECK(z.kind == ZeroKind::Quartic);
        CHECK(z.kernel_dim() == 2);
    }
    CHECK(zs.continuum_flag);
    REQUIRE(!zs.continuum_samples.empty());
    for (const auto& z : zs.continuum_samples) {
        // chi = conj(phi) up to phase, all |phi_i| equal
        CHECK(std::abs(z.point.chi.dot(z.point.phi.conjugate())) > 1 - 1e-6);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(std::abs(z.point.phi(i)) - 1 / std::sqrt(3.0)) < 1e-4);
    }
}

TEST_CASE("identity has no zeros") {
    ZeroSet zs = find_zeros(HermitianOp::identity(Dims(2, 3)));
    CHECK(zs.size() == 0);
    CHECK(std::abs(zs.p_star - 1) < 1e-12);
    CHECK(zs.restarts == 600);
}

TEST_CASE("every reported zero is a stationary zero") {
    Rng rng(5);
    std::vector<ProductVector> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(random_product_vector(Dims(3, 3), rng));
    DecompWitness w = with_prescribed_zeros(pts, Dims(3, 3), rng);
    FindOptions fo;
    fo.seed = 9;
    ZeroSet zs = find_zeros(w.witness, fo);
    CHECK(zs.size() == 4);
    for (const auto& p : pts) CHECK(contains(zs.isolated, p));
    for (const auto& z : zs.all()) {
        CHECK(eval_form(w.witness, z.point) <= 1e-9);
        CHECK(gradient(w.witness, tangent_frame(z.point)).norm() <= 1e-7);
    }
    CHECK(zs.p_star >= -1e-9);
    CHECK(zs.p_star <= 1e-9);
}

TEST_CASE("NotAWitness certificates are sound") {
    Rng rng(6);
    int raised = 0;
    for (int t = 0; t < 20; ++t) {
        Dims d(2 + t % 2, 3);
        HermitianOp a = random_op(d, rng);
        FindOptions fo;
        fo.restarts = 50;
        fo.seed = t;
        try {
            find_zeros(a, fo);
        } catch (const NotAWitness& e) {
            ++raised;
            CHECK(eval_form(a, e.certificate) < -1e-9);
            CHECK(std::abs(eval_form(a, e.certificate) - e.value) < 1e-12);
        }
    }
    CHECK(raised > 10);
}

TEST_CASE("doubling restarts never loses zeros") {
    Rng rng(7);
    Dims d(3, 3);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<ProductVector> pts;
        for (int i = 0; i < 5; ++i) pts.push_back(random_product_vector(d, rng));
        HermitianOp w = with_prescribed_zeros(pts, d, rng).witness;
        for (int r : {10, 40}) {
            FindOptions small, big;
            small.restarts = r;
            big.restarts = 2 * r;
            small.seed = big.seed = 100 + trial;
            ZeroSet a = find_zeros(w, small), b = find_zeros(w, big);
            for (const auto& z : a.all()) CHECK(contains(b.all(), z.point));
        }
    }
}

TEST_CASE("thread count does not change the result") {
    Rng rng(8);
    Dims d(3, 3);
    std::vector<ProductVector> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(random_product_vector(d, rng));
    HermitianOp w = with_prescribed_zeros(pts, d, rng).witness;
    FindOptions one, many;
    one.threads = 1;
    many.threads = 3;
    one.seed = many.seed = 3;
    ZeroSet a = find_zeros(w, one), b = find_zeros(w, many);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
        CHECK(a.all()[i].point.phi == b.all()[i].point.phi);
        CHECK(a.all()[i].point.chi == b.all()[i].point.chi);
    }
    CHECK(a.p_star == b.p_star);
}

TEST_CASE("isolated catalog zeros are recalled at default restarts") {
    auto e = choi_lam();
    for (std::uint64_t seed : {1, 2, 3}) {
        FindOptions fo;
        fo.seed = seed;
        ZeroSet zs = find_zeros(e.witness, fo);
        for (const auto& p : e.analytic_zeros) CHECK(contains(zs.isolated, p));
    }
}

TEST_CASE("quartic zeros are located past the gradient limit") {
    auto e = choi_lam();
    ZeroSet zs = find_zeros(e.witness);
    for (const auto& z : zs.isolated) {
        double best = 0;
        for (const auto& p : e.analytic_zeros) best = std::max(best, fidelity(z.point, p));
        CHECK(best > 1 - 1e-14);
    }
}
