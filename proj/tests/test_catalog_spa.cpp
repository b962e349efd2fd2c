#include "support.hpp"
#include "wf/biquadratic.hpp"
#include "wf/catalog.hpp"
#include "wf/maps.hpp"

using namespace wft;

namespace {

double robertson_formula(const CVec& p, const CVec& c) {
    auto n2 = [](cd z) { return std::norm(z); };
    double t1 = (n2(p(0)) + n2(p(1))) * (n2(c(2)) + n2(c(3)));
    double t2 = (n2(p(2)) + n2(p(3))) * (n2(c(0)) + n2(c(1)));
    cd u = (std::conj(p(0)) * p(2) + std::conj(p(3)) * p(1)) * (std::conj(c(2)) * c(0) + std::conj(c(1)) * c(3));
    cd v = (std::conj(p(1)) * p(2) - std::conj(p(3)) * p(0)) * (std::conj(c(2)) * c(1) - std::conj(c(0)) * c(3));
    return t1 + t2 + 2 * (u + v).real();
}

double p_formula(double lambda, int n) { return lambda < 0 ? -n * lambda / (1 - n * lambda) : 0.0; }

} // namespace

TEST_CASE("Choi-Lam matrix entries and zeros") {
    auto e = choi_lam();
    CHECK(e.witness.trace() == doctest::Approx(6));
    CHECK(e.witness.mat()(0, 4) == cd(-1, 0));
    CHECK(e.witness.mat()(4, 0) == cd(-1, 0));
    CHECK(e.analytic_zeros.size() == 3);
    for (const auto& z : e.analytic_zeros) CHECK(std::abs(eval_form(e.witness, z)) <= 1e-12);
    CHECK(std::abs(eval_form(e.witness, choi_lam_continuum_zero(0.7, 2.1))) < 1e-12);
    Rng rng(1);
    double worst = 0;
    for (int t = 0; t < 10000; ++t) worst = std::max(worst, std::abs(eval_form(e.witness, e.continuum_sampler(rng))));
    CHECK(worst <= 1e-10);
    // theta enters as a phase on the off-diagonal entries
    HermitianOp t = choi_lam_matrix(1, 0, 1, 0.3);
    CHECK(std::abs(t.mat()(0, 4) + std::polar(1.0, 0.3)) < 1e-15);
    CHECK(choi_lam(0.5, 0.2, 1.3, 0).name == "choi-lam-family");
}

TEST_CASE("Ha-Kye parameters") {
    for (double a : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        auto [b, c] = ha_kye_bc(a);
        CHECK(b <= c);
        CHECK(ha_kye_member(a, b, c, 0));
        CHECK_FALSE(ha_kye_member(a, b + 0.01, c, 0));
        CHECK_FALSE(ha_kye_member(a, b, c, 0.1));
    }
    auto [b1, c1] = ha_kye_bc(1.0);
    CHECK(b1 == doctest::Approx(0).epsilon(1e-14));
    CHECK(c1 == doctest::Approx(1));
}

TEST_CASE("Robertson form and zeros") {
    auto e = robertson();
    Rng rng(2);
    const CMat& m = e.witness.mat();
    CHECK((m - m.adjoint()).norm() == 0.0);
    for (int t = 0; t < 1000; ++t) {
        CVec p = rng.cvec(4), c = rng.cvec(4);
        double f = eval_form(m, Dims(4, 4), p, c);
        CHECK(std::abs(f - robertson_formula(p, c)) < 1e-12 * std::max(1.0, std::abs(f)));
    }
    for (const auto& z : e.analytic_zeros) CHECK(std::abs(eval_form(e.witness, z)) <= 1e-12);
    REQUIRE(e.continuum_sampler);
    double worst = 0;
    for (int t = 0; t < 10000; ++t) worst = std::max(worst, std::abs(eval_form(e.witness, e.continuum_sampler(rng))));
    CHECK(worst <= 1e-10);
    for (int t = 0; t < 10; ++t) CHECK(classify_zero(e.witness, e.continuum_sampler(rng)).kernel_dim() == 8);
}

TEST_CASE("SPA parameters follow the eigenvalue formulas") {
    Rng rng(3);
    Dims d(3, 3);
    HermitianOp psd = random_separable(d, rng, 30);
    CHECK(spa(psd).p1 == 0.0);
    for (int t = 0; t < 20; ++t) {
        HermitianOp w = HermitianOp::identity(d) + random_op(d, rng) * 0.5;
        w = w.normalized_trace();
        SpaResult s = spa(w);
        double l1 = min_eig(w.mat()), l2 = min_eig(naive_partial_transpose(w.mat(), d));
        CHECK(std::abs(s.lambda1 - l1) < 1e-12);
        CHECK(std::abs(s.lambda2 - l2) < 1e-12);
        CHECK(std::abs(s.p1 - p_formula(l1, 9)) < 1e-12);
        CHECK(std::abs(s.p2 - p_formula(l2, 9)) < 1e-12);
        if (l1 < 0) CHECK(std::abs(spa_mixture(w, s.p1).min_eigenvalue()) < 1e-10);
        if (std::abs(s.p1 - s.p2) > 1e-10) CHECK(s.spa_of_omega_is_ppt == (s.p1 >= s.p2));
        SpaResult sp = spa(partial_transpose(w));
        CHECK(sp.p1 == s.p2);
        CHECK(sp.p2 == s.p1);
    }
    // tie: both flags
    HermitianOp diag = HermitianOp(d, CMat(RVec::LinSpaced(9, -0.05, 0.3).cast<cd>().asDiagonal())).normalized_trace();
    SpaResult tie = spa(diag);
    CHECK(tie.p1 == tie.p2);
    CHECK(tie.spa_of_omega_is_ppt);
    CHECK(tie.spa_of_pt_is_ppt);
    CHECK(tie.p0_status == "requires separability oracle");
}

TEST_CASE("gradient condition at Choi-Lam zeros through the transpose map") {
    auto e = choi_lam();
    for (const auto& z : e.analytic_zeros) {
        CVec v = apply_transpose_map(e.witness, z.chi * z.chi.adjoint()) * z.phi;
        CHECK(v.norm() < 1e-14);
    }
}
