#include <cstdio>
#include <filesystem>

#include "support.hpp"
#include "wf/biquadratic.hpp"
#include "wf/catalog.hpp"
#include "wf/constraints.hpp"
#include "wf/decomposable.hpp"

using namespace wft;

namespace {

std::vector<ProductVector> random_points(Dims d, int k, Rng& rng) {
    std::vector<ProductVector> p;
    for (int i = 0; i < k; ++i) p.push_back(random_product_vector(d, rng));
    return p;
}

// zero record with k arbitrary orthonormal kernel vectors, for row counting
Zero fake_quartic(Dims d, int k, Rng& rng) {
    TangentFrame f = tangent_frame(random_product_vector(d, rng));
    RMat q = Eigen::HouseholderQR<RMat>(RMat::Random(f.dim(), f.dim())).householderQ();
    std::vector<RVec> kern;
    for (int i = 0; i < k; ++i) kern.push_back(q.col(i));
    return make_zero(HermitianOp::identity(d), f, kern);
}

} // namespace

TEST_CASE("row counts") {
    Rng rng(1);
    for (Dims d : {Dims(3, 3), Dims(2, 4), Dims(4, 4)}) {
        Zero z = classify_zero(HermitianOp::zero(d), random_product_vector(d, rng));
        CHECK(static_cast<int>(t01_rows(z).size()) == 2 * (d.na + d.nb) - 3);
    }
    CHECK(m2_count(Dims(3, 3)) == 9);
    CHECK(m2_count(Dims(2, 4)) == 9);

    Dims d(3, 3);
    Zero q1 = fake_quartic(d, 1, rng);
    CHECK(t2_rows(q1).size() == 8);
    CHECK(t3_rows(q1).size() == 1);
    CHECK(t3_rows(fake_quartic(d, 2, rng)).size() == 4);
    CHECK(t3_rows(fake_quartic(d, 3, rng)).size() == 10);
    for (Dims dd : {Dims(3, 3), Dims(4, 4)})
        for (int k = 1; k <= 8; ++k) {
            Zero z = fake_quartic(dd, k, rng);
            int binom = (k + 2) * (k + 1) * k / 6;
            CHECK(static_cast<int>(t2_rows(z).size()) == 2 * k * (dd.na + dd.nb - 2));
            CHECK(static_cast<int>(t3_rows(z).size()) == binom);
            CHECK(static_cast<int>(t2_rows(z).size() + t3_rows(z).size()) == m4_count(dd, k));
        }
}

TEST_CASE("quadratic zero rejects quartic rows") {
    Rng rng(2);
    Dims d(2, 2);
    Zero z = classify_zero(HermitianOp::zero(d), random_product_vector(d, rng));
    // the zero operator has a full Hessian kernel; build a genuine quadratic zero instead
    ProductVector p = random_product_vector(d, rng);
    HermitianOp w = HermitianOp::identity(d) - HermitianOp::projector(d, kron_product(p));
    Zero q = classify_zero(w, p);
    CHECK(q.kind == ZeroKind::Quadratic);
    CHECK_THROWS_AS(t2_rows(q), NotQuartic);
    CHECK_THROWS_AS(t3_rows(q), NotQuartic);
    CHECK(z.kind == ZeroKind::Quartic);
}

TEST_CASE("ranks from random product vectors") {
    Rng rng(3);
    ConstraintSystem a = assemble_from_points(Dims(3, 3), random_points(Dims(3, 3), 9, rng));
    CHECK(a.rank == 81);
    CHECK(a.kernel_dim() == 0);
    ConstraintSystem b = assemble_from_points(Dims(2, 4), random_points(Dims(2, 4), 7, rng));
    CHECK(b.rank == 62);
    CHECK(b.kernel_dim() == 2);
    CHECK(b.spectral_gap > 1e3);
    for (int k = 1; k <= 8; ++k) {
        ConstraintSystem c = assemble_from_points(Dims(3, 3), random_points(Dims(3, 3), k, rng));
        CHECK(c.rank + c.kernel_dim() == 81);
        for (const auto& kb : c.kernel_basis) CHECK(c.residual(kb) <= 1e-8 * kb.norm());
    }
}

TEST_CASE("rows annihilate the witness at its zeros") {
    Rng rng(4);
    auto check_sound = [](const HermitianOp& w, const std::vector<Zero>& zs) {
        ConstraintSystem cs = assemble_U(w.dims(), zs, true);
        for (const auto& e : cs.rows) CHECK(std::abs(hs_inner(e, w)) <= 1e-10 * e.norm() * w.norm());
    };
    auto cl = choi_lam();
    std::vector<Zero> zs;
    for (const auto& p : cl.analytic_zeros) zs.push_back(classify_zero(cl.witness, p));
    for (int i = 0; i < 5; ++i) zs.push_back(classify_zero(cl.witness, cl.continuum_sampler(rng)));
    check_sound(cl.witness, zs);

    auto rb = robertson();
    std::vector<Zero> rz;
    for (const auto& p : rb.analytic_zeros) rz.push_back(classify_zero(rb.witness, p));
    check_sound(rb.witness, rz);

    Dims d(3, 3);
    auto pts = random_points(d, 5, rng);
    HermitianOp w = with_prescribed_zeros(pts, d, rng).witness;
    std::vector<Zero> wz;
    for (const auto& p : pts) wz.push_back(classify_zero(w, p));
    check_sound(w, wz);
}

TEST_CASE("rank does not depend on the tangent-frame completion") {
    Rng rng(5);
    auto cl = choi_lam();
    std::vector<ProductVector> pts = cl.analytic_zeros;
    pts.push_back(cl.continuum_sampler(rng));
    Dims d(2, 4);
    auto generic = random_points(d, 6, rng);
    int ref_q = -1, ref_g = -1;
    for (int seed = 0; seed < 20; ++seed) {
        Rng fr(seed, "frames");
        std::vector<Zero> zs;
        for (const auto& p : pts) zs.push_back(classify_zero(cl.witness, tangent_frame(p, fr)));
        int r = assemble_U(Dims(3, 3), zs, true).rank;
        if (ref_q < 0) ref_q = r;
        CHECK(r == ref_q);
        std::vector<Zero> gz;
        for (const auto& p : generic) gz.push_back(make_zero(HermitianOp::identity(d), tangent_frame(p, fr), {}));
        int g = assemble_U(d, gz, false).rank;
        if (ref_g < 0) ref_g = g;
        CHECK(g == ref_g);
    }
    CHECK(ref_q == 80);
    CHECK(ref_g == 54);
}

TEST_CASE("projection onto the kernel") {
    Rng rng(6);
    Dims d(3, 3);
    ConstraintSystem cs = assemble_from_points(d, random_points(d, 4, rng));
    HermitianOp b = random_op(d, rng);
    HermitianOp p = cs.project_to_kernel(b);
    CHECK(cs.residual(p) < 1e-10 * b.norm());
    CHECK((cs.project_to_kernel(p) - p).norm() < 1e-10 * b.norm());
    for (size_t i = 0; i < cs.kernel_basis.size(); ++i)
        for (size_t j = 0; j < cs.kernel_basis.size(); ++j)
            CHECK(std::abs(hs_inner(cs.kernel_basis[i], cs.kernel_basis[j]) - (i == j)) < 1e-10);
}

TEST_CASE("binary matrix dump round-trips") {
    Rng rng(7);
    Dims d(2, 3);
    ConstraintSystem cs = assemble_from_points(d, random_points(d, 3, rng));
    auto path = (std::filesystem::temp_directory_path() / "wf_cmat_test.bin").string();
    write_constraint_matrix(path, cs);
    RMat m = read_constraint_matrix(path);
    CHECK(m.rows() == static_cast<Eigen::Index>(cs.rows.size()));
    CHECK(m.cols() == 36);
    CHECK((m - cs.matrix()).norm() == 0.0);
    CHECK(std::filesystem::file_size(path) == 24 + 8 * m.size());
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_constraint_matrix(path), ParseError);
}
