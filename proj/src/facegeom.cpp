#include "wf/facegeom.hpp"

#include <gsl/gsl_multimin.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "wf/rng.hpp"

namespace wf {

std::vector<HermitianOp> SimplexFace::states() const {
    std::vector<HermitianOp> s;
    for (const auto& v : vertices) s.push_back(HermitianOp::projector(dims, kron_product(v)));
    return s;
}

bool SimplexFace::degenerate(double tol) const {
    if (vertices.empty()) return true;
    const auto st = states();
    RMat m(dims.n() * dims.n(), st.size());
    for (size_t i = 0; i < st.size(); ++i) m.col(i) = to_hvec(st[i].mat());
    RVec s = Eigen::JacobiSVD<RMat>(m).singularValues();
    return s(s.size() - 1) <= tol * s(0);
}

SimplexFace face_from_zeros(const std::vector<ProductVector>& zeros) {
    if (zeros.empty()) throw DimensionMismatch("a face needs at least one vertex");
    return {zeros[0].dims(), zeros};
}

RMat edge_factors(const std::vector<HermitianOp>& v) {
    const auto k = static_cast<Eigen::Index>(v.size());
    RMat f = RMat::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j) f(i, j) = f(j, i) = (v[i] - v[j]).mat().squaredNorm();
    return f;
}

double cm_volume(const std::vector<HermitianOp>& v) {
    const auto k = static_cast<Eigen::Index>(v.size());
    if (k < 2) return 0;
    const int n = static_cast<int>(k) - 1;
    RMat d = RMat::Zero(k + 1, k + 1);
    d.row(0).tail(k).setOnes();
    d.col(0).tail(k).setOnes();
    d.bottomRightCorner(k, k) = edge_factors(v);
    double det = d.fullPivLu().determinant();
    return std::sqrt(std::abs(det) / std::pow(2.0, n)) / std::tgamma(n + 1.0);
}

double cm_volume(const SimplexFace& f) { return cm_volume(f.states()); }

double v_reg(int n, double s) { return std::pow(s, n) / std::tgamma(n + 1.0) * std::sqrt((n + 1) / std::pow(2.0, n)); }

double center_distance(const std::vector<HermitianOp>& v) {
    if (v.empty()) throw DimensionMismatch("empty face");
    const Dims d = v[0].dims();
    HermitianOp c = HermitianOp::zero(d);
    for (const auto& x : v) c += x;
    c = c * (1.0 / v.size());
    return (c - HermitianOp::maximally_mixed(d)).norm();
}

double center_distance(const SimplexFace& f) { return center_distance(f.states()); }

double r_m(Dims d) { return 1.0 / std::sqrt(static_cast<double>(d.n()) * (d.n() - 1)); }

namespace {

// Equality-constrained minimizer of w^T Q w with sum w = 1 on the support s.
RVec support_solve(const RMat& q, const std::vector<int>& s) {
    const int m = static_cast<int>(s.size());
    RMat kkt = RMat::Zero(m + 1, m + 1);
    RVec rhs = RVec::Zero(m + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) kkt(i, j) = 2 * q(s[i], s[j]);
        kkt(i, m) = kkt(m, i) = 1;
    }
    rhs(m) = 1;
    RVec x = kkt.completeOrthogonalDecomposition().solve(rhs);
    return x.head(m);
}

} // namespace

ClosestState closest_state(const std::vector<HermitianOp>& v, double weight_eps) {
    if (v.empty()) throw DimensionMismatch("empty face");
    const Dims d = v[0].dims();
    const int k = static_cast<int>(v.size());
    RMat q(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) q(i, j) = hs_inner(v[i], v[j]);

    // |sum w_i rho_i - I/N|^2 = w^T Q w - 1/N on the simplex, so only Q matters
    RVec w = RVec::Zero(k);
    int first = 0;
    for (int i = 1; i < k; ++i)
        if (q(i, i) < q(first, first)) first = i;
    w(first) = 1;
    std::vector<int> s{first};
    for (int outer = 0; outer < 10 * k + 10; ++outer) {
        // inner loop: move toward the support optimum, dropping blocking weights
        for (int inner = 0; inner <= k; ++inner) {
            RVec ws = support_solve(q, s);
            double alpha = 1;
            int block = -1;
            for (size_t i = 0; i < s.size(); ++i)
                if (ws(i) < 0) {
                    double a = w(s[i]) / (w(s[i]) - ws(i));
                    if (a < alpha) {
                        alpha = a;
                        block = static_cast<int>(i);
                    }
                }
            for (size_t i = 0; i < s.size(); ++i) w(s[i]) += alpha * (ws(i) - w(s[i]));
            if (block < 0) break;
            w(s[block]) = 0;
            s.erase(s.begin() + block);
        }
        RVec g = 2 * q * w;
        double mu = g(s[0]);
        int add = -1;
        double best = mu - 1e-14 * std::max(1.0, std::abs(mu));
        for (int i = 0; i < k; ++i)
            if (std::find(s.begin(), s.end(), i) == s.end() && g(i) < best) {
                best = g(i);
                add = i;
            }
        if (add < 0) break;
        s.push_back(add);
    }
    w = w.cwiseMax(0.0);
    w /= w.sum();

    ClosestState r;
    r.weights = w;
    HermitianOp rho = HermitianOp::zero(d);
    for (int i = 0; i < k; ++i) rho += v[i] * w(i);
    r.rho_min = rho;
    r.d_min = (rho - HermitianOp::maximally_mixed(d)).norm();
    RVec ev = rho.eigenvalues();
    double top = ev.maxCoeff();
    for (Eigen::Index i = 0; i < ev.size(); ++i) r.rank += ev(i) > 1e-8 * top;
    r.interior = w.minCoeff() > weight_eps;
    return r;
}

ClosestState closest_state(const SimplexFace& f, double weight_eps) { return closest_state(f.states(), weight_eps); }

namespace {

CMat traceless(const double* x, int n) {
    CMat a = CMat::Zero(n, n);
    int p = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == n - 1 && j == n - 1) continue;
            a(i, j) = cd(x[p], x[p + 1]);
            p += 2;
        }
    a(n - 1, n - 1) = -a.diagonal().head(n - 1).sum();
    return a;
}

struct ShapeCtx {
    const SimplexFace* face;
    ShapeObjective obj;
};

SimplexFace transformed(const SimplexFace& f, const CMat& va, const CMat& vb) {
    SimplexFace g{f.dims, {}};
    for (const auto& v : f.vertices) g.vertices.emplace_back(CVec(va * v.phi), CVec(vb * v.chi));
    return g;
}

std::pair<CMat, CMat> factors(const double* x, Dims d) {
    CMat va = traceless(x, d.na).exp();
    CMat vb = traceless(x + 2 * (d.na * d.na - 1), d.nb).exp();
    return {va, vb};
}

double shape_cost(const gsl_vector* xv, void* params) {
    const auto* ctx = static_cast<const ShapeCtx*>(params);
    auto [va, vb] = factors(xv->data, ctx->face->dims);
    if (!va.allFinite() || !vb.allFinite()) return std::numeric_limits<double>::max();
    SimplexFace g = transformed(*ctx->face, va, vb);
    return ctx->obj == ShapeObjective::MaxVolume ? -cm_volume(g) : center_distance(g);
}

} // namespace

ShapeResult optimize_shape(const SimplexFace& f, ShapeObjective obj, std::uint64_t seed, int restarts, int max_evals) {
    const Dims d = f.dims;
    if (f.vertices.size() < 2 || f.degenerate()) throw Error("DegenerateFace", "shape optimization needs an affinely independent face");
    const int np = 2 * (d.na * d.na - 1) + 2 * (d.nb * d.nb - 1);
    ShapeCtx ctx{&f, obj};
    gsl_multimin_function fn{&shape_cost, static_cast<size_t>(np), &ctx};
    ShapeResult best;
    best.initial = obj == ShapeObjective::MaxVolume ? cm_volume(f) : center_distance(f);
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<double> best_x(np, 0.0);

    gsl_vector* x = gsl_vector_alloc(np);
    gsl_vector* step = gsl_vector_alloc(np);
    gsl_multimin_fminimizer* mm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, np);
    for (int r = 0; r <= restarts; ++r) {
        Rng rng(seed, "shape-opt", static_cast<std::uint64_t>(r));
        for (int i = 0; i < np; ++i) gsl_vector_set(x, i, r == 0 ? 0.0 : 0.3 * rng.normal());
        gsl_vector_set_all(step, 0.2);
        gsl_multimin_fminimizer_set(mm, &fn, x, step);
        bool conv = false;
        for (int it = 0; it < max_evals; ++it) {
            if (gsl_multimin_fminimizer_iterate(mm)) break;
            double size = gsl_multimin_fminimizer_size(mm);
            if (gsl_multimin_test_size(size, 1e-7) == GSL_SUCCESS) {
                conv = true;
                break;
            }
        }
        if (mm->fval < best_cost) {
            best_cost = mm->fval;
            for (int i = 0; i < np; ++i) best_x[i] = gsl_vector_get(mm->x, i);
            best.converged = conv;
        }
    }
    gsl_multimin_fminimizer_free(mm);
    gsl_vector_free(step);
    gsl_vector_free(x);

    auto [va, vb] = factors(best_x.data(), d);
    best.va = va;
    best.vb = vb;
    best.face = transformed(f, va, vb);
    const int n = static_cast<int>(f.vertices.size()) - 1;
    if (obj == ShapeObjective::MaxVolume) {
        best.value = cm_volume(best.face);
        best.ratio = best.value / v_reg(n, std::sqrt(2.0));
    } else {
        best.value = center_distance(best.face);
        best.ratio = best.value / r_m(d);
    }
    return best;
}

EntangledPpt entangled_ppt(const HermitianOp& omega, const SimplexFace& f) {
    const Dims d = f.dims;
    const int n = d.n();
    auto st = f.states();
    EntangledPpt e;
    e.rho = HermitianOp::zero(d);
    for (const auto& s : st) e.rho += s * (1.0 / st.size());
    e.lambda = std::min(e.rho.min_eigenvalue(), partial_transpose(e.rho).min_eigenvalue());
    if (!(e.lambda > 0 && e.lambda < 1.0 / n)) throw Error("DegenerateFace", "face center or its partial transpose is rank deficient");
    e.p_max = 1.0 / (1.0 - n * e.lambda);
    e.p = 0.5 * (1.0 + e.p_max);
    e.sigma = e.rho * e.p + HermitianOp::maximally_mixed(d) * (1 - e.p);
    e.sigma_min_eig = e.sigma.min_eigenvalue();
    e.sigma_pt_min_eig = partial_transpose(e.sigma).min_eigenvalue();
    e.witness_value = hs_inner(omega, e.sigma);
    return e;
}

} // namespace wf
