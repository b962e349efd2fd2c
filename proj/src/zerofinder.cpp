#include "wf/zerofinder.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "wf/maps.hpp"
#include "wf/parallel.hpp"

namespace wf {

namespace {

double scale_of(const CMat& a) { return std::max(1.0, a.norm()); }

// smallest eigenpair of a small Hermitian matrix
std::pair<double, CVec> lowest(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

} // namespace

ProductVector step_point(const TangentFrame& f, const RVec& z, double alpha) {
    CVec phi = f.base.phi + f.j0 * (alpha * z.head(f.dim_x())).cast<cd>();
    CVec chi = f.base.chi + f.k0 * (alpha * z.tail(f.dim_y())).cast<cd>();
    return {phi, chi};
}

double min_eig_map(const HermitianOp& a, const CVec& phi) {
    if (phi.size() != a.dims().na) throw DimensionMismatch("phi length");
    double n2 = phi.squaredNorm();
    if (!(n2 > 0)) throw DimensionMismatch("phi must be nonzero");
    CMat m = map_of_vector(a.mat(), a.dims(), phi) / n2;
    return lowest(0.5 * (m + m.adjoint())).first;
}

ProductVector random_product_vector(Dims d, Rng& rng) {
    CVec phi = rng.cvec(d.na);
    CVec chi = rng.cvec(d.nb);
    return {phi, chi};
}

LocalMin newton_polish(const CMat& a, Dims d, const ProductVector& start, int max_iter, double grad_tol) {
    const double scale = scale_of(a);
    LocalMin r;
    r.point = start;
    TangentFrame f = tangent_frame(start);
    double val = eval_form(a, d, start.phi, start.chi);
    RVec g = gradient(a, d, f);
    double gn = g.norm();
    int it = 0;
    for (; it < max_iter; ++it) {
        if (gn <= 1e-15 * scale) break;
        RMat h = hessian(a, d, f);
        h.diagonal().array() -= val;
        Eigen::SelfAdjointEigenSolver<RMat> es(h);
        RVec lam = es.eigenvalues().cwiseAbs().cwiseMax(1e-12 * scale);
        RVec gc = es.eigenvectors().transpose() * g;
        RVec z = -0.5 * (es.eigenvectors() * gc.cwiseQuotient(lam));
        double zn = z.norm();
        if (zn > 0.2) z *= 0.2 / zn;

        bool accepted = false;
        double alpha = 1.0;
        for (int ls = 0; ls < 30; ++ls, alpha *= 0.5) {
            ProductVector q = step_point(f, z, alpha);
            double qv = eval_form(a, d, q.phi, q.chi);
            if (qv > val + 1e-15 * scale) continue;
            TangentFrame qf = tangent_frame(q);
            RVec qg = gradient(a, d, qf);
            double qgn = qg.norm();
            if (qv < val - 1e-15 * scale || qgn < gn) {
                r.point = q;
                f = qf;
                val = qv;
                g = qg;
                gn = qgn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    r.value = val;
    r.gradient_norm = gn;
    r.iterations = it;
    r.converged = gn <= grad_tol;
    return r;
}

LocalMin local_minimize(const CMat& a, Dims d, const ProductVector& start, const LocalMinOptions& opt) {
    const double scale = scale_of(a);
    CVec phi = start.phi.normalized();
    CVec chi = start.chi.normalized();
    double prev = eval_form(a, d, phi, chi);
    int it = 0;
    for (; it < opt.max_alternations; ++it) {
        chi = lowest(map_of_vector(a, d, phi)).second;
        auto [lam, v] = lowest(transpose_map_of_vector(a, d, chi));
        phi = v;
        bool done = prev - lam <= opt.alternation_tol * scale;
        prev = lam;
        if (lam < opt.stop_below) {
            LocalMin r;
            r.point = ProductVector(phi, chi);
            r.value = eval_form(a, d, r.point.phi, r.point.chi);
            r.gradient_norm = gradient(a, d, tangent_frame(r.point)).norm();
            r.iterations = it + 1;
            r.converged = r.gradient_norm <= opt.grad_tol;
            return r;
        }
        if (done) break;
    }
    ProductVector p(phi, chi);
    LocalMin r;
    if (prev <= opt.polish_below * scale) {
        r = newton_polish(a, d, p, opt.max_newton, opt.grad_tol);
    } else {
        r.point = p;
        r.value = eval_form(a, d, p.phi, p.chi);
        r.gradient_norm = gradient(a, d, tangent_frame(p)).norm();
        r.converged = r.gradient_norm <= opt.grad_tol;
    }
    r.iterations += it;
    return r;
}

LocalMin local_minimize(const HermitianOp& a, const ProductVector& start, const LocalMinOptions& opt) {
    if (start.phi.size() != a.dims().na || start.chi.size() != a.dims().nb)
        throw DimensionMismatch("start point does not match dims");
    return local_minimize(a.mat(), a.dims(), start, opt);
}

std::vector<LocalMin> multistart(const CMat& a, Dims d, int restarts, std::uint64_t seed, std::string_view label,
                                 const LocalMinOptions& opt, int threads) {
    std::vector<LocalMin> out(restarts);
    parallel_for(
        restarts,
        [&](int r) {
            Rng rng(seed, label, static_cast<std::uint64_t>(r));
            out[r] = local_minimize(a, d, random_product_vector(d, rng), opt);
        },
        threads);
    return out;
}

std::vector<Zero> ZeroSet::all() const {
    std::vector<Zero> z = isolated;
    z.insert(z.end(), continuum_samples.begin(), continuum_samples.end());
    return z;
}

NotAWitness::NotAWitness(ProductVector p, double v)
    : Error("NotAWitness", "form takes the negative value " + std::to_string(v)), certificate(std::move(p)), value(v) {}

bool probe_continuum(const HermitianOp& omega, const Zero& z, std::uint64_t seed, const Tolerances& tol) {
    if (z.hessian_kernel.empty()) return false;
    Rng rng(seed, "continuum-probe");
    const int k = z.kernel_dim();
    for (int trial = 0; trial < 3; ++trial) {
        RVec c = rng.rvec(k).normalized();
        RVec dir = RVec::Zero(z.frame.dim());
        for (int i = 0; i < k; ++i) dir += c(i) * z.hessian_kernel[i];
        ProductVector q = step_point(z.frame, dir, 0.05);
        LocalMinOptions lo;
        lo.max_newton = 120;
        LocalMin m = local_minimize(omega, q, lo);
        if (m.value <= tol.zero && geodesic_distance(m.point, z.point) > 0.01) return true;
    }
    return false;
}

ProductVector refine_quartic(const HermitianOp& omega, const Zero& z, const Tolerances& tol) {
    const int k = z.kernel_dim();
    if (k == 0) return z.point;
    // f vanishes to fourth order along the kernel, so the gradient pins the point only to
    // about eps^(1/3); the k smallest Hessian eigenvalues grow quadratically and do better
    auto h = [&](const ProductVector& p) {
        RVec ev = Eigen::SelfAdjointEigenSolver<RMat>(hessian(omega, tangent_frame(p)), Eigen::EigenvaluesOnly).eigenvalues();
        return ev.head(k).cwiseAbs().sum();
    };
    ProductVector p = z.point;
    double hp = h(p);
    double eta = 1e-3;
    for (int it = 0; it < 8; ++it) {
        TangentFrame f = tangent_frame(p);
        Eigen::SelfAdjointEigenSolver<RMat> es(hessian(omega, f));
        RMat kv = es.eigenvectors().leftCols(k);
        auto at = [&](const RVec& s) { return h(step_point(f, kv * s, 1.0)); };
        RVec g(k);
        RMat hh(k, k);
        for (int i = 0; i < k; ++i) {
            RVec e = RVec::Zero(k);
            e(i) = eta;
            double fp = at(e), fm = at(-e);
            g(i) = (fp - fm) / (2 * eta);
            hh(i, i) = (fp - 2 * hp + fm) / (eta * eta);
            for (int j = 0; j < i; ++j) {
                RVec u = RVec::Zero(k);
                u(i) = u(j) = eta;
                RVec v = u;
                v(j) = -eta;
                hh(i, j) = hh(j, i) = (at(u) - at(v) - at(-v) + at(-u)) / (4 * eta * eta);
            }
        }
        RVec step = -hh.completeOrthogonalDecomposition().solve(g);
        ProductVector q = step_point(f, kv * step, 1.0);
        double hq = h(q);
        if (!(hq < hp) || eval_form(omega, q) > tol.zero) break;
        p = q;
        hp = hq;
        if (step.norm() < 1e-12) break;
        eta = std::clamp(10 * step.norm(), 1e-6, 1e-3);
    }
    return p;
}

namespace {

bool lex_less(const ProductVector& a, const ProductVector& b) {
    auto cmp = [](const CVec& u, const CVec& v) -> int {
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            if (std::abs(u(i).real() - v(i).real()) > 1e-9) return u(i).real() < v(i).real() ? -1 : 1;
            if (std::abs(u(i).imag() - v(i).imag()) > 1e-9) return u(i).imag() < v(i).imag() ? -1 : 1;
        }
        return 0;
    };
    int c = cmp(a.phi, b.phi);
    if (c) return c < 0;
    return cmp(a.chi, b.chi) < 0;
}

} // namespace

ZeroSet find_zeros(const HermitianOp& omega, const FindOptions& opt) {
    const Dims d = omega.dims();
    const int n = d.n();
    ZeroSet zs;
    zs.restarts = opt.restarts > 0 ? opt.restarts : 100 * n;
    LocalMinOptions lo;
    lo.polish_below = 1e-4;
    lo.grad_tol = opt.tol.grad;
    std::vector<LocalMin> runs = multistart(omega.mat(), d, zs.restarts, opt.seed, "zero-search", lo, opt.threads);

    zs.p_star = std::numeric_limits<double>::infinity();
    int worst = -1;
    for (int r = 0; r < zs.restarts; ++r)
        if (runs[r].value < zs.p_star) {
            zs.p_star = runs[r].value;
            worst = r;
        }
    if (zs.p_star < -opt.tol.zero) throw NotAWitness(runs[worst].point, runs[worst].value);

    std::vector<ProductVector> cands;
    std::vector<int> hits;
    for (const auto& m : runs) {
        if (m.value > opt.tol.zero || m.gradient_norm > opt.tol.grad) continue;
        bool dup = false;
        for (size_t i = 0; i < cands.size(); ++i)
            if (same_point(cands[i], m.point)) {
                ++hits[i];
                dup = true;
                break;
            }
        if (!dup) {
            cands.push_back(m.point);
            hits.push_back(1);
        }
    }

    std::vector<Zero> zeros;
    std::vector<int> zhits;
    for (size_t i = 0; i < cands.size(); ++i) {
        try {
            Zero z = classify_zero(omega, cands[i], opt.tol);
            if (z.kind == ZeroKind::Quartic) z = classify_zero(omega, refine_quartic(omega, z, opt.tol), opt.tol);
            bool dup = false;
            for (size_t j = 0; j < zeros.size() && !dup; ++j)
                if (same_point(zeros[j].point, z.point)) {
                    zhits[j] += hits[i];
                    dup = true;
                }
            if (dup) continue;
            zeros.push_back(std::move(z));
            zhits.push_back(hits[i]);
        } catch (const Error&) {
            ++zs.unclassified;
        }
    }

    std::vector<bool> cont(zeros.size(), false);
    for (size_t i = 0; i < zeros.size(); ++i)
        for (size_t j = i + 1; j < zeros.size(); ++j)
            if (geodesic_distance(zeros[i].point, zeros[j].point) < 0.05) cont[i] = cont[j] = true;
    bool flagged = static_cast<int>(zeros.size()) > 5 * n;
    for (bool c : cont) flagged = flagged || c;
    if (opt.probe_continuum)
        for (size_t i = 0; i < zeros.size(); ++i)
            if (!cont[i] && zeros[i].kind == ZeroKind::Quartic &&
                probe_continuum(omega, zeros[i], substream_seed(opt.seed, "probe", i), opt.tol)) {
                cont[i] = true;
                flagged = true;
            }
    zs.continuum_flag = flagged;

    std::vector<size_t> order(zeros.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return lex_less(zeros[x].point, zeros[y].point); });
    for (size_t i : order) {
        if (cont[i]) {
            zeros[i].continuum = true;
            zs.continuum_samples.push_back(zeros[i]);
        } else {
            zs.isolated.push_back(zeros[i]);
            zs.hits.push_back(zhits[i]);
        }
    }
    return zs;
}

} // namespace wf
