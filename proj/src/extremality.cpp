#include "wf/extremality.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace wf {

const char* to_string(Trigger t) {
    switch (t) {
    case Trigger::NewZero: return "new-zero";
    case Trigger::NewHessianZero: return "new-hessian-zero";
    default: return "none";
    }
}

const char* to_string(Termination t) {
    switch (t) {
    case Termination::Extremal: return "extremal";
    case Termination::QuarticStall: return "quartic-stall";
    default: return "max-steps";
    }
}

Certificate certify(const HermitianOp& omega, const std::vector<Zero>& zeros, bool quartic, const Tolerances& tol) {
    const Dims d = omega.dims();
    if (zeros.empty()) throw EmptyZeroSet("no zeros: interior witness, kernel dimension " + std::to_string(d.n() * d.n()));
    ConstraintSystem cs = assemble_U(d, zeros, quartic, tol.svd);
    Certificate c;
    c.kernel_dim = cs.kernel_dim();
    c.face_dim = std::max(0, c.kernel_dim - 1);
    c.rank = cs.rank;
    c.zero_count = static_cast<int>(zeros.size());
    for (const auto& z : zeros) c.quartic_count += z.kind == ZeroKind::Quartic;
    c.spectral_gap = cs.spectral_gap;
    if (c.kernel_dim == 1) {
        const HermitianOp& b = cs.kernel_basis[0];
        c.overlap = std::abs(hs_inner(b, omega)) / (b.norm() * omega.norm());
    }
    c.extremal = c.kernel_dim == 1 && c.overlap >= 1 - 1e-8;
    return c;
}

Certificate certify(const HermitianOp& omega, const ZeroSet& zeros, bool quartic, const Tolerances& tol) {
    return certify(omega, zeros.all(), quartic, tol);
}

double hessian_event_time(const HermitianOp& omega, const HermitianOp& gamma, const Zero& z, const Tolerances& tol,
                          RVec* dir) {
    RMat go = hessian(omega, z.frame);
    RMat gg = hessian(gamma, z.frame);
    Eigen::SelfAdjointEigenSolver<RMat> es(go);
    const RVec& ev = es.eigenvalues();
    double cut = hessian_cutoff(ev, tol);
    std::vector<int> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cut) keep.push_back(static_cast<int>(i));
    if (keep.empty()) return std::numeric_limits<double>::infinity();
    RMat w(ev.size(), keep.size());
    for (size_t j = 0; j < keep.size(); ++j) w.col(j) = es.eigenvectors().col(keep[j]) / std::sqrt(ev(keep[j]));
    RMat s = w.transpose() * gg * w;
    Eigen::SelfAdjointEigenSolver<RMat> es2(0.5 * (s + s.transpose()));
    double mu = es2.eigenvalues()(0);
    if (!(mu < -1e-14 * std::max(1.0, s.norm()))) return std::numeric_limits<double>::infinity();
    if (dir) *dir = (w * es2.eigenvectors().col(0)).normalized();
    return -1.0 / mu;
}

namespace {

std::vector<LocalMin> negative_minima(const CMat& a, Dims d, int restarts, std::uint64_t seed, const std::string& label,
                                      double thresh, int threads) {
    LocalMinOptions lo;
    lo.stop_below = -thresh;
    lo.polish_below = 1e-6;
    std::vector<LocalMin> runs = multistart(a, d, restarts, seed, label, lo, threads);
    std::vector<LocalMin> out;
    for (const auto& m : runs) {
        if (!(m.value < -thresh)) continue;
        bool dup = false;
        for (auto& o : out)
            if (same_point(o.point, m.point, 1 - 1e-6)) {
                if (m.value < o.value) o = m;
                dup = true;
                break;
            }
        if (!dup) out.push_back(m);
    }
    std::sort(out.begin(), out.end(), [](const LocalMin& x, const LocalMin& y) { return x.value < y.value; });
    if (out.size() > 6) out.resize(6);
    return out;
}

struct RatioMin {
    double t;
    ProductVector p;
};

// Minimizes f_Omega / (-f_Gamma) locally by the fractional-programming iteration:
// t <- ratio at the local minimizer of f_Omega + t f_Gamma.
std::optional<RatioMin> ratio_descent(const HermitianOp& omega, const HermitianOp& gamma, ProductVector p, double t,
                                      const std::vector<Zero>& zeros) {
    const Dims d = omega.dims();
    LocalMinOptions lo;
    for (int it = 0; it < 80; ++it) {
        CMat a = omega.mat() + t * gamma.mat();
        LocalMin m = local_minimize(a, d, p, lo);
        double fo = eval_form(omega, m.point);
        double fg = eval_form(gamma, m.point);
        if (!(fg < 0)) return std::nullopt;
        for (const auto& z : zeros)
            if (same_point(m.point, z.point, 1 - 1e-6)) return std::nullopt;
        double tn = fo / (-fg);
        p = m.point;
        bool done = std::abs(tn - t) <= 1e-14 * std::abs(t);
        t = tn;
        if (done) break;
    }
    if (!(t > 0)) return std::nullopt;
    LocalMin m = newton_polish(omega.mat() + t * gamma.mat(), d, p);
    return RatioMin{t, m.point};
}

} // namespace

BoundaryResult face_boundary(const HermitianOp& omega, const HermitianOp& gamma, const std::vector<Zero>& zeros,
                             const BoundaryOptions& opt) {
    const Dims d = omega.dims();
    if (gamma.dims() != d) throw DimensionMismatch("direction does not match witness dims");
    const double onorm = omega.norm();
    double gn = gamma.norm();
    if (!(gn > 1e-14 * std::max(1.0, onorm))) throw NotInKernel("zero direction");
    HermitianOp g = gamma;
    if (!zeros.empty()) {
        ConstraintSystem cs = assemble_U(d, zeros, true, opt.tol.svd);
        double r = cs.residual(g) / gn;
        if (r > 1e-6) throw NotInKernel("constraint residual " + std::to_string(r));
        g = cs.project_to_kernel(g);
    }
    const double tr = omega.trace();
    if (!(std::abs(tr) > 1e-14)) throw NotInKernel("witness has zero trace");
    g = g - omega * (g.trace() / tr);
    gn = g.norm();
    if (!(gn > 1e-12 * std::max(1.0, onorm))) throw NotInKernel("direction is parallel to the witness");

    BoundaryResult res;
    res.gamma = g;
    const double unit = onorm / gn;
    const HermitianOp gh = g * unit;
    const int n = d.n();
    const int restarts = opt.restarts > 0 ? opt.restarts : 100 * n;
    const int bracket_restarts = std::max(1, restarts / 2);
    const double thresh = opt.tol.zero;
    auto at = [&](double t) { return CMat(omega.mat() + t * gh.mat()); };

    double t_h = std::numeric_limits<double>::infinity();
    RVec hdir;
    for (size_t i = 0; i < zeros.size(); ++i) {
        RVec dir;
        double t = hessian_event_time(omega, gh, zeros[i], opt.tol, &dir);
        if (t < t_h) {
            t_h = t;
            hdir = dir;
            res.hessian_zero_index = static_cast<int>(i);
        }
    }

    std::vector<LocalMin> negs;
    double t = std::min(opt.t_start, t_h), hi = -1;
    for (int iter = 0;; ++iter) {
        negs = negative_minima(at(t), d, bracket_restarts, opt.seed, "bracket-" + std::to_string(iter), thresh,
                               opt.threads);
        ++res.multistarts;
        if (!negs.empty()) {
            hi = t;
            break;
        }
        if (t >= t_h) break;
        if (t >= opt.t_max) throw Unbounded("no boundary found up to t = " + std::to_string(t * unit));
        t = std::min(2 * t, t_h);
    }

    // A degenerating zero with a nonzero cubic term sheds a new zero before t_H;
    // its basin can be small, so look along the null direction explicitly.
    if (hi < 0 && res.hessian_zero_index >= 0) {
        const Zero& z = zeros[res.hessian_zero_index];
        const CMat a = at(t_h);
        LocalMinOptions lo;
        for (double s : {0.02, 0.05, 0.1, 0.2, 0.4, 0.8})
            for (double sign : {1.0, -1.0}) {
                LocalMin m = local_minimize(a, d, step_point(z.frame, hdir, sign * s), lo);
                if (m.value < -thresh && !same_point(m.point, z.point, 1 - 1e-6)) negs.push_back(m);
            }
        if (!negs.empty()) hi = t_h;
    }

    double tc = std::numeric_limits<double>::infinity();
    Trigger trig = Trigger::None;
    ProductVector np;
    auto improve = [&](const std::vector<LocalMin>& from, double t0) {
        bool any = false;
        for (const auto& m : from) {
            auto r = ratio_descent(omega, gh, m.point, t0, zeros);
            if (r && r->t < tc) {
                tc = r->t;
                np = r->p;
                trig = Trigger::NewZero;
                any = true;
            }
        }
        return any;
    };
    if (hi > 0) {
        if (!improve(negs, hi)) throw ConvergenceFailure("negative minima found but no boundary point located");
    } else {
        tc = t_h;
        trig = Trigger::NewHessianZero;
    }

    if (opt.validate) {
        for (int round = 0;; ++round) {
            double tv = tc * (1 - 1e-4);
            negs = negative_minima(at(tv), d, restarts, opt.seed, "validate-" + std::to_string(round), thresh,
                                   opt.threads);
            ++res.multistarts;
            if (negs.empty()) break;
            if (round >= 4 || !improve(negs, tv))
                throw ConvergenceFailure("boundary validation keeps finding negative values below t_c");
        }
    }

    res.t_c = tc * unit;
    res.trigger = trig;
    if (trig == Trigger::NewZero) {
        res.new_point = np;
        res.hessian_zero_index = -1;
    } else {
        res.hessian_direction = hdir;
    }
    return res;
}

int FaceDescent::quartic_count() const {
    int q = 0;
    for (const auto& z : final_zeros) q += z.kind == ZeroKind::Quartic;
    return q;
}

namespace {

HermitianOp random_kernel_direction(const ConstraintSystem& cs, const HermitianOp& omega, Rng& rng) {
    HermitianOp g = HermitianOp::zero(omega.dims());
    for (const auto& b : cs.kernel_basis) g += b * rng.normal();
    g = g - omega * (hs_inner(g, omega) / hs_inner(omega, omega));
    return g - omega * g.trace();
}

} // namespace

FaceDescent find_extremal(const HermitianOp& start, const DescentOptions& opt) {
    const Dims d = start.dims();
    const int n = d.n();
    const int restarts = opt.restarts > 0 ? opt.restarts : 100 * n;
    const int max_steps = opt.max_steps > 0 ? opt.max_steps : n * n;
    FaceDescent fd;

    HermitianOp omega = start.normalized_trace();
    FindOptions fo;
    fo.restarts = restarts;
    fo.tol = opt.tol;
    fo.threads = opt.threads;
    fo.seed = substream_seed(opt.seed, "zero-search", 0);
    ZeroSet zs0 = find_zeros(omega, fo);
    std::vector<Zero> zeros = zs0.all();
    fd.continuum = zs0.continuum_flag;
    ConstraintSystem cs = assemble_U(d, zeros, true, opt.tol.svd);
    int kd = cs.kernel_dim();
    fd.steps.push_back({omega, zeros, kd, 0.0, Trigger::None, "start"});

    bool stalled = false;
    for (int step = 1; step <= max_steps && kd > 1 && !fd.continuum; ++step) {
        if (opt.stop_at_zeros > 0 && static_cast<int>(zeros.size()) >= opt.stop_at_zeros) break;
        bool advanced = false;
        for (int attempt = 0; attempt <= opt.max_gamma_retries && !advanced; ++attempt) {
            const std::uint64_t key = static_cast<std::uint64_t>(step) * 64 + attempt;
            Rng rng(opt.seed, "gamma", key);
            HermitianOp gamma = random_kernel_direction(cs, omega, rng);
            BoundaryOptions bo;
            bo.restarts = restarts;
            bo.seed = substream_seed(opt.seed, "boundary", key);
            bo.tol = opt.tol;
            bo.threads = opt.threads;
            bo.validate = false;  // the full zero search at the new witness below plays that role
            BoundaryResult br;
            try {
                br = face_boundary(omega, gamma, zeros, bo);
            } catch (const ConvergenceFailure& e) {
                fd.branches.push_back("step " + std::to_string(step) + ": boundary search failed, new direction");
                continue;
            }
            if (br.trigger == Trigger::NewHessianZero && (!opt.accept_quartic || attempt < opt.max_gamma_retries)) {
                fd.branches.push_back("step " + std::to_string(step) + ": Hessian zero, perturbed direction");
                continue;
            }
            HermitianOp next = (omega + br.gamma * br.t_c).normalized_trace();

            std::vector<Zero> nz;
            std::string note;
            try {
                for (size_t i = 0; i < zeros.size(); ++i) {
                    ProductVector p = zeros[i].point;
                    if (zeros[i].kind == ZeroKind::Quadratic && static_cast<int>(i) != br.hessian_zero_index)
                        p = newton_polish(next.mat(), d, p).point;
                    nz.push_back(classify_zero(next, p, opt.tol));
                }
                if (br.trigger == Trigger::NewZero)
                    nz.push_back(classify_zero(next, newton_polish(next.mat(), d, br.new_point).point, opt.tol));
            } catch (const Error& e) {
                fd.branches.push_back("step " + std::to_string(step) + ": zero classification failed (" + e.what() +
                                      "), new direction");
                continue;
            }
            if (br.trigger == Trigger::NewHessianZero) {
                note = "accepted quartic zero";
                fd.branches.push_back("step " + std::to_string(step) + ": accepted quartic zero");
            }
            bool near_quartic = false;
            for (const auto& z : nz)
                if (z.kind == ZeroKind::Quadratic &&
                    z.hessian_eigenvalues(0) < 10 * hessian_cutoff(z.hessian_eigenvalues, opt.tol))
                    near_quartic = true;
            if (near_quartic && attempt < opt.max_gamma_retries) {
                fd.branches.push_back("step " + std::to_string(step) + ": near-quartic zero, perturbed direction");
                continue;
            }

            fo.seed = substream_seed(opt.seed, "zero-search", key);
            ZeroSet check;
            try {
                check = find_zeros(next, fo);
            } catch (const NotAWitness&) {
                fd.branches.push_back("step " + std::to_string(step) + ": boundary point failed the witness check");
                continue;
            }
            if (check.continuum_flag && attempt < opt.max_gamma_retries) {
                fd.branches.push_back("step " + std::to_string(step) +
                                      ": zeros crowding (near-quartic split), perturbed direction");
                continue;
            }
            for (const auto& z : check.all()) {
                bool known = false;
                for (const auto& k : nz) known = known || same_point(k.point, z.point, 1 - 1e-6);
                if (!known) {
                    nz.push_back(z);
                    note += note.empty() ? "extra zero found" : "; extra zero found";
                }
            }
            ConstraintSystem ncs = assemble_U(d, nz, true, opt.tol.svd);
            if (ncs.kernel_dim() >= kd && !check.continuum_flag) {
                fd.branches.push_back("step " + std::to_string(step) + ": kernel did not shrink, new direction");
                continue;
            }
            omega = next;
            zeros = std::move(nz);
            cs = std::move(ncs);
            kd = cs.kernel_dim();
            fd.continuum = check.continuum_flag;
            if (fd.continuum) note += note.empty() ? "continuum of zeros" : "; continuum of zeros";
            fd.steps.push_back({omega, zeros, kd, br.t_c, br.trigger, note});
            advanced = true;
        }
        if (!advanced) {
            stalled = true;
            break;
        }
    }
    fd.final = omega;
    fd.final_zeros = zeros;
    if (kd <= 1 && !fd.continuum)
        fd.terminated = Termination::Extremal;
    else if (stalled || fd.continuum)
        fd.terminated = Termination::QuarticStall;
    else
        fd.terminated = Termination::MaxSteps;
    return fd;
}

FaceDescent find_extremal(Dims d, const DescentOptions& opt) {
    return find_extremal(HermitianOp::maximally_mixed(d), opt);
}

int span_rank(const std::vector<ProductVector>& pts, bool partial_conjugate, double tol) {
    if (pts.empty()) return 0;
    const Eigen::Index n = pts[0].phi.size() * pts[0].chi.size();
    CMat m(n, pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        m.col(i) = kron_product(partial_conjugate ? pts[i].partial_conjugate() : pts[i]);
    Eigen::JacobiSVD<CMat> svd(m);
    const RVec& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

Optimality check_optimal(const HermitianOp& omega, const std::vector<Zero>& zeros) {
    Optimality o;
    std::vector<ProductVector> pts;
    for (const auto& z : zeros) pts.push_back(z.point);
    o.span_rank = span_rank(pts, false);
    o.conjugate_span_rank = span_rank(pts, true);
    o.optimal_if_spanning = o.span_rank == omega.n();
    o.nd_optimal_if_doubly_spanning = o.optimal_if_spanning && o.conjugate_span_rank == omega.n();
    return o;
}

} // namespace wf
