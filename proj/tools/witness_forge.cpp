// witness-forge: command-line front end.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "wf/catalog.hpp"
#include "wf/constraints.hpp"
#include "wf/decomposable.hpp"
#include "wf/extremality.hpp"
#include "wf/facegeom.hpp"
#include "wf/io.hpp"
#include "wf/maps.hpp"
#include "wf/realform.hpp"
#include "wf/version.hpp"
#include "wf/zerofinder.hpp"

using namespace wf;

namespace {

struct Config {
    std::string command;
    int na = 3, nb = 3;
    std::uint64_t seed = 0;
    int restarts = 0;
    int max_steps = 0;
    double tol_zero = 1e-9;
    double tol_svd = 1e-8;
    std::string quartic = "on";
    std::string in, out, zeros_in;
    // catalog
    std::string name = "choi-lam";
    double a = 1, b = 0, c = 1, theta = 0;
    // decompose
    int prescribe = 0;
    // face-geometry
    std::string optimize = "on";

    Tolerances tol() const {
        Tolerances t;
        t.zero = tol_zero;
        t.svd = tol_svd;
        return t;
    }
    bool quartic_on() const { return quartic == "on"; }
};

json num(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

std::string timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream s;
    s << std::put_time(std::gmtime(&t), "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

json envelope(const Config& c) {
    json cfg{{"command", c.command}, {"na", c.na}, {"nb", c.nb}, {"seed", c.seed}, {"restarts", c.restarts},
             {"max_steps", c.max_steps}, {"quartic", c.quartic}, {"in", c.in}, {"zeros", c.zeros_in}};
    if (c.command == "catalog")
        cfg.update(json{{"name", c.name}, {"a", c.a}, {"b", c.b}, {"c", c.c}, {"theta", c.theta}});
    if (c.command == "decompose") cfg["prescribe"] = c.prescribe;
    if (c.command == "face-geometry") cfg["optimize"] = c.optimize;
    Tolerances t = c.tol();
    return json{{"tool", "witness-forge"},
                {"version", kVersion},
                {"timestamp", timestamp()},
                {"config", cfg},
                {"tolerances", {{"zero", t.zero}, {"grad", t.grad}, {"hess", t.hess}, {"svd", t.svd}}}};
}

void emit(const Config& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        write_text_file(c.out, text);
}

void emit_json(const Config& c, const json& j) { emit(c, j.dump(2) + "\n"); }

FindOptions find_opts(const Config& c) {
    FindOptions fo;
    fo.restarts = c.restarts;
    fo.seed = substream_seed(c.seed, "zero-search", 0);
    fo.tol = c.tol();
    return fo;
}

json certificate_json(const Certificate& k) {
    return json{{"extremal", k.extremal},       {"kernel_dim", k.kernel_dim},     {"face_dim", k.face_dim},
                {"rank", k.rank},               {"zero_count", k.zero_count},     {"quartic_count", k.quartic_count},
                {"spectral_gap", num(k.spectral_gap)}, {"overlap", k.overlap}};
}

json zeroset_json(Dims d, const ZeroSet& zs) {
    json j = zeros_to_json(d, zs.all());
    j["p_star"] = zs.p_star;
    j["continuum_flag"] = zs.continuum_flag;
    j["isolated_count"] = zs.isolated.size();
    j["continuum_sample_count"] = zs.continuum_samples.size();
    j["restarts"] = zs.restarts;
    j["hits"] = zs.hits;
    j["unclassified"] = zs.unclassified;
    return j;
}

std::vector<Zero> zeros_for(const Config& c, const HermitianOp& w) {
    if (!c.zeros_in.empty()) {
        std::vector<Zero> out;
        for (const auto& p : points_from_json(read_json_file(c.zeros_in))) out.push_back(classify_zero(w, p, c.tol()));
        return out;
    }
    return find_zeros(w, find_opts(c)).all();
}

int cmd_find_extremal(const Config& c) {
    DescentOptions o;
    o.seed = c.seed;
    o.restarts = c.restarts;
    o.max_steps = c.max_steps;
    o.accept_quartic = c.quartic_on();
    o.tol = c.tol();
    HermitianOp start = c.in.empty() ? HermitianOp::maximally_mixed(Dims(c.na, c.nb))
                                     : witness_from_json(read_json_file(c.in));
    FaceDescent fd = find_extremal(start, o);
    json steps = json::array();
    for (const auto& s : fd.steps)
        steps.push_back(json{{"kernel_dim", s.kernel_dim},
                             {"zero_count", s.zeros.size()},
                             {"t_c", s.t_c},
                             {"trigger", to_string(s.trigger)},
                             {"note", s.note},
                             {"witness", witness_to_json(s.witness)}});
    json r = envelope(c);
    Certificate k = certify(fd.final, fd.final_zeros, true, o.tol);
    Optimality op = check_optimal(fd.final, fd.final_zeros);
    r["result"] = {{"terminated", to_string(fd.terminated)},
                   {"quadratic_extremal", fd.quadratic_extremal()},
                   {"quartic_count", fd.quartic_count()},
                   {"continuum", fd.continuum},
                   {"branches", fd.branches},
                   {"certificate", certificate_json(k)},
                   {"optimal_if_spanning", op.optimal_if_spanning},
                   {"nd_optimal_if_doubly_spanning", op.nd_optimal_if_doubly_spanning},
                   {"final", witness_to_json(fd.final)},
                   {"final_zeros", zeros_to_json(fd.final.dims(), fd.final_zeros)},
                   {"steps", steps}};
    emit_json(c, r);
    return 0;
}

int cmd_certify(const Config& c) {
    HermitianOp w = witness_from_json(read_json_file(c.in));
    std::vector<Zero> zs = zeros_for(c, w);
    json r = envelope(c);
    if (zs.empty()) {
        r["result"] = {{"extremal", false}, {"kernel_dim", w.n() * w.n()}, {"zero_count", 0},
                       {"note", "no zeros: interior witness"}};
    } else {
        Certificate k = certify(w, zs, c.quartic_on(), c.tol());
        Optimality op = check_optimal(w, zs);
        r["result"] = certificate_json(k);
        r["result"]["optimal_if_spanning"] = op.optimal_if_spanning;
        r["result"]["nd_optimal_if_doubly_spanning"] = op.nd_optimal_if_doubly_spanning;
    }
    emit_json(c, r);
    return 0;
}

int cmd_zeros(const Config& c) {
    HermitianOp w = witness_from_json(read_json_file(c.in));
    ZeroSet zs = find_zeros(w, find_opts(c));
    json r = envelope(c);
    r["result"] = zeroset_json(w.dims(), zs);
    emit_json(c, r);
    return 0;
}

int cmd_spa(const Config& c) {
    SpaResult s = spa(witness_from_json(read_json_file(c.in)));
    json r = envelope(c);
    r["result"] = {{"p1", s.p1},
                   {"p2", s.p2},
                   {"lambda1", s.lambda1},
                   {"lambda2", s.lambda2},
                   {"spa_of_omega_is_ppt", s.spa_of_omega_is_ppt},
                   {"spa_of_pt_is_ppt", s.spa_of_pt_is_ppt},
                   {"p0", s.p0_status}};
    emit_json(c, r);
    return 0;
}

int cmd_catalog(const Config& c) {
    CatalogEntry e;
    if (c.name == "choi-lam")
        e = choi_lam(c.a, c.b, c.c, c.theta);
    else if (c.name == "robertson")
        e = robertson();
    else
        throw ParseError("unknown catalog name " + c.name + " (choi-lam, robertson)");
    json j = envelope(c);
    j.update(witness_to_json(e.witness));
    j["name"] = e.name;
    json zs = json::array();
    for (const auto& p : e.analytic_zeros) zs.push_back(point_to_json(p));
    j["analytic_zeros"] = zs;
    if (c.name == "choi-lam") j["ha_kye_member"] = ha_kye_member(c.a, c.b, c.c, c.theta, 1e-12);
    emit_json(c, j);
    return 0;
}

std::vector<std::vector<ProductVector>> faces_from(const json& j) {
    std::vector<std::vector<ProductVector>> faces;
    if (j.is_array()) {
        for (const auto& f : j) faces.push_back(points_from_json(f));
    } else if (j.contains("faces")) {
        for (const auto& f : j["faces"]) faces.push_back(points_from_json(f));
    } else if (j.contains("result") && j["result"].contains("final_zeros")) {
        faces.push_back(points_from_json(j["result"]["final_zeros"]));
    } else {
        faces.push_back(points_from_json(j));
    }
    return faces;
}

int cmd_face_geometry(const Config& c) {
    auto faces = faces_from(read_json_file(c.in));
    std::ostringstream csv;
    csv << std::setprecision(10);
    csv << "face,vertices,volume,volume_ratio,v_star_ratio,d_c,d_c_star_ratio,r_m,d_min,rank_min,interior\n";
    for (size_t i = 0; i < faces.size(); ++i) {
        SimplexFace f = face_from_zeros(faces[i]);
        const int n = static_cast<int>(f.vertices.size()) - 1;
        double vol = cm_volume(f);
        ClosestState cs = closest_state(f);
        double vstar = NAN, dstar = NAN;
        if (c.optimize == "on" && n >= 1 && !f.degenerate()) {
            vstar = optimize_shape(f, ShapeObjective::MaxVolume, substream_seed(c.seed, "shape-opt", i)).ratio;
            dstar = optimize_shape(f, ShapeObjective::MinCenterDistance, substream_seed(c.seed, "shape-opt", i)).ratio;
        }
        csv << i << ',' << f.vertices.size() << ',' << vol << ',' << (vol > 0 ? vol / v_reg(n, std::sqrt(2.0)) : 0.0)
            << ',' << vstar << ',' << center_distance(f) << ',' << dstar << ',' << r_m(f.dims) << ',' << cs.d_min << ','
            << cs.rank << ',' << (cs.interior ? 1 : 0) << '\n';
    }
    emit(c, csv.str());
    return 0;
}

int cmd_decompose(const Config& c) {
    json r = envelope(c);
    if (c.prescribe > 0) {
        Dims d(c.na, c.nb);
        Rng rng(c.seed, "prescribe");
        std::vector<ProductVector> pts;
        for (int i = 0; i < c.prescribe; ++i) pts.emplace_back(rng.cvec(d.na), rng.cvec(d.nb));
        DecompWitness w = with_prescribed_zeros(pts, d, rng);
        OverlapProjectors op = overlap_projector(pts, d);
        r["result"] = decomp_to_json(w);
        r["result"]["prescribed_zeros"] = json::array();
        for (const auto& p : pts) r["result"]["prescribed_zeros"].push_back(point_to_json(p));
        r["result"]["d1"] = w.d1;
        r["result"]["d2"] = w.d2;
        r["result"]["decomposable_dim"] = op.decomposable_dim();
        r["result"]["hessian_kernel_bound"] = hessian_kernel_bound(d, w.d1, w.d2);
        emit_json(c, r);
        return 0;
    }
    json in = read_json_file(c.in);
    HermitianOp w = witness_from_json(in);
    std::vector<ProductVector> pts;
    for (const auto& z : zeros_for(c, w)) pts.push_back(z.point);
    PartialDecomposition pd = partial_decompose(w, pts);
    r["result"] = {{"zero_count", pts.size()},
                   {"overlap_rank", pd.rank_o},
                   {"split_residual", pd.split_residual},
                   {"rho1_min_eigenvalue", pd.rho1_min_eig},
                   {"sigma1_min_eigenvalue", pd.sigma1_min_eig},
                   {"remainder_norm", pd.remainder.norm()},
                   {"decomposed", pd.decomposed()},
                   {"rho1", witness_to_json(pd.rho1)},
                   {"sigma1", witness_to_json(pd.sigma1)},
                   {"remainder", witness_to_json(pd.remainder)}};
    if (auto given = decomposition_from_json(in))
        r["result"]["given_decomposition_residual"] = decomposition_residual(w, given->first, given->second, pts);
    emit_json(c, r);
    return 0;
}

int cmd_real_form(const Config& c) {
    RealWitness w = to_real(witness_from_json(read_json_file(c.in)));
    emit_json(c, real_to_json(w));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct, search for and certify extremal entanglement witnesses"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* s, bool dims) {
        if (dims) {
            s->add_option("--na", c.na, "dimension of the first factor");
            s->add_option("--nb", c.nb, "dimension of the second factor");
        }
        s->add_option("--seed", c.seed, "root RNG seed");
        s->add_option("--restarts", c.restarts, "multistart count (0: 100 N)");
        s->add_option("--tol-zero", c.tol_zero, "zero tolerance on form values");
        s->add_option("--tol-svd", c.tol_svd, "relative singular value cutoff");
        s->add_option("--out", c.out, "output file (default stdout)");
    };
    auto* fe = app.add_subcommand("find-extremal", "run the face descent from I/N or --in");
    common(fe, true);
    fe->add_option("--in", c.in, "starting witness JSON");
    fe->add_option("--max-steps", c.max_steps, "step cap (0: N^2)");
    fe->add_option("--quartic", c.quartic, "accept quartic zeros when retries run out")->check(CLI::IsMember({"on", "off"}));
    auto* ce = app.add_subcommand("certify", "extremality certificate for a witness");
    common(ce, false);
    ce->add_option("--in", c.in, "witness JSON")->required();
    ce->add_option("--zeros", c.zeros_in, "zero list JSON (default: search)");
    ce->add_option("--quartic", c.quartic, "include Hessian-zero constraints")->check(CLI::IsMember({"on", "off"}));
    auto* ze = app.add_subcommand("zeros", "find the zeros of a witness");
    common(ze, false);
    ze->add_option("--in", c.in, "witness JSON")->required();
    auto* sp = app.add_subcommand("spa", "structural physical approximation parameters");
    common(sp, false);
    sp->add_option("--in", c.in, "witness JSON")->required();
    auto* ca = app.add_subcommand("catalog", "emit an analytic witness");
    common(ca, false);
    ca->add_option("--name", c.name, "choi-lam or robertson");
    ca->add_option("--a", c.a);
    ca->add_option("--b", c.b);
    ca->add_option("--c", c.c);
    ca->add_option("--theta", c.theta);
    auto* fg = app.add_subcommand("face-geometry", "simplex statistics of faces given by zero lists (CSV)");
    common(fg, false);
    fg->add_option("--in", c.in, "zeros JSON, list of them, or a find-extremal report")->required();
    fg->add_option("--optimize", c.optimize, "run SL x SL shape optimization")->check(CLI::IsMember({"on", "off"}));
    auto* de = app.add_subcommand("decompose", "partial decomposition, or --prescribe k random zeros");
    common(de, true);
    de->add_option("--in", c.in, "witness JSON");
    de->add_option("--zeros", c.zeros_in, "zero list JSON (default: search)");
    de->add_option("--prescribe", c.prescribe, "build a decomposable witness with k random zeros");
    auto* rf = app.add_subcommand("real-form", "real symmetric witness on doubled dimensions");
    common(rf, false);
    rf->add_option("--in", c.in, "witness JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    c.command = app.get_subcommands().front()->get_name();
    try {
        if (c.command == "find-extremal") return cmd_find_extremal(c);
        if (c.command == "certify") return cmd_certify(c);
        if (c.command == "zeros") return cmd_zeros(c);
        if (c.command == "spa") return cmd_spa(c);
        if (c.command == "catalog") return cmd_catalog(c);
        if (c.command == "face-geometry") return cmd_face_geometry(c);
        if (c.command == "decompose") {
            if (c.prescribe == 0 && c.in.empty()) throw ParseError("decompose needs --in or --prescribe");
            return cmd_decompose(c);
        }
        if (c.command == "real-form") return cmd_real_form(c);
    } catch (const NotAWitness& e) {
        json r = envelope(c);
        r["error"] = {{"kind", "NotAWitness"}, {"value", e.value}, {"counterexample", point_to_json(e.certificate)}};
        emit_json(c, r);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        json r = envelope(c);
        r["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        emit_json(c, r);
        bool convergence = e.kind() == "ConvergenceFailure" || e.kind() == "Unbounded";
        if (!convergence) std::cerr << e.what() << "\n";
        return convergence ? 3 : 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 1;
}
