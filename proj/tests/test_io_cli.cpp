#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "support.hpp"
#include "wf/catalog.hpp"
#include "wf/decomposable.hpp"
#include "wf/io.hpp"
#include "wf/realform.hpp"

using namespace wft;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    fs::path p = fs::temp_directory_path() / "wf_cli_tests";
    fs::create_directories(p);
    return p;
}

int run(const std::string& args) {
    std::string cmd = std::string(WF_CLI_PATH) + " " + args + " 2>/dev/null";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

json without_timestamp(const fs::path& p) {
    json j = json::parse(slurp(p));
    j.erase("timestamp");
    return j;
}

} // namespace

TEST_CASE("witness JSON round trip and validation") {
    Rng rng(1);
    HermitianOp a = random_op(Dims(2, 3), rng);
    HermitianOp b = witness_from_json(json::parse(witness_to_json(a).dump()));
    CHECK(b.dims() == a.dims());
    CHECK((b.mat() - a.mat()).norm() == 0.0);

    json j = witness_to_json(a);
    j["im"][0][1] = 5.0;
    CHECK_THROWS_AS(witness_from_json(j), NotHermitian);
    json k = witness_to_json(a);
    k["na"] = 3;
    CHECK_THROWS_AS(witness_from_json(k), ParseError);
    json r = real_to_json(to_real(a));
    CHECK_THROWS_AS(witness_from_json(r), ParseError);
    RealWitness back = real_from_json(r);
    CHECK((back.matrix - to_real(a).matrix).norm() == 0.0);
    CHECK(back.source_dims == a.dims());

    ProductVector p = random_product_vector(Dims(3, 4), rng);
    ProductVector q = point_from_json(point_to_json(p));
    CHECK((q.phi - p.phi).norm() == 0.0);
    CHECK((q.chi - p.chi).norm() == 0.0);

    DecompWitness dw = with_prescribed_zeros({p}, Dims(3, 4), rng);
    auto pair = decomposition_from_json(decomp_to_json(dw));
    REQUIRE(pair.has_value());
    CHECK((pair->first.mat() - dw.rho.mat()).norm() == 0.0);
    CHECK((pair->second.mat() - dw.sigma.mat()).norm() == 0.0);
    CHECK_FALSE(decomposition_from_json(witness_to_json(a)).has_value());
    CHECK_THROWS_AS(read_json_file((scratch() / "missing.json").string()), ParseError);
}

TEST_CASE("cli: catalog, certify, zeros, spa, real-form") {
    fs::path dir = scratch();
    auto f = [&](const char* n) { return (dir / n).string(); };
    REQUIRE(run("catalog --name choi-lam --out " + f("cl.json")) == 0);
    REQUIRE(run("certify --in " + f("cl.json") + " --out " + f("cert.json")) == 0);
    json cert = json::parse(slurp(f("cert.json")));
    CHECK(cert["result"]["extremal"] == true);
    CHECK(cert["tool"] == "witness-forge");
    CHECK(cert.contains("version"));
    CHECK(cert["tolerances"]["zero"] == 1e-9);
    CHECK(cert["config"]["command"] == "certify");

    std::ofstream(f("id.json")) << witness_to_json(HermitianOp::identity(Dims(2, 2))).dump();
    REQUIRE(run("zeros --in " + f("id.json") + " --out " + f("z.json")) == 0);
    json z = json::parse(slurp(f("z.json")));
    CHECK(z["result"]["zeros"].empty());
    CHECK(z["result"]["p_star"] == doctest::Approx(1.0));

    REQUIRE(run("spa --in " + f("cl.json") + " --out " + f("spa.json")) == 0);
    json s = json::parse(slurp(f("spa.json")));
    CHECK(s["result"]["p1"].get<double>() >= 0);

    REQUIRE(run("real-form --in " + f("cl.json") + " --out " + f("real.json")) == 0);
    CHECK(real_from_json(json::parse(slurp(f("real.json")))).matrix.rows() == 36);

    REQUIRE(run("decompose --prescribe 4 --na 3 --nb 3 --seed 2 --out " + f("dec.json")) == 0);
    json dec = json::parse(slurp(f("dec.json")));
    CHECK(dec["result"]["decomposable_dim"] == 44);
    std::ofstream(f("dec_w.json")) << dec["result"].dump();
    REQUIRE(run("decompose --in " + f("dec_w.json") + " --out " + f("split.json")) == 0);
    json split = json::parse(slurp(f("split.json")));
    CHECK(split["result"]["given_decomposition_residual"].get<double>() < 1e-10);
}

TEST_CASE("cli: exit codes") {
    fs::path dir = scratch();
    CHECK(run("") == 1);
    CHECK(run("certify") == 1);
    CHECK(run("certify --in " + (dir / "nope.json").string()) == 1);
    CHECK(run("catalog --name nonsense") == 1);
    CMat m = CMat::Identity(4, 4);
    m(0, 0) = -1;
    std::ofstream((dir / "neg.json").string()) << witness_to_json(HermitianOp(Dims(2, 2), m)).dump();
    CHECK(run("zeros --in " + (dir / "neg.json").string() + " --out " + (dir / "neg_out.json").string()) == 2);
    json r = json::parse(slurp(dir / "neg_out.json"));
    CHECK(r["error"]["kind"] == "NotAWitness");
    ProductVector cert = point_from_json(r["error"]["counterexample"]);
    CHECK(eval_form(HermitianOp(Dims(2, 2), m), cert) < 0);
    // nine generic zeros leave no room for rho
    CHECK(run("decompose --prescribe 9 --na 3 --nb 3 --out " + (dir / "full.json").string()) == 1);
    CHECK(json::parse(slurp(dir / "full.json"))["error"]["kind"] == "TooManyZeros");
}

TEST_CASE("cli: find-extremal replays identically and feeds face-geometry") {
    fs::path dir = scratch();
    REQUIRE(run("find-extremal --na 3 --nb 3 --seed 7 --out " + (dir / "a.json").string()) == 0);
    REQUIRE(run("find-extremal --na 3 --nb 3 --seed 7 --out " + (dir / "b.json").string()) == 0);
    json a = without_timestamp(dir / "a.json"), b = without_timestamp(dir / "b.json");
    CHECK(a == b);
    CHECK(a["result"]["terminated"] == "extremal");
    CHECK(a["result"]["final_zeros"]["zeros"].size() == 9);
    REQUIRE(run("face-geometry --in " + (dir / "a.json").string() + " --out " + (dir / "g.csv").string()) == 0);
    std::string csv = slurp(dir / "g.csv");
    CHECK(csv.rfind("face,vertices,volume", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}
