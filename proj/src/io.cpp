#include "wf/io.hpp"

#include <fstream>
#include <sstream>

namespace wf {

namespace {

json real_rows(const RMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

RMat rows_to_real(const json& rows, int n, const char* what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ParseError(std::string(what) + " must have " + std::to_string(n) + " rows");
    RMat m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& r = rows[i];
        if (!r.is_array() || static_cast<int>(r.size()) != n)
            throw ParseError(std::string(what) + " row " + std::to_string(i) + " has the wrong length");
        for (int j = 0; j < n; ++j) {
            if (!r[j].is_number()) throw ParseError(std::string(what) + " entries must be numbers");
            m(i, j) = r[j].get<double>();
        }
    }
    return m;
}

int get_dim(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw ParseError(std::string("missing integer field ") + key);
    int v = j[key].get<int>();
    if (v < 2) throw ParseError(std::string(key) + " must be at least 2");
    return v;
}

json mat_block(const CMat& m) { return json{{"re", real_rows(m.real())}, {"im", real_rows(m.imag())}}; }

HermitianOp op_from_block(const json& j, Dims d) {
    if (!j.contains("re") || !j.contains("im")) throw ParseError("operator needs re and im arrays");
    const int n = d.n();
    CMat m = rows_to_real(j["re"], n, "re").cast<cd>() + cd(0, 1) * rows_to_real(j["im"], n, "im").cast<cd>();
    return HermitianOp(d, m);
}

} // namespace

json witness_to_json(const HermitianOp& a) {
    json j{{"na", a.dims().na}, {"nb", a.dims().nb}};
    j["re"] = real_rows(a.mat().real());
    j["im"] = real_rows(a.mat().imag());
    return j;
}

HermitianOp witness_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("witness must be a JSON object");
    if (j.contains("kind") && j["kind"] == "real") throw ParseError("expected a complex witness, got kind real");
    return op_from_block(j, Dims(get_dim(j, "na"), get_dim(j, "nb")));
}

json decomp_to_json(const DecompWitness& w) {
    json j = witness_to_json(w.witness);
    j["decomposition"] = {{"rho", mat_block(w.rho.mat())}, {"sigma", mat_block(w.sigma.mat())}};
    return j;
}

std::optional<std::pair<HermitianOp, HermitianOp>> decomposition_from_json(const json& j) {
    if (!j.contains("decomposition")) return std::nullopt;
    const Dims d(get_dim(j, "na"), get_dim(j, "nb"));
    const json& b = j["decomposition"];
    if (!b.contains("rho") || !b.contains("sigma")) throw ParseError("decomposition needs rho and sigma");
    return std::make_pair(op_from_block(b["rho"], d), op_from_block(b["sigma"], d));
}

json real_to_json(const RealWitness& w) {
    return json{{"kind", "real"},
                {"na", w.source_dims.na},
                {"nb", w.source_dims.nb},
                {"matrix", real_rows(w.matrix)}};
}

RealWitness real_from_json(const json& j) {
    if (!j.contains("kind") || j["kind"] != "real") throw ParseError("expected kind real");
    const Dims d(get_dim(j, "na"), get_dim(j, "nb"));
    RMat m = rows_to_real(j["matrix"], 4 * d.n(), "matrix");
    if ((m - m.transpose()).norm() > 1e-9 * std::max(1.0, m.norm())) throw NotHermitian("real witness is not symmetric");
    return {0.5 * (m + m.transpose()), d};
}

json vector_to_json(const CVec& v) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return json{{"re", re}, {"im", im}};
}

CVec vector_from_json(const json& j) {
    if (!j.contains("re") || !j.contains("im") || !j["re"].is_array() || j["re"].size() != j["im"].size())
        throw ParseError("vector needs re and im arrays of equal length");
    CVec v(j["re"].size());
    for (size_t i = 0; i < j["re"].size(); ++i) v(i) = cd(j["re"][i].get<double>(), j["im"][i].get<double>());
    return v;
}

json point_to_json(const ProductVector& p) { return json{{"phi", vector_to_json(p.phi)}, {"chi", vector_to_json(p.chi)}}; }

ProductVector point_from_json(const json& j) {
    if (!j.contains("phi") || !j.contains("chi")) throw ParseError("zero needs phi and chi");
    return {vector_from_json(j["phi"]), vector_from_json(j["chi"])};
}

json zero_to_json(const Zero& z) {
    json j = point_to_json(z.point);
    j["value"] = z.value;
    j["gradient_norm"] = z.gradient_norm;
    j["kind"] = z.kind == ZeroKind::Quadratic ? "quadratic" : "quartic";
    j["hessian_kernel_dim"] = z.kernel_dim();
    j["hessian_min_eigenvalue"] = z.hessian_eigenvalues.size() ? z.hessian_eigenvalues(0) : 0.0;
    j["continuum"] = z.continuum;
    return j;
}

json zeros_to_json(Dims d, const std::vector<Zero>& zs) {
    json arr = json::array();
    for (const auto& z : zs) arr.push_back(zero_to_json(z));
    return json{{"na", d.na}, {"nb", d.nb}, {"zeros", arr}};
}

std::vector<ProductVector> points_from_json(const json& j) {
    if (!j.contains("zeros") || !j["zeros"].is_array()) throw ParseError("expected a zeros array");
    const Dims d(get_dim(j, "na"), get_dim(j, "nb"));
    std::vector<ProductVector> out;
    for (const auto& z : j["zeros"]) {
        ProductVector p = point_from_json(z);
        if (p.dims() != d) throw ParseError("zero does not match na, nb");
        out.push_back(p);
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

} // namespace wf
