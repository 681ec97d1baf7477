#include "germforge/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace germforge {

namespace {

json cplx_to_json(cplx z) { return json::array({std::real(z), std::imag(z)}); }

cplx cplx_from_json(const json& j, const char* field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw domain_error(std::string("parse: field '") + field + "' must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw domain_error("parse error in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw pipeline_error("io", "cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace

json config_to_json(const RunConfig& cfg) {
    return json{{"order", cfg.order},
                {"zero_floor", cfg.zero_floor},
                {"newton_tol", cfg.newton_tol},
                {"abel_tol", cfg.abel_tol},
                {"quad_height", cfg.quad_height},
                {"quad_samples", cfg.quad_samples},
                {"n_max", cfg.n_max},
                {"delta", cfg.delta},
                {"iteration_cap", cfg.iteration_cap},
                {"format", cfg.format}};
}

ModulusPipelineConfig to_pipeline_config(const RunConfig& cfg) {
    ModulusPipelineConfig p;
    p.input_order = cfg.order;
    p.fatou.quad_height = cfg.quad_height;
    p.fatou.quad_samples = cfg.quad_samples;
    p.fatou.n_max = cfg.n_max;
    p.fatou.iteration_cap = cfg.iteration_cap;
    return p;
}

TruncatedSeries parse_germ_json(const json& j) {
    if (!j.contains("kind") || !j["kind"].is_string())
        throw domain_error("germ file: missing or malformed 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    Parity p;
    if (kind == "holomorphic")
        p = Parity::holomorphic;
    else if (kind == "antiholomorphic")
        p = Parity::antiholomorphic;
    else
        throw domain_error("germ file: kind must be 'holomorphic' or 'antiholomorphic'");
    if (!j.contains("coefficients") || !j["coefficients"].is_array())
        throw domain_error("germ file: missing 'coefficients'");
    const auto& arr = j["coefficients"];
    std::vector<cplx> a;
    a.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) a.push_back(cplx_from_json(arr[i], "coefficients"));
    if (j.contains("order")) {
        const std::size_t N = j["order"].get<std::size_t>();
        if (N != a.size())
            throw domain_error("germ file: 'order' does not match the coefficient count");
    }
    if (a.empty() || std::abs(a[0]) == 0.0)
        throw domain_error("germ file: linear coefficient must be nonzero");
    if (p == Parity::antiholomorphic && std::abs(std::abs(a[0]) - 1.0) > 1e-6)
        throw domain_error("germ file: antiholomorphic germ needs |a_1| = 1");
    return TruncatedSeries::from_coeffs(p, a);
}

json germ_to_json(const TruncatedSeries& s) {
    json coeffs = json::array();
    for (std::size_t d = 1; d <= s.order(); ++d) coeffs.push_back(cplx_to_json(s.coeff(d)));
    return json{{"kind", s.anti() ? "antiholomorphic" : "holomorphic"},
                {"order", s.order()},
                {"coefficients", coeffs}};
}

TruncatedSeries parse_germ_file(const std::string& path) {
    return parse_germ_json(load_json_file(path));
}

void write_germ_file(const std::string& path, const TruncatedSeries& s) {
    save_json_file(path, germ_to_json(s));
}

ModulusDescriptor parse_modulus_json(const json& j) {
    ModulusDescriptor m;
    const std::string kind = j.value("kind", "antiholomorphic");
    if (kind == "holomorphic")
        m.kind = ModulusKind::holomorphic;
    else if (kind == "antiholomorphic")
        m.kind = ModulusKind::antiholomorphic;
    else
        throw domain_error("modulus file: bad 'kind'");
    if (!j.contains("k")) throw domain_error("modulus file: missing 'k'");
    m.k = j["k"].get<int>();
    if (m.k < 1) throw domain_error("modulus file: k must be positive");
    m.b = j.contains("b") ? cplx_from_json(j["b"], "b") : cplx(0.0);
    m.noise_floor = j.value("noise_floor", 1e-9);
    m.n_max = j.value("n_max", 12);
    if (j.contains("floor_model")) {
        FloorModel fm;
        fm.eps = j["floor_model"].value("eps", 1e-12);
        fm.height = j["floor_model"].value("height", 2.0);
        m.floor_model = fm;
    }
    if (j.contains("harmonic_floors"))
        for (const auto& e : j["harmonic_floors"])
            m.harmonic_floors[e[0].get<int>()] = e[1].get<double>();
    if (!j.contains("tables") || !j["tables"].is_array())
        throw domain_error("modulus file: missing 'tables'");
    for (const auto& te : j["tables"]) {
        if (!te.contains("j")) throw domain_error("modulus file: table entry without 'j'");
        const int idx = te["j"].get<int>();
        if (idx == 0 || std::abs(idx) > m.k)
            throw domain_error("modulus file: table index out of range");
        HarmonicTable t;
        if (te.contains("const")) t.constant = cplx_from_json(te["const"], "const");
        if (te.contains("coeffs"))
            for (const auto& ce : te["coeffs"])
                t.coeffs[ce["n"].get<int>()] = cplx_from_json(ce["c"], "c");
        m.tables[idx] = t;
    }
    for (int idx = 1; idx <= m.k; ++idx) {
        if (!m.tables.count(idx))
            throw domain_error("modulus file: table for j = " + std::to_string(idx) + " missing");
        if (m.kind == ModulusKind::holomorphic && !m.tables.count(-idx))
            throw domain_error("modulus file: full table needs j = -k..-1 as well");
    }
    return m;
}

json modulus_to_json(const ModulusDescriptor& m) {
    json tables = json::array();
    for (auto& [idx, t] : m.tables) {
        json coeffs = json::array();
        for (auto& [n, c] : t.coeffs) coeffs.push_back(json{{"n", n}, {"c", cplx_to_json(c)}});
        tables.push_back(json{{"j", idx}, {"const", cplx_to_json(t.constant)}, {"coeffs", coeffs}});
    }
    json out{{"kind", m.kind == ModulusKind::holomorphic ? "holomorphic" : "antiholomorphic"},
             {"k", m.k},
             {"b", cplx_to_json(m.b)},
             {"noise_floor", m.noise_floor},
             {"n_max", m.n_max},
             {"tables", tables}};
    if (m.floor_model)
        out["floor_model"] = json{{"eps", m.floor_model->eps}, {"height", m.floor_model->height}};
    if (!m.harmonic_floors.empty()) {
        json fl = json::array();
        for (auto& [n, f] : m.harmonic_floors) fl.push_back(json::array({n, f}));
        out["harmonic_floors"] = fl;
    }
    return out;
}

ModulusDescriptor parse_modulus_file(const std::string& path) {
    return parse_modulus_json(load_json_file(path));
}

void write_modulus_file(const std::string& path, const ModulusDescriptor& m) {
    save_json_file(path, modulus_to_json(m));
}

json decision_to_json(const DecisionReport& rep) {
    json w = json::object();
    for (auto& [k, v] : rep.witnesses) w[k] = v;
    return json{{"verdict", rep.verdict},
                {"case", rep.case_tag},
                {"witnesses", w},
                {"margin", rep.margin},
                {"at_precision", rep.at_precision},
                {"notes", rep.notes}};
}

namespace {

void render_text(std::ostream& os, const json& j, int indent) {
    const std::string pad(std::size_t(indent) * 2, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_object()) {
            os << pad << it.key() << ":\n";
            render_text(os, it.value(), indent + 1);
        } else {
            os << pad << it.key() << ": " << it.value().dump() << "\n";
        }
    }
}

} // namespace

void render_report(std::ostream& os, const json& report, const std::string& format) {
    if (format == "json") {
        os << report.dump(2) << "\n";
    } else {
        render_text(os, report, 0);
    }
}

void ensure_finite_json(const json& j, const std::string& stage) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v))
            throw pipeline_error(stage, "non-finite value in report");
    } else if (j.is_object() || j.is_array()) {
        for (auto& e : j) ensure_finite_json(e, stage);
    }
}

bool looks_like_modulus_file(const json& j) {
    return j.contains("tables") || j.contains("noise_floor");
}

} // namespace germforge
