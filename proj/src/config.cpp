#include "polysinc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "polysinc/errors.hpp"
#include "polysinc/sinc.hpp"

namespace polysinc {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

double get_real(const json& v, const std::string& name) {
    if (!v.is_number()) throw ConfigError(name + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(name + " must be finite");
    return d;
}

int get_int(const json& v, const std::string& name, int lo, int hi) {
    if (!v.is_number_integer()) throw ConfigError(name + " must be an integer");
    const auto i = v.get<long long>();
    if (i < lo || i > hi)
        throw ConfigError(name + " = " + std::to_string(i) + " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return static_cast<int>(i);
}

CoefficientExpr get_expr(const json& v, const std::string& name) {
    if (v.is_number()) return CoefficientExpr::number(get_real(v, name));
    if (!v.is_string()) throw ConfigError(name + " must be an expression string or a number");
    try {
        return parse_coefficient(v.get<std::string>());
    } catch (const ParseError& e) {
        throw ConfigError(name + ": " + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(name + ": " + e.what());
    }
}

std::pair<double, double> get_interval(const json& v, const std::string& name) {
    if (!v.is_array() || v.size() != 2) throw ConfigError(name + " must be a two-element array");
    const double lo = get_real(v[0], name + "[0]");
    const double hi = get_real(v[1], name + "[1]");
    if (!(lo < hi)) throw ConfigError(name + " must satisfy lo < hi");
    return {lo, hi};
}

bool odd_grid_size(int n) { return n >= 3 && n % 2 == 1; }

}  // namespace

ReferenceKind parse_reference_kind(std::string_view name) {
    if (name == "semi-analytic") return ReferenceKind::semi_analytic;
    if (name == "sampled") return ReferenceKind::sampled;
    if (name == "fd-fine") return ReferenceKind::fd_fine;
    if (name == "polysinc") return ReferenceKind::polysinc;
    throw ConfigError("unknown reference '" + std::string(name) +
                      "' (expected semi-analytic, sampled, fd-fine or polysinc)");
}

std::string to_string(ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::semi_analytic: return "semi-analytic";
        case ReferenceKind::sampled: return "sampled";
        case ReferenceKind::fd_fine: return "fd-fine";
        case ReferenceKind::polysinc: return "polysinc";
    }
    return "unknown";
}

double SolverConfig::step() const { return h ? *h : default_step(N); }

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    reject_unknown(doc, {"name", "domain", "K", "P", "a0", "b0", "a", "f", "coercivity_floor", "solver", "compare", "output"},
                   "config");
    for (const char* key : {"domain", "K", "a"})
        if (!doc.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'");

    RunConfig c;
    auto& p = c.problem;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ConfigError("name must be a string");
        c.name = doc["name"].get<std::string>();
    }

    const auto& dom = doc["domain"];
    reject_unknown(dom, {"x", "y"}, "domain");
    if (!dom.contains("x") || !dom.contains("y")) throw ConfigError("domain needs both x and y intervals");
    std::tie(p.domain.x_lo, p.domain.x_hi) = get_interval(dom["x"], "domain.x");
    std::tie(p.domain.y_lo, p.domain.y_hi) = get_interval(dom["y"], "domain.y");

    p.K = get_int(doc["K"], "K", 1, 20);
    if (doc.contains("P")) c.P = get_int(doc["P"], "P", 0, 20);
    if (doc.contains("a0")) p.a0 = get_expr(doc["a0"], "a0");
    if (doc.contains("b0")) p.b0 = get_real(doc["b0"], "b0");
    if (doc.contains("f")) p.f = get_expr(doc["f"], "f");
    if (doc.contains("coercivity_floor")) {
        p.coercivity_floor = get_real(doc["coercivity_floor"], "coercivity_floor");
        if (!(p.coercivity_floor > 0.0)) throw ConfigError("coercivity_floor must be positive");
    }

    const auto& a = doc["a"];
    if (!a.is_array()) throw ConfigError("a must be an array of expressions");
    if (a.size() != static_cast<std::size_t>(p.K))
        throw ConfigError("a has " + std::to_string(a.size()) + " entries but K = " + std::to_string(p.K));
    p.a.clear();
    for (std::size_t k = 0; k < a.size(); ++k) p.a.push_back(get_expr(a[k], "a[" + std::to_string(k) + "]"));

    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        reject_unknown(s, {"N", "h", "tau", "quadrature", "dense_limit"}, "solver");
        if (s.contains("N")) c.solver.N = get_int(s["N"], "solver.N", 1, 40);
        if (s.contains("h")) {
            const double h = get_real(s["h"], "solver.h");
            if (!(h > 0.0)) throw ConfigError("solver.h must be positive");
            c.solver.h = h;
        }
        if (s.contains("tau")) {
            c.solver.tau = get_real(s["tau"], "solver.tau");
            if (!(c.solver.tau > 0.0)) throw ConfigError("solver.tau must be positive");
        }
        if (s.contains("quadrature")) c.solver.quadrature = get_int(s["quadrature"], "solver.quadrature", 0, 200);
        if (s.contains("dense_limit"))
            c.solver.dense_limit = static_cast<std::size_t>(get_int(s["dense_limit"], "solver.dense_limit", 0, 20000));
    }
    if (c.solver.quadrature != 0 && c.solver.quadrature < c.P + 1)
        throw ConfigError("solver.quadrature must be 0 (automatic) or at least P + 1");

    if (doc.contains("compare")) {
        const auto& s = doc["compare"];
        reject_unknown(s, {"n_sweep", "reference", "fd_fine_n", "reference_P", "sample_nodes"}, "compare");
        if (s.contains("n_sweep")) {
            const auto& v = s["n_sweep"];
            if (!v.is_array() || v.empty()) throw ConfigError("compare.n_sweep must be a non-empty array");
            c.compare.n_sweep.clear();
            for (const auto& e : v) {
                const int n = get_int(e, "compare.n_sweep entry", 3, 81);
                if (!odd_grid_size(n)) throw ConfigError("compare.n_sweep entries must be odd (n = 2N + 1)");
                c.compare.n_sweep.push_back(n);
            }
        }
        if (s.contains("reference")) {
            if (!s["reference"].is_string()) throw ConfigError("compare.reference must be a string");
            c.compare.reference = parse_reference_kind(s["reference"].get<std::string>());
        }
        if (s.contains("fd_fine_n")) {
            c.compare.fd_fine_n = get_int(s["fd_fine_n"], "compare.fd_fine_n", 3, 2001);
            if (!odd_grid_size(c.compare.fd_fine_n)) throw ConfigError("compare.fd_fine_n must be odd");
        }
        if (s.contains("reference_P")) c.compare.reference_P = get_int(s["reference_P"], "compare.reference_P", 0, 20);
        if (s.contains("sample_nodes")) c.compare.sample_nodes = get_int(s["sample_nodes"], "compare.sample_nodes", 1, 1000);
    }

    if (doc.contains("output")) {
        const auto& s = doc["output"];
        reject_unknown(s, {"lattice"}, "output");
        if (s.contains("lattice")) c.lattice = get_int(s["lattice"], "output.lattice", 101, 4001);
    }

    try {
        p.check();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    const auto& p = c.problem;
    j["name"] = c.name;
    j["domain"] = {{"x", {p.domain.x_lo, p.domain.x_hi}}, {"y", {p.domain.y_lo, p.domain.y_hi}}};
    j["K"] = p.K;
    j["P"] = c.P;
    j["a0"] = p.a0.str();
    j["b0"] = p.b0;
    j["a"] = nlohmann::ordered_json::array();
    for (const auto& ak : p.a) j["a"].push_back(ak.str());
    j["f"] = p.f.str();
    j["coercivity_floor"] = p.coercivity_floor;
    j["solver"]["N"] = c.solver.N;
    if (c.solver.h) j["solver"]["h"] = *c.solver.h;
    j["solver"]["tau"] = c.solver.tau;
    j["solver"]["quadrature"] = c.solver.quadrature;
    j["solver"]["dense_limit"] = c.solver.dense_limit;
    j["compare"]["n_sweep"] = c.compare.n_sweep;
    j["compare"]["reference"] = to_string(c.compare.reference);
    j["compare"]["fd_fine_n"] = c.compare.fd_fine_n;
    j["compare"]["reference_P"] = c.compare.reference_P;
    j["compare"]["sample_nodes"] = c.compare.sample_nodes;
    j["output"]["lattice"] = c.lattice;
    return j.dump(2) + "\n";
}

}  // namespace polysinc
