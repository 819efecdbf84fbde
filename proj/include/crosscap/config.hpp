#pragma once

// JSON run configuration: surface coefficients, curve, field selection and
// the mesh / sweep options. Parsing collects every violation before failing.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "crosscap/mesh.hpp"
#include "crosscap/model.hpp"

namespace crosscap {

enum class FieldChoice { Exact, Float };

inline const char* to_string(FieldChoice f) { return f == FieldChoice::Exact ? "exact" : "float"; }

struct MeshOptions {
    Range x{-0.3, 0.3};
    int nx = 61;
    Range y{-0.5, 0.5};
    int ny = 11;
    Range u{-1, 1};
    int nu = 41;
    Range v{-1, 1};
    int nv = 41;
    friend bool operator==(const MeshOptions&, const MeshOptions&) = default;
};

struct SweepOptions {
    std::uint64_t seed = 0;
    int draws = 10;
    friend bool operator==(const SweepOptions&, const SweepOptions&) = default;
};

struct RunConfig {
    std::string name;
    UmbrellaCoefficients coeffs;
    CurveSpec curve = FamilyMP{1, 2, {Rational(1)}};
    FieldChoice field = FieldChoice::Exact;
    std::optional<int> order;  // storage order override
    int float_order = 12;
    MeshOptions mesh;
    SweepOptions sweep;

    int storage_order() const { return order ? *order : default_order(coeffs, curve); }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

class config_error : public std::invalid_argument {
public:
    explicit config_error(std::vector<std::string> problems)
        : std::invalid_argument(join(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const { return problems_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& p : v) s += (s.empty() ? "" : "; ") + p;
        return s;
    }
    std::vector<std::string> problems_;
};

namespace detail {

using nlohmann::json;

class ConfigReader {
public:
    std::vector<std::string> problems;

    void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& [key, value] : obj.items())
            if (!ok.count(key)) problems.push_back("unknown key '" + where + key + "'");
    }

    std::optional<Rational> rational(const json& j, const std::string& where) {
        try {
            if (j.is_string()) return parse_rational(j.get<std::string>());
            if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
            problems.push_back(where + ": expected an integer or a \"p/q\" string");
        } catch (const rational_parse_error& e) {
            problems.push_back(where + ": " + e.what());
        }
        return std::nullopt;
    }

    std::optional<int> integer(const json& obj, const char* key, const std::string& where, bool required) {
        if (!obj.contains(key)) {
            if (required) problems.push_back("missing key '" + where + key + "'");
            return std::nullopt;
        }
        const auto& j = obj.at(key);
        if (!j.is_number_integer()) {
            problems.push_back("'" + where + key + "' must be an integer");
            return std::nullopt;
        }
        return j.get<int>();
    }

    std::vector<Rational> rationals(const json& obj, const char* key, const std::string& where) {
        std::vector<Rational> out;
        if (!obj.contains(key)) {
            problems.push_back("missing key '" + where + key + "'");
            return out;
        }
        const auto& arr = obj.at(key);
        if (!arr.is_array()) {
            problems.push_back("'" + where + key + "' must be an array");
            return out;
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto r = rational(arr[i], where + key + "[" + std::to_string(i) + "]");
            out.push_back(r.value_or(Rational(0)));
        }
        return out;
    }

    void range(const json& obj, const char* key, Range& r) {
        if (!obj.contains(key)) return;
        const auto& j = obj.at(key);
        if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
            problems.push_back(std::string("'mesh.") + key + "' must be [lo, hi]");
            return;
        }
        r = {j[0].get<double>(), j[1].get<double>()};
        if (!(r.hi > r.lo)) problems.push_back(std::string("'mesh.") + key + "' must satisfy lo < hi");
    }

    void resolution(const json& obj, const char* key, int& n) {
        if (const auto v = integer(obj, key, "mesh.", false)) {
            n = *v;
            if (n < 2) problems.push_back(std::string("'mesh.") + key + "' must be at least 2");
        }
    }
};

inline std::optional<std::pair<int, int>> parse_index_pair(const std::string& key) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) return std::nullopt;
    try {
        std::size_t p1 = 0, p2 = 0;
        const std::string l = key.substr(0, comma), r = key.substr(comma + 1);
        const int i = std::stoi(l, &p1), j = std::stoi(r, &p2);
        if (p1 != l.size() || p2 != r.size()) return std::nullopt;
        return std::pair{i, j};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error({std::string("malformed JSON: ") + e.what()});
    }
    if (!doc.is_object()) throw config_error({"configuration must be a JSON object"});

    detail::ConfigReader rd;
    RunConfig cfg;
    rd.only_keys(doc, "", {"name", "k", "a", "b", "curve", "field", "order", "float_order", "mesh", "sweep"});

    if (doc.contains("name")) {
        if (doc["name"].is_string())
            cfg.name = doc["name"].get<std::string>();
        else
            rd.problems.push_back("'name' must be a string");
    }
    if (const auto k = rd.integer(doc, "k", "", true)) cfg.coeffs.k = *k;

    if (doc.contains("a")) {
        if (!doc["a"].is_object()) rd.problems.push_back("'a' must be an object keyed by \"i,j\"");
        else
            for (const auto& [key, value] : doc["a"].items()) {
                const auto ij = detail::parse_index_pair(key);
                if (!ij) {
                    rd.problems.push_back("'a' key '" + key + "' is not of the form \"i,j\"");
                    continue;
                }
                if (const auto r = rd.rational(value, "a[" + key + "]")) cfg.coeffs.a[*ij] = *r;
            }
    } else {
        rd.problems.push_back("missing key 'a'");
    }
    if (doc.contains("b")) {
        if (!doc["b"].is_object()) rd.problems.push_back("'b' must be an object keyed by \"i\"");
        else
            for (const auto& [key, value] : doc["b"].items()) {
                int i = 0;
                try {
                    std::size_t pos = 0;
                    i = std::stoi(key, &pos);
                    if (pos != key.size()) throw std::invalid_argument(key);
                } catch (const std::exception&) {
                    rd.problems.push_back("'b' key '" + key + "' is not an integer");
                    continue;
                }
                if (const auto r = rd.rational(value, "b[" + key + "]")) cfg.coeffs.b[i] = *r;
            }
    }
    // zero entries are the same as absent ones
    std::erase_if(cfg.coeffs.a, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(cfg.coeffs.b, [](const auto& kv) { return kv.second == 0; });

    if (!doc.contains("curve") || !doc["curve"].is_object()) {
        rd.problems.push_back("missing object 'curve'");
    } else {
        const auto& c = doc["curve"];
        const std::string family = c.contains("family") && c["family"].is_string() ? c["family"].get<std::string>() : "";
        if (family == "mpq") {
            rd.only_keys(c, "curve.", {"family", "m", "p", "q", "c"});
            FamilyMPQ s;
            s.m = rd.integer(c, "m", "curve.", true).value_or(0);
            s.p = rd.integer(c, "p", "curve.", true).value_or(0);
            s.q = rd.integer(c, "q", "curve.", true).value_or(0);
            s.c = rd.rationals(c, "c", "curve.");
            cfg.curve = s;
        } else if (family == "mp") {
            rd.only_keys(c, "curve.", {"family", "m", "p", "c"});
            FamilyMP s;
            s.m = rd.integer(c, "m", "curve.", true).value_or(0);
            s.p = rd.integer(c, "p", "curve.", true).value_or(0);
            s.c = rd.rationals(c, "c", "curve.");
            cfg.curve = s;
        } else if (family == "general") {
            rd.only_keys(c, "curve.", {"family", "first", "second"});
            cfg.curve = GeneralCurve{rd.rationals(c, "first", "curve."), rd.rationals(c, "second", "curve.")};
        } else {
            rd.problems.push_back("'curve.family' must be one of \"mpq\", \"mp\", \"general\"");
        }
        if (family == "mpq" || family == "mp" || family == "general")
            for (const auto& p : curve_violations(cfg.curve)) rd.problems.push_back(p);
    }

    if (doc.contains("field")) {
        const auto f = doc["field"].is_string() ? doc["field"].get<std::string>() : "";
        if (f == "exact") cfg.field = FieldChoice::Exact;
        else if (f == "float") cfg.field = FieldChoice::Float;
        else rd.problems.push_back("'field' must be \"exact\" or \"float\"");
    }
    if (const auto o = rd.integer(doc, "order", "", false)) {
        cfg.order = *o;
        if (*o < 1) rd.problems.push_back("'order' must be positive");
    }
    if (const auto o = rd.integer(doc, "float_order", "", false)) {
        cfg.float_order = *o;
        if (*o < 2) rd.problems.push_back("'float_order' must be at least 2");
    }

    if (doc.contains("mesh")) {
        const auto& m = doc["mesh"];
        if (!m.is_object()) {
            rd.problems.push_back("'mesh' must be an object");
        } else {
            rd.only_keys(m, "mesh.", {"x_range", "nx", "y_range", "ny", "u_range", "nu", "v_range", "nv"});
            rd.range(m, "x_range", cfg.mesh.x);
            rd.range(m, "y_range", cfg.mesh.y);
            rd.range(m, "u_range", cfg.mesh.u);
            rd.range(m, "v_range", cfg.mesh.v);
            rd.resolution(m, "nx", cfg.mesh.nx);
            rd.resolution(m, "ny", cfg.mesh.ny);
            rd.resolution(m, "nu", cfg.mesh.nu);
            rd.resolution(m, "nv", cfg.mesh.nv);
        }
    }
    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        if (!s.is_object()) {
            rd.problems.push_back("'sweep' must be an object");
        } else {
            rd.only_keys(s, "sweep.", {"seed", "draws"});
            if (s.contains("seed")) {
                if (s["seed"].is_number_unsigned()) cfg.sweep.seed = s["seed"].get<std::uint64_t>();
                else rd.problems.push_back("'sweep.seed' must be a nonnegative integer");
            }
            if (const auto d = rd.integer(s, "draws", "sweep.", false)) {
                cfg.sweep.draws = *d;
                if (*d < 1) rd.problems.push_back("'sweep.draws' must be positive");
            }
        }
    }

    for (const auto& p : cfg.coeffs.violations()) rd.problems.push_back(p);
    if (!rd.problems.empty()) throw config_error(rd.problems);
    return cfg;
}

inline nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    using nlohmann::ordered_json;
    ordered_json j;
    if (!cfg.name.empty()) j["name"] = cfg.name;
    j["k"] = cfg.coeffs.k;
    ordered_json a = ordered_json::object();
    for (const auto& [ij, v] : cfg.coeffs.a) a[std::to_string(ij.first) + "," + std::to_string(ij.second)] = to_string(v);
    j["a"] = a;
    ordered_json b = ordered_json::object();
    for (const auto& [i, v] : cfg.coeffs.b) b[std::to_string(i)] = to_string(v);
    j["b"] = b;
    auto strings = [](const std::vector<Rational>& v) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : v) arr.push_back(to_string(r));
        return arr;
    };
    ordered_json c;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FamilyMPQ>) {
                c = {{"family", "mpq"}, {"m", s.m}, {"p", s.p}, {"q", s.q}, {"c", strings(s.c)}};
            } else if constexpr (std::is_same_v<S, FamilyMP>) {
                c = {{"family", "mp"}, {"m", s.m}, {"p", s.p}, {"c", strings(s.c)}};
            } else {
                c = {{"family", "general"}, {"first", strings(s.first)}, {"second", strings(s.second)}};
            }
        },
        cfg.curve);
    j["curve"] = c;
    j["field"] = to_string(cfg.field);
    if (cfg.order) j["order"] = *cfg.order;
    j["float_order"] = cfg.float_order;
    const auto& m = cfg.mesh;
    j["mesh"] = {{"x_range", {m.x.lo, m.x.hi}}, {"nx", m.nx}, {"y_range", {m.y.lo, m.y.hi}}, {"ny", m.ny},
                 {"u_range", {m.u.lo, m.u.hi}}, {"nu", m.nu}, {"v_range", {m.v.lo, m.v.hi}}, {"nv", m.nv}};
    j["sweep"] = {{"seed", cfg.sweep.seed}, {"draws", cfg.sweep.draws}};
    return j;
}

inline std::string emit_config(const RunConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

}  // namespace crosscap
