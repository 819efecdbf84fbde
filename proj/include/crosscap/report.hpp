#pragma once

// Deterministic JSON report aggregating every module for one configuration.
// Exact values are strings ("p/q"), float values are JSON numbers.

#include <string>

#include <json.hpp>

#include "crosscap/config.hpp"
#include "crosscap/developable.hpp"
#include "crosscap/frame.hpp"
#include "crosscap/invariants.hpp"
#include "crosscap/verify.hpp"

namespace crosscap {

namespace detail {

using nlohmann::ordered_json;

inline ordered_json real(double v) { return ordered_json(v == 0.0 ? 0.0 : v); }

inline ordered_json exact_vec(const std::array<Rational, 3>& v) {
    return ordered_json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])});
}

inline ordered_json real_vec(const std::array<double, 3>& v) {
    return ordered_json::array({real(v[0]), real(v[1]), real(v[2])});
}

inline ordered_json order_json(const std::optional<int>& order) {
    return order ? ordered_json(*order) : ordered_json();
}

/// The order as a claim: the value, or "> R" when nothing survived through R.
inline std::string order_claim(const std::optional<int>& order, int reliable) {
    return order ? std::to_string(*order) : "> " + std::to_string(reliable);
}

template <typename F>
ordered_json guarded(const char* module, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {{"error", {{"module", module}, {"message", e.what()}}}};
    }
}

}  // namespace detail

inline nlohmann::ordered_json build_report(const RunConfig& cfg) {
    using nlohmann::ordered_json;
    using detail::real;

    const auto W = build_umbrella(cfg.coeffs);
    const auto curve = build_curve(cfg.curve, cfg.storage_order());

    ordered_json rep;
    rep["name"] = cfg.name;
    rep["field"] = to_string(cfg.field);
    rep["orders"] = {{"k", cfg.coeffs.k}, {"storage", cfg.storage_order()}, {"float", cfg.float_order}};

    rep["model"] = detail::guarded("model", [&]() -> ordered_json {
        const auto t = classify_tangency(cfg.coeffs, curve);
        return {{"multiplicity", t.multiplicity},
                {"tangency_case", static_cast<int>(t.tangency_case)},
                {"limiting_tangent", detail::real_vec(t.limiting_tangent)}};
    });

    std::optional<FrameFactors> factors;
    rep["frame"] = detail::guarded("frame", [&]() -> ordered_json {
        factors = frame_factors(W, curve);
        return {{"alpha", factors->alpha},
                {"beta", factors->beta},
                {"alpha0", factors->alpha0},
                {"tangent_at_0", detail::exact_vec(factors->tangent.coefficient(0))},
                {"normal_at_0", detail::exact_vec(factors->normal.coefficient(0))},
                {"curve_factor_at_0", detail::exact_vec(factors->position.coefficient(0))}};
    });

    rep["curvatures"] = detail::guarded("frame", [&]() -> ordered_json {
        if (!factors) throw frame_error("frame factors unavailable");
        ordered_json out;
        ordered_json oracle = ordered_json::array();
        if (cfg.field == FieldChoice::Exact) {
            const auto r = divergence_report(curvature_numerators<Rational>(*factors));
            for (const auto& t : r.terms)
                oracle.push_back({{"degree", detail::order_json(t.degree)},
                                  {"top", t.degree ? ordered_json(to_string(t.top)) : ordered_json()},
                                  {"reliable_order", t.reliable_order}});
        } else {
            const auto r = divergence_report(curvature_numerators<Real>(*factors));
            for (const auto& t : r.terms)
                oracle.push_back({{"degree", detail::order_json(t.degree)},
                                  {"top", t.degree ? real(t.top) : ordered_json()},
                                  {"reliable_order", t.reliable_order}});
        }
        out["oracle"] = oracle;
        if (std::holds_alternative<GeneralCurve>(cfg.curve)) {
            out["closed_form"] = nullptr;
        } else {
            const auto row = verify_case(cfg.coeffs, cfg.curve, cfg.name, 0, cfg.order);
            ordered_json terms = ordered_json::array();
            for (const auto& t : row.terms)
                terms.push_back({{"degree", t.table_degree},
                                 {"top", to_string(t.table_top)},
                                 {"status", to_string(t.status)}});
            out["closed_form"] = {{"subcase", to_string(row.subcase)}, {"terms", terms}, {"status", to_string(row.status)}};
        }
        return out;
    });

    rep["invariants"] = detail::guarded("invariants", [&]() -> ordered_json {
        if (!c2m_violation(cfg.curve).empty()) return nullptr;
        const auto inv = top_invariants(cfg.coeffs, cfg.curve);
        const auto& s = std::get<FamilyMP>(cfg.curve);
        const auto predicted = tops_from_invariants(inv, s.m, cfg.coeffs.a_at(0, 2));
        const auto oracle = divergence_report(curvature_numerators<Rational>(frame_factors(W, curve)));
        const auto agree = invariant_tops_agree(oracle, predicted, s.m);
        const ordered_json matches = ordered_json::array({agree[0], agree[1], agree[2]});

        const auto proj = projection_tangency(cfg.coeffs, cfg.curve);
        const auto self = self_intersection(cfg.coeffs);
        const auto asym = self_intersection_asymmetry(self);
        bool odd_vanish = true;
        for (int c = 0; c < 3; ++c)
            for (int d = 1; d <= 3; d += 2) odd_vanish = odd_vanish && asym[c][d] == 0;
        const auto tangency = self_intersection_tangency(cfg.coeffs, cfg.curve);
        const auto contour = contour_deviation(cfg.coeffs, cfg.curve, cfg.float_order);
        return {{"A", to_string(inv.A)},
                {"B", to_string(inv.B)},
                {"C", to_string(inv.C)},
                {"D", to_string(inv.D)},
                {"tops_from_invariants", detail::exact_vec(predicted)},
                {"tops_match_oracle", matches},
                {"projection",
                 {{"verdict", to_string(proj.verdict)},
                  {"series_verdict", to_string(proj.series_verdict)},
                  {"along_b", real(proj.along_b)},
                  {"along_n", real(proj.along_n)},
                  {"lower_terms_vanish", proj.lower_terms_vanish}}},
                {"self_intersection",
                 {{"d11", to_string(self.d11)},
                  {"d21", to_string(self.d21)},
                  {"d12", to_string(self.d12)},
                  {"d22", to_string(self.d22)},
                  {"odd_terms_vanish_through_3", odd_vanish},
                  {"curve_direction", detail::exact_vec(tangency.curve_direction)},
                  {"self_intersection_direction", detail::exact_vec(tangency.self_intersection_direction)},
                  {"tangent", tangency.parallel},
                  {"predicted_by_B", tangency.predicted}}},
                {"contour",
                 {{"pairing", to_string(contour.raw_pairing)},
                  {"coefficient", real(contour.predicted)},
                  {"series_coefficient", real(contour.series)},
                  {"vanishes", contour.vanishes}}}};
    });

    rep["developable"] = detail::guarded("developable", [&]() -> ordered_json {
        const auto d = analyze_developable(W, curve, cfg.float_order);
        const auto residual = developability_residual(d.od.surface());
        ordered_json out;
        out["branch"] = to_string(d.od.branch);
        out["gap"] = d.od.gap;
        out["residual_max"] = real(max_abs_coefficient(residual));
        out["delta"] = {{"order", detail::order_json(d.delta.order)},
                        {"order_claim", detail::order_claim(d.delta.order, d.delta.delta.reliable_order())},
                        {"top", real(d.delta.top)},
                        {"reliable_order", d.delta.delta.reliable_order()}};
        if (d.delta.zero_to_order()) {
            out["striction"] = nullptr;
        } else {
            out["striction"] = {{"exponent", d.striction.exponent},
                                {"exists", d.striction.exists},
                                {"passes_through", d.striction.passes_through}};
        }
        const auto& cls = d.classification;
        if (d.sigma && d.striction.passes_through) {
            const auto& s = *d.sigma;
            std::string claim = detail::order_claim(s.order, s.reliable_order);
            if (cls.which == ClassificationCase::II && cls.F_exact == 0)
                claim = "> " + std::to_string(d.od.alpha0 - 1);
            out["sigma"] = {{"order", detail::order_json(s.order)},
                            {"order_claim", claim},
                            {"top", real(s.top)},
                            {"reliable_order", s.reliable_order}};
        } else {
            out["sigma"] = nullptr;
        }
        out["classification"] = {{"case", to_string(cls.which)}};
        if (cls.which == ClassificationCase::I || cls.which == ClassificationCase::II ||
            cls.which == ClassificationCase::III) {
            out["classification"]["E"] = real(cls.E);
            out["classification"]["F"] = real(cls.F);
            out["classification"]["E_exact"] = to_string(cls.E_exact);
            out["classification"]["F_exact"] = to_string(cls.F_exact);
            out["classification"]["scale"] = to_string(cls.scale);
        }
        return out;
    });
    return rep;
}

inline std::string render_report(const RunConfig& cfg) { return build_report(cfg).dump(2) + "\n"; }

}  // namespace crosscap
