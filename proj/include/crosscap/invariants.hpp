#pragma once

// Top-term invariants A, B, C, D of curves c(x) = c_0 + c_m x^m + ... in the
// (mp) family with p = 2, and the geometric statements they control:
// projection tangency, tangency to the self-intersection curve, and the
// contour-line condition.

#include <array>
#include <cmath>
#include <string>

#include "crosscap/frame.hpp"
#include "crosscap/model.hpp"

namespace crosscap {

class invariant_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct TopInvariants {
    Rational A, B, C, D;
    friend bool operator==(const TopInvariants&, const TopInvariants&) = default;
};

/// Empty when spec is (c(x) x^{2m}, x^m) with c_1 = ... = c_{m-1} = 0.
inline std::string c2m_violation(const CurveSpec& spec) {
    const auto* s = std::get_if<FamilyMP>(&spec);
    if (!s) return "curve must be an (mp) family member with p = 2";
    if (s->p != 2) return "curve must have p = 2";
    if (s->c.empty() || s->c.front() == 0) return "c_0 must be nonzero";
    for (int i = 1; i < s->m && static_cast<std::size_t>(i) < s->c.size(); ++i)
        if (s->c[static_cast<std::size_t>(i)] != 0) return "c_1 .. c_{m-1} must vanish";
    return {};
}

inline const FamilyMP& require_c2m(const CurveSpec& spec) {
    const auto why = c2m_violation(spec);
    if (!why.empty()) throw invariant_error(why);
    return std::get<FamilyMP>(spec);
}

inline Rational c_m_of(const FamilyMP& s) {
    const auto m = static_cast<std::size_t>(s.m);
    return m < s.c.size() ? s.c[m] : Rational(0);
}

inline TopInvariants top_invariants(const UmbrellaCoefficients& k, const CurveSpec& spec) {
    const auto& s = require_c2m(spec);
    const Rational c0 = s.c.front();
    const Rational cm = c_m_of(s);
    const Rational a02 = k.a_at(0, 2), a11 = k.a_at(1, 1), a03 = k.a_at(0, 3);
    const Rational b3 = k.b_at(3), b4 = k.b_at(4);
    return {6 * a11 * c0 * c0 + a03 * c0 - 3 * a02 * cm, 3 * c0 + b3 / 2, 2 * c0 * c0 + b3 * c0 - a02 * a02,
            (a11 * b3 - a03) * c0 - 5 * a02 * cm - b4 * a02 / 3};
}

/// Normalized tops expressed through the invariants:
/// (m^3 a_02 A, -m^2 a_02 B, -m^2 a_02 C).
inline std::array<Rational, 3> tops_from_invariants(const TopInvariants& inv, int m, const Rational& a02) {
    const Rational M(m);
    return {M * M * M * a02 * inv.A, -M * M * a02 * inv.B, -M * M * a02 * inv.C};
}

/// Oracle tops against the invariant form. All three degrees are m - 1 here;
/// a vanishing predicted top only asks for a higher oracle valuation.
inline std::array<bool, 3> invariant_tops_agree(const CurvatureReport<Rational>& oracle,
                                                const std::array<Rational, 3>& predicted, int m) {
    std::array<bool, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& t = oracle.terms[i];
        if (predicted[i] == 0)
            out[i] = t.degree ? *t.degree > m - 1 : t.reliable_order >= m - 1;
        else
            out[i] = t.degree && *t.degree == m - 1 && t.top == predicted[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Projection along the limiting tangent e(0).

enum class ProjectionVerdict { TangentToN, TangentToB, Generic, Degenerate };

inline const char* to_string(ProjectionVerdict v) {
    switch (v) {
        case ProjectionVerdict::TangentToN: return "TANGENT_TO_N";
        case ProjectionVerdict::TangentToB: return "TANGENT_TO_B";
        case ProjectionVerdict::Generic: return "GENERIC";
        case ProjectionVerdict::Degenerate: return "DEGENERATE";
    }
    return "?";
}

/// Verdict from the x^{3m} coefficients along b(0) and n(0).
inline ProjectionVerdict projection_verdict(const Rational& along_b, const Rational& along_n) {
    if (along_b == 0 && along_n == 0) return ProjectionVerdict::Degenerate;
    if (along_b == 0) return ProjectionVerdict::TangentToN;
    if (along_n == 0) return ProjectionVerdict::TangentToB;
    return ProjectionVerdict::Generic;
}

inline ProjectionVerdict projection_verdict(const TopInvariants& inv) { return projection_verdict(inv.A, inv.B); }

struct ProjectionTangency {
    ProjectionVerdict verdict;         // from A and B
    ProjectionVerdict series_verdict;  // from the projected image series
    // x^{3m} coefficients of <W o c_w, (-a_02, 0, 2c_0)> and <W o c_w, (0, 1, 0)>
    Rational along_b_raw;
    Rational along_y_raw;
    // the same coefficients against the unit vectors b(0) and n(0)
    double along_b = 0;
    double along_n = 0;
    bool lower_terms_vanish = true;  // nothing below x^{3m} survives the projection
};

inline ProjectionTangency projection_tangency(const UmbrellaCoefficients& k, const CurveSpec& spec) {
    const auto& s = require_c2m(spec);
    const int m = s.m;
    const Rational c0 = s.c.front();
    const Rational a02 = k.a_at(0, 2);
    const auto W = build_umbrella(k);
    const auto image = image_curve(W, build_curve(spec, default_order(k, spec)));
    if (image.reliable_order() < 3 * m) throw invariant_error("reliable order below 3m; raise k");

    const Vec3Series<Rational>& g = image;
    const auto pb = Rational(-a02) * g[0] + Rational(2 * c0) * g[2];
    const auto& py = g[1];
    ProjectionTangency out{};
    for (int d = 0; d < 3 * m; ++d)
        if (pb[d] != 0 || py[d] != 0) out.lower_terms_vanish = false;
    out.along_b_raw = pb[3 * m];
    out.along_y_raw = py[3 * m];
    out.series_verdict = projection_verdict(out.along_b_raw, out.along_y_raw);
    out.verdict = projection_verdict(top_invariants(k, spec));
    const double bnorm = std::sqrt(field_cast<double>(Rational(4 * c0 * c0 + a02 * a02)));
    // b(0) = sgn(a_02) (-a_02, 0, 2c_0) / |.| and n(0) = (0, -sgn(a_02), 0)
    out.along_b = static_cast<double>(sign(a02)) * field_cast<double>(out.along_b_raw) / bnorm;
    out.along_n = -static_cast<double>(sign(a02)) * field_cast<double>(out.along_y_raw);
    return out;
}

// ---------------------------------------------------------------------------
// Self-intersection curve of the umbrella, to quadratic order.

struct SelfIntersectionCurve {
    Rational d11, d21, d12, d22;
    PlaneCurve preimage;          // d(x) = (d11 x + d12 x^2, d21 x + d22 x^2)
    Vec3Series<Rational> image;   // W o d
};

inline SelfIntersectionCurve self_intersection(const UmbrellaCoefficients& k) {
    k.validate();
    SelfIntersectionCurve out;
    const Rational a02 = k.a_at(0, 2);
    out.d11 = 0;
    out.d21 = 1;
    out.d12 = -k.b_at(3) / 6;
    out.d22 = (k.b_at(3) * k.a_at(1, 1) - k.a_at(0, 3)) / (6 * a02);
    const int order = k.k;
    std::vector<Rational> first(static_cast<std::size_t>(order + 1)), second(static_cast<std::size_t>(order + 1));
    first[1] = out.d11;
    first[2] = out.d12;
    second[1] = out.d21;
    second[2] = out.d22;
    out.preimage = {UniSeries<Rational>(first, order), UniSeries<Rational>(second, order)};
    out.image = image_curve(build_umbrella(k), out.preimage);
    return out;
}

/// W o d(x) - W o d(-x). The pair d(x), d(-x) are the two preimages of one
/// image point, so the odd coefficients through x^3 must vanish.
inline Vec3Series<Rational> self_intersection_asymmetry(const SelfIntersectionCurve& s) {
    auto reflect = [](const UniSeries<Rational>& a) {
        std::vector<Rational> c(a.coefficients().begin(), a.coefficients().end());
        for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
        return UniSeries<Rational>(std::move(c), a.reliable_order());
    };
    const Vec3Series<Rational> mirrored{reflect(s.image[0]), reflect(s.image[1]), reflect(s.image[2])};
    return s.image - mirrored;
}

struct SelfIntersectionTangency {
    std::array<Rational, 3> curve_direction;         // leading vector of W o c_w
    std::array<Rational, 3> self_intersection_direction;  // leading vector of W o d
    bool parallel = false;       // from the two series
    bool predicted = false;      // B = 0
};

inline SelfIntersectionTangency self_intersection_tangency(const UmbrellaCoefficients& k, const CurveSpec& spec) {
    require_c2m(spec);
    const auto W = build_umbrella(k);
    const auto lead_c = valuation(image_curve(W, build_curve(spec, default_order(k, spec))));
    const auto lead_d = valuation(self_intersection(k).image);
    if (lead_c.zero_to_order() || lead_d.zero_to_order()) throw invariant_error("image curve vanishes to reliable order");
    SelfIntersectionTangency out;
    out.curve_direction = lead_c.leading;
    out.self_intersection_direction = lead_d.leading;
    out.parallel = parallel(lead_c.leading, lead_d.leading);
    out.predicted = top_invariants(k, spec).B == 0;
    return out;
}

// ---------------------------------------------------------------------------
// Contour-line condition: how fast n(x) leaves the plane orthogonal to b(0).

struct ContourDeviation {
    int m = 1;
    Rational raw_pairing;  // x^m coefficient of <N, (-a_02, 0, 2c_0)>
    double predicted = 0;  // C / (a_02 sqrt(4c_0^2 + a_02^2))
    double series = 0;     // x^m coefficient of <n(x), b(0)> from the float frame
    double constant_term = 0;  // x^0 coefficient of <n(x), n(0)>
    bool vanishes = false;     // raw_pairing == 0
};

inline ContourDeviation contour_deviation(const UmbrellaCoefficients& k, const CurveSpec& spec, int float_order = 12) {
    const auto& s = require_c2m(spec);
    const int m = s.m;
    const Rational c0 = s.c.front();
    const Rational a02 = k.a_at(0, 2);
    const auto W = build_umbrella(k);
    const auto curve = build_curve(spec, default_order(k, spec));
    const auto f = frame_factors(W, curve);
    if (f.normal.reliable_order() < m) throw invariant_error("reliable order below m; raise k");

    ContourDeviation out;
    out.m = m;
    out.raw_pairing = Rational(-a02) * f.normal[0][m] + Rational(2 * c0) * f.normal[2][m];
    out.vanishes = out.raw_pairing == 0;
    const Rational C = top_invariants(k, spec).C;
    out.predicted = field_cast<double>(C) / (field_cast<double>(a02) * std::sqrt(field_cast<double>(Rational(4 * c0 * c0 + a02 * a02))));

    const auto frame = darboux_frame(f, std::max(float_order, m));
    const auto b0 = frame.b.coefficient(0);
    const auto n0 = frame.n.coefficient(0);
    auto pair_with = [&](const std::array<Real, 3>& v) {
        return frame.n[0] * v[0] + frame.n[1] * v[1] + frame.n[2] * v[2];
    };
    out.series = pair_with(b0)[m];
    out.constant_term = pair_with(n0)[0];
    return out;
}

}  // namespace crosscap
