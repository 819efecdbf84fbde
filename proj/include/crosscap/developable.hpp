#pragma once

// Ruled surfaces gamma(x) + y xi(x), and the osculating developable OD_w along
// W o c_w: its director D_o, the cylindricity invariant delta, the striction
// curve, the conicity invariant sigma and the E/F classification.

#include <cmath>
#include <optional>
#include <string>

#include "crosscap/frame.hpp"

namespace crosscap {

class developable_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct RuledSurface {
    Vec3Series<Real> gamma;  // base curve
    Vec3Series<Real> xi;     // director, xi(0) != 0
};

/// det(gamma', xi, xi'); identically zero exactly when the surface is developable.
inline UniSeries<Real> developability_residual(const RuledSurface& s) {
    return dot(cross(derivative(s.gamma), s.xi), derivative(s.xi));
}

/// gamma - <gamma', xi'>/<xi', xi'> xi, for a ruled surface with xi'(0) != 0.
inline Vec3Series<Real> striction_curve(const RuledSurface& s) {
    const auto dxi = derivative(s.xi);
    const auto w = dot(dxi, dxi);
    if (std::abs(w[0]) <= default_tolerance) throw developable_error("director derivative vanishes at 0");
    return s.gamma - (dot(derivative(s.gamma), dxi) * reciprocal(w)) * s.xi;
}

enum class DevelopableBranch { Alpha2GtAlpha3, Alpha3GeAlpha2 };

inline const char* to_string(DevelopableBranch b) {
    return b == DevelopableBranch::Alpha2GtAlpha3 ? "ALPHA2_GT_ALPHA3" : "ALPHA3_GE_ALPHA2";
}

/// Everything the director construction needs, in FLOAT.
struct OsculatingDevelopable {
    DevelopableBranch branch = DevelopableBranch::Alpha3GeAlpha2;
    int gap = 0;  // |alpha_2 - alpha_3|
    int alpha = 0;
    int alpha0 = 0;
    std::array<std::optional<int>, 3> degree;    // alpha_1..alpha_3
    std::array<UniSeries<Real>, 3> kappa;        // kappa_i
    std::array<UniSeries<Real>, 3> reduced;      // kappa~_i = kappa_i / x^{alpha_i}
    Vec3Series<Real> gamma;                      // W o c_w
    DarbouxFrame frame;
    UniSeries<Real> speed;  // |E_t|, so gamma' = speed x^alpha e
    // D_o = (Q e - P b) / rho with
    //   branch 1: P = kappa~_2 x^gap, Q = kappa~_3
    //   branch 2: P = kappa~_2,       Q = kappa~_3 x^gap
    UniSeries<Real> P, Q, rho;
    Vec3Series<Real> director;

    RuledSurface surface() const { return {gamma, director}; }
};

/// kappa~_i from the exact numerators: k^_i / x^{alpha_i} over the norm factors.
inline std::array<UniSeries<Real>, 3> reduced_curvatures(const FrameFactors& f, const CurvatureSeries<Rational>& num,
                                                         std::array<std::optional<int>, 3>& degree, int float_order) {
    const auto E = float_truncate(series_cast<Real>(f.tangent), float_order);
    const auto N = float_truncate(series_cast<Real>(f.normal), float_order);
    const auto inv_e = reciprocal(norm(E));
    const auto inv_n = reciprocal(norm(N));
    const std::array<UniSeries<Real>, 3> scale{inv_e * inv_e * inv_n, inv_e * inv_n, inv_e * inv_n * inv_n};
    std::array<UniSeries<Real>, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto v = valuation(num.kappa[i]);
        degree[i] = v.degree;
        if (v.degree) {
            out[i] = float_truncate(series_cast<Real>(factor_power(num.kappa[i], *v.degree)), float_order) * scale[i];
        } else {
            out[i] = UniSeries<Real>::zero(std::min(num.kappa[i].reliable_order(), scale[i].reliable_order()));
        }
    }
    return out;
}

inline OsculatingDevelopable osculating_developable(const Umbrella& w, const PlaneCurve& c, int float_order = 12) {
    const auto f = frame_factors(w, c);
    const auto num = curvature_numerators<Rational>(f);
    OsculatingDevelopable od;
    od.alpha = f.alpha;
    od.alpha0 = f.alpha0;
    od.reduced = reduced_curvatures(f, num, od.degree, float_order);
    if (!od.degree[1] && !od.degree[2])
        throw developable_error("kappa_2 and kappa_3 vanish to reliable order; the osculating director is undefined");
    for (std::size_t i = 0; i < 3; ++i)
        od.kappa[i] = od.degree[i] ? shift_up(od.reduced[i], *od.degree[i]) : od.reduced[i];

    od.gamma = float_truncate(series_cast<Real>(image_curve(w, c)), float_order);
    od.frame = darboux_frame(f, float_order);
    od.speed = norm(float_truncate(series_cast<Real>(f.tangent), float_order));
    if (!od.degree[1] || !od.degree[2]) {
        // one of P, Q is zero to reliable order and D_o is -b or e up to sign
        od.branch = od.degree[1] ? DevelopableBranch::Alpha3GeAlpha2 : DevelopableBranch::Alpha2GtAlpha3;
        od.gap = 0;
        od.P = od.reduced[1];
        od.Q = od.reduced[2];
    } else {
        const int a2 = *od.degree[1], a3 = *od.degree[2];
        od.branch = a2 > a3 ? DevelopableBranch::Alpha2GtAlpha3 : DevelopableBranch::Alpha3GeAlpha2;
        od.gap = std::abs(a2 - a3);
    }
    if (!od.degree[1] || !od.degree[2]) {
    } else if (od.branch == DevelopableBranch::Alpha2GtAlpha3) {
        od.P = shift_up(od.reduced[1], od.gap);
        od.Q = od.reduced[2];
    } else {
        od.P = od.reduced[1];
        od.Q = shift_up(od.reduced[2], od.gap);
    }
    od.rho = sqrt_series(od.P * od.P + od.Q * od.Q);
    od.director = reciprocal(od.rho) * (od.Q * od.frame.e - od.P * od.frame.b);
    return od;
}

// ---------------------------------------------------------------------------
// delta: D_o' = delta / rho^3 (P e + Q b).

struct DeltaInvariant {
    UniSeries<Real> delta;
    std::optional<int> order;  // k: the surface is k-th pseudo-cylindrical
    UniSeries<Real> reduced;   // delta / x^k
    double top = 0;

    bool zero_to_order() const { return !order.has_value(); }
};

inline DeltaInvariant delta_invariant(const OsculatingDevelopable& od, double tol = default_tolerance) {
    DeltaInvariant out;
    out.delta = od.kappa[0] * od.rho * od.rho + od.P * derivative(od.Q) - derivative(od.P) * od.Q;
    const auto v = valuation(out.delta, tol);
    out.order = v.degree;
    if (v.degree) {
        out.reduced = factor_power(out.delta, *v.degree, tol);
        out.top = v.leading;
    }
    return out;
}

/// delta / rho^3 (P e + Q b).
inline Vec3Series<Real> director_derivative_closed(const OsculatingDevelopable& od, const DeltaInvariant& d) {
    const auto inv = reciprocal(od.rho);
    return (d.delta * inv * inv * inv) * (od.P * od.frame.e + od.Q * od.frame.b);
}

/// delta recovered from the director itself: rho <D_o', P e + Q b>.
inline UniSeries<Real> delta_from_director(const OsculatingDevelopable& od) {
    return od.rho * dot(derivative(od.director), od.P * od.frame.e + od.Q * od.frame.b);
}

// ---------------------------------------------------------------------------
// Striction curve s_w = gamma - S D_o.

struct Striction {
    int exponent = 0;  // S = |E_t| kappa~_2 rho x^exponent / delta~
    bool exists = false;
    bool passes_through = false;  // S(0) = 0, so s_w(0) is the umbrella's singular point
    UniSeries<Real> S;
    Vec3Series<Real> curve;
};

inline Striction striction(const OsculatingDevelopable& od, const DeltaInvariant& d) {
    if (d.zero_to_order()) throw developable_error("delta vanishes to reliable order; striction undetermined");
    Striction out;
    const int lift = od.branch == DevelopableBranch::Alpha2GtAlpha3 ? od.gap : 0;
    out.exponent = od.alpha0 + lift - *d.order - 1;
    out.exists = out.exponent >= 0;
    out.passes_through = out.exponent > 0;
    if (!out.exists) return out;
    out.S = shift_up(od.speed * od.reduced[1] * od.rho * reciprocal(d.reduced), out.exponent);
    out.curve = od.gamma - out.S * od.director;
    return out;
}

// ---------------------------------------------------------------------------
// sigma: s_w' = sigma D_o.

struct SigmaInvariant {
    UniSeries<Real> sigma;
    std::optional<int> order;  // k: the surface is k-th pseudo-conical
    double top = 0;
    int reliable_order = -1;

    bool zero_to_order() const { return !order.has_value(); }
};

inline SigmaInvariant sigma_invariant(const OsculatingDevelopable& od, const Striction& s,
                                      double tol = default_tolerance) {
    if (!s.exists) throw developable_error("striction curve does not exist");
    const int lift = od.branch == DevelopableBranch::Alpha2GtAlpha3 ? 0 : od.gap;
    SigmaInvariant out;
    out.sigma = shift_up(od.speed * od.reduced[2] * reciprocal(od.rho), od.alpha + lift) - derivative(s.S);
    const auto v = valuation(out.sigma, tol);
    out.order = v.degree;
    out.top = v.leading;
    out.reliable_order = out.sigma.reliable_order();
    return out;
}

// ---------------------------------------------------------------------------
// Classification for alpha_2 > alpha_3 by alpha_1 against |alpha_2 - alpha_3| - 1.

enum class ClassificationCase { NotApplicable, I, II, III, Undetermined };

inline const char* to_string(ClassificationCase c) {
    switch (c) {
        case ClassificationCase::NotApplicable: return "n/a";
        case ClassificationCase::I: return "i";
        case ClassificationCase::II: return "ii";
        case ClassificationCase::III: return "iii";
        case ClassificationCase::Undetermined: return "undetermined";
    }
    return "?";
}

struct Classification {
    ClassificationCase which = ClassificationCase::NotApplicable;
    // E = kappa~_1 kappa~_3 - gap kappa~_2, F = kappa~_1 kappa~_3 - (alpha_0 + gap) kappa~_2 at 0
    double E = 0;
    double F = 0;
    // T_1 T_3 - c T_2 |E(0)|^2 |N(0)|^2, which is E (resp. F) times |E(0)|^3 |N(0)|^3
    Rational E_exact;
    Rational F_exact;
    Rational scale;  // |E(0)|^2 |N(0)|^2
};

inline Classification classify_EF(const FrameFactors& f, const OsculatingDevelopable& od) {
    Classification out;
    if (od.branch != DevelopableBranch::Alpha2GtAlpha3 || !od.degree[1] || !od.degree[2]) return out;
    if (!od.degree[0]) {
        out.which = ClassificationCase::Undetermined;
        return out;
    }
    const int a1 = *od.degree[0];
    const int threshold = od.gap - 1;
    out.which = a1 < threshold ? ClassificationCase::I : a1 == threshold ? ClassificationCase::II : ClassificationCase::III;

    const auto report = divergence_report(curvature_numerators<Rational>(f));
    const auto e0 = f.tangent.coefficient(0);
    const auto n0 = f.normal.coefficient(0);
    out.scale = dot(e0, e0) * dot(n0, n0);
    const Rational t13 = report.terms[0].top * report.terms[2].top;
    out.E_exact = t13 - Rational(od.gap) * report.terms[1].top * out.scale;
    out.F_exact = t13 - Rational(od.alpha0 + od.gap) * report.terms[1].top * out.scale;

    const double k13 = od.reduced[0][0] * od.reduced[2][0];
    out.E = k13 - od.gap * od.reduced[1][0];
    out.F = k13 - (od.alpha0 + od.gap) * od.reduced[1][0];
    return out;
}

/// The case (ii) coefficients for p = 2 curves (c_0 + c_m x^m + ...) written
/// through the normal-form data:
///   E_ref = 6 a_11 c_0^2 + a_03 c_0 + a_02 c_m + b_4 a_02 / 6
///   F_ref = 24 a_11 c_0^2 + 4 a_03 c_0 + 12 a_02 c_m + b_4 a_02
/// with E_exact / scale = 2 m^3 E_ref and F_exact / scale = m^3 F_ref.
struct ClassificationReference {
    Rational E_ref;
    Rational F_ref;
    Rational E_factor;  // 2 m^3
    Rational F_factor;  // m^3
};

inline ClassificationReference classification_reference(const UmbrellaCoefficients& k, int m, const Rational& c0,
                                                        const Rational& cm) {
    const Rational a02 = k.a_at(0, 2), a11 = k.a_at(1, 1), a03 = k.a_at(0, 3), b4 = k.b_at(4);
    const Rational M3 = Rational(m) * m * m;
    return {6 * a11 * c0 * c0 + a03 * c0 + a02 * cm + b4 * a02 / 6,
            24 * a11 * c0 * c0 + 4 * a03 * c0 + 12 * a02 * cm + b4 * a02, 2 * M3, M3};
}

// ---------------------------------------------------------------------------

struct DevelopableData {
    OsculatingDevelopable od;
    DeltaInvariant delta;
    Striction striction;
    std::optional<SigmaInvariant> sigma;  // present when the striction exists
    Classification classification;
};

inline DevelopableData analyze_developable(const Umbrella& w, const PlaneCurve& c, int float_order = 12) {
    DevelopableData out;
    out.od = osculating_developable(w, c, float_order);
    out.delta = delta_invariant(out.od);
    if (!out.delta.zero_to_order()) {
        out.striction = striction(out.od, out.delta);
        if (out.striction.exists) out.sigma = sigma_invariant(out.od, out.striction);
    }
    out.classification = classify_EF(frame_factors(w, c), out.od);
    return out;
}

}  // namespace crosscap
