#pragma once

// Extended tangent and normal fields along W o c_w, the Darboux frame
// {e, b, n}, the Frenet-Serre type curvatures kappa_1..3 and their
// divergence degrees / top-terms.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "crosscap/model.hpp"
#include "crosscap/series.hpp"

namespace crosscap {

class frame_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <typename T>
struct Factorization {
    int exponent = 0;
    Vec3Series<T> factor;  // nonzero at x = 0
};

/// raw = factor * x^exponent with factor(0) != 0.
template <typename T>
Factorization<T> factor_out(const Vec3Series<T>& raw, const char* what) {
    const auto v = valuation(raw);
    if (v.zero_to_order())
        throw frame_error(std::string(what) + " vanishes to reliable order " + std::to_string(v.reliable_order));
    return {*v.degree, factor_power(raw, *v.degree)};
}

struct FrameFactors {
    int alpha = 0;  // (W o c_w)' = tangent * x^alpha
    Vec3Series<Rational> tangent;
    int beta = 0;  // (W_u x W_v) o c_w = normal * x^beta
    Vec3Series<Rational> normal;
    int alpha0 = 0;  // W o c_w = position * x^alpha0
    Vec3Series<Rational> position;
};

inline Factorization<Rational> tangent_factor(const Umbrella& w, const PlaneCurve& c) {
    return factor_out(derivative(image_curve(w, c)), "tangent vector");
}

inline Factorization<Rational> curve_factor(const Umbrella& w, const PlaneCurve& c) {
    return factor_out(image_curve(w, c), "image curve");
}

inline Factorization<Rational> normal_factor(const Umbrella& w, const PlaneCurve& c) {
    return factor_out(normal_field_raw(w, c), "normal field");
}

inline FrameFactors frame_factors(const Umbrella& w, const PlaneCurve& c) {
    const auto image = image_curve(w, c);
    const auto t = factor_out(derivative(image), "tangent vector");
    const auto n = factor_out(normal_field_raw(w, c), "normal field");
    const auto p = factor_out(image, "image curve");
    return {t.exponent, t.factor, n.exponent, n.factor, p.exponent, p.factor};
}

struct DarbouxFrame {
    Vec3Series<Real> e;
    Vec3Series<Real> b;
    Vec3Series<Real> n;
};

/// Truncates a FLOAT pipeline input; a negative cap keeps everything.
template <typename S>
S float_truncate(const S& s, int cap) {
    return cap < 0 ? s : s.truncated(cap);
}

/// e = E/|E|, n = N/|N|, b = n x e.
inline DarbouxFrame darboux_frame(const FrameFactors& f, int float_order = -1) {
    const auto E = float_truncate(series_cast<Real>(f.tangent), float_order);
    const auto N = float_truncate(series_cast<Real>(f.normal), float_order);
    const auto e = reciprocal(norm(E)) * E;
    const auto n = reciprocal(norm(N)) * N;
    return {e, cross(n, e), n};
}

template <typename T>
struct CurvatureSeries {
    std::array<UniSeries<T>, 3> kappa;
};

/// kappa_1 = <e', b>, kappa_2 = <e', n>, kappa_3 = <b', n>.
inline CurvatureSeries<Real> curvature_series(const DarbouxFrame& f) {
    const auto de = derivative(f.e);
    const auto db = derivative(f.b);
    return {{dot(de, f.b), dot(de, f.n), dot(db, f.n)}};
}

/// Square-root-free numerators of the curvatures:
///   kappa_1 = <E', N x E> / (|E|^2 |N|)
///   kappa_2 = <E', N>     / (|E| |N|)
///   kappa_3 = <N' x E, N> / (|E| |N|^2)
/// so their valuations are the divergence degrees and their leading
/// coefficients are the normalized top-terms.
template <typename T>
CurvatureSeries<T> curvature_numerators(const FrameFactors& f) {
    const auto E = series_cast<T>(f.tangent);
    const auto N = series_cast<T>(f.normal);
    const auto dE = derivative(E);
    const auto dN = derivative(N);
    return {{dot(dE, cross(N, E)), dot(dE, N), dot(cross(dN, E), N)}};
}

/// kappa_i recovered from the exact numerators by dividing out the norms.
inline CurvatureSeries<Real> curvatures_from_numerators(const CurvatureSeries<Rational>& num, const FrameFactors& f,
                                                        int float_order = -1) {
    const auto E = float_truncate(series_cast<Real>(f.tangent), float_order);
    const auto N = float_truncate(series_cast<Real>(f.normal), float_order);
    const auto inv_e = reciprocal(norm(E));
    const auto inv_n = reciprocal(norm(N));
    auto k = [&](int i) { return float_truncate(series_cast<Real>(num.kappa[static_cast<std::size_t>(i)]), float_order); };
    return {{k(0) * inv_e * inv_e * inv_n, k(1) * inv_e * inv_n, k(2) * inv_e * inv_n * inv_n}};
}

enum class ReportSource { Oracle, ClosedForm };

template <typename T>
struct TopTerm {
    std::optional<int> degree;  // empty: zero to reliable order
    T top{};
    int reliable_order = -1;

    bool zero_to_order() const { return !degree.has_value(); }
};

template <typename T>
struct CurvatureReport {
    std::array<TopTerm<T>, 3> terms;
    ReportSource source = ReportSource::Oracle;
};

template <typename T>
CurvatureReport<T> divergence_report(const CurvatureSeries<T>& numerators, double tol = default_tolerance) {
    CurvatureReport<T> out;
    out.source = ReportSource::Oracle;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto v = valuation(numerators.kappa[i], tol);
        out.terms[i] = {v.degree, v.leading, v.reliable_order};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form degree / top-term tables for the (mp+q) and (mp) families.

enum class TableRow {
    MpqP1,
    MpqP2To3,
    MpqP4Plus,
    MpP2NBelowM,
    MpP2NEqualsM,
    MpP2NAboveM,
    MpP3,
    MpP4,
    MpP5Plus,
};

inline constexpr std::array<TableRow, 9> all_table_rows{TableRow::MpqP1,       TableRow::MpqP2To3,     TableRow::MpqP4Plus,
                                                        TableRow::MpP2NBelowM, TableRow::MpP2NEqualsM, TableRow::MpP2NAboveM,
                                                        TableRow::MpP3,        TableRow::MpP4,         TableRow::MpP5Plus};

inline const char* to_string(TableRow r) {
    switch (r) {
        case TableRow::MpqP1: return "mpq:p=1";
        case TableRow::MpqP2To3: return "mpq:2<=p<4";
        case TableRow::MpqP4Plus: return "mpq:4<=p";
        case TableRow::MpP2NBelowM: return "mp:p=2,n<m";
        case TableRow::MpP2NEqualsM: return "mp:p=2,n=m";
        case TableRow::MpP2NAboveM: return "mp:p=2,m<n";
        case TableRow::MpP3: return "mp:p=3";
        case TableRow::MpP4: return "mp:p=4";
        case TableRow::MpP5Plus: return "mp:5<=p";
    }
    return "?";
}

/// Entries whose printed constant is known to be in doubt. Mismatches in
/// these are advisory, degrees stay hard.
inline bool advisory_entry(TableRow row, int kappa_index) { return row == TableRow::MpqP4Plus && kappa_index == 0; }

struct ClosedForm {
    TableRow row;
    CurvatureReport<Rational> report;
};

namespace detail {
/// First n >= 1 with c_n != 0; nullopt when c is constant.
inline std::optional<int> first_nonconstant(const std::vector<Rational>& c) {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return static_cast<int>(i);
    return std::nullopt;
}
}  // namespace detail

inline TableRow table_row(const CurveSpec& spec) {
    if (const auto* s = std::get_if<FamilyMPQ>(&spec)) {
        if (s->p == 1) return TableRow::MpqP1;
        return s->p < 4 ? TableRow::MpqP2To3 : TableRow::MpqP4Plus;
    }
    if (const auto* s = std::get_if<FamilyMP>(&spec)) {
        if (s->p == 2) {
            const auto n = detail::first_nonconstant(s->c);
            if (n && *n < s->m) return TableRow::MpP2NBelowM;
            if (n && *n == s->m) return TableRow::MpP2NEqualsM;
            return TableRow::MpP2NAboveM;
        }
        if (s->p == 3) return TableRow::MpP3;
        return s->p == 4 ? TableRow::MpP4 : TableRow::MpP5Plus;
    }
    throw model_error("closed-form tables apply only to the (mp+q) and (mp) families");
}

/// Predicted degrees and normalized top-terms
///   T_1 = kappa~_1(0)|E(0)|^2|N(0)|, T_2 = kappa~_2(0)|E(0)||N(0)|, T_3 = kappa~_3(0)|E(0)||N(0)|^2
/// exactly as tabulated, entry by entry.
inline ClosedForm closed_form_reference(const CurveSpec& spec, const UmbrellaCoefficients& coeffs) {
    const auto problems = curve_violations(spec);
    if (!problems.empty()) throw model_error(problems.front());
    const TableRow row = table_row(spec);

    const Rational a02 = coeffs.a_at(0, 2);
    const Rational a11 = coeffs.a_at(1, 1);
    const Rational a03 = coeffs.a_at(0, 3);
    const Rational b3 = coeffs.b_at(3);
    const Rational a02sq = a02 * a02;

    ClosedForm out{row, {}};
    out.report.source = ReportSource::ClosedForm;
    auto set = [&](int i, int degree, Rational top) {
        out.report.terms[static_cast<std::size_t>(i)] = {degree, std::move(top), -1};
    };

    if (const auto* s = std::get_if<FamilyMPQ>(&spec)) {
        const int m = s->m, p = s->p, q = s->q;
        const Rational c0 = s->c.front();
        const Rational M(m), P(p), Q(q);
        switch (row) {
            case TableRow::MpqP1:
                set(0, m - q - 1, M * (M * M - Q * Q) * a02sq * c0);
                set(1, m - 1, -M * (M + 2 * Q) * a02 * c0);
                set(2, q - 1, -Q * (M * P + Q) * a02 * c0);
                break;
            case TableRow::MpqP2To3:
                set(0, m * (p - 2) + q - 1, -M * (M * (P - 2) + Q) * (M * P + Q) * a02sq * c0);
                set(1, m - 1, -M * M * a02 * b3 / 2);
                set(2, m - 1, M * M * a02sq * a02);
                break;
            default:  // 4 <= p
                set(0, 2 * m - 1, -M * M * a02sq * b3);
                set(1, m - 1, -M * M * a02 * b3 / 2);
                set(2, m - 1, M * M * a02sq * a02);
                break;
        }
        return out;
    }

    const auto& s = std::get<FamilyMP>(spec);
    const int m = s.m, p = s.p;
    const Rational M(m), P(p);
    const Rational c0 = s.c.front();
    const auto n = detail::first_nonconstant(s.c);
    const Rational cm = static_cast<std::size_t>(m) < s.c.size() ? s.c[static_cast<std::size_t>(m)] : Rational(0);
    const Rational M2 = M * M, M3 = M * M * M;
    switch (row) {
        case TableRow::MpP2NBelowM: {
            const Rational cn = s.c[static_cast<std::size_t>(*n)];
            set(0, *n - 1, -M * Rational(*n) * (2 * M + Rational(*n)) * a02sq * cn);
            break;
        }
        case TableRow::MpP2NEqualsM: set(0, m - 1, M3 * a02 * (6 * a11 * c0 * c0 + a03 * c0 - 3 * a02 * cm)); break;
        case TableRow::MpP2NAboveM: set(0, m - 1, M3 * a02 * c0 * (6 * a11 * c0 + a03)); break;
        case TableRow::MpP3: set(0, m - 1, -3 * M3 * a02sq * c0); break;
        case TableRow::MpP4: set(0, 2 * m - 1, -M3 * a02sq * (8 * c0 + b3 / 2)); break;
        default: set(0, 2 * m - 1, M3 * a02sq * b3 / 2); break;
    }
    if (p == 2) {
        set(1, m - 1, -M2 * a02 * (3 * c0 + b3 / 2));
        set(2, m - 1, -M2 * a02 * (2 * c0 * c0 + b3 * c0 - a02sq));
    } else {
        set(1, m - 1, -M2 * (P - 1) * a02 * b3 / 2);
        set(2, m - 1, M2 * a02sq * a02);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Regular-point curvatures.

struct RegularCurvatures {
    double geodesic = 0;  // kappa_g
    double normal = 0;    // kappa_nu
    double torsion = 0;   // kappa_t (geodesic torsion)
};

/// sgn(x^t): -1 iff x < 0 and t odd.
inline double sign_of_power(double x, int t) { return (x < 0 && (t % 2 != 0)) ? -1.0 : 1.0; }

/// kappa_g = sgn(x^{a+b}) k1/(|E| x^a), kappa_nu = sgn(x^b) k2/(|E| x^a),
/// kappa_t = k3/(|E| x^a), valid at regular points x != 0.
inline RegularCurvatures regular_curvatures(const CurvatureSeries<Real>& k, const FrameFactors& f, double x,
                                            int float_order = -1) {
    if (x == 0.0) throw frame_error("regular curvatures are undefined at the singular point");
    const auto E = float_truncate(series_cast<Real>(f.tangent), float_order).evaluate(x);
    const double speed = std::sqrt(dot(E, E)) * std::pow(x, f.alpha);
    return {sign_of_power(x, f.alpha + f.beta) * k.kappa[0].evaluate(x) / speed,
            sign_of_power(x, f.beta) * k.kappa[1].evaluate(x) / speed, k.kappa[2].evaluate(x) / speed};
}

}  // namespace crosscap
