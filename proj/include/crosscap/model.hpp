#pragma once

// Bruce-West normal form of the Whitney umbrella, the curve families through
// it, and the tangency classification of a curve at the singular point.

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crosscap/rational.hpp"
#include "crosscap/series.hpp"

namespace crosscap {

class model_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coefficients a_ij (2 <= i+j <= k) and b_i (3 <= i <= k) of the normal form
///   (u, uv + sum b_i v^i / i!, sum a_ij u^i v^j / (i! j!)) + O(u,v)^{k+1}.
/// Absent entries are zero.
struct UmbrellaCoefficients {
    int k = 3;
    std::map<std::pair<int, int>, Rational> a;
    std::map<int, Rational> b;

    Rational a_at(int i, int j) const {
        const auto it = a.find({i, j});
        return it == a.end() ? Rational(0) : it->second;
    }
    Rational b_at(int i) const {
        const auto it = b.find(i);
        return it == b.end() ? Rational(0) : it->second;
    }

    /// Every violated constraint, in a stable order. Empty when valid.
    std::vector<std::string> violations() const {
        std::vector<std::string> out;
        if (k < 3) out.push_back("k must be at least 3");
        for (const auto& [ij, c] : a) {
            const int d = ij.first + ij.second;
            if (ij.first < 0 || ij.second < 0 || d < 2 || d > k)
                out.push_back("a_" + std::to_string(ij.first) + std::to_string(ij.second) +
                              " outside 2 <= i+j <= k");
        }
        for (const auto& [i, c] : b)
            if (i < 3 || i > k) out.push_back("b_" + std::to_string(i) + " outside 3 <= i <= k");
        if (a_at(0, 2) == 0) out.push_back("a_02 must be nonzero");
        return out;
    }

    void validate() const {
        const auto v = violations();
        if (!v.empty()) throw model_error(v.front());
    }

    friend bool operator==(const UmbrellaCoefficients&, const UmbrellaCoefficients&) = default;
};

/// c_w(x) = (c(x) x^{mp+q}, x^m) with p >= 1, 1 <= q < m.
struct FamilyMPQ {
    int m = 2;
    int p = 1;
    int q = 1;
    std::vector<Rational> c;  // c_0, c_1, ... ; c_0 != 0
    friend bool operator==(const FamilyMPQ&, const FamilyMPQ&) = default;
};

/// c_w(x) = (c(x) x^{mp}, x^m) with p >= 2.
struct FamilyMP {
    int m = 1;
    int p = 2;
    std::vector<Rational> c;
    friend bool operator==(const FamilyMP&, const FamilyMP&) = default;
};

/// Arbitrary polynomial plane curve (first(x), second(x)) through the origin.
struct GeneralCurve {
    std::vector<Rational> first;
    std::vector<Rational> second;
    friend bool operator==(const GeneralCurve&, const GeneralCurve&) = default;
};

using CurveSpec = std::variant<FamilyMPQ, FamilyMP, GeneralCurve>;

/// A plane curve germ as a pair of exact series.
struct PlaneCurve {
    UniSeries<Rational> first;
    UniSeries<Rational> second;
};

/// The normal-form map as three bivariate series, reliable to total degree k.
struct Umbrella {
    std::array<BiSeries<Rational>, 3> component;
    int k = 3;
};

namespace detail {

inline Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline int poly_valuation(const std::vector<Rational>& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) return static_cast<int>(i);
    return -1;
}

}  // namespace detail

inline std::vector<std::string> curve_violations(const CurveSpec& spec) {
    std::vector<std::string> out;
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FamilyMPQ>) {
                if (s.m < 2) out.push_back("FamilyMPQ requires m >= 2");
                if (s.p < 1) out.push_back("FamilyMPQ requires p >= 1");
                if (s.q < 1 || s.q >= s.m) out.push_back("FamilyMPQ requires 1 <= q < m");
                if (s.c.empty() || s.c.front() == 0) out.push_back("c_0 must be nonzero");
            } else if constexpr (std::is_same_v<S, FamilyMP>) {
                if (s.m < 1) out.push_back("FamilyMP requires m >= 1");
                if (s.p < 2) out.push_back("FamilyMP requires p >= 2");
                if (s.c.empty() || s.c.front() == 0) out.push_back("c_0 must be nonzero");
            } else {
                const int v1 = detail::poly_valuation(s.first);
                const int v2 = detail::poly_valuation(s.second);
                if (v1 < 0 || v2 < 0) out.push_back("general curve components must be nonzero");
                if (v1 == 0 || v2 == 0) out.push_back("general curve must pass through the origin");
                // rank condition: the components are not proportional
                bool independent = false;
                for (std::size_t i = 0; i < s.first.size() && !independent; ++i)
                    for (std::size_t j = 0; j < s.second.size() && !independent; ++j) {
                        const Rational ui = s.first[i];
                        const Rational vj = s.second[j];
                        const Rational uj = j < s.first.size() ? s.first[j] : Rational(0);
                        const Rational vi = i < s.second.size() ? s.second[i] : Rational(0);
                        if (ui * vj - uj * vi != 0) independent = true;
                    }
                if (v1 > 0 && v2 > 0 && !independent)
                    out.push_back("general curve violates the rank-2 condition (components are proportional)");
            }
        },
        spec);
    return out;
}

/// Multiplicity m_min of the curve: the smaller component valuation.
inline int curve_multiplicity(const CurveSpec& spec) {
    return std::visit(
        [](const auto& s) -> int {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, GeneralCurve>) {
                const int v1 = detail::poly_valuation(s.first);
                const int v2 = detail::poly_valuation(s.second);
                if (v1 < 0) return v2;
                if (v2 < 0) return v1;
                return std::min(v1, v2);
            } else {
                return s.m;
            }
        },
        spec);
}

/// Default storage order m_min (k + 1) - 1: beyond it the O(u,v)^{k+1} tail
/// of the normal form contaminates every coefficient.
inline int default_order(const UmbrellaCoefficients& coeffs, const CurveSpec& spec) {
    return curve_multiplicity(spec) * (coeffs.k + 1) - 1;
}

inline Umbrella build_umbrella(const UmbrellaCoefficients& c) {
    c.validate();
    Umbrella w;
    w.k = c.k;
    for (auto& comp : w.component) comp = BiSeries<Rational>(c.k);
    w.component[0].set(1, 0, Rational(1));
    w.component[1].set(1, 1, Rational(1));
    for (const auto& [i, bi] : c.b) w.component[1].set(0, i, bi / detail::factorial(i));
    for (const auto& [ij, aij] : c.a)
        w.component[2].set(ij.first, ij.second, aij / (detail::factorial(ij.first) * detail::factorial(ij.second)));
    return w;
}

inline PlaneCurve build_curve(const CurveSpec& spec, int order) {
    const auto problems = curve_violations(spec);
    if (!problems.empty()) throw model_error(problems.front());
    if (order < 1) throw model_error("curve order must be positive");
    auto poly = [order](const std::vector<Rational>& c, int shift) {
        std::vector<Rational> out(static_cast<std::size_t>(order + 1));
        for (std::size_t i = 0; i < c.size(); ++i) {
            const std::size_t d = i + static_cast<std::size_t>(shift);
            if (d <= static_cast<std::size_t>(order)) out[d] = c[i];
        }
        return UniSeries<Rational>(std::move(out), order);
    };
    return std::visit(
        [&](const auto& s) -> PlaneCurve {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FamilyMPQ>) {
                return {poly(s.c, s.m * s.p + s.q), UniSeries<Rational>::monomial(Rational(1), s.m, order)};
            } else if constexpr (std::is_same_v<S, FamilyMP>) {
                return {poly(s.c, s.m * s.p), UniSeries<Rational>::monomial(Rational(1), s.m, order)};
            } else {
                return {poly(s.first, 0), poly(s.second, 0)};
            }
        },
        spec);
}

/// W o c_w.
inline Vec3Series<Rational> image_curve(const Umbrella& w, const PlaneCurve& c) {
    return {compose(w.component[0], c.first, c.second), compose(w.component[1], c.first, c.second),
            compose(w.component[2], c.first, c.second)};
}

/// (W_u x W_v) o c_w.
inline Vec3Series<Rational> normal_field_raw(const Umbrella& w, const PlaneCurve& c) {
    auto along = [&](int wrt) {
        return Vec3Series<Rational>{compose(w.component[0].partial(wrt), c.first, c.second),
                                    compose(w.component[1].partial(wrt), c.first, c.second),
                                    compose(w.component[2].partial(wrt), c.first, c.second)};
    };
    return cross(along(0), along(1));
}

enum class TangencyCase { TangentLine = 1, TangentLineHigher = 2, PrincipalPlane = 3, IntersectionLine = 4 };

struct TangencyClassification {
    TangencyCase tangency_case;
    int multiplicity;                        // m
    std::array<double, 3> limiting_tangent;  // e(0)
    std::array<double, 3> tangent_line{1, 0, 0};
    std::array<double, 3> principal_intersection_line{0, 0, 1};
    std::array<double, 2> null_vector{0, 1};
    std::array<double, 3> principal_plane_normal{0, 1, 0};
};

/// Decides the tangency case from val(first component) against the
/// multiplicity m, and the limiting unit tangent from the leading
/// coefficients of the extended tangent factor:
///   (1) val = m        e(0) ~ (c_1(0), 0, 0)
///   (2) m < val < 2m   e(0) ~ (c̄_1(0), 0, 0)
///   (3) val = 2m       e(0) ~ (2 c̃_1(0), 0, a_02 c_2(0)^2)
///   (4) val > 2m       e(0) ~ (0, 0, a_02)
inline TangencyClassification classify_tangency(const UmbrellaCoefficients& coeffs, const PlaneCurve& c) {
    const auto v1 = valuation(c.first);
    const auto v2 = valuation(c.second);
    if (v1.zero_to_order() && v2.zero_to_order()) throw model_error("curve vanishes to its reliable order");
    int m = v2.degree ? *v2.degree : *v1.degree;
    if (v1.degree) m = std::min(m, *v1.degree);
    const Rational a02 = coeffs.a_at(0, 2);

    TangencyClassification out{};
    out.multiplicity = m;
    const int reliable = std::min(c.first.reliable_order(), c.second.reliable_order());
    if (v1.zero_to_order() && reliable < 2 * m + 1)
        throw model_error("tangency case undetermined within reliable order");

    if (v1.degree && *v1.degree == m) {
        out.tangency_case = TangencyCase::TangentLine;
        out.limiting_tangent = {static_cast<double>(sign(v1.leading)), 0, 0};
    } else if (v1.degree && *v1.degree < 2 * m) {
        out.tangency_case = TangencyCase::TangentLineHigher;
        out.limiting_tangent = {static_cast<double>(sign(v1.leading)), 0, 0};
    } else if (v1.degree && *v1.degree == 2 * m) {
        out.tangency_case = TangencyCase::PrincipalPlane;
        const Rational c2 = c.second[m];
        out.limiting_tangent = normalized({field_cast<double>(Rational(2 * v1.leading)), 0.0,
                                           field_cast<double>(Rational(a02 * c2 * c2))});
    } else {
        out.tangency_case = TangencyCase::IntersectionLine;
        out.limiting_tangent = {0, 0, static_cast<double>(sign(a02))};
    }
    return out;
}

}  // namespace crosscap
