#pragma once

// Regular-point geometry computed straight from the surface partials, with
// no series and no extended frame. Used as an independent check.

#include <array>
#include <cmath>

#include "crosscap/model.hpp"

namespace support {

using crosscap::Rational;
using V3 = std::array<double, 3>;

inline V3 add(V3 a, const V3& b) {
    for (int i = 0; i < 3; ++i) a[i] += b[i];
    return a;
}
inline V3 scale(double s, V3 a) {
    for (auto& c : a) c *= s;
    return a;
}
inline double dot3(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline V3 cross3(const V3& a, const V3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double len(const V3& a) { return std::sqrt(dot3(a, a)); }

/// d^{i+j} W / du^i dv^j at (u, v), from the polynomial coefficients.
inline V3 partial(const crosscap::Umbrella& w, int di, int dj, double u, double v) {
    V3 out{};
    auto falling = [](int n, int k) {
        double f = 1;
        for (int t = 0; t < k; ++t) f *= n - t;
        return f;
    };
    for (std::size_t c = 0; c < 3; ++c)
        w.component[c].for_each_nonzero([&](int i, int j, const Rational& a) {
            if (i < di || j < dj) return;
            out[c] += a.convert_to<double>() * falling(i, di) * falling(j, dj) * std::pow(u, i - di) *
                      std::pow(v, j - dj);
        });
    return out;
}

inline std::array<double, 3> poly_jet(const std::vector<Rational>& c, int shift, double x) {
    // value, first and second derivative of x^shift * sum c_i x^i
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double a = c[i].convert_to<double>();
        const int n = static_cast<int>(i) + shift;
        out[0] += a * std::pow(x, n);
        if (n >= 1) out[1] += a * n * std::pow(x, n - 1);
        if (n >= 2) out[2] += a * n * (n - 1) * std::pow(x, n - 2);
    }
    return out;
}

struct CurveJet {
    std::array<double, 3> u, v;  // value, first, second derivative
};

inline CurveJet curve_jet(const crosscap::CurveSpec& spec, double x) {
    return std::visit(
        [&](const auto& s) -> CurveJet {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, crosscap::FamilyMPQ>) {
                return {poly_jet(s.c, s.m * s.p + s.q, x), poly_jet({Rational(1)}, s.m, x)};
            } else if constexpr (std::is_same_v<S, crosscap::FamilyMP>) {
                return {poly_jet(s.c, s.m * s.p, x), poly_jet({Rational(1)}, s.m, x)};
            } else {
                return {poly_jet(s.first, 0, x), poly_jet(s.second, 0, x)};
            }
        },
        spec);
}

struct DirectCurvatures {
    double geodesic, normal, torsion;
};

/// kappa_g = <g'', b>/|g'|^2, kappa_nu = <g'', n>/|g'|^2, kappa_t = -<N', b>/(|N||g'|)
/// with the frame built from g' and N = W_u x W_v at a regular point.
inline DirectCurvatures direct_curvatures(const crosscap::Umbrella& w, const crosscap::CurveSpec& spec, double x) {
    const auto j = curve_jet(spec, x);
    const double u = j.u[0], v = j.v[0], du = j.u[1], dv = j.v[1];
    const V3 Wu = partial(w, 1, 0, u, v), Wv = partial(w, 0, 1, u, v);
    const V3 Wuu = partial(w, 2, 0, u, v), Wuv = partial(w, 1, 1, u, v), Wvv = partial(w, 0, 2, u, v);
    const V3 g1 = add(scale(du, Wu), scale(dv, Wv));
    V3 g2 = add(scale(du * du, Wuu), scale(2 * du * dv, Wuv));
    g2 = add(g2, scale(dv * dv, Wvv));
    g2 = add(g2, add(scale(j.u[2], Wu), scale(j.v[2], Wv)));
    const V3 N = cross3(Wu, Wv);
    const V3 dN = add(cross3(add(scale(du, Wuu), scale(dv, Wuv)), Wv), cross3(Wu, add(scale(du, Wuv), scale(dv, Wvv))));
    const V3 e = scale(1 / len(g1), g1);
    const V3 n = scale(1 / len(N), N);
    const V3 b = cross3(n, e);
    const double s2 = dot3(g1, g1);
    return {dot3(g2, b) / s2, dot3(g2, n) / s2, -dot3(dN, b) / (len(N) * len(g1))};
}

}  // namespace support
