#pragma once

// Truncated power series (jets) in one and two variables.
//
// Every series carries a reliable order R: coefficients of degree > R are not
// determined by the inputs and are never exposed. Arithmetic propagates R by
// fixed rules (min for ring operations, R - 1 for differentiation, R - t for
// division by x^t) and stores exactly R + 1 coefficients in its results.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crosscap/rational.hpp"

namespace crosscap {

class series_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result of a valuation query. An empty degree means every reliable
/// coefficient vanished, which is not a proof that the series is zero.
template <typename T>
struct Valuation {
    std::optional<int> degree;
    T leading{};
    int reliable_order = -1;

    bool zero_to_order() const { return !degree.has_value(); }
};

template <CoefficientField T>
class UniSeries {
public:
    UniSeries() = default;

    UniSeries(std::vector<T> coeffs, int reliable_order) : coeffs_(std::move(coeffs)), reliable_(reliable_order) {
        if (reliable_ < -1) throw series_error("reliable order below -1");
        if (static_cast<int>(coeffs_.size()) < reliable_ + 1)
            throw series_error("reliable order exceeds storage order");
        coeffs_.resize(static_cast<std::size_t>(reliable_ + 1));
    }

    /// Exact polynomial data: everything given is reliable.
    explicit UniSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)), reliable_(static_cast<int>(coeffs_.size()) - 1) {}

    static UniSeries zero(int reliable_order) { return UniSeries(std::vector<T>(reliable_order + 1), reliable_order); }

    static UniSeries constant(const T& c, int reliable_order) { return monomial(c, 0, reliable_order); }

    static UniSeries monomial(const T& c, int degree, int reliable_order) {
        std::vector<T> v(static_cast<std::size_t>(reliable_order + 1));
        if (degree <= reliable_order) v[static_cast<std::size_t>(degree)] = c;
        return UniSeries(std::move(v), reliable_order);
    }

    int reliable_order() const { return reliable_; }

    /// Checked coefficient access; asking beyond the reliable order is an error.
    const T& operator[](int i) const {
        if (i < 0 || i > reliable_)
            throw series_error("coefficient " + std::to_string(i) + " requested beyond reliable order " +
                               std::to_string(reliable_));
        return coeffs_[static_cast<std::size_t>(i)];
    }

    /// Coefficient or zero for negative indices; still refuses unreliable degrees.
    T coeff_or_zero(int i) const { return i < 0 ? T{} : (*this)[i]; }

    std::span<const T> coefficients() const { return coeffs_; }

    UniSeries truncated(int reliable_order) const {
        const int r = std::min(reliable_order, reliable_);
        return UniSeries(std::vector<T>(coeffs_.begin(), coeffs_.begin() + (r + 1)), r);
    }

    T evaluate(const T& x) const {
        T acc{};
        for (int i = reliable_; i >= 0; --i) acc = acc * x + coeffs_[static_cast<std::size_t>(i)];
        return acc;
    }

    UniSeries operator-() const {
        UniSeries out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    friend UniSeries operator+(const UniSeries& a, const UniSeries& b) { return combine(a, b, 1); }
    friend UniSeries operator-(const UniSeries& a, const UniSeries& b) { return combine(a, b, -1); }

    friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
        const int r = std::min(a.reliable_, b.reliable_);
        std::vector<T> out(static_cast<std::size_t>(r + 1));
        for (int i = 0; i <= r; ++i) {
            const T& ai = a.coeffs_[static_cast<std::size_t>(i)];
            if (ai == T{}) continue;
            for (int j = 0; i + j <= r; ++j) {
                const T& bj = b.coeffs_[static_cast<std::size_t>(j)];
                if (bj == T{}) continue;
                out[static_cast<std::size_t>(i + j)] += ai * bj;
            }
        }
        return UniSeries(std::move(out), r);
    }

    friend UniSeries operator*(const T& s, const UniSeries& a) {
        UniSeries out = a;
        for (auto& c : out.coeffs_) c *= s;
        return out;
    }

    friend UniSeries operator*(const UniSeries& a, const T& s) { return s * a; }

    friend bool operator==(const UniSeries&, const UniSeries&) = default;

private:
    static UniSeries combine(const UniSeries& a, const UniSeries& b, int sgn) {
        const int r = std::min(a.reliable_, b.reliable_);
        std::vector<T> out(static_cast<std::size_t>(r + 1));
        for (int i = 0; i <= r; ++i) {
            const auto k = static_cast<std::size_t>(i);
            out[k] = sgn > 0 ? a.coeffs_[k] + b.coeffs_[k] : a.coeffs_[k] - b.coeffs_[k];
        }
        return UniSeries(std::move(out), r);
    }

    std::vector<T> coeffs_;
    int reliable_ = -1;
};

template <typename To, typename From>
UniSeries<To> series_cast(const UniSeries<From>& a) {
    std::vector<To> out;
    out.reserve(a.coefficients().size());
    for (const auto& c : a.coefficients()) out.push_back(field_cast<To>(c));
    return UniSeries<To>(std::move(out), a.reliable_order());
}

template <typename T>
UniSeries<T> derivative(const UniSeries<T>& a) {
    const int r = a.reliable_order() - 1;
    std::vector<T> out(static_cast<std::size_t>(std::max(r + 1, 0)));
    for (int i = 1; i <= a.reliable_order(); ++i) out[static_cast<std::size_t>(i - 1)] = T(i) * a[i];
    return UniSeries<T>(std::move(out), r);
}

/// Multiplies by x^t (t >= 0); the reliable order grows by t since the
/// shifted-in low coefficients are exact zeros.
template <typename T>
UniSeries<T> shift_up(const UniSeries<T>& a, int t) {
    if (t < 0) throw series_error("negative shift");
    std::vector<T> out(static_cast<std::size_t>(t), T{});
    out.insert(out.end(), a.coefficients().begin(), a.coefficients().end());
    return UniSeries<T>(std::move(out), a.reliable_order() + t);
}

template <typename T>
Valuation<T> valuation(const UniSeries<T>& a, double tol = default_tolerance) {
    for (int i = 0; i <= a.reliable_order(); ++i)
        if (!field_traits<T>::negligible(a[i], tol)) return {i, a[i], a.reliable_order()};
    return {std::nullopt, T{}, a.reliable_order()};
}

/// a / x^t. The dropped coefficients must vanish (within tol for FLOAT).
template <typename T>
UniSeries<T> factor_power(const UniSeries<T>& a, int t, double tol = default_tolerance) {
    if (t < 0) throw series_error("negative power in factor_power");
    if (t > a.reliable_order() + 1)
        throw series_error("cannot factor x^" + std::to_string(t) + " from a series reliable to order " +
                           std::to_string(a.reliable_order()));
    for (int i = 0; i < t; ++i)
        if (!field_traits<T>::negligible(a[i], tol))
            throw series_error("valuation " + std::to_string(i) + " is smaller than " + std::to_string(t));
    std::vector<T> out(a.coefficients().begin() + t, a.coefficients().end());
    return UniSeries<T>(std::move(out), a.reliable_order() - t);
}

template <typename T>
UniSeries<T> reciprocal(const UniSeries<T>& a) {
    if (a.reliable_order() < 0) throw series_error("reciprocal of a series with no reliable coefficients");
    if (a[0] == T{}) throw series_error("reciprocal requires a nonzero constant term");
    const int r = a.reliable_order();
    std::vector<T> b(static_cast<std::size_t>(r + 1));
    const T inv = T(1) / a[0];
    b[0] = inv;
    for (int n = 1; n <= r; ++n) {
        T acc{};
        for (int i = 1; i <= n; ++i) {
            if (a[i] == T{}) continue;
            acc += a[i] * b[static_cast<std::size_t>(n - i)];
        }
        b[static_cast<std::size_t>(n)] = -acc * inv;
    }
    return UniSeries<T>(std::move(b), r);
}

/// Square root of a series with positive constant term. FLOAT only: the
/// exact pipeline never needs field extensions.
inline UniSeries<Real> sqrt_series(const UniSeries<Real>& a) {
    if (a.reliable_order() < 0) throw series_error("sqrt of a series with no reliable coefficients");
    if (!(a[0] > 0.0)) throw series_error("sqrt_series requires a positive constant term");
    const int r = a.reliable_order();
    std::vector<Real> b(static_cast<std::size_t>(r + 1));
    b[0] = std::sqrt(a[0]);
    for (int n = 1; n <= r; ++n) {
        Real acc = a[n];
        for (int i = 1; i < n; ++i) acc -= b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(n - i)];
        b[static_cast<std::size_t>(n)] = acc / (2.0 * b[0]);
    }
    return UniSeries<Real>(std::move(b), r);
}

template <typename T>
UniSeries<T> pow(const UniSeries<T>& a, int n) {
    UniSeries<T> out = UniSeries<T>::constant(T(1), a.reliable_order());
    UniSeries<T> base = a;
    while (n > 0) {
        if (n & 1) out = out * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bivariate series in (u, v), graded by total degree.

template <CoefficientField T>
class BiSeries {
public:
    BiSeries() = default;

    explicit BiSeries(int reliable_order)
        : coeffs_(static_cast<std::size_t>(count(reliable_order)), T{}), reliable_(reliable_order) {
        if (reliable_order < -1) throw series_error("reliable order below -1");
    }

    int reliable_order() const { return reliable_; }

    const T& operator()(int i, int j) const {
        check(i, j);
        return coeffs_[index(i, j)];
    }

    void set(int i, int j, T value) {
        check(i, j);
        coeffs_[index(i, j)] = std::move(value);
    }

    friend BiSeries operator+(const BiSeries& a, const BiSeries& b) { return combine(a, b, 1); }
    friend BiSeries operator-(const BiSeries& a, const BiSeries& b) { return combine(a, b, -1); }

    friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
        const int r = std::min(a.reliable_, b.reliable_);
        BiSeries out(r);
        for (int d1 = 0; d1 <= r; ++d1)
            for (int i1 = 0; i1 <= d1; ++i1) {
                const T& x = a.coeffs_[index(i1, d1 - i1)];
                if (x == T{}) continue;
                for (int d2 = 0; d1 + d2 <= r; ++d2)
                    for (int i2 = 0; i2 <= d2; ++i2) {
                        const T& y = b.coeffs_[index(i2, d2 - i2)];
                        if (y == T{}) continue;
                        out.coeffs_[index(i1 + i2, d1 - i1 + d2 - i2)] += x * y;
                    }
            }
        return out;
    }

    friend BiSeries operator*(const T& s, const BiSeries& a) {
        BiSeries out = a;
        for (auto& c : out.coeffs_) c *= s;
        return out;
    }

    /// d/du (wrt = 0) or d/dv (wrt = 1); the reliable order drops by one.
    BiSeries partial(int wrt) const {
        BiSeries out(reliable_ - 1);
        for (int d = 1; d <= reliable_; ++d)
            for (int i = 0; i <= d; ++i) {
                const int j = d - i;
                const int power = wrt == 0 ? i : j;
                if (power == 0) continue;
                const T& c = coeffs_[index(i, j)];
                if (c == T{}) continue;
                out.coeffs_[index(wrt == 0 ? i - 1 : i, wrt == 0 ? j : j - 1)] = T(power) * c;
            }
        return out;
    }

    T evaluate(const T& u, const T& v) const {
        T acc{};
        for (int d = 0; d <= reliable_; ++d)
            for (int i = 0; i <= d; ++i) {
                const T& c = coeffs_[index(i, d - i)];
                if (c == T{}) continue;
                acc += c * ipow(u, i) * ipow(v, d - i);
            }
        return acc;
    }

    template <typename F>
    void for_each_nonzero(F&& f) const {
        for (int d = 0; d <= reliable_; ++d)
            for (int i = 0; i <= d; ++i) {
                const T& c = coeffs_[index(i, d - i)];
                if (c != T{}) f(i, d - i, c);
            }
    }

    friend bool operator==(const BiSeries&, const BiSeries&) = default;

private:
    static int count(int r) { return (r + 1) * (r + 2) / 2; }
    static std::size_t index(int i, int j) {
        const int d = i + j;
        return static_cast<std::size_t>(d * (d + 1) / 2 + j);
    }
    static T ipow(const T& x, int n) {
        T out(1);
        for (int k = 0; k < n; ++k) out *= x;
        return out;
    }
    void check(int i, int j) const {
        if (i < 0 || j < 0 || i + j > reliable_)
            throw series_error("bivariate coefficient (" + std::to_string(i) + "," + std::to_string(j) +
                               ") beyond reliable total degree " + std::to_string(reliable_));
    }
    static BiSeries combine(const BiSeries& a, const BiSeries& b, int sgn) {
        const int r = std::min(a.reliable_, b.reliable_);
        BiSeries out(r);
        for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
            out.coeffs_[k] = sgn > 0 ? a.coeffs_[k] + b.coeffs_[k] : a.coeffs_[k] - b.coeffs_[k];
        return out;
    }

    std::vector<T> coeffs_;
    int reliable_ = -1;
};

/// F(u(x), v(x)) for curve series without constant terms.
///
/// Every monomial of the discarded O(u,v)^{R_F+1} tail has x-valuation at
/// least m_min * (R_F + 1), with m_min = min(val u, val v), so the result is
/// reliable to m_min * (R_F + 1) - 1, capped by the curve's own orders.
template <typename T>
UniSeries<T> compose(const BiSeries<T>& f, const UniSeries<T>& u, const UniSeries<T>& v) {
    if (u.reliable_order() < 0 || v.reliable_order() < 0) throw series_error("compose needs reliable curve data");
    if (u[0] != T{} || v[0] != T{}) throw series_error("compose requires u(0) = v(0) = 0");
    const auto vu = valuation(u);
    const auto vv = valuation(v);
    const int curve_order = std::min(u.reliable_order(), v.reliable_order());
    int m_min = curve_order + 1;
    if (vu.degree) m_min = std::min(m_min, *vu.degree);
    if (vv.degree) m_min = std::min(m_min, *vv.degree);
    const long long tail = static_cast<long long>(m_min) * (f.reliable_order() + 1) - 1;
    const int r = static_cast<int>(std::min<long long>(tail, curve_order));

    const UniSeries<T> u_r = u.truncated(r);
    const UniSeries<T> v_r = v.truncated(r);
    std::vector<UniSeries<T>> upow{UniSeries<T>::constant(T(1), r)};
    std::vector<UniSeries<T>> vpow{UniSeries<T>::constant(T(1), r)};
    UniSeries<T> out = UniSeries<T>::zero(r);
    f.for_each_nonzero([&](int i, int j, const T& c) {
        while (static_cast<int>(upow.size()) <= i) upow.push_back(upow.back() * u_r);
        while (static_cast<int>(vpow.size()) <= j) vpow.push_back(vpow.back() * v_r);
        out = out + c * (upow[static_cast<std::size_t>(i)] * vpow[static_cast<std::size_t>(j)]);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Vector-valued series.

template <CoefficientField T>
class Vec3Series {
public:
    Vec3Series() = default;

    Vec3Series(UniSeries<T> x, UniSeries<T> y, UniSeries<T> z) {
        const int r = std::min({x.reliable_order(), y.reliable_order(), z.reliable_order()});
        c_ = {x.truncated(r), y.truncated(r), z.truncated(r)};
    }

    int reliable_order() const { return c_[0].reliable_order(); }

    const UniSeries<T>& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }

    std::array<T, 3> coefficient(int degree) const { return {c_[0][degree], c_[1][degree], c_[2][degree]}; }

    std::array<T, 3> evaluate(const T& x) const { return {c_[0].evaluate(x), c_[1].evaluate(x), c_[2].evaluate(x)}; }

    Vec3Series truncated(int r) const { return {c_[0].truncated(r), c_[1].truncated(r), c_[2].truncated(r)}; }

    friend Vec3Series operator+(const Vec3Series& a, const Vec3Series& b) {
        return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]};
    }
    friend Vec3Series operator-(const Vec3Series& a, const Vec3Series& b) {
        return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]};
    }
    friend Vec3Series operator*(const UniSeries<T>& s, const Vec3Series& a) {
        return {s * a.c_[0], s * a.c_[1], s * a.c_[2]};
    }
    friend Vec3Series operator*(const T& s, const Vec3Series& a) { return {s * a.c_[0], s * a.c_[1], s * a.c_[2]}; }

    friend bool operator==(const Vec3Series&, const Vec3Series&) = default;

private:
    std::array<UniSeries<T>, 3> c_;
};

template <typename To, typename From>
Vec3Series<To> series_cast(const Vec3Series<From>& a) {
    return {series_cast<To>(a[0]), series_cast<To>(a[1]), series_cast<To>(a[2])};
}

template <typename T>
UniSeries<T> dot(const Vec3Series<T>& a, const Vec3Series<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename T>
Vec3Series<T> cross(const Vec3Series<T>& a, const Vec3Series<T>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <typename T>
UniSeries<T> norm_sq(const Vec3Series<T>& a) {
    return dot(a, a);
}

inline UniSeries<Real> norm(const Vec3Series<Real>& a) { return sqrt_series(norm_sq(a)); }

template <typename T>
Vec3Series<T> derivative(const Vec3Series<T>& a) {
    return {derivative(a[0]), derivative(a[1]), derivative(a[2])};
}

template <typename T>
Vec3Series<T> shift_up(const Vec3Series<T>& a, int t) {
    return {shift_up(a[0], t), shift_up(a[1], t), shift_up(a[2], t)};
}

/// Componentwise division by x^t.
template <typename T>
Vec3Series<T> factor_power(const Vec3Series<T>& a, int t, double tol = default_tolerance) {
    return {factor_power(a[0], t, tol), factor_power(a[1], t, tol), factor_power(a[2], t, tol)};
}

/// Minimum valuation over the three components and the leading vector there.
template <typename T>
struct VecValuation {
    std::optional<int> degree;
    std::array<T, 3> leading{};
    int reliable_order = -1;

    bool zero_to_order() const { return !degree.has_value(); }
};

template <typename T>
VecValuation<T> valuation(const Vec3Series<T>& a, double tol = default_tolerance) {
    std::optional<int> best;
    for (int i = 0; i < 3; ++i) {
        const auto v = valuation(a[i], tol);
        if (v.degree && (!best || *v.degree < *best)) best = v.degree;
    }
    VecValuation<T> out{best, {}, a.reliable_order()};
    if (best) out.leading = a.coefficient(*best);
    return out;
}

template <typename T>
T max_abs_coefficient(const UniSeries<T>& a) {
    T best{};
    for (const auto& c : a.coefficients()) {
        const T mag = c < T{} ? T(-c) : c;
        if (mag > best) best = mag;
    }
    return best;
}

template <typename T>
T max_abs_coefficient(const Vec3Series<T>& a) {
    return std::max({max_abs_coefficient(a[0]), max_abs_coefficient(a[1]), max_abs_coefficient(a[2])});
}

template <typename T>
std::array<T, 3> cross(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <typename T>
T dot(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename T>
bool parallel(const std::array<T, 3>& a, const std::array<T, 3>& b) {
    const auto c = cross(a, b);
    return c[0] == T{} && c[1] == T{} && c[2] == T{};
}

inline std::array<Real, 3> normalized(const std::array<Real, 3>& a) {
    const Real n = std::sqrt(dot(a, a));
    return {a[0] / n, a[1] / n, a[2] / n};
}

}  // namespace crosscap
