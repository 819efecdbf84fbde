#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace crosscap {

/// Exact coefficient field: arbitrary-precision rationals, always in lowest terms.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Float coefficient field.
using Real = double;

template <typename T>
struct field_traits;

template <>
struct field_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
    static bool negligible(const Rational& c, double /*tol*/) { return c == 0; }
    static double to_double(const Rational& c) { return c.convert_to<double>(); }
};

template <>
struct field_traits<Real> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    static bool negligible(Real c, double tol) { return std::abs(c) <= tol; }
    static double to_double(Real c) { return c; }
};

template <typename T>
concept CoefficientField = requires { field_traits<T>::exact; };

/// Absolute per-coefficient tolerance used for FLOAT comparisons.
inline constexpr double default_tolerance = 1e-9;

template <typename To, typename From>
To field_cast(const From& c) {
    if constexpr (std::is_same_v<To, From>) {
        return c;
    } else if constexpr (std::is_same_v<To, Real>) {
        return field_traits<From>::to_double(c);
    } else {
        static_assert(std::is_same_v<To, Rational> && std::is_same_v<From, Real>);
        return Rational(c);
    }
}

class rational_parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}
}  // namespace detail

/// Parses "n", "-n", "p/q" or "-p/q". Anything else (decimals, spaces, q = 0) is rejected.
inline Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
        throw rational_parse_error("malformed rational '" + std::string(text) + "'");
    Rational d{std::string(den)};
    if (d == 0) throw rational_parse_error("zero denominator in '" + std::string(text) + "'");
    Rational r = Rational{std::string(num)} / d;
    return negative ? Rational(-r) : r;
}

/// "p/q" in lowest terms, or "n" for integers.
inline std::string to_string(const Rational& r) { return r.str(); }

inline int sign(const Rational& r) { return r.sign(); }

}  // namespace crosscap
