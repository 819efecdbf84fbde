#pragma once

// Hand-rolled generators for property tests. Every generator is seeded, so a
// failing case is reproduced by its seed alone.

#include <cstdint>
#include <random>
#include <vector>

#include "crosscap/model.hpp"
#include "crosscap/series.hpp"

namespace support {

using crosscap::Rational;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    double real(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * (1.0 / 9007199254740992.0);
    }

    Rational rational(int bound = 5, bool nonzero = false) {
        int n = 0;
        do {
            n = integer(-bound, bound);
        } while (nonzero && n == 0);
        return Rational(n) / integer(1, 3);
    }

    crosscap::UniSeries<Rational> exact_series(int order) {
        std::vector<Rational> c;
        for (int i = 0; i <= order; ++i) c.push_back(rational());
        return crosscap::UniSeries<Rational>(c, order);
    }

    crosscap::UniSeries<double> real_series(int order, double lo = -2, double hi = 2) {
        std::vector<double> c;
        for (int i = 0; i <= order; ++i) c.push_back(real(lo, hi));
        return crosscap::UniSeries<double>(c, order);
    }

    template <typename T>
    crosscap::Vec3Series<T> vec(int order) {
        if constexpr (std::is_same_v<T, double>)
            return {real_series(order), real_series(order), real_series(order)};
        else
            return {exact_series(order), exact_series(order), exact_series(order)};
    }

    /// Normal-form coefficients with small entries and a_02 != 0.
    crosscap::UmbrellaCoefficients umbrella(int k, int bound = 3) {
        crosscap::UmbrellaCoefficients c;
        c.k = k;
        for (int d = 2; d <= k; ++d)
            for (int i = 0; i <= d; ++i) {
                const Rational r = rational(bound, i == 0 && d == 2);
                if (r != 0) c.a[{i, d - i}] = r;
            }
        for (int i = 3; i <= k; ++i) {
            const Rational r = rational(bound);
            if (r != 0) c.b[i] = r;
        }
        return c;
    }

    /// (c(x) x^{2m}, x^m) with c = c_0 + c_m x^m + c_{m+1} x^{m+1}.
    crosscap::FamilyMP c2m_curve(int max_m = 2, int bound = 3) {
        crosscap::FamilyMP s;
        s.m = integer(1, max_m);
        s.p = 2;
        s.c.assign(static_cast<std::size_t>(s.m + 2), Rational(0));
        s.c[0] = rational(bound, true);
        s.c[static_cast<std::size_t>(s.m)] = rational(bound);
        s.c[static_cast<std::size_t>(s.m + 1)] = rational(bound);
        return s;
    }

    /// Any family member with small parameters.
    crosscap::CurveSpec family_curve() {
        if (integer(0, 1) == 0) {
            crosscap::FamilyMPQ s;
            s.m = integer(2, 3);
            s.q = integer(1, s.m - 1);
            s.p = integer(1, 3);
            s.c = {rational(3, true), rational(3)};
            return s;
        }
        crosscap::FamilyMP s;
        s.m = integer(1, 2);
        s.p = integer(2, 4);
        s.c = {rational(3, true), rational(3), rational(3)};
        return s;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace support
