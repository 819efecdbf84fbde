#pragma once

// Bundled configurations with hand-checked invariants.

#include <optional>
#include <string>
#include <vector>

#include "crosscap/config.hpp"

namespace crosscap {

struct Fixture {
    std::string name;
    std::string summary;
    RunConfig config;
};

inline std::vector<Fixture> builtin_fixtures() {
    auto make = [](std::string name, std::string summary, std::map<std::pair<int, int>, Rational> a,
                   std::map<int, Rational> b, CurveSpec curve) {
        RunConfig cfg;
        cfg.name = name;
        cfg.coeffs.k = 8;
        cfg.coeffs.a = std::move(a);
        cfg.coeffs.b = std::move(b);
        cfg.curve = std::move(curve);
        return Fixture{std::move(name), std::move(summary), std::move(cfg)};
    };
    using R = Rational;
    return {
        make("s1", "a02=2, a11=1; curve (x^2, x)", {{{0, 2}, R(2)}, {{1, 1}, R(1)}}, {}, FamilyMP{1, 2, {R(1)}}),
        make("s2", "a02=1, a11=1, b3=-6; curve ((1-2x)x^2, x)", {{{0, 2}, R(1)}, {{1, 1}, R(1)}}, {{3, R(-6)}},
             FamilyMP{1, 2, {R(1), R(-2)}}),
        make("s2_variant", "s2 with c_m = 1", {{{0, 2}, R(1)}, {{1, 1}, R(1)}}, {{3, R(-6)}},
             FamilyMP{1, 2, {R(1), R(1)}}),
        make("s3", "a02=2; curve (x^4, x^3)", {{{0, 2}, R(2)}}, {}, FamilyMPQ{3, 1, 1, {R(1)}}),
        make("a_zero", "a02=2, a11=1; curve ((1+x)x^2, x), A = 0", {{{0, 2}, R(2)}, {{1, 1}, R(1)}}, {},
             FamilyMP{1, 2, {R(1), R(1)}}),
        make("c_zero", "a02=2, b3=2; curve (x^2, x), C = 0", {{{0, 2}, R(2)}}, {{3, R(2)}}, FamilyMP{1, 2, {R(1)}}),
    };
}

inline std::optional<Fixture> find_fixture(const std::string& name) {
    for (auto& f : builtin_fixtures())
        if (f.name == name) return f;
    return std::nullopt;
}

}  // namespace crosscap
