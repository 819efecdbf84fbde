#pragma once

// Series oracle against the closed-form degree / top-term tables: one row per
// (subcase, draw), with seeded generic coefficient draws for sweeps.

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crosscap/frame.hpp"
#include "crosscap/model.hpp"

namespace crosscap {

class verify_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class RowStatus { Pass, NonGeneric, Advisory, Fail };

inline const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::Pass: return "PASS";
        case RowStatus::NonGeneric: return "NON-GENERIC";
        case RowStatus::Advisory: return "ADVISORY";
        case RowStatus::Fail: return "FAIL";
    }
    return "?";
}

struct TermCheck {
    std::optional<int> oracle_degree;
    Rational oracle_top;
    int oracle_reliable_order = -1;
    int table_degree = 0;
    Rational table_top;
    RowStatus status = RowStatus::Pass;
    std::string note;
};

struct VerifyRow {
    TableRow subcase;
    int draw = 0;
    std::string label;
    std::array<TermCheck, 3> terms;
    RowStatus status = RowStatus::Pass;
};

/// Degrees are always hard. A vanishing printed top means the draw is not
/// generic for that entry: the oracle must then sit strictly above the table
/// degree, and the row is NON-GENERIC rather than PASS.
inline TermCheck check_term(const TopTerm<Rational>& oracle, const TopTerm<Rational>& table, bool advisory) {
    TermCheck t;
    t.oracle_degree = oracle.degree;
    t.oracle_top = oracle.top;
    t.oracle_reliable_order = oracle.reliable_order;
    t.table_degree = *table.degree;
    t.table_top = table.top;
    if (table.top == 0) {
        const bool above = oracle.degree ? *oracle.degree > t.table_degree : oracle.reliable_order >= t.table_degree;
        t.status = above ? RowStatus::NonGeneric : RowStatus::Fail;
        t.note = above ? "printed top-term vanishes; oracle valuation is higher"
                       : "printed top-term vanishes but the oracle valuation is not higher";
        return t;
    }
    if (!oracle.degree) {
        const bool undecided = oracle.reliable_order < t.table_degree;
        t.status = undecided ? RowStatus::NonGeneric : RowStatus::Fail;
        t.note = undecided ? "reliable order below table degree" : "oracle vanishes to reliable order";
        return t;
    }
    if (*oracle.degree != t.table_degree) {
        t.status = RowStatus::Fail;
        t.note = "degree mismatch";
    } else if (oracle.top != table.top) {
        t.status = advisory ? RowStatus::Advisory : RowStatus::Fail;
        t.note = "top-term mismatch";
    }
    return t;
}

inline RowStatus combine(RowStatus a, RowStatus b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

inline VerifyRow verify_case(const UmbrellaCoefficients& coeffs, const CurveSpec& spec, std::string label, int draw = 0,
                             std::optional<int> order = std::nullopt) {
    if (std::holds_alternative<GeneralCurve>(spec))
        throw verify_error("verify needs an (mp+q) or (mp) family curve; general curves have no closed-form table");
    const auto W = build_umbrella(coeffs);
    const auto curve = build_curve(spec, order ? *order : default_order(coeffs, spec));
    const auto oracle = divergence_report(curvature_numerators<Rational>(frame_factors(W, curve)));
    const auto table = closed_form_reference(spec, coeffs);

    VerifyRow row;
    row.subcase = table.row;
    row.draw = draw;
    row.label = std::move(label);
    for (std::size_t i = 0; i < 3; ++i) {
        row.terms[i] = check_term(oracle.terms[i], table.report.terms[i], advisory_entry(table.row, static_cast<int>(i)));
        row.status = combine(row.status, row.terms[i].status);
    }
    return row;
}

// ---------------------------------------------------------------------------
// Generic draws.

struct Draw {
    UmbrellaCoefficients coeffs;
    CurveSpec spec;
};

class DrawSource {
public:
    DrawSource(std::uint64_t seed, TableRow row, int draw) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(draw)};
        engine_.seed(seq);
    }

    /// Uniform-ish integer in [lo, hi] by modulo reduction, identical on every platform.
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Rational small(bool nonzero = false) {
        int num = 0;
        do {
            num = integer(-6, 6);
        } while (nonzero && num == 0);
        return Rational(num) / integer(1, 4);
    }

private:
    std::mt19937_64 engine_;
};

inline constexpr int sweep_truncation = 6;

/// A draw for the given subcase with every printed top-term factor nonzero.
inline Draw generic_draw(TableRow row, std::uint64_t seed, int draw) {
    DrawSource rng(seed, row, draw);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Draw d;
        d.coeffs.k = sweep_truncation;
        for (int deg = 2; deg <= d.coeffs.k; ++deg)
            for (int i = 0; i <= deg; ++i) {
                const Rational r = rng.small(i == 0 && deg == 2);
                if (r != 0) d.coeffs.a[{i, deg - i}] = r;
            }
        for (int i = 3; i <= d.coeffs.k; ++i) {
            const Rational r = rng.small();
            if (r != 0) d.coeffs.b[i] = r;
        }

        auto coefficients = [&](int length) {
            std::vector<Rational> c{rng.small(true)};
            for (int i = 1; i < length; ++i) c.push_back(rng.small());
            return c;
        };
        switch (row) {
            case TableRow::MpqP1:
            case TableRow::MpqP2To3:
            case TableRow::MpqP4Plus: {
                FamilyMPQ s;
                s.m = rng.integer(2, 4);
                s.q = rng.integer(1, s.m - 1);
                s.p = row == TableRow::MpqP1 ? 1 : row == TableRow::MpqP2To3 ? rng.integer(2, 3) : rng.integer(4, 5);
                s.c = coefficients(3);
                d.spec = s;
                break;
            }
            case TableRow::MpP2NBelowM: {
                FamilyMP s{rng.integer(2, 4), 2, {}};
                const int n = rng.integer(1, s.m - 1);
                s.c = coefficients(s.m + 2);
                for (int i = 1; i < n; ++i) s.c[static_cast<std::size_t>(i)] = 0;
                if (s.c[static_cast<std::size_t>(n)] == 0) s.c[static_cast<std::size_t>(n)] = rng.small(true);
                d.spec = s;
                break;
            }
            case TableRow::MpP2NEqualsM: {
                FamilyMP s{rng.integer(1, 3), 2, {}};
                s.c = coefficients(s.m + 2);
                for (int i = 1; i < s.m; ++i) s.c[static_cast<std::size_t>(i)] = 0;
                if (s.c[static_cast<std::size_t>(s.m)] == 0) s.c[static_cast<std::size_t>(s.m)] = rng.small(true);
                d.spec = s;
                break;
            }
            case TableRow::MpP2NAboveM: {
                FamilyMP s{rng.integer(1, 3), 2, {}};
                s.c = coefficients(s.m + 3);
                for (int i = 1; i <= s.m; ++i) s.c[static_cast<std::size_t>(i)] = 0;
                d.spec = s;
                break;
            }
            case TableRow::MpP3:
            case TableRow::MpP4:
            case TableRow::MpP5Plus: {
                FamilyMP s;
                s.m = row == TableRow::MpP5Plus ? rng.integer(1, 2) : rng.integer(1, 3);
                s.p = row == TableRow::MpP3 ? 3 : row == TableRow::MpP4 ? 4 : rng.integer(5, 6);
                s.c = coefficients(3);
                d.spec = s;
                break;
            }
        }
        const auto table = closed_form_reference(d.spec, d.coeffs);
        if (table.row != row) continue;
        if (std::all_of(table.report.terms.begin(), table.report.terms.end(), [](const auto& t) { return t.top != 0; }))
            return d;
    }
    throw verify_error(std::string("could not draw a generic instance for ") + to_string(row));
}

inline std::vector<VerifyRow> run_sweep(std::uint64_t seed, int draws) {
    std::vector<VerifyRow> rows;
    for (const TableRow r : all_table_rows)
        for (int i = 0; i < draws; ++i) {
            const auto d = generic_draw(r, seed, i);
            rows.push_back(verify_case(d.coeffs, d.spec, "sweep", i));
        }
    std::stable_sort(rows.begin(), rows.end(), [](const VerifyRow& a, const VerifyRow& b) {
        return std::pair{static_cast<int>(a.subcase), a.draw} < std::pair{static_cast<int>(b.subcase), b.draw};
    });
    return rows;
}

inline int verify_exit_code(const std::vector<VerifyRow>& rows) {
    return std::any_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.status == RowStatus::Fail; }) ? 1 : 0;
}

inline std::string render_degree(const std::optional<int>& d, int reliable) {
    return d ? std::to_string(*d) : ">" + std::to_string(reliable);
}

/// One line per row, then a tally.
inline std::string render_verify_table(const std::vector<VerifyRow>& rows) {
    std::ostringstream out;
    std::array<int, 4> tally{};
    for (const auto& r : rows) {
        ++tally[static_cast<std::size_t>(r.status)];
        out << to_string(r.status) << "  " << to_string(r.subcase) << "  draw " << r.draw;
        if (!r.label.empty() && r.label != "sweep") out << "  " << r.label;
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& t = r.terms[i];
            out << "  k" << i + 1 << "[" << to_string(t.status) << " deg "
                << render_degree(t.oracle_degree, t.oracle_reliable_order) << "/" << t.table_degree << " top "
                << (t.oracle_degree ? to_string(t.oracle_top) : "-") << "/" << to_string(t.table_top) << "]";
        }
        out << "\n";
    }
    out << "rows " << rows.size() << "  pass " << tally[0] << "  non-generic " << tally[1] << "  advisory " << tally[2]
        << "  fail " << tally[3] << "\n";
    return out.str();
}

inline nlohmann::ordered_json verify_to_json(const std::vector<VerifyRow>& rows) {
    using nlohmann::ordered_json;
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json terms = ordered_json::array();
        for (const auto& t : r.terms)
            terms.push_back({{"status", to_string(t.status)},
                             {"oracle_degree", t.oracle_degree ? ordered_json(*t.oracle_degree) : ordered_json()},
                             {"oracle_top", t.oracle_degree ? ordered_json(to_string(t.oracle_top)) : ordered_json()},
                             {"oracle_reliable_order", t.oracle_reliable_order},
                             {"table_degree", t.table_degree},
                             {"table_top", to_string(t.table_top)},
                             {"note", t.note}});
        arr.push_back({{"status", to_string(r.status)},
                       {"subcase", to_string(r.subcase)},
                       {"draw", r.draw},
                       {"label", r.label},
                       {"terms", terms}});
    }
    return arr;
}

}  // namespace crosscap
