// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "crosscap/crosscap.hpp"
#include "support/direct.hpp"
#include "support/generators.hpp"

using namespace crosscap;
using Q = Rational;

namespace {

// pinned tolerances
constexpr double frame_tol = 1e-9;          // criterion 4
constexpr double relative_tol = 1e-6;       // criterion 5
constexpr double developable_tol = 1e-8;    // criterion 7
constexpr double contour_tol = 1e-9;        // criterion 6, float side
constexpr double s1_budget_s = 1.0;
constexpr double s3_budget_s = 1.0;
constexpr double sweep_budget_s = 30.0;
constexpr int sweep_draws = 10;
constexpr int random_frame_draws = 25;
constexpr double frame_coefficient_bound = 100.0;  // regime of the absolute float tolerance
constexpr int random_sigma_draws = 25;
constexpr int random_self_draws = 10;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

struct Built {
    UmbrellaCoefficients coeffs;
    CurveSpec spec;
    Umbrella w;
    PlaneCurve curve;
    FrameFactors f;
};

Built build(const UmbrellaCoefficients& k, const CurveSpec& s) {
    Built b{k, s, build_umbrella(k), build_curve(s, default_order(k, s)), {}};
    b.f = frame_factors(b.w, b.curve);
    return b;
}

Built fixture(const std::string& name) {
    const auto c = find_fixture(name).value().config;
    return build(c.coeffs, c.curve);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

std::string degrees_and_tops(const CurvatureReport<Rational>& r) {
    std::ostringstream s;
    for (int i = 0; i < 3; ++i) {
        const auto& t = r.terms[static_cast<std::size_t>(i)];
        s << (i ? " " : "") << "k" << i + 1 << ":" << (t.degree ? std::to_string(*t.degree) : "-") << "/" << to_string(t.top);
    }
    return s.str();
}

bool report_is(const CurvatureReport<Rational>& r, std::array<int, 3> deg, std::array<Q, 3> top) {
    for (std::size_t i = 0; i < 3; ++i)
        if (!r.terms[i].degree || *r.terms[i].degree != deg[i] || r.terms[i].top != top[i]) return false;
    return true;
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = fixture("s1");
    const auto oracle = divergence_report(curvature_numerators<Rational>(b.f));
    const auto table = closed_form_reference(b.spec, b.coeffs);
    const auto inv = top_invariants(b.coeffs, b.spec);
    const auto from_inv = tops_from_invariants(inv, 1, b.coeffs.a_at(0, 2));
    o.require(report_is(oracle, {0, 0, 0}, {Q(12), Q(-6), Q(4)}), "oracle " + degrees_and_tops(oracle));
    o.require(table.row == TableRow::MpP2NAboveM, std::string("subcase ") + to_string(table.row));
    o.require(report_is(table.report, {0, 0, 0}, {Q(12), Q(-6), Q(4)}), "closed form " + degrees_and_tops(table.report));
    o.require(inv.A == 6 && inv.B == 3 && inv.C == -2, "invariants " + to_string(inv.A) + "," + to_string(inv.B) + "," + to_string(inv.C));
    o.require(from_inv == std::array<Q, 3>{Q(12), Q(-6), Q(4)}, "tops from invariants differ");
    const double dt = seconds_since(t0);
    o.require(dt < s1_budget_s, "took " + fmt(dt) + " s");
    o.notes.insert(o.notes.begin(), "degrees (0,0,0), tops (12,-6,4), " + fmt(dt) + " s");
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = fixture("s3");
    const auto oracle = divergence_report(curvature_numerators<Rational>(b.f));
    const auto table = closed_form_reference(b.spec, b.coeffs);
    o.require(report_is(oracle, {1, 2, 0}, {Q(96), Q(-30), Q(-8)}), "oracle " + degrees_and_tops(oracle));
    o.require(table.row == TableRow::MpqP1, std::string("subcase ") + to_string(table.row));
    o.require(report_is(table.report, {1, 2, 0}, {Q(96), Q(-30), Q(-8)}), "closed form " + degrees_and_tops(table.report));
    const double dt = seconds_since(t0);
    o.require(dt < s3_budget_s, "took " + fmt(dt) + " s");
    o.notes.insert(o.notes.begin(), "degrees (1,2,0), tops (96,-30,-8), " + fmt(dt) + " s");
    return o;
}

Outcome criterion3() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = run_sweep(0, sweep_draws);
    const double dt = seconds_since(t0);
    std::map<std::string, int> failures;
    std::map<std::string, std::string> examples;
    int degree_fail = 0, top_fail = 0, advisory = 0, passed = 0, non_generic = 0;
    std::map<TableRow, int> per_row;
    for (const auto& r : rows) {
        ++per_row[r.subcase];
        for (std::size_t i = 0; i < 3; ++i) {
            const auto& t = r.terms[i];
            if (t.status == RowStatus::Fail) {
                const bool degree = t.note != "top-term mismatch";
                (degree ? degree_fail : top_fail)++;
                std::ostringstream key, first;
                key << to_string(r.subcase) << " k" << i + 1 << (degree ? " degree" : " top");
                first << "e.g. oracle " << to_string(t.oracle_top) << " vs table " << to_string(t.table_top);
                if (!failures.count(key.str())) examples[key.str()] = first.str();
                ++failures[key.str()];
            }
        }
        if (r.status == RowStatus::Pass) ++passed;
        if (r.status == RowStatus::Advisory) ++advisory;
        if (r.status == RowStatus::NonGeneric) ++non_generic;
    }
    for (const auto row : all_table_rows)
        o.require(per_row[row] >= sweep_draws, std::string("too few draws for ") + to_string(row));
    o.require(degree_fail == 0, std::to_string(degree_fail) + " degree mismatches");
    o.require(top_fail == 0, std::to_string(top_fail) + " top-term mismatches outside the advisory entry");
    for (const auto& [k, n] : failures) o.notes.push_back(k + " mismatch in " + std::to_string(n) + " rows, " + examples[k]);
    o.require(dt < sweep_budget_s, "took " + fmt(dt) + " s");
    o.notes.insert(o.notes.begin(), std::to_string(rows.size()) + " rows: " + std::to_string(passed) + " pass, " +
                                        std::to_string(advisory) + " advisory, " + std::to_string(non_generic) +
                                        " non-generic, " + fmt(dt) + " s");
    return o;
}

double frame_defect(const DarbouxFrame& fr) {
    const auto k = curvature_series(fr);
    const std::array<const Vec3Series<Real>*, 3> v{&fr.e, &fr.b, &fr.n};
    const std::array<Vec3Series<Real>, 3> d{derivative(fr.e), derivative(fr.b), derivative(fr.n)};
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            auto g = dot(*v[i], *v[j]);
            if (i == j) g = g - UniSeries<Real>::constant(1.0, g.reliable_order());
            worst = std::max(worst, max_abs_coefficient(g));
            // <X_i', X_j> + <X_i, X_j'> = 0
            worst = std::max(worst, max_abs_coefficient(dot(d[i], *v[j]) + dot(*v[i], d[j])));
        }
    worst = std::max(worst, max_abs_coefficient(dot(d[0], fr.b) - k.kappa[0]));
    worst = std::max(worst, max_abs_coefficient(dot(d[0], fr.n) - k.kappa[1]));
    worst = std::max(worst, max_abs_coefficient(dot(d[1], fr.n) - k.kappa[2]));
    return worst;
}

double frame_scale(const DarbouxFrame& fr) {
    return std::max({max_abs_coefficient(fr.e), max_abs_coefficient(fr.b), max_abs_coefficient(fr.n)});
}

Outcome criterion4() {
    Outcome o;
    double worst = 0;
    int cases = 0;
    for (const auto& fx : builtin_fixtures()) {
        const double d = frame_defect(darboux_frame(build(fx.config.coeffs, fx.config.curve).f, 12));
        worst = std::max(worst, d);
        o.require(d <= frame_tol, fx.name + " defect " + fmt(d));
        ++cases;
    }
    // draws are resampled until the frame coefficients stay within the bound
    support::Gen g(4);
    int drawn = 0, accepted = 0;
    double skipped_worst = 0, skipped_scale = 0;
    while (accepted < random_frame_draws && drawn < 100 * random_frame_draws) {
        ++drawn;
        const auto k = g.umbrella(5, 2);
        const auto spec = g.family_curve();
        const auto fr = darboux_frame(build(k, spec).f, 12);
        const double d = frame_defect(fr);
        const double scale = frame_scale(fr);
        if (scale > frame_coefficient_bound) {
            skipped_worst = std::max(skipped_worst, d);
            skipped_scale = std::max(skipped_scale, scale);
            continue;
        }
        worst = std::max(worst, d);
        o.require(d <= frame_tol, "draw " + std::to_string(drawn) + " defect " + fmt(d));
        ++accepted;
        ++cases;
    }
    o.require(accepted == random_frame_draws, "only " + std::to_string(accepted) + " draws within the coefficient bound");
    o.notes.insert(o.notes.begin(), std::to_string(cases) + " cases, worst coefficient defect " + fmt(worst));
    o.notes.push_back(std::to_string(drawn - accepted) + " draws with frame coefficients above " +
                      fmt(frame_coefficient_bound) + " resampled (largest " + fmt(skipped_scale) + ", defect " +
                      fmt(skipped_worst) + ")");
    return o;
}

Outcome criterion5() {
    Outcome o;
    double worst = 0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); };
    auto check = [&](const std::string& name, const Built& b) {
        const auto k = curvatures_from_numerators(curvature_numerators<Rational>(b.f), b.f, 12);
        for (const double x : {-0.02, -0.01, 0.01, 0.02}) {
            const auto r = regular_curvatures(k, b.f, x, 12);
            const auto d = support::direct_curvatures(b.w, b.spec, x);
            const double e = std::max({rel(r.geodesic, d.geodesic), rel(r.normal, d.normal), rel(r.torsion, d.torsion)});
            worst = std::max(worst, e);
            o.require(e <= relative_tol, name + " at x=" + fmt(x) + ": error " + fmt(e));
        }
    };
    for (const auto& fx : builtin_fixtures()) check(fx.name, build(fx.config.coeffs, fx.config.curve));
    // odd alpha and beta so the sign factors are exercised at x < 0
    UmbrellaCoefficients k;
    k.k = 8;
    k.a = {{{0, 2}, Q(2)}, {{1, 1}, Q(1)}, {{0, 3}, Q(-1)}};
    k.b = {{3, Q(1)}};
    const auto odd = build(k, FamilyMPQ{3, 1, 1, {Q(1), Q(1)}});
    o.require(odd.f.alpha % 2 == 1 || odd.f.beta % 2 == 1, "no odd exponent in the sign-factor case");
    check("odd-exponent curve", odd);
    o.notes.insert(o.notes.begin(), "worst error " + fmt(worst) + " (|a-b|/max(|b|,1))");
    return o;
}

Outcome criterion6() {
    Outcome o;
    {
        const auto b = fixture("s2");
        const auto inv = top_invariants(b.coeffs, b.spec);
        const auto p = projection_tangency(b.coeffs, b.spec);
        const auto t = self_intersection_tangency(b.coeffs, b.spec);
        o.require(inv.B == 0, "s2: B = " + to_string(inv.B));
        o.require(t.predicted && t.parallel, "s2: self-intersection tangency predicate/geometry disagree");
        o.require(p.verdict == ProjectionVerdict::TangentToB, std::string("s2: verdict ") + to_string(p.verdict));
        o.require(p.series_verdict == ProjectionVerdict::TangentToB, std::string("s2: series ") + to_string(p.series_verdict));
    }
    {
        const auto b = fixture("a_zero");
        const auto p = projection_tangency(b.coeffs, b.spec);
        o.require(top_invariants(b.coeffs, b.spec).A == 0, "a_zero: A != 0");
        o.require(p.verdict == ProjectionVerdict::TangentToN, std::string("a_zero: verdict ") + to_string(p.verdict));
        o.require(p.series_verdict == ProjectionVerdict::TangentToN,
                  std::string("a_zero: series ") + to_string(p.series_verdict));
    }
    double contour = 0;
    {
        const auto b = fixture("c_zero");
        const auto& s = std::get<FamilyMP>(b.spec);
        o.require(s.c.front() == 1 && b.coeffs.a_at(0, 2) == 2 && b.coeffs.b_at(3) == 2, "c_zero fixture data changed");
        const auto c = contour_deviation(b.coeffs, b.spec);
        contour = c.series;
        o.require(top_invariants(b.coeffs, b.spec).C == 0, "c_zero: C != 0");
        o.require(c.raw_pairing == 0, "c_zero: exact pairing " + to_string(c.raw_pairing));
        o.require(std::abs(c.series) <= contour_tol, "c_zero: frame coefficient " + fmt(c.series));
    }
    o.notes.insert(o.notes.begin(), "s2 TANGENT_TO_B, a_zero TANGENT_TO_N, c_zero coefficient " + fmt(contour));
    return o;
}

Outcome criterion7() {
    Outcome o;
    double worst_residual = 0, worst_striction = 0;
    for (const auto& fx : builtin_fixtures()) {
        const auto b = build(fx.config.coeffs, fx.config.curve);
        const auto d = analyze_developable(b.w, b.curve);
        const double r = max_abs_coefficient(developability_residual(d.od.surface()));
        worst_residual = std::max(worst_residual, r);
        o.require(r <= developable_tol, fx.name + " residual " + fmt(r));
        if (!d.striction.exists) continue;
        const auto ds = derivative(d.striction.curve);
        const double orth = max_abs_coefficient(dot(ds, derivative(d.od.director)));
        const double par = max_abs_coefficient(cross(ds, d.od.director));
        worst_striction = std::max({worst_striction, orth, par});
        o.require(orth <= developable_tol, fx.name + " <s', D'> " + fmt(orth));
        o.require(par <= developable_tol, fx.name + " s' x D " + fmt(par));
    }

    {
        const auto b = fixture("s2");
        const auto d = analyze_developable(b.w, b.curve);
        const auto& cls = d.classification;
        const auto ref = classification_reference(b.coeffs, 1, Q(1), Q(-2));
        o.require(cls.which == ClassificationCase::II, std::string("s2 case ") + to_string(cls.which));
        o.require(cls.E_exact / cls.scale / ref.E_factor == 4, "s2 E coefficient " + to_string(cls.E_exact / cls.scale / ref.E_factor));
        o.require(cls.F_exact == 0, "s2 F = " + to_string(cls.F_exact));
        const bool above = d.sigma && (d.sigma->zero_to_order() || *d.sigma->order > d.od.alpha0 - 1);
        o.require(above, "s2 sigma valuation not above alpha0 - 1");
    }
    {
        const auto b = fixture("s2_variant");
        const auto d = analyze_developable(b.w, b.curve);
        const bool ok = d.sigma && d.sigma->order && *d.sigma->order == d.od.alpha0 - 1 && *d.sigma->order == 1;
        o.require(ok, "s2_variant sigma order " +
                          (d.sigma && d.sigma->order ? std::to_string(*d.sigma->order) : std::string("none")));
    }

    support::Gen g(7);
    int found = 0, tried = 0;
    while (found < random_sigma_draws && tried < 2000) {
        ++tried;
        const auto k = g.umbrella(6, 3);
        const auto spec = g.family_curve();
        Built b;
        try {
            b = build(k, spec);
        } catch (const std::exception&) {
            continue;
        }
        const auto d = analyze_developable(b.w, b.curve);
        if (d.od.branch != DevelopableBranch::Alpha3GeAlpha2 || d.delta.zero_to_order() || !d.striction.passes_through)
            continue;
        ++found;
        const bool ok = d.sigma && d.sigma->order && *d.sigma->order == d.striction.exponent - 1;
        o.require(ok, "draw " + std::to_string(tried) + ": sigma top-term vanished");
    }
    o.require(found == random_sigma_draws, "only " + std::to_string(found) + " qualifying draws");
    o.notes.insert(o.notes.begin(), "residual " + fmt(worst_residual) + ", striction identities " + fmt(worst_striction) +
                                        ", " + std::to_string(found) + " alpha3>=alpha2 draws");
    return o;
}

Outcome criterion8() {
    Outcome o;
    support::Gen g(8);
    for (int t = 0; t < random_self_draws; ++t) {
        auto k = g.umbrella(5, 4);
        const auto s = self_intersection(k);
        // independent: the x^3 odd parts of W o d are affine in (d12, d22); solve them
        auto odd3 = [&](const Q& d12, const Q& d22) {
            std::vector<Q> first{Q(0), Q(0), d12}, second{Q(0), Q(1), d22};
            first.resize(6);
            second.resize(6);
            const auto img = image_curve(build_umbrella(k), {UniSeries<Q>(first, 5), UniSeries<Q>(second, 5)});
            return std::array<Q, 2>{img[1][3], img[2][3]};
        };
        const auto c0 = odd3(Q(0), Q(0)), c1 = odd3(Q(1), Q(0)), c2 = odd3(Q(0), Q(1));
        const Q m11 = c1[0] - c0[0], m12 = c2[0] - c0[0], m21 = c1[1] - c0[1], m22 = c2[1] - c0[1];
        const Q det = m11 * m22 - m12 * m21;
        const Q d12 = (-c0[0] * m22 + c0[1] * m12) / det;
        const Q d22 = (-c0[1] * m11 + c0[0] * m21) / det;
        o.require(s.d11 == 0 && s.d21 == 1, "draw " + std::to_string(t) + ": linear part");
        o.require(s.d12 == d12, "draw " + std::to_string(t) + ": d12 " + to_string(s.d12) + " vs " + to_string(d12));
        o.require(s.d22 == d22, "draw " + std::to_string(t) + ": d22 " + to_string(s.d22) + " vs " + to_string(d22));
        const auto asym = self_intersection_asymmetry(s);
        for (int c = 0; c < 3; ++c)
            for (int d = 0; d <= 3; ++d)
                o.require(asym[c][d] == 0, "draw " + std::to_string(t) + ": asymmetry at x^" + std::to_string(d));
    }
    o.notes.insert(o.notes.begin(), std::to_string(random_self_draws) + " draws, exact");
    return o;
}

std::string capture(const std::string& args) {
    const std::string cmd = std::string(CROSSCAP_CLI_PATH) + " " + args;
    std::string out;
    if (FILE* p = popen(cmd.c_str(), "r")) {
        char buf[4096];
        std::size_t n = 0;
        while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
        pclose(p);
    }
    return out;
}

Outcome criterion9() {
    Outcome o;
    for (const std::string args : {"report s1", "report s2", "verify --sweep --seed 0 --draws 10"}) {
        const auto a = capture(args), b = capture(args);
        o.require(!a.empty(), "`" + args + "` produced no output");
        o.require(a == b, "`" + args + "` differs between runs");
    }
    o.notes.insert(o.notes.begin(), "report s1, report s2, verify sweep: byte-identical");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"S1 exact pipeline", criterion1},
        {"S3 exact pipeline", criterion2},
        {"table sweep", criterion3},
        {"frame properties", criterion4},
        {"regular-point reconstruction", criterion5},
        {"tangency and contour statements", criterion6},
        {"osculating developable", criterion7},
        {"self-intersection curve", criterion8},
        {"determinism", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
        if (!o.notes.empty()) std::cout << " -- " << o.notes.front();
        std::cout << "\n";
        for (std::size_t j = 1; j < o.notes.size(); ++j) std::cout << "    " << o.notes[j] << "\n";
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
