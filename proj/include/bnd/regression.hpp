#ifndef BND_REGRESSION_HPP
#define BND_REGRESSION_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <bnd/bn_system.hpp>
#include <bnd/bnd_engine.hpp>
#include <bnd/catalog.hpp>
#include <bnd/format.hpp>
#include <bnd/real_solver.hpp>
#include <bnd/schubert.hpp>

// Published values and cross-checks, one row per acceptance criterion.

namespace bnd
{

struct CheckOutcome {
    bool passed = false;
    std::string detail;
};

struct CheckRow {
    std::string id;
    std::string title;
    // solver rows are skipped by fast runs
    bool numeric = false;
    double time_limit_seconds = 0.0;
    std::function<CheckOutcome()> run;
};

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;
    bool skipped = false;
    double seconds = 0.0;
    std::string detail;
};

namespace regression
{

inline constexpr double coordinate_tolerance = 1e-8;
inline constexpr double axis_tolerance = 1e-8;

class Failures
{
public:
    void expect(bool ok, const std::string &what)
    {
        ++m_checked;
        if (!ok && m_messages.size() < 6) {
            m_messages.push_back(what);
        }
        m_failed += ok ? 0 : 1;
    }

    CheckOutcome outcome(const std::string &summary) const
    {
        CheckOutcome o;
        o.passed = m_failed == 0;
        o.detail = summary + " (" + std::to_string(m_checked - m_failed) + "/" + std::to_string(m_checked) + " ok)";
        for (const auto &m : m_messages) {
            o.detail += "; " + m;
        }
        return o;
    }

private:
    std::size_t m_checked = 0;
    std::size_t m_failed = 0;
    std::vector<std::string> m_messages;
};

inline Integer ipow(long base, unsigned e)
{
    Integer r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

inline Integer plane_curve_projective(long d) { return ipow(d, 4) - 4 * ipow(d, 2) + 3 * d; }
inline Integer plane_curve_affine(long d) { return ipow(d, 4) - 5 * ipow(d, 2) + 4 * d; }

inline Integer surface_affine(long d)
{
    return ipow(d, 6) - 2 * ipow(d, 5) + 3 * ipow(d, 4) - 15 * ipow(d, 3) + 26 * ipow(d, 2) - 13 * d;
}

inline Integer ci_curve_affine(long a, long b)
{
    const Integer A = a;
    const Integer B = b;
    return A * A * A * A * B * B + 2 * A * A * A * B * B * B + A * A * B * B * B * B - 2 * A * A * A * B * B
           - 2 * A * A * B * B * B + A * A * B * B - 5 * A * A * B - 5 * A * B * B + 9 * A * B;
}

// Every profile exercised by the closed-form rows.
inline std::vector<VarietySpec> closed_form_profiles()
{
    std::vector<VarietySpec> specs;
    for (int d = 2; d <= 12; ++d) {
        specs.push_back({2, {d}, false});
    }
    for (int a = 2; a <= 5; ++a) {
        for (int b = 2; b <= 5; ++b) {
            specs.push_back({3, {a, b}, false});
        }
    }
    for (int d = 2; d <= 8; ++d) {
        specs.push_back({3, {d}, false});
    }
    return specs;
}

inline CheckOutcome formula_regression()
{
    Failures f;
    const std::vector<std::tuple<int, int, std::string>> published{
        {1, 3, "2*h + 5*p1"},
        {2, 5, "3*h^2 + 6*h*p1 + 12*p1^2 + p2"},
        {3, 7, "4*h^3 + 11*h^2*p1 + 4*h*p1^2 + 24*p1^3 + 2*h*p2 - 12*p1*p2 + 17*p3"},
    };
    for (const auto &[m, n, text] : published) {
        const auto b = compute_B(m, n);
        const auto expected = ClassPoly::parse(b.poly.context(), text);
        f.expect(b.poly == expected && b.poly.str() == text,
                 "B_{" + std::to_string(m) + "," + std::to_string(n) + "} = " + b.poly.str());
    }
    return f.outcome("B_{1,3}, B_{2,5}, B_{3,7}");
}

inline const std::vector<std::pair<int, std::pair<int, int>>> &stability_ranges()
{
    static const std::vector<std::pair<int, std::pair<int, int>>> ranges{{1, {3, 12}}, {2, {4, 12}}, {3, {5, 10}}};
    return ranges;
}

inline CheckOutcome ambient_stability_literal()
{
    Failures f;
    for (const auto &[m, range] : stability_ranges()) {
        const auto report = ambient_stability(m, range.first, range.second);
        std::vector<std::pair<ClassPoly, std::vector<int>>> distinct;
        for (const auto &[n, poly] : report.formulas) {
            auto it = std::find_if(distinct.begin(), distinct.end(), [&](const auto &d) { return d.first == poly; });
            if (it == distinct.end()) {
                distinct.push_back({poly, {n}});
            } else {
                it->second.push_back(n);
            }
        }
        std::string what = "B_{" + std::to_string(m) + ",n} takes " + std::to_string(distinct.size()) + " forms:";
        for (const auto &[poly, ns] : distinct) {
            what += (what.back() == ':' ? " n in {" : ", n in {");
            for (std::size_t i = 0; i < ns.size(); ++i) {
                what += (i ? "," : "") + std::to_string(ns[i]);
            }
            what += "} -> " + poly.str();
        }
        f.expect(distinct.size() == 1, what);
    }
    return f.outcome("B_{1,3..12}, B_{2,4..12}, B_{3,5..10} identical as polynomials");
}

// B_{m,n} identical for n >= 2m+1, and the bottleneck degree itself unchanged when a
// complete intersection is re-embedded into higher ambient spaces by linear equations.
inline CheckOutcome ambient_stability_of_degrees()
{
    Failures f;
    for (const auto &[m, range] : stability_ranges()) {
        const int first_full = std::max(range.first, 2 * m + 1);
        const auto report = ambient_stability(m, first_full, range.second);
        f.expect(report.stable, "B_{" + std::to_string(m) + ",n} not stable from n=" + std::to_string(first_full));

        const std::vector<std::vector<int>> bases = m == 1   ? std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 3}}
                                                    : m == 2 ? std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {2, 3}}
                                                             : std::vector<std::vector<int>>{{2}, {3}, {2, 2}};
        for (const auto &base : bases) {
            const int n0 = m + static_cast<int>(base.size());
            const Integer reference = bnd_projective(VarietySpec{n0, base, false});
            for (int n = std::max(n0 + 1, range.first); n <= range.second; ++n) {
                VarietySpec spec{n, base, false};
                spec.degrees.resize(static_cast<std::size_t>(n - m), 1);
                const Integer value = bnd_projective(spec);
                f.expect(value == reference, spec.str() + ": " + to_string(value) + " != " + to_string(reference));
            }
        }
    }
    return f.outcome("B_{m,n} for n >= 2m+1 and BND of re-embedded complete intersections");
}

inline CheckOutcome closed_form_curves()
{
    Failures f;
    for (int d = 2; d <= 12; ++d) {
        const VarietySpec spec{2, {d}, true};
        const Integer proj = bnd_projective(VarietySpec{2, {d}, false});
        const Integer aff = bnd_affine(spec).affine;
        f.expect(proj == plane_curve_projective(d), "projective d=" + std::to_string(d) + ": " + to_string(proj));
        f.expect(aff == plane_curve_affine(d), "affine d=" + std::to_string(d) + ": " + to_string(aff));
    }
    f.expect(bnd_affine(VarietySpec{2, {2}, true}).affine == 4, "conic anchor 4");
    f.expect(bnd_affine(VarietySpec{2, {4}, true}).affine == 192, "quartic anchor 192");
    return f.outcome("plane curves 2 <= d <= 12");
}

inline CheckOutcome closed_form_ci_curves()
{
    Failures f;
    for (int a = 2; a <= 5; ++a) {
        for (int b = 2; b <= 5; ++b) {
            const Integer v = bnd_affine(VarietySpec{3, {a, b}, true}).affine;
            f.expect(v == ci_curve_affine(a, b),
                     "(" + std::to_string(a) + "," + std::to_string(b) + "): " + to_string(v));
        }
    }
    f.expect(bnd_affine(VarietySpec{3, {2, 3}, true}).affine == 480, "anchor (2,3) -> 480");
    return f.outcome("space curves 2 <= d1, d2 <= 5");
}

inline CheckOutcome closed_form_surfaces()
{
    Failures f;
    for (int d = 2; d <= 8; ++d) {
        const Integer v = bnd_affine(VarietySpec{3, {d}, true}).affine;
        f.expect(v == surface_affine(d), "d=" + std::to_string(d) + ": " + to_string(v));
    }
    f.expect(bnd_affine(VarietySpec{3, {2}, true}).affine == 6, "anchor d=2 -> 6");
    f.expect(bnd_affine(VarietySpec{3, {4}, true}).affine == 2220, "anchor d=4 -> 2220");
    return f.outcome("surfaces 2 <= d <= 8");
}

inline CheckOutcome epsilon_equivalence()
{
    Failures f;
    for (const auto &spec : closed_form_profiles()) {
        const auto profile = ci_profile(spec);
        const auto combinatorial = epsilon_terms(profile.m, spec.ambient, polar_degrees(profile));
        const auto oracle = epsilon_oracle(profile.m, spec.ambient, profile);
        f.expect(combinatorial == oracle, spec.str());
    }
    return f.outcome("epsilon_terms vs conormal-ring reduction");
}

inline CheckOutcome schubert_oracle()
{
    Failures f;
    for (int n = 3; n <= 12; ++n) {
        std::vector<RingPtr> rings{declare_ring({{"xi", 1, false}, {"h", 1, false}}, 2 * (n - 1))};
        for (int m = 1; m < n; ++m) {
            rings.push_back(conormal_ring(m, n));
        }
        for (int a = 0; a <= std::min(10, n - 1); ++a) {
            for (int b = 0; b <= a; ++b) {
                const schubert::SchubertIndex idx(n, a, b);
                const ClassPoly rep = schubert::schubert_representative(idx);
                for (const auto &ring : rings) {
                    f.expect(schubert::pullback_f(rep, ring) == schubert::schubert_pullback_direct(idx, ring),
                             idx.str() + " n=" + std::to_string(n));
                }
            }
        }
    }
    return f.outcome("f^* sigma_{a,b} two ways, 0 <= b <= a <= 10, 3 <= n <= 12");
}

struct ExpectedPair {
    std::vector<double> x;
    std::vector<double> y;
};

inline double pair_error(const BottleneckPair &p, const ExpectedPair &e)
{
    auto err = [](const std::vector<double> &a, const std::vector<double> &b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            m = std::max(m, std::abs(a[i] - b[i]));
        }
        return m;
    };
    return std::min(std::max(err(p.x, e.x), err(p.y, e.y)), std::max(err(p.x, e.y), err(p.y, e.x)));
}

// Each expected pair matched by exactly one isolated pair, and nothing else isolated.
inline void expect_isolated_pairs(Failures &f, const std::string &name, const SolveReport &r,
                                  const std::vector<ExpectedPair> &expected)
{
    f.expect(r.isolated_count() == expected.size(), name + ": " + std::to_string(r.isolated_count())
                                                        + " isolated pairs, expected "
                                                        + std::to_string(expected.size()));
    for (const auto &e : expected) {
        const auto hits = std::count_if(r.pairs.begin(), r.pairs.end(), [&](const BottleneckPair &p) {
            return p.isolated && pair_error(p, e) < coordinate_tolerance;
        });
        f.expect(hits == 1, name + ": pair " + format_point(e.x) + " - " + format_point(e.y) + " matched "
                                + std::to_string(hits) + " times");
    }
}

inline void expect_within_bound(Failures &f, const std::string &name, std::size_t found, const VarietySpec &spec)
{
    const Integer bound = bnd_affine(spec).affine / 2;
    f.expect(Integer(found) <= bound, name + ": " + std::to_string(found) + " pairs exceed the complex bound "
                                          + to_string(bound));
}

inline CheckOutcome solver_analytic()
{
    Failures f;
    const double r2 = std::sqrt(2.0);

    const auto &ellipse = catalog_entry("ellipse");
    const auto re = find_bottlenecks(ellipse.system().polynomials, ellipse.solver_config());
    f.expect(re.pairs.size() == 2, "ellipse: " + std::to_string(re.pairs.size()) + " pairs");
    expect_isolated_pairs(f, "ellipse", re, {{{-1, 0}, {1, 0}}, {{0, -r2}, {0, r2}}});
    expect_within_bound(f, "ellipse", re.pairs.size(), VarietySpec{2, {2}, true});

    const auto &ellipsoid = catalog_entry("ellipsoid");
    const auto ro = find_bottlenecks(ellipsoid.system().polynomials, ellipsoid.solver_config());
    f.expect(ro.pairs.size() == 3, "ellipsoid: " + std::to_string(ro.pairs.size()) + " pairs");
    expect_isolated_pairs(f, "ellipsoid", ro,
                          {{{-1, 0, 0}, {1, 0, 0}}, {{0, -2, 0}, {0, 2, 0}}, {{0, 0, -3}, {0, 0, 3}}});
    expect_within_bound(f, "ellipsoid", ro.pairs.size(), VarietySpec{3, {2}, true});

    const auto &spheroid = catalog_entry("spheroid");
    const auto rs = find_bottlenecks(spheroid.system().polynomials, spheroid.solver_config());
    expect_isolated_pairs(f, "spheroid", rs, {{{-1, 0, 0}, {1, 0, 0}}});
    std::size_t continuum = 0;
    for (const auto &p : rs.pairs) {
        if (p.isolated) {
            continue;
        }
        ++continuum;
        // antipodal points of the circle y^2 + z^2 = 4 in the plane x = 0
        const bool antipodal = std::abs(p.x[0]) < 1e-6 && std::abs(p.y[0]) < 1e-6
                               && std::abs(p.x[1] + p.y[1]) < 1e-6 && std::abs(p.x[2] + p.y[2]) < 1e-6
                               && std::abs(p.separation - 4.0) < 1e-6;
        f.expect(antipodal, "spheroid: non-isolated pair off the circle " + format_point(p.x));
    }
    f.expect(continuum > 0, "spheroid: no non-isolated solutions flagged");
    return f.outcome("ellipse 2, ellipsoid 3, spheroid 1 isolated + " + std::to_string(continuum) + " flagged");
}

inline std::size_t axis_pairs(const SolveReport &r, std::size_t zero_coordinate)
{
    return static_cast<std::size_t>(std::count_if(r.pairs.begin(), r.pairs.end(), [&](const BottleneckPair &p) {
        return p.isolated && std::abs(p.x[zero_coordinate]) < axis_tolerance
               && std::abs(p.y[zero_coordinate]) < axis_tolerance;
    }));
}

inline CheckOutcome solver_figures()
{
    Failures f;
    const auto &quartic = catalog_entry("quartic");
    const auto rq = find_bottlenecks(quartic.system().polynomials, quartic.solver_config());
    f.expect(rq.isolated_count() == 22 && rq.pairs.size() == 22,
             "quartic: " + std::to_string(rq.pairs.size()) + " pairs, expected 22");
    expect_within_bound(f, "quartic", rq.pairs.size(), VarietySpec{2, {4}, true});

    const auto &curve = catalog_entry("space_curve");
    const auto rc = find_bottlenecks(curve.system().polynomials, curve.solver_config());
    f.expect(rc.isolated_count() == 24 && rc.pairs.size() == 24,
             "space curve: " + std::to_string(rc.pairs.size()) + " pairs, expected 24");
    expect_within_bound(f, "space curve", rc.pairs.size(), VarietySpec{3, {2, 3}, true});

    const auto &trott = catalog_entry("trott");
    const auto rt = find_bottlenecks(trott.system().polynomials, trott.solver_config());
    const auto on_x_axis = axis_pairs(rt, 1);
    const auto on_y_axis = axis_pairs(rt, 0);
    f.expect(on_x_axis == 6, "Trott: " + std::to_string(on_x_axis) + " pairs on the x-axis, expected 6");
    f.expect(on_y_axis == 6, "Trott: " + std::to_string(on_y_axis) + " pairs on the y-axis, expected 6");
    f.expect(rt.pairs.size() <= 96, "Trott: " + std::to_string(rt.pairs.size()) + " pairs exceed 96");
    expect_within_bound(f, "Trott", rt.pairs.size(), VarietySpec{2, {4}, true});
    return f.outcome("quartic " + std::to_string(rq.pairs.size()) + ", space curve " + std::to_string(rc.pairs.size())
                     + ", Trott " + std::to_string(on_x_axis + on_y_axis) + " axis pairs of "
                     + std::to_string(rt.pairs.size()));
}

inline CheckOutcome generator_fidelity()
{
    Failures f;
    const auto trott = catalog_entry("trott").system();
    const PolySystem minors = build_minor_system(trott.polynomials, 1);
    const std::vector<std::string> displayed{
        "144*(x1^4+x2^4)-225*(x1^2+x2^2)+350*x1^2*x2^2+81",
        "144*(y1^4+y2^4)-225*(y1^2+y2^2)+350*y1^2*y2^2+81",
        "x1*(-576*x1^2-700*x2^2+450)*(y2-x2) - x2*(576*x2^2+700*x1^2-450)*(x1-y1)",
        "y1*(-576*y1^2-700*y2^2+450)*(x2-y2) - y2*(576*y2^2+700*y1^2-450)*(y1-x1)",
    };
    f.expect(minors.polynomials.size() == displayed.size(),
             "Trott minor system has " + std::to_string(minors.polynomials.size()) + " equations");
    std::vector<bool> used(minors.polynomials.size(), false);
    for (const auto &text : displayed) {
        const Polynomial expected = parse_polynomial(text, minors.variables);
        bool found = false;
        for (std::size_t i = 0; i < minors.polynomials.size() && !found; ++i) {
            const auto &p = minors.polynomials[i];
            if (!used[i] && (p == expected || p == expected * Rational(-1))) {
                used[i] = true;
                found = true;
            }
        }
        f.expect(found, "no generated equation matches " + text);
    }
    for (const auto &sys : {minors, build_lagrange_system(trott.polynomials)}) {
        const std::string text = emit(sys);
        const PolySystem back = parse_system_text(text);
        f.expect(back == sys && emit(back) == text, sys.meta.formulation + " system roundtrip");
    }
    return f.outcome("Trott minor system and emit/parse roundtrip");
}

} // namespace regression

inline std::vector<CheckRow> regression_table()
{
    using namespace regression;
    return {
        {"1", "formula regression", false, 60.0, formula_regression},
        {"2", "ambient stability of B_{m,n}", false, 300.0, ambient_stability_literal},
        {"2+", "ambient stability of bottleneck degrees", false, 300.0, ambient_stability_of_degrees},
        {"3", "closed-form plane curves", false, 0.0, closed_form_curves},
        {"4", "complete-intersection space curves", false, 0.0, closed_form_ci_curves},
        {"5", "surfaces in C^3", false, 0.0, closed_form_surfaces},
        {"6", "epsilon oracle equivalence", false, 0.0, epsilon_equivalence},
        {"7", "Schubert pullback oracle", false, 0.0, schubert_oracle},
        {"8", "solver analytic anchors", true, 0.0, solver_analytic},
        {"9", "solver figure anchors", true, 600.0, solver_figures},
        {"10", "system generator fidelity", false, 0.0, generator_fidelity},
    };
}

inline CheckResult run_check(const CheckRow &row, bool fast)
{
    CheckResult r;
    r.id = row.id;
    r.title = row.title;
    if (fast && row.numeric) {
        r.skipped = true;
        r.passed = true;
        r.detail = "skipped";
        return r;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto o = row.run();
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception &e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (row.time_limit_seconds > 0.0 && r.seconds > row.time_limit_seconds) {
        r.passed = false;
        r.detail += "; took " + format_double(r.seconds, 3) + " s, limit " + format_double(row.time_limit_seconds)
                    + " s";
    }
    return r;
}

} // namespace bnd

#endif
