#include <catch_amalgamated.hpp>

#include <cmath>

#include <bnd/bnd_engine.hpp>
#include <bnd/catalog.hpp>
#include <bnd/real_solver.hpp>

using namespace bnd;

namespace
{

const double pi = std::acos(-1.0);

SolveReport solve(const std::string &name)
{
    const auto &entry = catalog_entry(name);
    return find_bottlenecks(entry.system().polynomials, entry.solver_config());
}

std::vector<BottleneckPair> isolated(const SolveReport &r)
{
    std::vector<BottleneckPair> out;
    for (const auto &p : r.pairs) {
        if (p.isolated) {
            out.push_back(p);
        }
    }
    return out;
}

// the ellipse x^2 + y^2/2 = 1 is (cos t, sqrt2 sin t); distance of a point to that curve
double ellipse_distance(const std::vector<double> &p)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 20000; ++i) {
        const double t = 2.0 * pi * i / 20000.0;
        best = std::min(best, std::hypot(p[0] - std::cos(t), p[1] - std::sqrt(2.0) * std::sin(t)));
    }
    return best;
}

bool same_pair(const BottleneckPair &p, const std::vector<double> &a, const std::vector<double> &b, double tol)
{
    const auto close = [tol](const std::vector<double> &u, const std::vector<double> &v) {
        return detail::distance(u, v) < tol;
    };
    return (close(p.x, a) && close(p.y, b)) || (close(p.x, b) && close(p.y, a));
}

} // namespace

TEST_CASE("sampling the ellipse", "[solver]")
{
    const auto &entry = catalog_entry("ellipse");
    const auto pts = sample_variety(entry.system().polynomials, entry.solver_config());
    CHECK(pts.size() >= 40);
    for (const auto &p : pts) {
        CHECK(std::abs(p[0] * p[0] + p[1] * p[1] / 2.0 - 1.0) < 1e-10);
        CHECK(ellipse_distance(p) < 1e-3);
    }
    // every arc of angle pi/8 holds a sample
    for (int s = 0; s < 16; ++s) {
        bool hit = false;
        for (const auto &p : pts) {
            const double t = std::atan2(p[1] / std::sqrt(2.0), p[0]);
            const double a = std::fmod(t + 2.0 * pi, 2.0 * pi);
            hit = hit || (a >= s * pi / 8.0 && a < (s + 1) * pi / 8.0);
        }
        CHECK(hit);
    }
}

TEST_CASE("an empty real locus has no samples and no pairs", "[solver]")
{
    const auto f = make_input_system({"x", "y"}, {"x^2 + y^2 + 1"}).polynomials;
    SolverConfig cfg;
    CHECK(sample_variety(f, cfg).empty());
    const auto r = find_bottlenecks(f, cfg);
    CHECK(r.pairs.empty());
    CHECK(r.samples == 0);
}

TEST_CASE("samples of the ellipsoid lie on it", "[solver]")
{
    const auto &entry = catalog_entry("ellipsoid");
    auto cfg = entry.solver_config();
    cfg.density = 10;
    const auto pts = sample_variety(entry.system().polynomials, cfg);
    CHECK(pts.size() > 50);
    for (const auto &p : pts) {
        CHECK(std::abs(36 * p[0] * p[0] + 9 * p[1] * p[1] + 4 * p[2] * p[2] - 36) < 1e-9);
    }
}

TEST_CASE("bottlenecks of the ellipse are its axes", "[solver]")
{
    const auto r = solve("ellipse");
    const auto iso = isolated(r);
    REQUIRE(iso.size() == 2);
    CHECK(r.pairs.size() == 2);
    CHECK(iso[0].separation == Catch::Approx(2.0).margin(1e-9));
    CHECK(iso[1].separation == Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-9));
    CHECK(same_pair(iso[0], {1, 0}, {-1, 0}, 1e-8));
    CHECK(same_pair(iso[1], {0, std::sqrt(2.0)}, {0, -std::sqrt(2.0)}, 1e-8));

    const auto narrow = narrowest_bottleneck(r.pairs);
    CHECK(narrow.separation == Catch::Approx(2.0).margin(1e-9));
    CHECK(narrow.reach_bound == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("bottlenecks of the ellipsoid are its three axes", "[solver]")
{
    const auto iso = isolated(solve("ellipsoid"));
    REQUIRE(iso.size() == 3);
    CHECK(iso[0].separation == Catch::Approx(2.0).margin(1e-9));
    CHECK(iso[1].separation == Catch::Approx(4.0).margin(1e-9));
    CHECK(iso[2].separation == Catch::Approx(6.0).margin(1e-9));
    CHECK(same_pair(iso[0], {1, 0, 0}, {-1, 0, 0}, 1e-8));
    CHECK(same_pair(iso[1], {0, 2, 0}, {0, -2, 0}, 1e-8));
    CHECK(same_pair(iso[2], {0, 0, 3}, {0, 0, -3}, 1e-8));
    CHECK(narrowest_bottleneck(iso).separation == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("the spheroid has one isolated pair and a circle of diameters", "[solver]")
{
    const auto r = solve("spheroid");
    const auto iso = isolated(r);
    REQUIRE(iso.size() == 1);
    CHECK(same_pair(iso[0], {1, 0, 0}, {-1, 0, 0}, 1e-8));
    std::size_t flagged = 0;
    for (const auto &p : r.pairs) {
        if (!p.isolated) {
            ++flagged;
            CHECK(std::abs(p.x[0]) < 1e-8);
            CHECK(p.separation == Catch::Approx(4.0).margin(1e-8));
        }
    }
    CHECK(flagged > 0);
}

TEST_CASE("isolation classification", "[solver]")
{
    const auto f = catalog_entry("spheroid").system().polynomials;
    const auto lag = build_lagrange_system(f);
    BottleneckPair axis{{1, 0, 0}, {-1, 0, 0}, {-0.25}, {0.25}, 2.0, 0.0, 0.0, true};
    CHECK(classify_isolation(axis, lag));
    BottleneckPair circle{{0, 2, 0}, {0, -2, 0}, {-1}, {1}, 4.0, 0.0, 0.0, true};
    CHECK_FALSE(classify_isolation(circle, lag));
    BottleneckPair wrong{{1, 0}, {-1, 0}, {-0.25}, {0.25}, 2.0, 0.0, 0.0, true};
    CHECK_THROWS_AS(classify_isolation(wrong, lag), std::invalid_argument);
}

TEST_CASE("narrowest bottleneck edge cases", "[solver]")
{
    BottleneckPair one{{0, 1}, {0, -1}, {}, {}, 2.0, 0.0, 0.0, true};
    const auto n = narrowest_bottleneck({one});
    CHECK(n.separation == 2.0);
    CHECK(n.reach_bound == 1.0);
    CHECK_THROWS_AS(narrowest_bottleneck({}), std::invalid_argument);
    one.isolated = false;
    CHECK_THROWS_AS(narrowest_bottleneck({one}), std::invalid_argument);
}

TEST_CASE("reports do not depend on the thread count", "[solver][property]")
{
    for (const std::string name : {"ellipse", "quartic", "space_curve"}) {
        const auto &entry = catalog_entry(name);
        auto one = entry.solver_config();
        one.threads = 1;
        auto many = one;
        many.threads = 4;
        const auto f = entry.system().polynomials;
        const auto a = find_bottlenecks(f, one);
        const auto b = find_bottlenecks(f, many);
        const auto c = find_bottlenecks(f, one);
        INFO(name);
        REQUIRE(a.pairs.size() == b.pairs.size());
        REQUIRE(a.pairs.size() == c.pairs.size());
        for (std::size_t i = 0; i < a.pairs.size(); ++i) {
            CHECK(a.pairs[i].x == b.pairs[i].x);
            CHECK(a.pairs[i].y == b.pairs[i].y);
            CHECK(a.pairs[i].x == c.pairs[i].x);
        }
        CHECK(a.starts == b.starts);
        CHECK(a.converged == b.converged);
    }
}

TEST_CASE("found pairs satisfy the defining conditions", "[solver][property]")
{
    for (const auto &entry : catalog()) {
        const auto cfg = entry.solver_config();
        const auto f = entry.system().polynomials;
        const auto r = find_bottlenecks(f, cfg);
        INFO(entry.name);
        CHECK_FALSE(r.pairs.empty());
        for (const auto &p : r.pairs) {
            CHECK(p.minor_residual < cfg.tau_res);
            CHECK(p.residual < cfg.tau_res);
            CHECK(p.separation > cfg.tau_sep);
            CHECK(p.separation == Catch::Approx(detail::distance(p.x, p.y)).margin(1e-12));
            // y - x is normal at both ends
            const int n = static_cast<int>(p.x.size());
            std::vector<double> xy(p.x);
            xy.insert(xy.end(), p.y.begin(), p.y.end());
            const auto minors = build_minor_system(f, n - static_cast<int>(f.size()));
            for (const auto &q : minors.polynomials) {
                CHECK(std::abs(q.evaluate<double>(xy)) < 1e-8);
            }
        }
        for (std::size_t i = 0; i < r.pairs.size(); ++i) {
            for (std::size_t j = i + 1; j < r.pairs.size(); ++j) {
                CHECK(detail::pair_distance(r.pairs[i], r.pairs[j]) > cfg.tau_cluster);
            }
        }
        for (std::size_t i = 1; i < r.pairs.size(); ++i) {
            CHECK(r.pairs[i - 1].separation <= r.pairs[i].separation + 1e-12);
        }
    }
}

TEST_CASE("real isolated pairs never exceed half the bottleneck degree", "[solver][property]")
{
    const std::vector<std::pair<std::string, VarietySpec>> cases{
        {"ellipse", {2, {2}, true}},     {"ellipsoid", {3, {2}, true}},    {"spheroid", {3, {2}, true}},
        {"quartic", {2, {4}, true}},     {"trott", {2, {4}, true}},        {"space_curve", {3, {3, 2}, true}},
    };
    for (const auto &[name, spec] : cases) {
        INFO(name);
        const auto bound = bnd_affine(spec).affine;
        CHECK(Integer(2 * isolated(solve(name)).size()) <= bound);
    }
}

TEST_CASE("central symmetry maps pairs to pairs", "[solver][property]")
{
    // the ellipse and the space curve are invariant under x -> -x
    for (const std::string name : {"ellipse", "space_curve"}) {
        const auto r = solve(name);
        INFO(name);
        for (const auto &p : r.pairs) {
            BottleneckPair image = p;
            for (auto &v : image.x) {
                v = -v;
            }
            for (auto &v : image.y) {
                v = -v;
            }
            const bool found = std::any_of(r.pairs.begin(), r.pairs.end(), [&](const BottleneckPair &q) {
                return detail::pair_distance(q, image) < 1e-6;
            });
            CHECK(found);
        }
    }
}

TEST_CASE("solver configuration is validated", "[solver]")
{
    const auto f = catalog_entry("ellipse").system().polynomials;
    SolverConfig cfg;
    cfg.density = 1;
    CHECK_THROWS_AS(find_bottlenecks(f, cfg), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.box = {{1.0, -1.0}};
    CHECK_THROWS_AS(find_bottlenecks(f, cfg), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.box = {{-1, 1}, {-1, 1}, {-1, 1}};
    CHECK_THROWS_AS(find_bottlenecks(f, cfg), std::invalid_argument);
    cfg = SolverConfig{};
    cfg.tau_sep = cfg.tau_cluster / 2;
    CHECK_THROWS_AS(find_bottlenecks(f, cfg), std::invalid_argument);

    const auto three = make_input_system({"x", "y", "z", "w"}, {"x", "y", "z"}).polynomials;
    CHECK_THROWS_AS(find_bottlenecks(three, SolverConfig{}), std::invalid_argument);
}
