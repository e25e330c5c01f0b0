#include <catch_amalgamated.hpp>

#include <functional>

#include <bnd/bnd_engine.hpp>
#include <bnd/profiles.hpp>

using namespace bnd;

namespace
{

std::vector<Integer> ints(std::initializer_list<long> v)
{
    std::vector<Integer> out;
    for (long x : v) {
        out.emplace_back(x);
    }
    return out;
}

// Complete intersections of positive dimension with 2 <= n <= 8, up to three degrees <= 5.
std::vector<VarietySpec> small_specs()
{
    std::vector<VarietySpec> specs;
    for (int n = 2; n <= 8; ++n) {
        for (int a = 1; a <= 5; ++a) {
            specs.push_back({n, {a}, false});
            for (int b = a; b <= 5 && n >= 3; ++b) {
                specs.push_back({n, {a, b}, false});
                for (int c = b; c <= 5 && n >= 4; ++c) {
                    specs.push_back({n, {a, b, c}, false});
                }
            }
        }
    }
    return specs;
}

RingPtr polar_monomial_ring(int m)
{
    std::vector<SymbolSpec> symbols{{"h", 1, false}};
    for (int j = 1; j <= m; ++j) {
        symbols.push_back({"p" + std::to_string(j), j, false});
    }
    return declare_ring(symbols, m);
}

} // namespace

TEST_CASE("space curve of type (2,3)", "[profiles]")
{
    const auto p = ci_profile({3, {2, 3}, false});
    CHECK(p.m == 1);
    CHECK(p.chern_coeffs[1] == -1);
    CHECK(p.polar_coeffs[1] == 3);
    CHECK(polar_degrees(p) == ints({6, 18}));
}

TEST_CASE("plane curves", "[profiles]")
{
    for (long d = 1; d <= 9; ++d) {
        const auto p = ci_profile({2, {static_cast<int>(d)}, false});
        CHECK(polar_degrees(p) == ints({d, d * d - d}));
    }
}

TEST_CASE("quadric surface in P^3", "[profiles]")
{
    const auto p = ci_profile({3, {2}, false});
    CHECK(p.chern_coeffs == std::vector<Rational>{1, 2, 2});
    CHECK(p.polar_coeffs == std::vector<Rational>{1, 1, 1});
    CHECK(polar_degrees(p) == ints({2, 2, 2}));
    CHECK(p.fundamental_degree == 2);
}

TEST_CASE("class evaluation", "[profiles]")
{
    const auto curve = ci_profile({3, {2, 3}, false});
    const auto r1 = polar_ring(1);
    CHECK(evaluate_class(ClassPoly::parse(r1, "2*h + 5*p1"), curve) == 102);
    CHECK(evaluate_class(ClassPoly::parse(r1, "h"), curve) == 6);

    const auto quadric = ci_profile({3, {2}, false});
    const auto r2 = polar_ring(2);
    CHECK(evaluate_class(ClassPoly::parse(r2, "3*h^2 + 6*h*p1 + 12*p1^2 + p2"), quadric) == 44);
    CHECK(evaluate_class(ClassPoly::parse(r2, "h^2"), quadric) == 2);
    CHECK_THROWS_AS(evaluate_class(ClassPoly::parse(r2, "h + p2"), quadric), std::invalid_argument);
}

TEST_CASE("hyperplane sections", "[profiles]")
{
    const auto pts = hyperplane_section({2, {4}, true});
    CHECK(pts.ambient == 1);
    CHECK(pts.dim() == 0);
    CHECK(pts.degree() == 4);

    const auto six = hyperplane_section({3, {2, 3}, false});
    CHECK(six.dim() == 0);
    CHECK(six.degree() == 6);
    CHECK(bnd_points(six.degree()) == 30);

    const auto curve = hyperplane_section({3, {5}, false});
    CHECK(curve.ambient == 2);
    CHECK(curve.degrees == std::vector<int>{5});
    CHECK(curve.dim() == 1);
}

TEST_CASE("manual profiles", "[profiles]")
{
    const auto p = manual_profile(1, ints({6, 18}));
    const auto ci = ci_profile({3, {2, 3}, false});
    CHECK(p.chern_coeffs == ci.chern_coeffs);
    CHECK(polar_degrees(p) == polar_degrees(ci));
    CHECK_THROWS_AS(manual_profile(1, ints({6})), std::invalid_argument);
    CHECK_THROWS_AS(manual_profile(1, ints({0, 1})), std::invalid_argument);
    CHECK_THROWS_AS(manual_profile(0, ints({1})), std::invalid_argument);
}

TEST_CASE("invalid specs", "[profiles]")
{
    CHECK_THROWS_AS(ci_profile({2, {2, 2}, false}), std::invalid_argument);
    CHECK_THROWS_AS(ci_profile({3, {0}, false}), std::invalid_argument);
    CHECK_THROWS_AS(ci_profile({0, {}, false}), std::invalid_argument);
}

TEST_CASE("polar and Chern coefficients determine each other", "[profiles][property]")
{
    for (const auto &spec : small_specs()) {
        INFO(spec.str());
        const auto p = ci_profile(spec);
        CHECK(chern_from_polar(p.m, p.polar_coeffs) == p.chern_coeffs);
        for (const auto &d : polar_degrees(p)) {
            CHECK(d >= 0);
        }
    }
}

TEST_CASE("polar numbers agree with those of the hyperplane section", "[profiles][property]")
{
    for (const auto &spec : small_specs()) {
        if (spec.dim() < 2) {
            continue;
        }
        INFO(spec.str());
        const auto parent = ci_profile(spec);
        const auto section = ci_profile(hyperplane_section(spec));
        const int m = parent.m;
        const auto big = polar_monomial_ring(m);
        const auto small = polar_monomial_ring(m - 1);
        // every monomial in p1..p_{m-1} of codim <= m-1, padded with powers of h
        std::function<void(int, int, std::string)> walk = [&](int j, int codim, std::string mono) {
            if (j == m) {
                const std::string base = mono.empty() ? "1" : mono;
                const auto on_parent = ClassPoly::parse(big, base + "*h^" + std::to_string(m - codim));
                const auto on_section = ClassPoly::parse(small, base + "*h^" + std::to_string(m - 1 - codim));
                CHECK(evaluate_class(on_parent, parent) == evaluate_class(on_section, section));
                return;
            }
            for (int e = 0; codim + e * j <= m - 1; ++e) {
                std::string next = mono;
                if (e > 0) {
                    next += (next.empty() ? "" : "*") + ("p" + std::to_string(j) + "^" + std::to_string(e));
                }
                walk(j + 1, codim + e * j, next);
            }
        };
        walk(1, 0, "");
    }
}
