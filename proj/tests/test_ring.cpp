#include <catch_amalgamated.hpp>

#include <random>

#include <bnd/ring.hpp>

using namespace bnd;

namespace
{

RingPtr curve_conormal()
{
    return declare_ring({{"xi", 1, false}, {"h", 1, true}, {"c1", 1, true}}, 2, 1);
}

ClassPoly random_class(std::mt19937 &rng, const RingPtr &ctx)
{
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> exp(0, 2);
    ClassPoly p(ctx);
    for (int t = 0; t < 5; ++t) {
        Exponents e(ctx->size());
        for (auto &x : e) {
            x = exp(rng);
        }
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("ring declarations are validated", "[ring]")
{
    CHECK_NOTHROW(declare_ring({{"h", 1, false}}, 1));
    CHECK_THROWS_AS(declare_ring({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(declare_ring({{"h", 1, false}, {"h", 2, false}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(declare_ring({{"h", 0, false}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(declare_ring({{"h", 1, false}}, -1), std::invalid_argument);
}

TEST_CASE("surviving monomials of a curve conormal ring", "[ring]")
{
    const auto ctx = curve_conormal();
    int count = 0;
    for (int a = 0; a <= 2; ++a) {
        for (int b = 0; b <= 2; ++b) {
            for (int c = 0; c <= 2; ++c) {
                count += ctx->survives({a, b, c}) ? 1 : 0;
            }
        }
    }
    // 1, xi, h, c1, xi^2, xi h, xi c1
    CHECK(count == 7);
    CHECK_FALSE(ctx->survives({0, 1, 1}));
    CHECK_FALSE(ctx->survives({0, 2, 0}));
}

TEST_CASE("truncated products", "[ring]")
{
    const auto line = declare_ring({{"h", 1, false}}, 1);
    const auto one = ClassPoly::constant(line, 1);
    const auto h = ClassPoly::symbol(line, "h");
    CHECK((one + h) * (one - h) == one);

    const auto plane = declare_ring({{"h", 1, false}}, 2);
    const auto h2 = ClassPoly::symbol(plane, "h");
    const auto one2 = ClassPoly::constant(plane, 1);
    CHECK((one2 + h2).pow(2) == ClassPoly::parse(plane, "1 + 2*h + h^2"));

    const auto bounded = declare_ring({{"xi", 1, false}, {"h", 1, true}}, 5, 2);
    CHECK(ClassPoly::symbol(bounded, "h").pow(3) == ClassPoly(bounded));
    CHECK_FALSE(ClassPoly::symbol(bounded, "xi").pow(3) == ClassPoly(bounded));
}

TEST_CASE("series inversion", "[ring]")
{
    const auto ctx = declare_ring({{"h", 1, false}}, 2);
    CHECK(invert_unit(ClassPoly::parse(ctx, "1 + h")) == ClassPoly::parse(ctx, "1 - h + h^2"));
    CHECK(invert_unit(ClassPoly::parse(ctx, "1 + 2*h + 2*h^2")) == ClassPoly::parse(ctx, "1 - 2*h + 2*h^2"));
    CHECK(invert_unit(ClassPoly::constant(ctx, 1)) == ClassPoly::constant(ctx, 1));
    CHECK_THROWS_AS(invert_unit(ClassPoly::parse(ctx, "2 + h")), std::domain_error);
}

TEST_CASE("graded pieces", "[ring]")
{
    const auto ctx = declare_ring({{"h", 1, false}}, 2);
    const auto a = ClassPoly::parse(ctx, "1 + 2*h + h^2");
    CHECK(graded_piece(a, 1) == ClassPoly::parse(ctx, "2*h"));
    CHECK(graded_piece(ClassPoly::constant(ctx, 5), 0) == ClassPoly::constant(ctx, 5));
    CHECK(graded_piece(a, 7) == ClassPoly(ctx));
}

TEST_CASE("substitution into the conormal ring", "[ring]")
{
    const auto g = declare_ring({{"e1", 1, false}, {"e2", 2, false}}, 4);
    const auto c = declare_ring({{"xi", 1, false}, {"h", 1, false}}, 4);
    const auto xi = ClassPoly::symbol(c, "xi");
    const auto h = ClassPoly::symbol(c, "h");
    const std::map<std::string, ClassPoly> f{{"e1", xi}, {"e2", h * xi - h * h}};
    CHECK(substitute(ClassPoly::symbol(g, "e1"), f, c) == xi);
    CHECK(substitute(ClassPoly::parse(g, "e1^2 - e2"), f, c) == ClassPoly::parse(c, "xi^2 - h*xi + h^2"));
    CHECK(substitute(ClassPoly(g), f, c) == ClassPoly(c));
    CHECK_THROWS(substitute(ClassPoly::symbol(g, "e2"), {{"e1", xi}}, c));
    CHECK_THROWS(substitute(ClassPoly::symbol(g, "e2"), {{"e1", xi}, {"e2", xi}}, c));
}

TEST_CASE("monic division", "[ring]")
{
    const auto ctx = curve_conormal();
    const auto xi = ClassPoly::symbol(ctx, "xi");
    const auto r = ClassPoly::parse(ctx, "xi - 4*h + c1");
    // xi^2 = (xi + 4h - c1) r + (4h - c1)^2 and (4h - c1)^2 vanishes
    const auto res = divide_monic(xi * xi, r, "xi");
    CHECK(res.quotient == ClassPoly::parse(ctx, "xi + 4*h - c1"));
    CHECK(res.remainder == ClassPoly(ctx));
    const auto cubic = declare_ring({{"xi", 1, false}, {"h", 1, false}}, 3);
    const auto long_div = divide_monic(ClassPoly::parse(cubic, "xi^3 + h*xi"), ClassPoly::parse(cubic, "xi^2 - h^2"), "xi");
    CHECK(long_div.quotient == ClassPoly::parse(cubic, "xi"));
    CHECK(long_div.remainder == ClassPoly::parse(cubic, "h*xi + h^2*xi"));
    CHECK(res.quotient * r + res.remainder == xi * xi);

    const auto sq = xi * xi;
    const auto small = divide_monic(xi, sq, "xi");
    CHECK(small.quotient == ClassPoly(ctx));
    CHECK(small.remainder == xi);

    const auto self = divide_monic(r, r, "xi");
    CHECK(self.quotient == ClassPoly::constant(ctx, 1));
    CHECK(self.remainder == ClassPoly(ctx));

    CHECK_THROWS(divide_monic(sq, ClassPoly::parse(ctx, "2*xi - h"), "xi"));
}

TEST_CASE("ring laws, inversion and grading on random classes", "[ring][property]")
{
    const auto ctx = declare_ring({{"xi", 1, false}, {"h", 1, true}, {"c1", 1, true}, {"c2", 2, true}}, 4, 2);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_class(rng, ctx);
        const auto b = random_class(rng, ctx);
        const auto c = random_class(rng, ctx);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a.top_codim() <= 4);

        for (int k = 0; k <= 4; ++k) {
            ClassPoly sum(ctx);
            for (int j = 0; j <= k; ++j) {
                sum += graded_piece(a, j) * graded_piece(b, k - j);
            }
            CHECK(graded_piece(a * b, k) == sum);
        }

        ClassPoly unit = a - ClassPoly::constant(ctx, a.constant_term()) + ClassPoly::constant(ctx, 1);
        CHECK(unit * invert_unit(unit) == ClassPoly::constant(ctx, 1));

        const auto r = ClassPoly::parse(ctx, "xi^2 - c1*xi + c2");
        const auto d = divide_monic(a, r, "xi");
        CHECK(d.quotient * r + d.remainder == a);
    }
}

TEST_CASE("canonical rendering and parsing", "[ring]")
{
    const auto ctx = declare_ring({{"h", 1, false}, {"p1", 1, false}, {"p2", 2, false}}, 2);
    const auto p = ClassPoly::parse(ctx, "p2 + 12*p1^2 + 6*h*p1 + 3*h^2");
    CHECK(p.str() == "3*h^2 + 6*h*p1 + 12*p1^2 + p2");
    CHECK(ClassPoly::parse(ctx, p.str()) == p);
    CHECK(p.is_homogeneous(2));
    CHECK(p.has_integer_coefficients());
    CHECK(ClassPoly(ctx).str() == "0");
}

TEST_CASE("mixing contexts is an error", "[ring]")
{
    const auto a = ClassPoly::symbol(declare_ring({{"h", 1, false}}, 2), "h");
    const auto b = ClassPoly::symbol(declare_ring({{"h", 1, false}}, 3), "h");
    CHECK_THROWS_AS(a + b, context_mismatch);
}
