#include <catch_amalgamated.hpp>

#include <bnd/rational.hpp>
#include <bnd/schubert.hpp>

using namespace bnd;
using namespace bnd::schubert;

namespace
{

// deg sigma_1^a sigma_{1,1}^b on the lines of P^n: degree of the Grassmannian of lines
// in P^(n-b), a Catalan number.
Integer schubert_degree(int n, int a, int b)
{
    const int k = n - b - 1;
    if (a != 2 * k || k < 0) {
        return 0;
    }
    return binomial(2 * k, k) / (k + 1);
}

Integer integrate_top(const ClassPoly &c, int n)
{
    Rational total = 0;
    const auto top = graded_piece(c, 2 * (n - 1));
    for (const auto &[e, coeff] : top.terms()) {
        total += coeff * Rational(schubert_degree(n, e[0], e[1]));
    }
    return to_integer(total);
}

RingPtr conormal_plane(int n) { return declare_ring({{"xi", 1, false}, {"h", 1, false}}, 2 * (n - 1)); }

} // namespace

TEST_CASE("Schubert indices are validated", "[schubert]")
{
    CHECK(SchubertIndex(4, 3, 1).str() == "sigma_{3,1}");
    CHECK(SchubertIndex(4, 2, 0).str() == "sigma_2");
    CHECK_THROWS_AS(SchubertIndex(3, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(SchubertIndex(3, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(SchubertIndex(1, 0, 0), std::invalid_argument);
}

TEST_CASE("Chern class of the Grassmannian of lines in the plane", "[schubert]")
{
    const auto c = chern_tangent_grassmannian(2);
    const auto g = c.context();
    CHECK(c == ClassPoly::parse(g, "1 + 3*e1 + 2*e1^2 + e2"));
    // modulo the point relation e1^2 = e2 it is (1 + H)^3 on the dual plane
    const auto relation = ClassPoly::parse(g, "e1^2 - e2");
    const auto reduced = divide_monic(c, relation, "e1").remainder;
    const auto expected = divide_monic(ClassPoly::parse(g, "(1 + e1)^3"), relation, "e1").remainder;
    CHECK(reduced == expected);
    CHECK(reduced == ClassPoly::parse(g, "1 + 3*e1 + 3*e2"));
}

TEST_CASE("Chern class of the Grassmannian of lines in P^3", "[schubert]")
{
    const auto c = chern_tangent_grassmannian(3);
    const auto g = c.context();
    CHECK(graded_piece(c, 1) == ClassPoly::parse(g, "4*e1"));
    CHECK(graded_piece(c, 2) == ClassPoly::parse(g, "7*e1^2"));
}

TEST_CASE("Grassmannian Chern classes: unit, index and Euler characteristic", "[schubert][property]")
{
    for (int n = 2; n <= 12; ++n) {
        const auto c = chern_tangent_grassmannian(n);
        CHECK(c.constant_term() == 1);
        CHECK(c.top_codim() <= 2 * (n - 1));
        CHECK(graded_piece(c, 1) == Rational(n + 1) * ClassPoly::symbol(c.context(), "e1"));
        CHECK(integrate_top(c, n) == binomial(n + 1, 2));
    }
}

TEST_CASE("Schubert representatives", "[schubert]")
{
    const auto g = grassmannian_ring(4);
    CHECK(schubert_representative(SchubertIndex(4, 1, 0)) == ClassPoly::parse(g, "e1"));
    CHECK(schubert_representative(SchubertIndex(4, 2, 0)) == ClassPoly::parse(g, "e1^2 - e2"));
    CHECK(schubert_representative(SchubertIndex(4, 2, 1)) == ClassPoly::parse(g, "e1*e2"));
    CHECK(schubert_representative(SchubertIndex(4, 0, 0)) == ClassPoly::constant(g, 1));
}

TEST_CASE("pullback along the normal-line map", "[schubert]")
{
    const auto ctx = conormal_plane(5);
    const auto g = grassmannian_ring(5);
    CHECK(pullback_f(ClassPoly::symbol(g, "e1"), ctx) == ClassPoly::parse(ctx, "xi"));
    CHECK(pullback_f(ClassPoly::symbol(g, "e2"), ctx) == ClassPoly::parse(ctx, "h*xi - h^2"));
    CHECK(pullback_f(schubert_representative(SchubertIndex(5, 3, 1)), ctx)
          == ClassPoly::parse(ctx, "h*(xi-h)^3 + h^2*(xi-h)^2 + h^3*(xi-h)"));
    const auto bad = declare_ring({{"xi", 1, false}}, 4);
    CHECK_THROWS_AS(pullback_f(ClassPoly::symbol(g, "e1"), bad), std::invalid_argument);
}

TEST_CASE("closed-form Schubert pullbacks", "[schubert]")
{
    const auto ctx = conormal_plane(6);
    CHECK(schubert_pullback_direct(SchubertIndex(6, 1, 0), ctx) == ClassPoly::parse(ctx, "xi"));
    CHECK(schubert_pullback_direct(SchubertIndex(6, 2, 0), ctx) == ClassPoly::parse(ctx, "xi^2 - h*xi + h^2"));
    for (int b = 0; b <= 5; ++b) {
        CHECK(schubert_pullback_direct(SchubertIndex(6, b, b), ctx)
              == ClassPoly::parse(ctx, "h^" + std::to_string(b) + "*(xi - h)^" + std::to_string(b)));
    }
}

TEST_CASE("pullback of representatives agrees with the closed form", "[schubert][property]")
{
    for (int n = 3; n <= 12; ++n) {
        const auto ctx = conormal_plane(n);
        for (int a = 0; a <= std::min(10, n - 1); ++a) {
            for (int b = 0; b <= a; ++b) {
                const SchubertIndex idx(n, a, b);
                INFO(idx.str() << " n=" << n);
                CHECK(pullback_f(schubert_representative(idx), ctx) == schubert_pullback_direct(idx, ctx));
            }
        }
    }
}
