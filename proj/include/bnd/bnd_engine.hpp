#ifndef BND_BND_ENGINE_HPP
#define BND_BND_ENGINE_HPP

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <bnd/profiles.hpp>
#include <bnd/rational.hpp>
#include <bnd/ring.hpp>
#include <bnd/schubert.hpp>

namespace bnd
{

// B_{m,n}: BND(X) = sum eps_i^2 - deg B_{m,n} for smooth X^m in P^n in general position.
struct BFormula {
    int m = 0;
    int n = 0;
    ClassPoly poly;
};

struct EpsilonVector {
    std::vector<Integer> values;

    Integer sum_of_squares() const
    {
        Integer s = 0;
        for (const auto &v : values) {
            s += v * v;
        }
        return s;
    }
    friend bool operator==(const EpsilonVector &, const EpsilonVector &) = default;
};

// Conormal variety ring: xi = c1(O(1)), h and c_i pulled back from X.
inline RingPtr conormal_ring(int m, int n)
{
    std::vector<SymbolSpec> symbols{{"xi", 1, false}, {"h", 1, true}};
    for (int i = 1; i <= m; ++i) {
        symbols.push_back({"c" + std::to_string(i), i, true});
    }
    return declare_ring(std::move(symbols), n - 1, m);
}

inline RingPtr chern_ring(int m)
{
    std::vector<SymbolSpec> symbols{{"h", 1, false}};
    for (int i = 1; i <= m; ++i) {
        symbols.push_back({"c" + std::to_string(i), i, false});
    }
    return declare_ring(std::move(symbols), m);
}

inline RingPtr polar_ring(int m)
{
    std::vector<SymbolSpec> symbols{{"h", 1, false}};
    for (int i = 1; i <= m; ++i) {
        symbols.push_back({"p" + std::to_string(i), i, false});
    }
    return declare_ring(std::move(symbols), m);
}

namespace detail
{

inline BFormula run_b_algorithm(int m, int n)
{
    const RingPtr ctx = conormal_ring(m, n);
    const auto one = ClassPoly::constant(ctx, 1);
    const auto xi = ClassPoly::symbol(ctx, "xi");
    const auto h = ClassPoly::symbol(ctx, "h");
    const int r = n - m;

    ClassPoly chern_x = one;
    ClassPoly chern_x_dual = one;
    for (int i = 1; i <= m; ++i) {
        const auto ci = ClassPoly::symbol(ctx, "c" + std::to_string(i));
        chern_x += ci;
        chern_x_dual += (i % 2 == 0) ? ci : -ci;
    }

    // c(N) = c(i^*T_P^n) / c(T_X)
    const ClassPoly chern_x_inv = invert_unit(chern_x);
    const ClassPoly chern_normal = (one + h).pow(static_cast<unsigned>(n + 1)) * chern_x_inv;

    // c(pi^*N^v (x) O(1)) = sum_j (-1)^j c_j(N) (1+xi)^(r-j)
    ClassPoly twist(ctx);
    for (int j = 0; j <= r; ++j) {
        ClassPoly piece = graded_piece(chern_normal, j) * (one + xi).pow(static_cast<unsigned>(r - j));
        twist += (j % 2 == 0) ? piece : -piece;
    }
    const ClassPoly chern_conormal = chern_x * twist;
    const ClassPoly chern_conormal_inv = invert_unit(chern_conormal);

    const ClassPoly chern_g = schubert::pullback_f(schubert::chern_tangent_grassmannian(n), ctx);
    const ClassPoly top = graded_piece(chern_g * chern_conormal_inv, n - 1);

    // Relation on P(N^v): xi^r + sum c_i(N^v) xi^(r-i) = 0, with c(N^v) computed
    // from dual bundles, checked against the alternating form in c(N).
    const ClassPoly chern_normal_dual
        = (one - h).pow(static_cast<unsigned>(n + 1)) * invert_unit(chern_x_dual);
    ClassPoly relation(ctx);
    ClassPoly relation_alt(ctx);
    for (int i = 0; i <= r; ++i) {
        const ClassPoly xi_power = xi.pow(static_cast<unsigned>(r - i));
        relation += graded_piece(chern_normal_dual, i) * xi_power;
        const ClassPoly alt = graded_piece(chern_normal, i) * xi_power;
        relation_alt += (i % 2 == 0) ? alt : -alt;
    }
    if (!(relation == relation_alt)) {
        throw std::logic_error("compute_B: the two presentations of the conormal relation disagree");
    }

    const ClassPoly reduced = divide_monic(top, relation, "xi").remainder;

    // reduced = xi^(r-1) * pi^*(B-hat); move B-hat to the Chow ring of X
    const RingPtr xring = chern_ring(m);
    ClassPoly b_hat(xring);
    for (const auto &[e, c] : reduced.terms()) {
        if (e[0] != r - 1) {
            throw std::logic_error("compute_B: codim n-1 piece did not reduce to xi^(n-m-1) * (class on X)");
        }
        b_hat.add_term(Exponents(e.begin() + 1, e.end()), c);
    }
    if (!b_hat.is_homogeneous(m)) {
        throw std::logic_error("compute_B: reduced class is not of codimension m");
    }

    // c_j -> sum_i (-1)^i C(m-i+1, j-i) h^(j-i) p_i with p_0 = 1
    const RingPtr pring = polar_ring(m);
    const auto ph = ClassPoly::symbol(pring, "h");
    std::map<std::string, ClassPoly> images{{"h", ph}};
    for (int j = 1; j <= m; ++j) {
        ClassPoly cj(pring);
        for (int i = 0; i <= j; ++i) {
            const ClassPoly pi = i == 0 ? ClassPoly::constant(pring, 1) : ClassPoly::symbol(pring, "p" + std::to_string(i));
            ClassPoly term = Rational(binomial(m - i + 1, j - i)) * ph.pow(static_cast<unsigned>(j - i)) * pi;
            cj += (i % 2 == 0) ? term : -term;
        }
        images.emplace("c" + std::to_string(j), std::move(cj));
    }
    ClassPoly b = substitute(b_hat, images, pring);
    if (!b.is_homogeneous(m) || !b.has_integer_coefficients()) {
        throw std::logic_error("compute_B: result is not an integral class of codimension m");
    }
    return {m, n, std::move(b)};
}

class BFormulaCache
{
public:
    static BFormulaCache &instance()
    {
        static BFormulaCache cache;
        return cache;
    }

    BFormula get(int m, int n)
    {
        {
            std::shared_lock lock(m_mutex);
            auto it = m_table.find({m, n});
            if (it != m_table.end()) {
                return it->second;
            }
        }
        BFormula f = run_b_algorithm(m, n);
        std::unique_lock lock(m_mutex);
        return m_table.try_emplace({m, n}, std::move(f)).first->second;
    }

private:
    std::shared_mutex m_mutex;
    std::map<std::pair<int, int>, BFormula> m_table;
};

} // namespace detail

inline BFormula compute_B(int m, int n)
{
    if (m <= 0 || m >= n) {
        throw std::invalid_argument("compute_B: need 0 < m < n, got m=" + std::to_string(m) + ", n="
                                    + std::to_string(n));
    }
    return detail::BFormulaCache::instance().get(m, n);
}

// eps_i = sum_{j=r_i}^{m-i} deg p_j, r_i = max(0, m-n+1+i), i = 0..min(floor((n-1)/2), m)
inline EpsilonVector epsilon_terms(int m, int n, const std::vector<Integer> &polar_degrees)
{
    if (polar_degrees.size() != static_cast<std::size_t>(m + 1)) {
        throw std::invalid_argument("epsilon_terms: expected " + std::to_string(m + 1) + " polar degrees, got "
                                    + std::to_string(polar_degrees.size()));
    }
    const int k = std::min((n - 1) / 2, m);
    EpsilonVector eps;
    for (int i = 0; i <= k; ++i) {
        const int r = std::max(0, m - n + 1 + i);
        Integer s = 0;
        for (int j = r; j <= m - i; ++j) {
            s += polar_degrees[static_cast<std::size_t>(j)];
        }
        eps.values.push_back(s);
    }
    return eps;
}

// Coefficients of [C_X] = sum_i deg p_{m-i} alpha^(n-i) beta^(1+i), listed for i = 0..m.
inline std::vector<Integer> conormal_class_coeffs(const PolarProfile &profile)
{
    auto degrees = polar_degrees(profile);
    std::reverse(degrees.begin(), degrees.end());
    return degrees;
}

// eps_i recomputed as deg f^* sigma_{n-1-i,i} in the conormal ring with
// numeric Chern classes, reading degrees via deg(xi^(n-m-1) pi^* a) = deg a.
inline EpsilonVector epsilon_oracle(int m, int n, const PolarProfile &profile)
{
    if (profile.m != m || m <= 0 || m >= n) {
        throw std::invalid_argument("epsilon_oracle: profile does not match (m, n)");
    }
    const RingPtr ctx = declare_ring({{"xi", 1, false}, {"h", 1, true}}, n - 1, m);
    const auto one = ClassPoly::constant(ctx, 1);
    const auto xi = ClassPoly::symbol(ctx, "xi");
    const auto h = ClassPoly::symbol(ctx, "h");
    ClassPoly chern_x(ctx);
    for (int i = 0; i <= m; ++i) {
        chern_x += profile.chern_coeffs[static_cast<std::size_t>(i)] * h.pow(static_cast<unsigned>(i));
    }
    const ClassPoly chern_normal = (one + h).pow(static_cast<unsigned>(n + 1)) * invert_unit(chern_x);
    const int r = n - m;
    ClassPoly relation(ctx);
    for (int i = 0; i <= r; ++i) {
        ClassPoly t = graded_piece(chern_normal, i) * xi.pow(static_cast<unsigned>(r - i));
        relation += (i % 2 == 0) ? t : -t;
    }
    Exponents point_class{r - 1, m};

    const int k = std::min((n - 1) / 2, m);
    EpsilonVector eps;
    for (int i = 0; i <= k; ++i) {
        const schubert::SchubertIndex idx(n, n - 1 - i, i);
        const ClassPoly reduced = divide_monic(schubert::schubert_pullback_direct(idx, ctx), relation, "xi").remainder;
        if (reduced.size() > 1 || (reduced.size() == 1 && reduced.terms().begin()->first != point_class)) {
            throw std::logic_error("epsilon_oracle: zero cycle did not reduce to a multiple of xi^(n-m-1) h^m");
        }
        eps.values.push_back(to_integer(reduced.coefficient(point_class) * profile.fundamental_degree));
    }
    return eps;
}

inline Integer bnd_projective(const BFormula &formula, const PolarProfile &profile)
{
    if (formula.m != profile.m) {
        throw std::invalid_argument("bnd_projective: formula is for dimension " + std::to_string(formula.m)
                                    + " but the profile has dimension " + std::to_string(profile.m));
    }
    const auto eps = epsilon_terms(formula.m, formula.n, polar_degrees(profile));
    return eps.sum_of_squares() - evaluate_class(formula.poly, profile);
}

inline Integer bnd_projective(const VarietySpec &spec)
{
    const auto profile = ci_profile(spec);
    return bnd_projective(compute_B(profile.m, spec.ambient), profile);
}

// Extraneous double-point pairs of d points on the line at infinity.
inline Integer bnd_points(const Integer &d)
{
    return d * (d - 1);
}

struct AffineBnd {
    Integer projective;
    Integer at_infinity;
    Integer affine;
    // the section at infinity is a finite set of points, counted as d(d-1)
    bool section_is_points = false;
};

// BND(X) = BND(closure) - BND(closure at infinity).
inline AffineBnd bnd_affine(const VarietySpec &spec)
{
    validate(spec);
    if (spec.dim() < 1) {
        throw std::invalid_argument("bnd_affine: the variety must have positive dimension");
    }
    VarietySpec closure = spec;
    closure.affine = false;
    AffineBnd out;
    out.projective = bnd_projective(closure);
    const VarietySpec section = hyperplane_section(closure);
    if (section.dim() == 0) {
        out.section_is_points = true;
        out.at_infinity = bnd_points(section.degree());
    } else {
        out.at_infinity = bnd_projective(section);
    }
    out.affine = out.projective - out.at_infinity;
    return out;
}

struct StabilityReport {
    int m = 0;
    std::vector<std::pair<int, ClassPoly>> formulas;
    bool stable = true;
};

inline StabilityReport ambient_stability(int m, int n_from, int n_to)
{
    if (n_from <= m || n_to < n_from) {
        throw std::invalid_argument("ambient_stability: need m < n_from <= n_to");
    }
    StabilityReport report;
    report.m = m;
    for (int n = n_from; n <= n_to; ++n) {
        report.formulas.emplace_back(n, compute_B(m, n).poly);
        if (!(report.formulas.back().second == report.formulas.front().second)) {
            report.stable = false;
        }
    }
    return report;
}

} // namespace bnd

#endif
