#ifndef BND_PROFILES_HPP
#define BND_PROFILES_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <bnd/rational.hpp>
#include <bnd/ring.hpp>

namespace bnd
{

// A complete intersection of hypersurfaces of the given degrees in P^n
// (or the closure of an affine one in C^n). Smoothness and general position
// are assumptions supplied by the caller, never checked.
struct VarietySpec {
    int ambient = 0;
    std::vector<int> degrees;
    bool affine = false;
    bool assume_general_position = true;

    int dim() const { return ambient - static_cast<int>(degrees.size()); }

    Integer degree() const
    {
        Integer d = 1;
        for (int di : degrees) {
            d *= di;
        }
        return d;
    }

    std::string str() const
    {
        std::string s = "CI(";
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            s += (i ? "," : "") + std::to_string(degrees[i]);
        }
        return s + ") in " + (affine ? "C^" : "P^") + std::to_string(ambient);
    }
};

inline void validate(const VarietySpec &spec)
{
    if (spec.ambient < 1) {
        throw std::invalid_argument("ambient dimension must be positive");
    }
    for (int d : spec.degrees) {
        if (d < 1) {
            throw std::invalid_argument("hypersurface degrees must be at least 1");
        }
    }
    if (spec.dim() < 0) {
        throw std::invalid_argument("more equations than the ambient dimension");
    }
}

// Numeric invariants of an m-dimensional X with c_i(T_X) = chern[i] h^i and
// p_j = polar[j] h^j; deg h^m = fundamental_degree.
struct PolarProfile {
    int m = 0;
    Integer fundamental_degree = 1;
    std::vector<Rational> chern_coeffs;
    std::vector<Rational> polar_coeffs;
    // present for built-in complete intersections
    std::optional<VarietySpec> source;
};

// p_j = sum_{i<=j} (-1)^i C(m-i+1, j-i) h^(j-i) c_i
inline std::vector<Rational> polar_from_chern(int m, const std::vector<Rational> &chern)
{
    std::vector<Rational> polar(static_cast<std::size_t>(m + 1), Rational(0));
    for (int j = 0; j <= m; ++j) {
        for (int i = 0; i <= j; ++i) {
            const Rational term = Rational(binomial(m - i + 1, j - i)) * chern[static_cast<std::size_t>(i)];
            polar[static_cast<std::size_t>(j)] += (i % 2 == 0) ? term : Rational(-term);
        }
    }
    return polar;
}

// c_j = sum_{i<=j} (-1)^i C(m-i+1, j-i) h^(j-i) p_i
inline std::vector<Rational> chern_from_polar(int m, const std::vector<Rational> &polar)
{
    // the transform is an involution, which is exactly the inversion statement
    return polar_from_chern(m, polar);
}

inline PolarProfile ci_profile(const VarietySpec &spec)
{
    validate(spec);
    const int m = spec.dim();
    if (m < 1) {
        throw std::invalid_argument("ci_profile: the variety must have positive dimension");
    }
    // c(T_X) = (1+h)^(n+1) / prod (1 + d_i h), truncated at codim m
    const RingPtr ring = declare_ring({{"h", 1, false}}, m);
    const auto one = ClassPoly::constant(ring, 1);
    const auto h = ClassPoly::symbol(ring, "h");
    ClassPoly normal = one;
    for (int d : spec.degrees) {
        normal *= one + Rational(d) * h;
    }
    const ClassPoly tangent = (one + h).pow(static_cast<unsigned>(spec.ambient + 1)) * invert_unit(normal);

    PolarProfile p;
    p.m = m;
    p.fundamental_degree = spec.degree();
    for (int i = 0; i <= m; ++i) {
        p.chern_coeffs.push_back(tangent.coefficient({i}));
    }
    p.polar_coeffs = polar_from_chern(m, p.chern_coeffs);
    p.source = spec;
    return p;
}

// For varieties whose polar degrees were computed elsewhere: deg p_0 = d.
inline PolarProfile manual_profile(int m, const std::vector<Integer> &polar_degrees)
{
    if (m < 1) {
        throw std::invalid_argument("manual_profile: dimension must be positive");
    }
    if (polar_degrees.size() != static_cast<std::size_t>(m + 1)) {
        throw std::invalid_argument("manual_profile: expected m+1 polar degrees");
    }
    if (polar_degrees[0] <= 0) {
        throw std::invalid_argument("manual_profile: deg p_0 is the degree and must be positive");
    }
    PolarProfile p;
    p.m = m;
    p.fundamental_degree = polar_degrees[0];
    for (const auto &deg : polar_degrees) {
        p.polar_coeffs.push_back(Rational(deg, p.fundamental_degree));
    }
    p.chern_coeffs = chern_from_polar(m, p.polar_coeffs);
    return p;
}

inline std::vector<Integer> polar_degrees(const PolarProfile &profile)
{
    std::vector<Integer> out;
    for (const auto &q : profile.polar_coeffs) {
        out.push_back(to_integer(q * profile.fundamental_degree));
    }
    return out;
}

// Degree of a homogeneous codim-m class in h, p1..pm: p_j -> q_j h^j, then
// coefficient of h^m times deg h^m.
inline Integer evaluate_class(const ClassPoly &formula, const PolarProfile &profile)
{
    const auto &ctx = *formula.context();
    if (!formula.is_homogeneous(profile.m)) {
        throw std::invalid_argument("evaluate_class: formula is not homogeneous of codimension "
                                    + std::to_string(profile.m));
    }
    std::vector<Rational> value_of(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        const auto &name = ctx.symbols()[i].name;
        if (name == "h") {
            value_of[i] = 1;
            continue;
        }
        if (name.size() >= 2 && name[0] == 'p') {
            const int j = std::stoi(name.substr(1));
            if (j >= 0 && j <= profile.m) {
                value_of[i] = profile.polar_coeffs[static_cast<std::size_t>(j)];
                continue;
            }
        }
        throw std::invalid_argument("evaluate_class: unexpected symbol '" + name + "'");
    }
    Rational total = 0;
    for (const auto &[e, c] : formula.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            t *= pow(value_of[i], static_cast<unsigned>(e[i]));
        }
        total += t;
    }
    return to_integer(total * profile.fundamental_degree);
}

// X cut by a general hyperplane: same multidegree, one dimension lower.
inline VarietySpec hyperplane_section(const VarietySpec &spec)
{
    validate(spec);
    if (spec.dim() < 1) {
        throw std::invalid_argument("hyperplane_section: the variety must have positive dimension");
    }
    VarietySpec s = spec;
    s.ambient -= 1;
    s.affine = false;
    return s;
}

} // namespace bnd

#endif
