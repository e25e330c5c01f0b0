#ifndef BND_SCHUBERT_HPP
#define BND_SCHUBERT_HPP

#include <map>
#include <stdexcept>
#include <string>

#include <bnd/ring.hpp>

// Chern classes and Schubert classes of the Grassmannian of lines G(1, P^n),
// written as polynomials in e1 = sigma_1 and e2 = sigma_{1,1}, together with
// their pullback along the normal-line map f from the conormal variety.

namespace bnd::schubert
{

// Index (a, b) of sigma_{a,b} on the Grassmannian of lines in P^n.
class SchubertIndex
{
public:
    SchubertIndex(int n, int a, int b) : m_n(n), m_a(a), m_b(b)
    {
        if (n < 2) {
            throw std::invalid_argument("Schubert index: ambient dimension must be at least 2");
        }
        if (!(n - 1 >= a && a >= b && b >= 0)) {
            throw std::invalid_argument("Schubert index: need n-1 >= a >= b >= 0, got (" + std::to_string(a) + ","
                                        + std::to_string(b) + ") for n=" + std::to_string(n));
        }
    }
    int n() const { return m_n; }
    int a() const { return m_a; }
    int b() const { return m_b; }
    int codim() const { return m_a + m_b; }

    std::string str() const
    {
        return m_b == 0 ? "sigma_" + std::to_string(m_a)
                        : "sigma_{" + std::to_string(m_a) + "," + std::to_string(m_b) + "}";
    }

private:
    int m_n, m_a, m_b;
};

// Q[e1, e2] truncated at dim G = 2(n-1).
inline RingPtr grassmannian_ring(int n)
{
    if (n < 2) {
        throw std::invalid_argument("grassmannian ring: n must be at least 2");
    }
    return declare_ring({{"e1", 1, false}, {"e2", 2, false}}, 2 * (n - 1));
}

// Two-variable complete homogeneous polynomials s_0..s_top in the roots of S^v,
// s_c = e1 s_{c-1} - e2 s_{c-2}.
inline std::vector<ClassPoly> complete_homogeneous(const RingPtr &ctx, int top)
{
    const auto e1 = ClassPoly::symbol(ctx, "e1");
    const auto e2 = ClassPoly::symbol(ctx, "e2");
    std::vector<ClassPoly> s;
    s.push_back(ClassPoly::constant(ctx, 1));
    if (top >= 1) {
        s.push_back(e1);
    }
    for (int c = 2; c <= top; ++c) {
        s.push_back(e1 * s[c - 1] - e2 * s[c - 2]);
    }
    return s;
}

// Total Chern class of T_G = S^v (x) Q as a polynomial in e1, e2.
//
// With formal roots x1, x2 of S^v and r = rank Q = n - 1,
//   c(T_G) = prod_i sum_j c_j(Q) (1 + x_i)^(r - j),  c(Q) = 1 / (1 - e1 + e2),
// after which the symmetric result is rewritten in e1 = x1 + x2, e2 = x1 x2.
inline ClassPoly chern_tangent_grassmannian(int n)
{
    const RingPtr g = grassmannian_ring(n);
    const int r = n - 1;
    const RingPtr roots
        = declare_ring({{"x1", 1, false}, {"x2", 1, false}, {"e1", 1, false}, {"e2", 2, false}}, g->truncation());
    const auto one = ClassPoly::constant(roots, 1);
    const auto x1 = ClassPoly::symbol(roots, "x1");
    const auto x2 = ClassPoly::symbol(roots, "x2");
    const auto e1 = ClassPoly::symbol(roots, "e1");
    const auto e2 = ClassPoly::symbol(roots, "e2");

    const ClassPoly chern_q = invert_unit(one - e1 + e2);
    auto twisted = [&](const ClassPoly &x) {
        ClassPoly acc(roots);
        const ClassPoly base = one + x;
        for (int j = 0; j <= r; ++j) {
            acc += graded_piece(chern_q, j) * base.pow(static_cast<unsigned>(r - j));
        }
        return acc;
    };
    const ClassPoly product = twisted(x1) * twisted(x2);

    // x1 -> e1 - x2, then x2^2 -> e1 x2 - e2
    const ClassPoly step1 = divide_monic(product, x1 + x2 - e1, "x1").remainder;
    const ClassPoly step2 = divide_monic(step1, x2 * x2 - e1 * x2 + e2, "x2").remainder;

    ClassPoly result(g);
    for (const auto &[e, c] : step2.terms()) {
        if (e[0] != 0 || e[1] != 0) {
            throw std::logic_error("chern_tangent_grassmannian: residual non-symmetric term");
        }
        result.add_term({e[2], e[3]}, c);
    }
    return result;
}

// sigma_{a,b} = sigma_{b,b} sigma_{a-b} = e2^b s_{a-b}.
inline ClassPoly schubert_representative(const SchubertIndex &idx)
{
    const RingPtr g = grassmannian_ring(idx.n());
    const auto s = complete_homogeneous(g, idx.a() - idx.b());
    return ClassPoly::symbol(g, "e2").pow(static_cast<unsigned>(idx.b())) * s.back();
}

inline void require_conormal_symbols(const RingContext &ctx)
{
    if (!ctx.index_of("xi") || !ctx.index_of("h")) {
        throw std::invalid_argument("conormal ring must contain the symbols 'xi' and 'h'");
    }
}

// f^*: e1 -> xi, e2 -> h xi - h^2.
inline ClassPoly pullback_f(const ClassPoly &p, const RingPtr &conormal)
{
    require_conormal_symbols(*conormal);
    const auto xi = ClassPoly::symbol(conormal, "xi");
    const auto h = ClassPoly::symbol(conormal, "h");
    std::map<std::string, ClassPoly> images{{"e1", xi}, {"e2", h * xi - h * h}};
    return substitute(p, images, conormal);
}

// Closed form f^*(sigma_{a,b}) = sum_{i=0}^{a-b} h^(b+i) (xi - h)^(a-i).
inline ClassPoly schubert_pullback_direct(const SchubertIndex &idx, const RingPtr &conormal)
{
    require_conormal_symbols(*conormal);
    const auto xi = ClassPoly::symbol(conormal, "xi");
    const auto h = ClassPoly::symbol(conormal, "h");
    const ClassPoly diff = xi - h;
    ClassPoly acc(conormal);
    for (int i = 0; i <= idx.a() - idx.b(); ++i) {
        acc += h.pow(static_cast<unsigned>(idx.b() + i)) * diff.pow(static_cast<unsigned>(idx.a() - i));
    }
    return acc;
}

} // namespace bnd::schubert

#endif
