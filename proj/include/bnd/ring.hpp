#ifndef BND_RING_HPP
#define BND_RING_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <bnd/expression.hpp>
#include <bnd/polynomial.hpp>
#include <bnd/rational.hpp>

namespace bnd
{

struct SymbolSpec {
    std::string name;
    int codim = 1;
    // Class pulled back from the base variety; subject to the pullback bound.
    bool pullback = false;
};

class context_mismatch : public std::invalid_argument
{
public:
    context_mismatch() : std::invalid_argument("class polynomials live in different ring contexts") {}
};

// Truncated graded-commutative Q-algebra on a list of cycle-class symbols.
// A monomial vanishes when its weighted codimension exceeds the truncation,
// or when the factor made of pullback symbols exceeds the pullback bound.
class RingContext
{
public:
    RingContext(std::vector<SymbolSpec> symbols, int truncation, std::optional<int> pullback_bound)
        : m_symbols(std::move(symbols)), m_truncation(truncation), m_pullback_bound(pullback_bound)
    {
        if (m_symbols.empty()) {
            throw std::invalid_argument("a ring context needs at least one symbol");
        }
        if (truncation < 0) {
            throw std::invalid_argument("truncation must be nonnegative");
        }
        if (pullback_bound && *pullback_bound < 0) {
            throw std::invalid_argument("pullback bound must be nonnegative");
        }
        for (std::size_t i = 0; i < m_symbols.size(); ++i) {
            const auto &s = m_symbols[i];
            if (s.codim < 1) {
                throw std::invalid_argument("symbol '" + s.name + "' must have positive codimension");
            }
            if (s.name.empty()) {
                throw std::invalid_argument("symbol names must be nonempty");
            }
            if (!m_index.emplace(s.name, i).second) {
                throw std::invalid_argument("duplicate symbol name '" + s.name + "'");
            }
            m_names.push_back(s.name);
        }
        m_names_ptr = std::make_shared<const Polynomial::VarList>(m_names);
    }

    const std::vector<SymbolSpec> &symbols() const { return m_symbols; }
    std::size_t size() const { return m_symbols.size(); }
    int truncation() const { return m_truncation; }
    const std::optional<int> &pullback_bound() const { return m_pullback_bound; }
    const std::shared_ptr<const Polynomial::VarList> &names() const { return m_names_ptr; }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        auto it = m_index.find(std::string(name));
        if (it == m_index.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    std::size_t require(std::string_view name) const
    {
        auto i = index_of(name);
        if (!i) {
            throw std::invalid_argument("ring has no symbol '" + std::string(name) + "'");
        }
        return *i;
    }

    int codim(const Exponents &e) const
    {
        int c = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            c += e[i] * m_symbols[i].codim;
        }
        return c;
    }

    bool survives(const Exponents &e) const
    {
        if (codim(e) > m_truncation) {
            return false;
        }
        if (m_pullback_bound) {
            int pulled = 0;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (m_symbols[i].pullback) {
                    pulled += e[i] * m_symbols[i].codim;
                }
            }
            if (pulled > *m_pullback_bound) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const RingContext &a, const RingContext &b)
    {
        if (a.m_truncation != b.m_truncation || a.m_pullback_bound != b.m_pullback_bound
            || a.m_symbols.size() != b.m_symbols.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.m_symbols.size(); ++i) {
            const auto &x = a.m_symbols[i];
            const auto &y = b.m_symbols[i];
            if (x.name != y.name || x.codim != y.codim || x.pullback != y.pullback) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<SymbolSpec> m_symbols;
    int m_truncation;
    std::optional<int> m_pullback_bound;
    std::unordered_map<std::string, std::size_t> m_index;
    Polynomial::VarList m_names;
    std::shared_ptr<const Polynomial::VarList> m_names_ptr;
};

using RingPtr = std::shared_ptr<const RingContext>;

inline RingPtr declare_ring(std::vector<SymbolSpec> symbols, int truncation,
                            std::optional<int> pullback_bound = std::nullopt)
{
    return std::make_shared<const RingContext>(std::move(symbols), truncation, pullback_bound);
}

inline bool same_ring(const RingPtr &a, const RingPtr &b)
{
    return a == b || *a == *b;
}

// Element of a RingContext. Terms are ordered by codimension, then
// reverse-lexicographically in the context's symbol order.
class ClassPoly
{
public:
    struct Order {
        const RingContext *ctx;
        bool operator()(const Exponents &a, const Exponents &b) const
        {
            const int ca = ctx->codim(a);
            const int cb = ctx->codim(b);
            if (ca != cb) {
                return ca < cb;
            }
            return revlex_before(a, b);
        }
    };
    using TermMap = std::map<Exponents, Rational, Order>;

    explicit ClassPoly(RingPtr ctx) : m_ctx(std::move(ctx)), m_terms(Order{m_ctx.get()}) {}

    static ClassPoly constant(RingPtr ctx, const Rational &c)
    {
        ClassPoly p(std::move(ctx));
        p.add_term(Exponents(p.m_ctx->size(), 0), c);
        return p;
    }
    static ClassPoly symbol(RingPtr ctx, std::string_view name)
    {
        ClassPoly p(std::move(ctx));
        Exponents e(p.m_ctx->size(), 0);
        e[p.m_ctx->require(name)] = 1;
        p.add_term(e, 1);
        return p;
    }
    // Builds a class from a polynomial over the context's symbol names.
    static ClassPoly from_polynomial(RingPtr ctx, const Polynomial &poly)
    {
        if (poly.variables() != *ctx->names()) {
            throw std::invalid_argument("polynomial variables do not match the ring symbols");
        }
        ClassPoly p(std::move(ctx));
        for (const auto &[e, c] : poly.terms()) {
            p.add_term(e, c);
        }
        return p;
    }
    static ClassPoly parse(RingPtr ctx, std::string_view text)
    {
        auto names = ctx->names();
        return from_polynomial(std::move(ctx), parse_polynomial(text, names));
    }

    const RingPtr &context() const { return m_ctx; }
    const TermMap &terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }
    std::size_t size() const { return m_terms.size(); }

    Rational coefficient(const Exponents &e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Exponents(m_ctx->size(), 0)); }

    // Highest codimension present, -1 for zero.
    int top_codim() const { return m_terms.empty() ? -1 : m_ctx->codim(m_terms.rbegin()->first); }
    bool is_homogeneous(int codim) const
    {
        for (const auto &[e, c] : m_terms) {
            if (m_ctx->codim(e) != codim) {
                return false;
            }
        }
        return true;
    }
    bool has_integer_coefficients() const
    {
        for (const auto &[e, c] : m_terms) {
            if (!is_integral(c)) {
                return false;
            }
        }
        return true;
    }

    // Adds c * monomial, reducing to zero when the monomial dies in the ring.
    void add_term(const Exponents &e, const Rational &c)
    {
        if (c == 0 || !m_ctx->survives(e)) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    ClassPoly &operator+=(const ClassPoly &o)
    {
        check(o);
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, c);
        }
        return *this;
    }
    ClassPoly &operator-=(const ClassPoly &o)
    {
        check(o);
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, -c);
        }
        return *this;
    }
    ClassPoly &operator*=(const Rational &s)
    {
        if (s == 0) {
            m_terms.clear();
        } else {
            for (auto &[e, c] : m_terms) {
                c *= s;
            }
        }
        return *this;
    }
    friend ClassPoly operator+(ClassPoly a, const ClassPoly &b) { return a += b; }
    friend ClassPoly operator-(ClassPoly a, const ClassPoly &b) { return a -= b; }
    friend ClassPoly operator*(ClassPoly a, const Rational &s) { return a *= s; }
    friend ClassPoly operator*(const Rational &s, ClassPoly a) { return a *= s; }
    ClassPoly operator-() const
    {
        ClassPoly r(*this);
        for (auto &[e, c] : r.m_terms) {
            c = -c;
        }
        return r;
    }

    friend ClassPoly operator*(const ClassPoly &a, const ClassPoly &b)
    {
        a.check(b);
        ClassPoly r(a.m_ctx);
        const int trunc = a.m_ctx->truncation();
        Exponents e(a.m_ctx->size());
        for (const auto &[ea, ca] : a.m_terms) {
            const int da = a.m_ctx->codim(ea);
            for (const auto &[eb, cb] : b.m_terms) {
                // terms are sorted by codim, so the rest of b is truncated too
                if (da + a.m_ctx->codim(eb) > trunc) {
                    break;
                }
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    ClassPoly &operator*=(const ClassPoly &o) { return *this = *this * o; }

    ClassPoly pow(unsigned k) const
    {
        ClassPoly result = constant(m_ctx, 1);
        for (unsigned i = 0; i < k; ++i) {
            result *= *this;
        }
        return result;
    }

    std::string str() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        const auto &names = *m_ctx->names();
        for (const auto &[e, c] : m_terms) {
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) {
                    continue;
                }
                if (!mono.empty()) {
                    mono += "*";
                }
                mono += names[i];
                if (e[i] > 1) {
                    mono += "^" + std::to_string(e[i]);
                }
            }
            Polynomial::append_term(out, first, c, mono);
            first = false;
        }
        return out;
    }

    friend bool operator==(const ClassPoly &a, const ClassPoly &b)
    {
        return same_ring(a.m_ctx, b.m_ctx) && a.m_terms == b.m_terms;
    }

private:
    void check(const ClassPoly &o) const
    {
        if (!same_ring(m_ctx, o.m_ctx)) {
            throw context_mismatch();
        }
    }

    RingPtr m_ctx;
    TermMap m_terms;
};

// Sum of the terms of codimension exactly k.
inline ClassPoly graded_piece(const ClassPoly &a, int k)
{
    ClassPoly r(a.context());
    for (const auto &[e, c] : a.terms()) {
        if (a.context()->codim(e) == k) {
            r.add_term(e, c);
        }
    }
    return r;
}

// Inverse of a class with constant term 1: 1 - d + d^2 - ... +/- d^T, d = a - 1.
inline ClassPoly invert_unit(const ClassPoly &a)
{
    if (a.constant_term() != 1) {
        throw std::domain_error("invert_unit: constant term must be 1, got " + a.constant_term().str());
    }
    const auto &ctx = a.context();
    const ClassPoly delta = a - ClassPoly::constant(ctx, 1);
    ClassPoly result = ClassPoly::constant(ctx, 1);
    ClassPoly power = ClassPoly::constant(ctx, 1);
    for (int k = 1; k <= ctx->truncation(); ++k) {
        power *= delta;
        if (power.is_zero()) {
            break;
        }
        if (k % 2 == 1) {
            result -= power;
        } else {
            result += power;
        }
    }
    return result;
}

// Ring homomorphism extension of a symbol map into `target`. Each image must be
// homogeneous of its symbol's codimension.
inline ClassPoly substitute(const ClassPoly &a, const std::map<std::string, ClassPoly> &images,
                            const RingPtr &target)
{
    const auto &src = *a.context();
    std::vector<const ClassPoly *> image_of(src.size(), nullptr);
    std::vector<bool> used(src.size(), false);
    for (const auto &[e, c] : a.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) {
                used[i] = true;
            }
        }
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
        auto it = images.find(src.symbols()[i].name);
        if (it == images.end()) {
            if (used[i]) {
                throw std::invalid_argument("substitute: no image for symbol '" + src.symbols()[i].name + "'");
            }
            continue;
        }
        if (!same_ring(it->second.context(), target)) {
            throw context_mismatch();
        }
        if (!it->second.is_homogeneous(src.symbols()[i].codim)) {
            throw std::invalid_argument("substitute: image of '" + src.symbols()[i].name
                                        + "' is not homogeneous of codimension "
                                        + std::to_string(src.symbols()[i].codim));
        }
        image_of[i] = &it->second;
    }

    // cache powers of each image
    std::vector<std::vector<ClassPoly>> powers(src.size());
    auto power_of = [&](std::size_t i, int k) -> const ClassPoly & {
        auto &cache = powers[i];
        if (cache.empty()) {
            cache.push_back(ClassPoly::constant(target, 1));
        }
        while (static_cast<int>(cache.size()) <= k) {
            cache.push_back(cache.back() * *image_of[i]);
        }
        return cache[static_cast<std::size_t>(k)];
    };

    ClassPoly result(target);
    for (const auto &[e, c] : a.terms()) {
        ClassPoly t = ClassPoly::constant(target, c);
        for (std::size_t i = 0; i < e.size() && !t.is_zero(); ++i) {
            if (e[i] > 0) {
                t *= power_of(i, e[i]);
            }
        }
        result += t;
    }
    return result;
}

struct DivisionResult {
    ClassPoly quotient;
    ClassPoly remainder;
};

// Division by a divisor that is monic in `pivot`. The coefficients of both
// operands with respect to the pivot must be pivot-free (automatic for
// polynomials), so plain univariate long division applies.
inline DivisionResult divide_monic(const ClassPoly &a, const ClassPoly &r, std::string_view pivot)
{
    if (!same_ring(a.context(), r.context())) {
        throw context_mismatch();
    }
    const auto &ctx = a.context();
    const std::size_t p = ctx->require(pivot);

    int deg_r = -1;
    for (const auto &[e, c] : r.terms()) {
        deg_r = std::max(deg_r, e[p]);
    }
    if (deg_r < 1) {
        throw std::invalid_argument("divide_monic: divisor has no positive power of the pivot");
    }
    Exponents lead(ctx->size(), 0);
    lead[p] = deg_r;
    bool monic = r.coefficient(lead) == 1;
    for (const auto &[e, c] : r.terms()) {
        if (e[p] == deg_r && e != lead) {
            monic = false;
        }
    }
    if (!monic) {
        throw std::invalid_argument("divide_monic: divisor is not monic in '" + std::string(pivot) + "'");
    }

    ClassPoly quotient(ctx);
    ClassPoly rem = a;
    while (true) {
        int top = -1;
        for (const auto &[e, c] : rem.terms()) {
            top = std::max(top, e[p]);
        }
        if (top < deg_r) {
            break;
        }
        // all terms of rem at pivot degree `top`, shifted down by deg_r
        ClassPoly step(ctx);
        for (const auto &[e, c] : rem.terms()) {
            if (e[p] == top) {
                Exponents s = e;
                s[p] -= deg_r;
                step.add_term(s, c);
            }
        }
        quotient += step;
        rem -= step * r;
        for (const auto &[e, c] : rem.terms()) {
            if (e[p] == top) {
                throw std::logic_error("divide_monic: leading block failed to cancel");
            }
        }
    }
    return {std::move(quotient), std::move(rem)};
}

} // namespace bnd

#endif
