#ifndef BND_POLYNOMIAL_HPP
#define BND_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <bnd/rational.hpp>

namespace bnd
{

using Exponents = std::vector<int>;

// Reverse-lexicographic tie break shared by every term order in the library:
// at the last position where the exponents differ, the smaller exponent wins.
inline bool revlex_before(const Exponents &a, const Exponents &b)
{
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return false;
}

// Sparse multivariate polynomial with exact rational coefficients over an
// ordered list of named variables. Terms are kept in graded reverse
// lexicographic order, highest total degree first.
class Polynomial
{
public:
    struct Order {
        bool operator()(const Exponents &a, const Exponents &b) const
        {
            int da = 0, db = 0;
            for (int e : a) {
                da += e;
            }
            for (int e : b) {
                db += e;
            }
            if (da != db) {
                return da > db;
            }
            return revlex_before(a, b);
        }
    };
    using TermMap = std::map<Exponents, Rational, Order>;
    using VarList = std::vector<std::string>;

    Polynomial() : m_vars(std::make_shared<const VarList>()) {}
    explicit Polynomial(VarList vars) : m_vars(std::make_shared<const VarList>(std::move(vars))) {}
    explicit Polynomial(std::shared_ptr<const VarList> vars) : m_vars(std::move(vars)) {}

    static Polynomial constant(std::shared_ptr<const VarList> vars, const Rational &c)
    {
        Polynomial p(std::move(vars));
        if (c != 0) {
            p.m_terms.emplace(Exponents(p.nvars(), 0), c);
        }
        return p;
    }
    static Polynomial variable(std::shared_ptr<const VarList> vars, std::size_t index)
    {
        Polynomial p(std::move(vars));
        if (index >= p.nvars()) {
            throw std::out_of_range("variable index out of range");
        }
        Exponents e(p.nvars(), 0);
        e[index] = 1;
        p.m_terms.emplace(std::move(e), Rational(1));
        return p;
    }

    const VarList &variables() const { return *m_vars; }
    const std::shared_ptr<const VarList> &variables_ptr() const { return m_vars; }
    std::size_t nvars() const { return m_vars->size(); }
    const TermMap &terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }

    bool is_constant() const
    {
        return m_terms.empty() || (m_terms.size() == 1 && total(m_terms.begin()->first) == 0);
    }
    Rational constant_term() const
    {
        auto it = m_terms.find(Exponents(nvars(), 0));
        return it == m_terms.end() ? Rational(0) : it->second;
    }
    int total_degree() const { return m_terms.empty() ? -1 : total(m_terms.begin()->first); }
    int degree_in(std::size_t var) const
    {
        int d = -1;
        for (const auto &[e, c] : m_terms) {
            d = std::max(d, e[var]);
        }
        return d;
    }

    // Adds c * x^e; drops the term when the sum cancels.
    void add_term(const Exponents &e, const Rational &c)
    {
        if (c == 0) {
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

    Polynomial &operator+=(const Polynomial &o)
    {
        check_compatible(o);
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, c);
        }
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o)
    {
        check_compatible(o);
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, -c);
        }
        return *this;
    }
    Polynomial &operator*=(const Rational &s)
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
    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational &s) { return a *= s; }
    friend Polynomial operator*(const Rational &s, Polynomial a) { return a *= s; }
    Polynomial operator-() const
    {
        Polynomial r(*this);
        for (auto &[e, c] : r.m_terms) {
            c = -c;
        }
        return r;
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        a.check_compatible(b);
        Polynomial r(a.m_vars);
        Exponents e(a.nvars());
        for (const auto &[ea, ca] : a.m_terms) {
            for (const auto &[eb, cb] : b.m_terms) {
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }

    Polynomial pow(unsigned k) const
    {
        Polynomial result = constant(m_vars, 1);
        Polynomial base = *this;
        while (k != 0) {
            if (k & 1u) {
                result *= base;
            }
            k >>= 1;
            if (k != 0) {
                base *= base;
            }
        }
        return result;
    }

    Polynomial derivative(std::size_t var) const
    {
        Polynomial r(m_vars);
        for (const auto &[e, c] : m_terms) {
            if (e[var] > 0) {
                Exponents d = e;
                d[var] -= 1;
                r.add_term(d, c * e[var]);
            }
        }
        return r;
    }

    // Ring homomorphism sending variable i to images[i]; all images share a variable list.
    Polynomial substitute(const std::vector<Polynomial> &images) const
    {
        if (images.size() != nvars()) {
            throw std::invalid_argument("substitute: expected one image per variable");
        }
        auto target = images.empty() ? m_vars : images.front().m_vars;
        Polynomial r(target);
        for (const auto &[e, c] : m_terms) {
            Polynomial t = constant(target, c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] > 0) {
                    t *= images[i].pow(static_cast<unsigned>(e[i]));
                }
            }
            r += t;
        }
        return r;
    }

    template <typename T>
    T evaluate(std::span<const T> point) const
    {
        if (point.size() != nvars()) {
            throw std::invalid_argument("evaluate: point dimension mismatch");
        }
        T acc = T(0);
        for (const auto &[e, c] : m_terms) {
            T t = convert<T>(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                for (int k = 0; k < e[i]; ++k) {
                    t *= point[i];
                }
            }
            acc += t;
        }
        return acc;
    }

    std::string str() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &[e, c] : m_terms) {
            append_term(out, first, c, monomial_text(e));
            first = false;
        }
        return out;
    }

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return *a.m_vars == *b.m_vars && a.m_terms == b.m_terms;
    }

    // Shared by every polynomial printer: "c*mono" with unit coefficients elided.
    static void append_term(std::string &out, bool first, const Rational &c, const std::string &mono)
    {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) {
                out += "-";
            }
        } else {
            out += negative ? " - " : " + ";
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }

private:
    static int total(const Exponents &e)
    {
        int s = 0;
        for (int x : e) {
            s += x;
        }
        return s;
    }

    template <typename T>
    static T convert(const Rational &c)
    {
        if constexpr (std::is_same_v<T, Rational>) {
            return c;
        } else {
            return c.convert_to<T>();
        }
    }

    std::string monomial_text(const Exponents &e) const
    {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!s.empty()) {
                s += "*";
            }
            s += (*m_vars)[i];
            if (e[i] > 1) {
                s += "^" + std::to_string(e[i]);
            }
        }
        return s;
    }

    void check_compatible(const Polynomial &o) const
    {
        if (m_vars != o.m_vars && *m_vars != *o.m_vars) {
            throw std::invalid_argument("polynomials over different variable lists");
        }
    }

    std::shared_ptr<const VarList> m_vars;
    TermMap m_terms;
};

} // namespace bnd

#endif
