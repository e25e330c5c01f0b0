#ifndef BND_EXPRESSION_HPP
#define BND_EXPRESSION_HPP

#include <cctype>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <bnd/polynomial.hpp>
#include <bnd/rational.hpp>

namespace bnd
{

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, std::size_t column, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          m_line(line), m_column(column)
    {
    }
    std::size_t line() const { return m_line; }
    std::size_t column() const { return m_column; }

private:
    std::size_t m_line;
    std::size_t m_column;
};

namespace detail
{

// Recursive descent over
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := ('+'|'-') unary | power
//   power := atom ('^' integer)?
//   atom  := number | identifier | '(' expr ')'
// Division is only allowed by nonzero constants.
class ExpressionParser
{
public:
    ExpressionParser(std::string_view text, std::shared_ptr<const Polynomial::VarList> vars, std::size_t line)
        : m_text(text), m_vars(std::move(vars)), m_line(line)
    {
    }

    Polynomial parse()
    {
        skip_space();
        if (m_pos == m_text.size()) {
            fail("empty expression");
        }
        Polynomial p = expr();
        skip_space();
        if (m_pos != m_text.size()) {
            fail(std::string("unexpected character '") + m_text[m_pos] + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(m_line, m_pos + 1, msg); }

    void skip_space()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (m_pos < m_text.size() && m_text[m_pos] == c) {
            ++m_pos;
            return true;
        }
        return false;
    }

    Polynomial expr()
    {
        Polynomial acc = term();
        while (true) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term()
    {
        Polynomial acc = unary();
        while (true) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                const std::size_t at = m_pos;
                Polynomial d = unary();
                if (!d.is_constant() || d.is_zero()) {
                    m_pos = at;
                    fail("division is only supported by a nonzero constant");
                }
                acc *= Rational(1) / d.constant_term();
            } else {
                return acc;
            }
        }
    }

    Polynomial unary()
    {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    Polynomial power()
    {
        Polynomial base = atom();
        if (accept('^')) {
            skip_space();
            const std::size_t start = m_pos;
            while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                ++m_pos;
            }
            if (start == m_pos) {
                fail("expected a nonnegative integer exponent");
            }
            const auto digits = m_text.substr(start, m_pos - start);
            if (digits.size() > 4) {
                m_pos = start;
                fail("exponent too large");
            }
            return base.pow(static_cast<unsigned>(std::stoul(std::string(digits))));
        }
        return base;
    }

    Polynomial atom()
    {
        skip_space();
        if (m_pos == m_text.size()) {
            fail("unexpected end of expression");
        }
        const char c = m_text[m_pos];
        if (c == '(') {
            ++m_pos;
            Polynomial inner = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = m_pos;
            while (m_pos < m_text.size()
                   && (std::isdigit(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '.')) {
                ++m_pos;
            }
            // optional exponent part, only when followed by a digit or sign+digit
            if (m_pos < m_text.size() && (m_text[m_pos] == 'e' || m_text[m_pos] == 'E')) {
                std::size_t look = m_pos + 1;
                if (look < m_text.size() && (m_text[look] == '+' || m_text[look] == '-')) {
                    ++look;
                }
                if (look < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[look]))) {
                    m_pos = look;
                    while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
                        ++m_pos;
                    }
                }
            }
            Rational value;
            if (!parse_decimal(m_text.substr(start, m_pos - start), value)) {
                m_pos = start;
                fail("malformed number");
            }
            return Polynomial::constant(m_vars, value);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = m_pos;
            while (m_pos < m_text.size()
                   && (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_')) {
                ++m_pos;
            }
            const std::string name(m_text.substr(start, m_pos - start));
            for (std::size_t i = 0; i < m_vars->size(); ++i) {
                if ((*m_vars)[i] == name) {
                    return Polynomial::variable(m_vars, i);
                }
            }
            m_pos = start;
            fail("undeclared variable '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view m_text;
    std::shared_ptr<const Polynomial::VarList> m_vars;
    std::size_t m_line;
    std::size_t m_pos = 0;
};

} // namespace detail

// Parses one infix polynomial over the given variables. `line` is only used
// for diagnostics.
inline Polynomial parse_polynomial(std::string_view text, std::shared_ptr<const Polynomial::VarList> vars,
                                   std::size_t line = 1)
{
    return detail::ExpressionParser(text, std::move(vars), line).parse();
}

inline Polynomial parse_polynomial(std::string_view text, const Polynomial::VarList &vars, std::size_t line = 1)
{
    return parse_polynomial(text, std::make_shared<const Polynomial::VarList>(vars), line);
}

} // namespace bnd

#endif
