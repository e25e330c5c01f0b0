#ifndef BND_BN_SYSTEM_HPP
#define BND_BN_SYSTEM_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <bnd/expression.hpp>
#include <bnd/polynomial.hpp>
#include <bnd/rational.hpp>

namespace bnd
{

struct SystemMetadata {
    int n = 0;
    int k = 0;
    int m = 0;
    // "input", "minor" or "lagrange"
    std::string formulation = "input";

    friend bool operator==(const SystemMetadata &, const SystemMetadata &) = default;
};

struct PolySystem {
    std::shared_ptr<const Polynomial::VarList> variables;
    std::vector<Polynomial> polynomials;
    SystemMetadata meta;

    std::size_t nvars() const { return variables->size(); }

    friend bool operator==(const PolySystem &a, const PolySystem &b)
    {
        return *a.variables == *b.variables && a.polynomials == b.polynomials && a.meta == b.meta;
    }
};

inline PolySystem make_input_system(const Polynomial::VarList &vars, const std::vector<std::string> &equations)
{
    PolySystem s;
    s.variables = std::make_shared<const Polynomial::VarList>(vars);
    for (std::size_t i = 0; i < equations.size(); ++i) {
        s.polynomials.push_back(parse_polynomial(equations[i], s.variables, i + 1));
    }
    s.meta.n = static_cast<int>(vars.size());
    s.meta.k = static_cast<int>(equations.size());
    s.meta.m = s.meta.n - s.meta.k;
    return s;
}

namespace detail
{

inline std::shared_ptr<const Polynomial::VarList> numbered(const std::vector<std::string> &prefixes, int count,
                                                           const std::vector<std::pair<std::string, int>> &extra = {})
{
    Polynomial::VarList v;
    for (const auto &p : prefixes) {
        for (int i = 1; i <= count; ++i) {
            v.push_back(p + std::to_string(i));
        }
    }
    for (const auto &[p, c] : extra) {
        if (c < 0) {
            v.push_back(p);
        }
        for (int i = 1; i <= c; ++i) {
            v.push_back(p + std::to_string(i));
        }
    }
    return std::make_shared<const Polynomial::VarList>(std::move(v));
}

// Images of the n input variables inside `target`, starting at `offset`.
inline std::vector<Polynomial> embedding(const std::shared_ptr<const Polynomial::VarList> &target, std::size_t n,
                                         std::size_t offset)
{
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i) {
        images.push_back(Polynomial::variable(target, offset + i));
    }
    return images;
}

inline Polynomial determinant(std::vector<std::vector<Polynomial>> a)
{
    const std::size_t s = a.size();
    if (s == 1) {
        return a[0][0];
    }
    if (s == 2) {
        return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    }
    Polynomial acc(a[0][0].variables_ptr());
    for (std::size_t col = 0; col < s; ++col) {
        if (a[0][col].is_zero()) {
            continue;
        }
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t r = 1; r < s; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t c = 0; c < s; ++c) {
                if (c != col) {
                    row.push_back(a[r][c]);
                }
            }
            minor.push_back(std::move(row));
        }
        Polynomial t = a[0][col] * determinant(std::move(minor));
        if (col % 2 == 0) {
            acc += t;
        } else {
            acc -= t;
        }
    }
    return acc;
}

// Subsets of {0..n-1} of size k in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (k > n) {
        return out;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return out;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

inline void check_same_variables(const std::vector<Polynomial> &f)
{
    if (f.empty()) {
        throw std::invalid_argument("at least one defining polynomial is required");
    }
    for (const auto &p : f) {
        if (p.variables() != f.front().variables()) {
            throw std::invalid_argument("defining polynomials must share one variable list");
        }
    }
}

} // namespace detail

// Number of (n-m+1)-minors of one (k+1) x n augmented Jacobian.
inline std::size_t minor_count(int n, int k, int m)
{
    const int s = n - m + 1;
    return to_int64(binomial(k + 1, s) * binomial(n, s));
}

// Rank conditions on the augmented Jacobians J(x,y) = (y-x; grad f_i(x)) and
// J(y,x), followed by f_i(x) = 0 and f_i(y) = 0. Variables x1..xn, y1..yn.
inline PolySystem build_minor_system(const std::vector<Polynomial> &f, int m)
{
    detail::check_same_variables(f);
    const int n = static_cast<int>(f.front().nvars());
    const int k = static_cast<int>(f.size());
    if (m < 0 || m >= n) {
        throw std::invalid_argument("build_minor_system: need 0 <= m < n");
    }
    if (k < n - m) {
        throw std::invalid_argument("build_minor_system: need at least n-m defining equations");
    }
    const auto vars = detail::numbered({"x", "y"}, n);
    const auto at_x = detail::embedding(vars, static_cast<std::size_t>(n), 0);
    const auto at_y = detail::embedding(vars, static_cast<std::size_t>(n), static_cast<std::size_t>(n));

    std::vector<std::vector<Polynomial>> grads(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < n; ++j) {
            grads[static_cast<std::size_t>(i)].push_back(f[static_cast<std::size_t>(i)].derivative(static_cast<std::size_t>(j)));
        }
    }

    auto augmented = [&](const std::vector<Polynomial> &p, const std::vector<Polynomial> &q) {
        std::vector<std::vector<Polynomial>> rows;
        std::vector<Polynomial> diff;
        for (int j = 0; j < n; ++j) {
            diff.push_back(q[static_cast<std::size_t>(j)] - p[static_cast<std::size_t>(j)]);
        }
        rows.push_back(std::move(diff));
        for (int i = 0; i < k; ++i) {
            std::vector<Polynomial> row;
            for (int j = 0; j < n; ++j) {
                row.push_back(grads[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].substitute(p));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };

    const std::size_t s = static_cast<std::size_t>(n - m + 1);
    const auto row_sets = detail::combinations(static_cast<std::size_t>(k + 1), s);
    const auto col_sets = detail::combinations(static_cast<std::size_t>(n), s);

    PolySystem sys;
    sys.variables = vars;
    for (const auto &jac : {augmented(at_x, at_y), augmented(at_y, at_x)}) {
        for (const auto &rs : row_sets) {
            for (const auto &cs : col_sets) {
                std::vector<std::vector<Polynomial>> sub;
                for (auto r : rs) {
                    std::vector<Polynomial> row;
                    for (auto c : cs) {
                        row.push_back(jac[r][c]);
                    }
                    sub.push_back(std::move(row));
                }
                sys.polynomials.push_back(detail::determinant(std::move(sub)));
            }
        }
    }
    for (const auto &fi : f) {
        sys.polynomials.push_back(fi.substitute(at_x));
    }
    for (const auto &fi : f) {
        sys.polynomials.push_back(fi.substitute(at_y));
    }
    sys.meta = {n, k, m, "minor"};
    return sys;
}

struct LagrangeOptions {
    // Start system g_1..g_k of the same degrees; enables h_i = (1-t) f_i + gamma t g_i.
    std::optional<std::vector<Polynomial>> start;
    Rational gamma = 1;
};

// Square system in x, y, lambda_1..k, mu_1..k (and t when blending):
//   h_i(x) = 0, h_i(y) = 0, y - x = sum lambda_i grad h_i(x), y - x = sum mu_i grad h_i(y).
inline PolySystem build_lagrange_system(const std::vector<Polynomial> &f, const LagrangeOptions &options = {})
{
    detail::check_same_variables(f);
    const int n = static_cast<int>(f.front().nvars());
    const int k = static_cast<int>(f.size());
    const bool blend = options.start.has_value();
    if (blend) {
        const auto &g = *options.start;
        if (g.size() != f.size()) {
            throw std::invalid_argument("build_lagrange_system: start system needs one polynomial per equation");
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].variables() != f.front().variables()) {
                throw std::invalid_argument("build_lagrange_system: start system uses different variables");
            }
            if (g[i].total_degree() != f[i].total_degree()) {
                throw std::invalid_argument("build_lagrange_system: start polynomial " + std::to_string(i + 1)
                                            + " has degree " + std::to_string(g[i].total_degree()) + ", expected "
                                            + std::to_string(f[i].total_degree()));
            }
        }
    }

    std::vector<std::pair<std::string, int>> extra{{"lambda", k}, {"mu", k}};
    if (blend) {
        extra.emplace_back("t", -1);
    }
    const auto vars = detail::numbered({"x", "y"}, n, extra);
    const std::size_t nn = static_cast<std::size_t>(n);
    const std::size_t kk = static_cast<std::size_t>(k);
    const auto at_x = detail::embedding(vars, nn, 0);
    const auto at_y = detail::embedding(vars, nn, nn);

    // h_i over the input variables plus t (only when blending)
    std::vector<Polynomial> h;
    std::vector<Polynomial> h_at_x;
    std::vector<Polynomial> h_at_y;
    std::vector<std::vector<Polynomial>> grad_x(kk);
    std::vector<std::vector<Polynomial>> grad_y(kk);
    for (std::size_t i = 0; i < kk; ++i) {
        for (std::size_t j = 0; j < nn; ++j) {
            grad_x[i].push_back(f[i].derivative(j).substitute(at_x));
            grad_y[i].push_back(f[i].derivative(j).substitute(at_y));
        }
        h_at_x.push_back(f[i].substitute(at_x));
        h_at_y.push_back(f[i].substitute(at_y));
        if (blend) {
            const auto t = Polynomial::variable(vars, vars->size() - 1);
            const auto one = Polynomial::constant(vars, 1);
            const auto &g = (*options.start)[i];
            const Polynomial gx = g.substitute(at_x);
            const Polynomial gy = g.substitute(at_y);
            h_at_x[i] = (one - t) * h_at_x[i] + options.gamma * t * gx;
            h_at_y[i] = (one - t) * h_at_y[i] + options.gamma * t * gy;
            for (std::size_t j = 0; j < nn; ++j) {
                grad_x[i][j] = (one - t) * grad_x[i][j] + options.gamma * t * g.derivative(j).substitute(at_x);
                grad_y[i][j] = (one - t) * grad_y[i][j] + options.gamma * t * g.derivative(j).substitute(at_y);
            }
        }
    }

    PolySystem sys;
    sys.variables = vars;
    for (const auto &p : h_at_x) {
        sys.polynomials.push_back(p);
    }
    for (const auto &p : h_at_y) {
        sys.polynomials.push_back(p);
    }
    for (int side = 0; side < 2; ++side) {
        const auto &grad = side == 0 ? grad_x : grad_y;
        const std::size_t mult0 = 2 * nn + (side == 0 ? 0 : kk);
        for (std::size_t j = 0; j < nn; ++j) {
            Polynomial eq = at_y[j] - at_x[j];
            for (std::size_t i = 0; i < kk; ++i) {
                eq -= Polynomial::variable(vars, mult0 + i) * grad[i][j];
            }
            sys.polynomials.push_back(std::move(eq));
        }
    }
    sys.meta = {n, k, n - k, "lagrange"};
    return sys;
}

// Text format: "vars: a b c" on the first line, then one polynomial per line;
// '#' starts a comment. Metadata travels in "# key: value" comments.
inline void emit(const PolySystem &sys, std::ostream &out)
{
    out << "vars:";
    for (const auto &v : *sys.variables) {
        out << ' ' << v;
    }
    out << '\n';
    out << "# n: " << sys.meta.n << '\n';
    out << "# k: " << sys.meta.k << '\n';
    out << "# m: " << sys.meta.m << '\n';
    out << "# formulation: " << sys.meta.formulation << '\n';
    for (const auto &p : sys.polynomials) {
        out << p.str() << '\n';
    }
}

inline std::string emit(const PolySystem &sys)
{
    std::ostringstream os;
    emit(sys, os);
    return os.str();
}

inline void emit(const PolySystem &sys, const std::string &path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    emit(sys, out);
}

inline PolySystem parse_system(std::istream &in)
{
    PolySystem sys;
    std::string line;
    std::size_t lineno = 0;
    bool have_vars = false;
    bool have_meta[4] = {false, false, false, false};

    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            return std::string();
        }
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line;
        std::string comment;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            body = line.substr(0, hash);
            comment = line.substr(hash + 1);
        }
        if (!comment.empty()) {
            const auto colon = comment.find(':');
            if (colon != std::string::npos) {
                const std::string key = trim(comment.substr(0, colon));
                const std::string value = trim(comment.substr(colon + 1));
                auto read_int = [&](int &slot, int which) {
                    try {
                        std::size_t used = 0;
                        slot = std::stoi(value, &used);
                        if (used != value.size()) {
                            throw std::invalid_argument(value);
                        }
                    } catch (const std::exception &) {
                        throw ParseError(lineno, line.find('#') + 1, "metadata '" + key + "' is not an integer");
                    }
                    have_meta[which] = true;
                };
                if (key == "n") {
                    read_int(sys.meta.n, 0);
                } else if (key == "k") {
                    read_int(sys.meta.k, 1);
                } else if (key == "m") {
                    read_int(sys.meta.m, 2);
                } else if (key == "formulation") {
                    sys.meta.formulation = value;
                    have_meta[3] = true;
                }
            }
        }
        if (trim(body).empty()) {
            continue;
        }
        if (!have_vars) {
            const auto first = body.find_first_not_of(" \t");
            if (body.compare(first, 5, "vars:") != 0) {
                throw ParseError(lineno, first + 1, "expected 'vars:' declaration before any polynomial");
            }
            Polynomial::VarList vars;
            std::istringstream names(body.substr(first + 5));
            std::string name;
            while (names >> name) {
                const bool ok = (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')
                                && std::all_of(name.begin(), name.end(), [](char c) {
                                       return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                                   });
                if (!ok) {
                    throw ParseError(lineno, body.find(name) + 1, "invalid variable name '" + name + "'");
                }
                if (std::find(vars.begin(), vars.end(), name) != vars.end()) {
                    throw ParseError(lineno, body.find(name) + 1, "duplicate variable '" + name + "'");
                }
                vars.push_back(name);
            }
            if (vars.empty()) {
                throw ParseError(lineno, first + 1, "no variables declared");
            }
            sys.variables = std::make_shared<const Polynomial::VarList>(std::move(vars));
            have_vars = true;
            continue;
        }
        sys.polynomials.push_back(parse_polynomial(body, sys.variables, lineno));
    }
    if (!have_vars) {
        throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'vars:' declaration");
    }
    if (!have_meta[0]) {
        sys.meta.n = static_cast<int>(sys.variables->size());
    }
    if (!have_meta[1]) {
        sys.meta.k = static_cast<int>(sys.polynomials.size());
    }
    if (!have_meta[2]) {
        sys.meta.m = sys.meta.n - sys.meta.k;
    }
    return sys;
}

inline PolySystem parse_system_text(const std::string &text)
{
    std::istringstream in(text);
    return parse_system(in);
}

inline PolySystem parse_system_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return parse_system(in);
}

} // namespace bnd

#endif
