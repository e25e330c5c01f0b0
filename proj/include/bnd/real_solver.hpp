#ifndef BND_REAL_SOLVER_HPP
#define BND_REAL_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <bnd/bn_system.hpp>
#include <bnd/polynomial.hpp>

namespace bnd
{

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A polynomial flattened for fast double evaluation.
class CompiledPolynomial
{
public:
    CompiledPolynomial() = default;

    explicit CompiledPolynomial(const Polynomial &p) : m_nvars(p.nvars())
    {
        for (const auto &[e, c] : p.terms()) {
            Term t;
            t.coefficient = c.convert_to<double>();
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] > 0) {
                    t.factors.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(e[i]));
                    m_max_degree = std::max(m_max_degree, e[i]);
                }
            }
            m_terms.push_back(std::move(t));
        }
    }

    std::size_t nvars() const { return m_nvars; }
    int max_degree() const { return m_max_degree; }
    bool is_zero() const { return m_terms.empty(); }

    // powers[i * stride + e] = z_i^e
    double evaluate(const std::vector<double> &powers, std::size_t stride) const
    {
        double acc = 0.0;
        for (const auto &t : m_terms) {
            double v = t.coefficient;
            for (const auto &[var, exp] : t.factors) {
                v *= powers[var * stride + exp];
            }
            acc += v;
        }
        return acc;
    }

private:
    struct Term {
        double coefficient = 0.0;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
    };
    std::vector<Term> m_terms;
    std::size_t m_nvars = 0;
    int m_max_degree = 0;
};

// Polynomial map R^N -> R^M with its symbolic Jacobian.
class CompiledSystem
{
public:
    CompiledSystem() = default;

    explicit CompiledSystem(const std::vector<Polynomial> &polys)
    {
        if (polys.empty()) {
            throw std::invalid_argument("CompiledSystem: empty system");
        }
        m_nvars = polys.front().nvars();
        for (const auto &p : polys) {
            m_equations.emplace_back(p);
            m_stride = std::max<std::size_t>(m_stride, static_cast<std::size_t>(m_equations.back().max_degree()) + 1);
            std::vector<CompiledPolynomial> row;
            for (std::size_t j = 0; j < m_nvars; ++j) {
                row.emplace_back(p.derivative(j));
            }
            m_jacobian.push_back(std::move(row));
        }
    }

    std::size_t nvars() const { return m_nvars; }
    std::size_t nequations() const { return m_equations.size(); }

    Vector value(const Vector &z) const
    {
        const auto pw = powers(z);
        Vector out(static_cast<Eigen::Index>(m_equations.size()));
        for (std::size_t i = 0; i < m_equations.size(); ++i) {
            out[static_cast<Eigen::Index>(i)] = m_equations[i].evaluate(pw, m_stride);
        }
        return out;
    }

    Matrix jacobian(const Vector &z) const
    {
        const auto pw = powers(z);
        Matrix out(static_cast<Eigen::Index>(m_equations.size()), static_cast<Eigen::Index>(m_nvars));
        for (std::size_t i = 0; i < m_equations.size(); ++i) {
            for (std::size_t j = 0; j < m_nvars; ++j) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))
                    = m_jacobian[i][j].is_zero() ? 0.0 : m_jacobian[i][j].evaluate(pw, m_stride);
            }
        }
        return out;
    }

private:
    std::vector<double> powers(const Vector &z) const
    {
        if (static_cast<std::size_t>(z.size()) != m_nvars) {
            throw std::invalid_argument("CompiledSystem: point has wrong dimension");
        }
        std::vector<double> pw(m_nvars * m_stride, 1.0);
        for (std::size_t i = 0; i < m_nvars; ++i) {
            for (std::size_t e = 1; e < m_stride; ++e) {
                pw[i * m_stride + e] = pw[i * m_stride + e - 1] * z[static_cast<Eigen::Index>(i)];
            }
        }
        return pw;
    }

    std::vector<CompiledPolynomial> m_equations;
    std::vector<std::vector<CompiledPolynomial>> m_jacobian;
    std::size_t m_nvars = 0;
    std::size_t m_stride = 1;
};

inline double max_abs(const Vector &v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct SolverConfig {
    // per-coordinate search interval; a single entry applies to every coordinate
    std::vector<std::pair<double, double>> box{{-4.0, 4.0}};
    int density = 20;
    int max_iterations = 100;
    int max_halvings = 30;
    double tau_res = 1e-10;
    double tau_cluster = 1e-6;
    double tau_sep = 1e-4;
    // minimum distance between sample points used as start pairs; 0 picks one grid cell
    double start_spacing = 0.0;
    std::uint64_t seed = 1;
    // 0 defers to BND_THREADS, then to the hardware
    unsigned threads = 0;

    std::pair<double, double> interval(std::size_t i) const { return box.size() == 1 ? box.front() : box.at(i); }

    void validate(std::size_t n) const
    {
        if (box.empty() || (box.size() != 1 && box.size() != n)) {
            throw std::invalid_argument("solver box must give one interval or one per coordinate");
        }
        for (const auto &[lo, hi] : box) {
            if (!(lo < hi)) {
                throw std::invalid_argument("solver box intervals must be nonempty");
            }
        }
        if (density < 2) {
            throw std::invalid_argument("grid density must be at least 2");
        }
        if (!(tau_cluster > 0.0 && tau_sep > tau_cluster)) {
            throw std::invalid_argument("need tau_sep > tau_cluster > 0");
        }
        if (!(tau_res > 0.0) || max_iterations < 1 || max_halvings < 0 || start_spacing < 0.0) {
            throw std::invalid_argument("invalid Newton settings");
        }
    }

    double cell_width(std::size_t n) const
    {
        double w = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const auto [lo, hi] = interval(i);
            w = std::min(w, (hi - lo) / (density - 1));
        }
        return w;
    }

    unsigned thread_count() const
    {
        unsigned t = threads;
        if (t == 0) {
            if (const char *env = std::getenv("BND_THREADS")) {
                try {
                    t = static_cast<unsigned>(std::max(1L, std::stol(env)));
                } catch (const std::exception &) {
                    t = 0;
                }
            }
        }
        if (t == 0) {
            t = std::max(1U, std::thread::hardware_concurrency());
        }
        return t;
    }
};

struct BottleneckPair {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> lambda;
    std::vector<double> mu;
    double separation = 0.0;
    double residual = 0.0;
    double minor_residual = 0.0;
    bool isolated = true;
};

struct SolveReport {
    std::vector<BottleneckPair> pairs;
    std::size_t samples = 0;
    std::size_t starts = 0;
    std::size_t converged = 0;
    std::size_t failed = 0;
    std::size_t diagonal = 0;
    std::size_t unverified = 0;
    // multistart never proves that every real bottleneck was found
    bool possibly_incomplete = true;

    std::size_t isolated_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(pairs.begin(), pairs.end(), [](const BottleneckPair &p) { return p.isolated; }));
    }
};

namespace detail
{

inline double distance(const std::vector<double> &a, const std::vector<double> &b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::sqrt(s);
}

// Distance between unordered pairs {x, y} and {u, v}.
inline double pair_distance(const BottleneckPair &a, const BottleneckPair &b)
{
    const double same = std::hypot(distance(a.x, b.x), distance(a.y, b.y));
    const double swapped = std::hypot(distance(a.x, b.y), distance(a.y, b.x));
    return std::min(same, swapped);
}

// Lexicographic a < b with coordinates closer than tol treated as equal.
inline bool lex_less(const std::vector<double> &a, const std::vector<double> &b, double tol)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) {
            return a[i] < b[i];
        }
    }
    return false;
}

struct NewtonOutcome {
    Vector z;
    double residual = 0.0;
    bool converged = false;
};

inline NewtonOutcome damped_newton(const CompiledSystem &sys, Vector z, const SolverConfig &cfg)
{
    Vector f = sys.value(z);
    double r = f.norm();
    NewtonOutcome out;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        if (max_abs(f) < cfg.tau_res) {
            // two polishing steps towards machine precision
            for (int p = 0; p < 2; ++p) {
                const Vector step = sys.jacobian(z).colPivHouseholderQr().solve(-f);
                const Vector trial = z + step;
                const Vector ft = sys.value(trial);
                if (!ft.allFinite() || ft.norm() >= r) {
                    break;
                }
                z = trial;
                f = ft;
                r = ft.norm();
            }
            out.z = z;
            out.residual = max_abs(f);
            out.converged = true;
            return out;
        }
        const Vector step = sys.jacobian(z).colPivHouseholderQr().solve(-f);
        if (!step.allFinite()) {
            break;
        }
        double alpha = 1.0;
        bool improved = false;
        for (int hv = 0; hv <= cfg.max_halvings; ++hv) {
            const Vector trial = z + alpha * step;
            const Vector ft = sys.value(trial);
            if (ft.allFinite() && ft.norm() < r) {
                z = trial;
                f = ft;
                r = ft.norm();
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved || z.cwiseAbs().maxCoeff() > 1e8) {
            break;
        }
    }
    out.z = z;
    out.residual = max_abs(f);
    out.converged = out.residual < cfg.tau_res;
    return out;
}

template<typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn &&fn)
{
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) {
                fn(i);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

inline void check_input(const std::vector<Polynomial> &f)
{
    check_same_variables(f);
    if (f.size() > f.front().nvars()) {
        throw std::invalid_argument("more defining equations than variables");
    }
}

} // namespace detail

// Real points of {f = 0} reached by minimum-norm Newton projection from a jittered grid.
inline std::vector<std::vector<double>> sample_variety(const std::vector<Polynomial> &f, const SolverConfig &cfg)
{
    detail::check_input(f);
    const std::size_t n = f.front().nvars();
    cfg.validate(n);
    const CompiledSystem sys(f);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> jitter(-0.25, 0.25);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= static_cast<std::size_t>(cfg.density);
    }
    std::vector<Vector> nodes;
    nodes.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        Vector z(static_cast<Eigen::Index>(n));
        std::size_t rest = idx;
        for (std::size_t i = 0; i < n; ++i) {
            const auto [lo, hi] = cfg.interval(i);
            const double step = (hi - lo) / (cfg.density - 1);
            const auto g = static_cast<double>(rest % static_cast<std::size_t>(cfg.density));
            rest /= static_cast<std::size_t>(cfg.density);
            z[static_cast<Eigen::Index>(i)] = lo + (g + jitter(rng)) * step;
        }
        nodes.push_back(std::move(z));
    }

    std::vector<std::optional<std::vector<double>>> projected(nodes.size());
    detail::parallel_for(nodes.size(), cfg.thread_count(), [&](std::size_t i) {
        Vector z = nodes[i];
        for (int it = 0; it < cfg.max_iterations; ++it) {
            const Vector v = sys.value(z);
            if (!v.allFinite()) {
                return;
            }
            if (max_abs(v) < cfg.tau_res) {
                for (std::size_t c = 0; c < n; ++c) {
                    const auto [lo, hi] = cfg.interval(c);
                    if (z[static_cast<Eigen::Index>(c)] < lo || z[static_cast<Eigen::Index>(c)] > hi) {
                        return;
                    }
                }
                projected[i] = std::vector<double>(z.data(), z.data() + z.size());
                return;
            }
            const Vector step = sys.jacobian(z).completeOrthogonalDecomposition().solve(-v);
            if (!step.allFinite() || step.norm() > 1e6) {
                return;
            }
            z += step;
        }
    });

    std::vector<std::vector<double>> points;
    for (auto &p : projected) {
        if (!p) {
            continue;
        }
        const bool duplicate = std::any_of(points.begin(), points.end(), [&](const std::vector<double> &q) {
            return detail::distance(*p, q) <= cfg.tau_cluster;
        });
        if (!duplicate) {
            points.push_back(std::move(*p));
        }
    }
    return points;
}

// Rank test on the square Lagrange system: isolated unless sigma_min < 1e-8 sigma_max.
inline bool classify_isolation(const BottleneckPair &pair, const CompiledSystem &lagrange)
{
    Vector z(static_cast<Eigen::Index>(lagrange.nvars()));
    Eigen::Index at = 0;
    for (const auto *part : {&pair.x, &pair.y, &pair.lambda, &pair.mu}) {
        for (double v : *part) {
            z[at++] = v;
        }
    }
    if (at != z.size()) {
        throw std::invalid_argument("classify_isolation: pair does not match the system dimension");
    }
    const Eigen::JacobiSVD<Matrix> svd(lagrange.jacobian(z));
    const auto &s = svd.singularValues();
    return s.size() > 0 && s[s.size() - 1] >= 1e-8 * s[0];
}

inline bool classify_isolation(const BottleneckPair &pair, const PolySystem &lagrange)
{
    return classify_isolation(pair, CompiledSystem(lagrange.polynomials));
}

inline SolveReport find_bottlenecks(const std::vector<Polynomial> &f, const SolverConfig &cfg)
{
    detail::check_input(f);
    const std::size_t n = f.front().nvars();
    const std::size_t k = f.size();
    if (k > 2) {
        throw std::invalid_argument("find_bottlenecks supports one or two defining equations");
    }
    cfg.validate(n);

    const PolySystem lag = build_lagrange_system(f);
    const PolySystem minors = build_minor_system(f, static_cast<int>(n - k));
    const CompiledSystem lagrange(lag.polynomials);
    const CompiledSystem verifier(minors.polynomials);
    const CompiledSystem gradients(f);

    SolveReport report;
    const auto samples = sample_variety(f, cfg);
    report.samples = samples.size();

    const double spacing = cfg.start_spacing > 0.0 ? cfg.start_spacing : cfg.cell_width(n);
    std::vector<const std::vector<double> *> seeds;
    for (const auto &p : samples) {
        const bool close = std::any_of(seeds.begin(), seeds.end(),
                                       [&](const std::vector<double> *q) { return detail::distance(p, *q) < spacing; });
        if (!close) {
            seeds.push_back(&p);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> starts;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        for (std::size_t j = i + 1; j < seeds.size(); ++j) {
            if (detail::distance(*seeds[i], *seeds[j]) > 2.0 * cfg.tau_sep) {
                starts.emplace_back(i, j);
            }
        }
    }
    report.starts = starts.size();

    auto to_vector = [](const std::vector<double> &v) {
        return Vector(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
    };
    // multipliers solving y - x = G(p) c in the least-squares sense
    auto multipliers = [&](const Vector &p, const Vector &rhs) {
        return Vector(gradients.jacobian(p).transpose().colPivHouseholderQr().solve(rhs));
    };

    enum class Status { failed, diagonal, unverified, accepted };
    struct Outcome {
        Status status = Status::failed;
        BottleneckPair pair;
    };
    std::vector<Outcome> outcomes(starts.size());
    const auto nn = static_cast<Eigen::Index>(n);
    const auto kk = static_cast<Eigen::Index>(k);

    detail::parallel_for(starts.size(), cfg.thread_count(), [&](std::size_t s) {
        const Vector x = to_vector(*seeds[starts[s].first]);
        const Vector y = to_vector(*seeds[starts[s].second]);
        Vector z(2 * nn + 2 * kk);
        z << x, y, multipliers(x, y - x), multipliers(y, y - x);
        const auto res = detail::damped_newton(lagrange, z, cfg);
        Outcome &out = outcomes[s];
        if (!res.converged) {
            return;
        }
        BottleneckPair p;
        p.x.assign(res.z.data(), res.z.data() + n);
        p.y.assign(res.z.data() + n, res.z.data() + 2 * n);
        p.lambda.assign(res.z.data() + 2 * n, res.z.data() + 2 * n + k);
        p.mu.assign(res.z.data() + 2 * n + k, res.z.data() + 2 * n + 2 * k);
        p.separation = detail::distance(p.x, p.y);
        p.residual = res.residual;
        if (p.separation <= cfg.tau_sep) {
            out.status = Status::diagonal;
            return;
        }
        if (detail::lex_less(p.y, p.x, cfg.tau_cluster)) {
            std::swap(p.x, p.y);
            std::swap(p.lambda, p.mu);
            for (auto *mult : {&p.lambda, &p.mu}) {
                for (double &v : *mult) {
                    v = -v;
                }
            }
        }
        Vector xy(2 * nn);
        xy << to_vector(p.x), to_vector(p.y);
        p.minor_residual = max_abs(verifier.value(xy));
        if (p.minor_residual >= cfg.tau_res) {
            out.status = Status::unverified;
            out.pair = std::move(p);
            return;
        }
        p.isolated = classify_isolation(p, lagrange);
        out.status = Status::accepted;
        out.pair = std::move(p);
    });

    // deterministic sequential merge in start order; continua are thinned at the seed spacing
    std::vector<BottleneckPair> merged;
    for (auto &o : outcomes) {
        switch (o.status) {
        case Status::failed:
            ++report.failed;
            continue;
        case Status::diagonal:
            ++report.converged;
            ++report.diagonal;
            continue;
        case Status::unverified:
            ++report.converged;
            ++report.unverified;
            continue;
        case Status::accepted:
            ++report.converged;
            break;
        }
        auto hit = std::find_if(merged.begin(), merged.end(), [&](const BottleneckPair &q) {
            const double radius = (o.pair.isolated && q.isolated) ? cfg.tau_cluster : spacing;
            return detail::pair_distance(o.pair, q) <= radius;
        });
        if (hit == merged.end()) {
            merged.push_back(std::move(o.pair));
        } else if (o.pair.isolated && !hit->isolated) {
            *hit = std::move(o.pair);
        } else if (o.pair.isolated == hit->isolated && o.pair.residual < hit->residual) {
            *hit = std::move(o.pair);
        }
    }

    std::stable_sort(merged.begin(), merged.end(), [&](const BottleneckPair &a, const BottleneckPair &b) {
        if (std::abs(a.separation - b.separation) > cfg.tau_cluster) {
            return a.separation < b.separation;
        }
        if (detail::lex_less(a.x, b.x, cfg.tau_cluster)) {
            return true;
        }
        if (detail::lex_less(b.x, a.x, cfg.tau_cluster)) {
            return false;
        }
        return detail::lex_less(a.y, b.y, cfg.tau_cluster);
    });
    report.pairs = std::move(merged);
    return report;
}

struct NarrowestBottleneck {
    BottleneckPair pair;
    double separation = 0.0;
    // half the narrowest width bounds the reach from above
    double reach_bound = 0.0;
};

inline NarrowestBottleneck narrowest_bottleneck(const std::vector<BottleneckPair> &pairs)
{
    const BottleneckPair *best = nullptr;
    for (const auto &p : pairs) {
        if (p.isolated && (best == nullptr || p.separation < best->separation)) {
            best = &p;
        }
    }
    if (best == nullptr) {
        throw std::invalid_argument("narrowest_bottleneck: no isolated pairs");
    }
    return {*best, best->separation, best->separation / 2.0};
}

} // namespace bnd

#endif
