#ifndef BND_IO_HPP
#define BND_IO_HPP

#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <bnd/bnd_engine.hpp>
#include <bnd/format.hpp>
#include <bnd/profiles.hpp>
#include <bnd/real_solver.hpp>
#include <bnd/regression.hpp>

namespace bnd::io
{

using json = nlohmann::ordered_json;

// Integers are emitted as JSON numbers when they fit in 64 bits, as strings otherwise.
inline json integer_json(const Integer &v)
{
    if (v >= Integer(std::numeric_limits<std::int64_t>::min()) && v <= Integer(std::numeric_limits<std::int64_t>::max())) {
        return static_cast<std::int64_t>(v);
    }
    return to_string(v);
}

inline json to_json(const VarietySpec &spec)
{
    return {{"ambient", spec.ambient},
            {"degrees", spec.degrees},
            {"affine", spec.affine},
            {"assume_general_position", spec.assume_general_position}};
}

inline json to_json(const PolarProfile &profile)
{
    json j;
    if (profile.source) {
        j["ambient"] = profile.source->ambient;
        j["degrees"] = profile.source->degrees;
    } else {
        j["ambient"] = nullptr;
        j["degrees"] = nullptr;
    }
    j["m"] = profile.m;
    j["fundamental_degree"] = integer_json(profile.fundamental_degree);
    json polar = json::array();
    for (const auto &d : polar_degrees(profile)) {
        polar.push_back(integer_json(d));
    }
    j["polar_degrees"] = polar;
    return j;
}

inline PolarProfile profile_from_json(const json &j)
{
    const int m = j.at("m").get<int>();
    if (j.contains("ambient") && !j.at("ambient").is_null() && j.contains("degrees") && !j.at("degrees").is_null()) {
        VarietySpec spec{j.at("ambient").get<int>(), j.at("degrees").get<std::vector<int>>(), false};
        auto p = ci_profile(spec);
        if (p.m != m) {
            throw std::invalid_argument("profile JSON: m does not match ambient and degrees");
        }
        return p;
    }
    std::vector<Integer> degrees;
    for (const auto &d : j.at("polar_degrees")) {
        degrees.emplace_back(d.is_string() ? Integer(d.get<std::string>()) : Integer(d.get<std::int64_t>()));
    }
    return manual_profile(m, degrees);
}

inline json to_json(const EpsilonVector &eps)
{
    json a = json::array();
    for (const auto &v : eps.values) {
        a.push_back(integer_json(v));
    }
    return a;
}

inline json to_json(const BFormula &b) { return {{"m", b.m}, {"n", b.n}, {"formula", b.poly.str()}}; }

inline json to_json(const BottleneckPair &p)
{
    return {{"x", p.x},
            {"y", p.y},
            {"separation", p.separation},
            {"residual", p.residual},
            {"minor_residual", p.minor_residual},
            {"isolated", p.isolated},
            {"lambda", p.lambda},
            {"mu", p.mu}};
}

inline json to_json(const SolveReport &r)
{
    json pairs = json::array();
    for (const auto &p : r.pairs) {
        pairs.push_back(to_json(p));
    }
    json j{{"pairs", pairs},
           {"isolated_pairs", r.isolated_count()},
           {"possibly_incomplete", r.possibly_incomplete},
           {"stats",
            {{"samples", r.samples},
             {"starts", r.starts},
             {"converged", r.converged},
             {"failed", r.failed},
             {"diagonal", r.diagonal},
             {"unverified", r.unverified}}}};
    return j;
}

inline json to_json(const CheckResult &r)
{
    return {{"id", r.id},
            {"title", r.title},
            {"passed", r.passed},
            {"skipped", r.skipped},
            {"seconds", r.seconds},
            {"detail", r.detail}};
}

inline void write_pair_table(const SolveReport &r, std::ostream &out)
{
    out << "#  separation      isolated  x  ->  y\n";
    std::size_t i = 1;
    for (const auto &p : r.pairs) {
        out << i++ << "  " << format_double(p.separation, 12) << "  " << (p.isolated ? "yes" : "no ") << "  "
            << format_point(p.x, 12) << "  ->  " << format_point(p.y, 12) << '\n';
    }
    out << r.pairs.size() << " pairs (" << r.isolated_count() << " isolated); search is heuristic and may be incomplete\n";
}

// One "segment" line per pair: isolated flag, then the coordinates of x and of y.
inline void write_plot_data(const SolveReport &r, std::ostream &out)
{
    out << "# segment <isolated> <x coordinates> <y coordinates>\n";
    for (const auto &p : r.pairs) {
        out << "segment " << (p.isolated ? 1 : 0);
        for (double v : p.x) {
            out << ' ' << format_double(v);
        }
        for (double v : p.y) {
            out << ' ' << format_double(v);
        }
        out << '\n';
    }
}

inline void write_plot_data(const SolveReport &r, const std::string &path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_plot_data(r, out);
}

} // namespace bnd::io

#endif
