#ifndef BND_CLI_HPP
#define BND_CLI_HPP

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <bnd/bn_system.hpp>
#include <bnd/bnd_engine.hpp>
#include <bnd/catalog.hpp>
#include <bnd/format.hpp>
#include <bnd/io.hpp>
#include <bnd/profiles.hpp>
#include <bnd/real_solver.hpp>
#include <bnd/regression.hpp>

namespace bnd::cli
{

enum ExitCode : int { success = 0, failure = 1, usage = 2 };

class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct VarietyOptions {
    int ambient = 0;
    std::vector<int> degrees;
    bool affine = false;
    std::string profile_path;

    void add_to(CLI::App &cmd, bool with_affine)
    {
        cmd.add_option("--ambient,-n", ambient, "ambient dimension n")->required();
        cmd.add_option("--degrees,-d", degrees, "hypersurface degrees d1,...,dk")->delimiter(',');
        cmd.add_option("--profile", profile_path, "JSON profile {m, polar_degrees} instead of --degrees");
        if (with_affine) {
            cmd.add_flag("--affine", affine, "treat the input as an affine variety in C^n");
        }
    }

    VarietySpec spec() const
    {
        if (degrees.empty()) {
            throw UsageError("--degrees is required");
        }
        VarietySpec s{ambient, degrees, affine};
        if (ambient < 1) {
            throw UsageError("--ambient must be positive");
        }
        for (int d : degrees) {
            if (d < 1) {
                throw UsageError("degrees must be at least 1");
            }
        }
        if (s.dim() < 1) {
            throw UsageError("the variety must have positive dimension: " + s.str());
        }
        return s;
    }

    PolarProfile profile() const
    {
        if (profile_path.empty()) {
            return ci_profile(spec());
        }
        if (!degrees.empty()) {
            throw UsageError("--profile and --degrees are mutually exclusive");
        }
        if (affine) {
            throw UsageError("--affine needs --degrees; manual profiles describe projective varieties");
        }
        std::ifstream in(profile_path);
        if (!in) {
            throw std::runtime_error("cannot open '" + profile_path + "'");
        }
        const auto j = io::json::parse(in);
        auto p = io::profile_from_json(j);
        if (p.m >= ambient) {
            throw UsageError("profile dimension must be below --ambient");
        }
        return p;
    }
};

inline void print_json(std::ostream &out, const io::json &j) { out << j.dump(2) << '\n'; }

inline int cmd_formula(int m, int n, std::optional<int> stability_to, bool as_json, std::ostream &out)
{
    if (m < 1 || m >= n) {
        throw UsageError("need 0 < --dim < --ambient, got dim " + std::to_string(m) + ", ambient " + std::to_string(n));
    }
    if (stability_to && *stability_to < n) {
        throw UsageError("--stability must be at least --ambient");
    }
    const auto b = compute_B(m, n);
    io::json j = io::to_json(b);
    std::optional<StabilityReport> report;
    if (stability_to) {
        report = ambient_stability(m, n, *stability_to);
        io::json rows = io::json::array();
        for (const auto &[k, poly] : report->formulas) {
            rows.push_back({{"n", k}, {"formula", poly.str()}});
        }
        j["stability"] = {{"from", n}, {"to", *stability_to}, {"stable", report->stable}, {"formulas", rows}};
    }
    if (as_json) {
        print_json(out, j);
        return success;
    }
    out << b.poly.str() << '\n';
    if (report) {
        for (const auto &[k, poly] : report->formulas) {
            out << "n=" << k << ": " << poly.str() << '\n';
        }
        out << (report->stable ? "stable" : "not stable") << " for " << n << " <= n <= " << *stability_to << '\n';
    }
    return success;
}

inline int cmd_bnd(const VarietyOptions &opt, bool as_json, std::ostream &out)
{
    const PolarProfile profile = opt.profile();
    io::json j;
    Integer value;
    if (opt.affine) {
        const auto spec = opt.spec();
        const auto a = bnd_affine(spec);
        value = a.affine;
        j["variety"] = spec.str();
        j["bnd"] = io::integer_json(a.affine);
        j["projective_closure"] = io::integer_json(a.projective);
        j["at_infinity"] = io::integer_json(a.at_infinity);
        j["section_is_points"] = a.section_is_points;
    } else {
        const auto b = compute_B(profile.m, opt.ambient);
        value = bnd_projective(b, profile);
        if (profile.source) {
            j["variety"] = profile.source->str();
        }
        j["bnd"] = io::integer_json(value);
        j["formula"] = b.poly.str();
        j["epsilon"] = io::to_json(epsilon_terms(profile.m, opt.ambient, polar_degrees(profile)));
    }
    j["profile"] = io::to_json(profile);
    j["assume_general_position"] = true;
    if (as_json) {
        print_json(out, j);
    } else {
        out << to_string(value) << '\n';
    }
    return success;
}

inline int cmd_edd(const VarietyOptions &opt, bool as_json, std::ostream &out)
{
    const PolarProfile profile = opt.profile();
    Integer eps0 = 0;
    for (const auto &d : polar_degrees(profile)) {
        eps0 += d;
    }
    if (as_json) {
        print_json(out, {{"edd", io::integer_json(eps0)}, {"profile", io::to_json(profile)}});
    } else {
        out << to_string(eps0) << '\n';
    }
    return success;
}

inline PolySystem load_input(const std::string &path, const std::string &catalog_name)
{
    if (!path.empty() && !catalog_name.empty()) {
        throw UsageError("--input and --catalog are mutually exclusive");
    }
    if (!catalog_name.empty()) {
        try {
            return catalog_entry(catalog_name).system();
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    if (path.empty()) {
        throw UsageError("one of --input or --catalog is required");
    }
    return parse_system_file(path);
}

inline int cmd_system(const PolySystem &input, const std::string &form, std::optional<int> dim,
                      const std::string &output, bool as_json, std::ostream &out)
{
    PolySystem sys;
    if (form == "minor") {
        const int n = static_cast<int>(input.nvars());
        const int m = dim.value_or(n - static_cast<int>(input.polynomials.size()));
        if (m < 0 || m >= n) {
            throw UsageError("dimension m must satisfy 0 <= m < n");
        }
        sys = build_minor_system(input.polynomials, m);
    } else if (form == "lagrange") {
        sys = build_lagrange_system(input.polynomials);
    } else {
        throw UsageError("--form must be 'minor' or 'lagrange'");
    }
    if (!output.empty()) {
        emit(sys, output);
    }
    if (as_json) {
        io::json polys = io::json::array();
        for (const auto &p : sys.polynomials) {
            polys.push_back(p.str());
        }
        print_json(out, {{"variables", *sys.variables},
                         {"n", sys.meta.n},
                         {"k", sys.meta.k},
                         {"m", sys.meta.m},
                         {"formulation", sys.meta.formulation},
                         {"polynomials", polys}});
    } else if (output.empty()) {
        emit(sys, out);
    } else {
        out << sys.polynomials.size() << " equations in " << sys.nvars() << " variables written to " << output << '\n';
    }
    return success;
}

inline std::vector<std::pair<double, double>> parse_box(const std::vector<double> &values)
{
    if (values.empty() || values.size() % 2 != 0) {
        throw UsageError("--box expects lo,hi or lo1,hi1,...,lon,hin");
    }
    std::vector<std::pair<double, double>> box;
    for (std::size_t i = 0; i < values.size(); i += 2) {
        box.emplace_back(values[i], values[i + 1]);
    }
    return box;
}

struct SolveOptions {
    std::string input;
    std::string catalog_name;
    std::vector<double> box;
    SolverConfig config;
    std::string plot_path;
    std::string output_path;
    bool table = false;
};

inline int cmd_solve(SolveOptions opt, bool as_json, std::ostream &out)
{
    const PolySystem sys = load_input(opt.input, opt.catalog_name);
    const std::size_t n = sys.nvars();
    const std::size_t k = sys.polynomials.size();
    if (k < 1 || k > 2 || k >= n) {
        throw UsageError("the solver handles one or two equations defining a positive-dimensional variety");
    }
    if (!opt.box.empty()) {
        opt.config.box = parse_box(opt.box);
    } else if (!opt.catalog_name.empty()) {
        opt.config.box = catalog_entry(opt.catalog_name).solver_config().box;
    }
    try {
        opt.config.validate(n);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }

    const SolveReport report = find_bottlenecks(sys.polynomials, opt.config);

    io::json j = io::to_json(report);
    VarietySpec generic{static_cast<int>(n), {}, true};
    for (const auto &p : sys.polynomials) {
        generic.degrees.push_back(p.total_degree());
    }
    std::optional<Integer> bound;
    if (std::all_of(generic.degrees.begin(), generic.degrees.end(), [](int d) { return d >= 1; })) {
        bound = bnd_affine(generic).affine / 2;
        j["generic_complex_bound"] = io::integer_json(*bound);
    }
    std::optional<NarrowestBottleneck> narrow;
    if (report.isolated_count() > 0) {
        narrow = narrowest_bottleneck(report.pairs);
        j["narrowest"] = {{"x", narrow->pair.x},
                          {"y", narrow->pair.y},
                          {"separation", narrow->separation},
                          {"reach_bound", narrow->reach_bound}};
    }
    if (!opt.plot_path.empty()) {
        io::write_plot_data(report, opt.plot_path);
    }
    if (!opt.output_path.empty()) {
        std::ofstream f(opt.output_path);
        if (!f) {
            throw std::runtime_error("cannot open '" + opt.output_path + "' for writing");
        }
        f << j.dump(2) << '\n';
    }
    if (as_json) {
        print_json(out, j);
        return success;
    }
    io::write_pair_table(report, out);
    if (narrow) {
        out << "narrowest bottleneck: separation " << format_double(narrow->separation, 12) << ", reach <= "
            << format_double(narrow->reach_bound, 12) << '\n';
    }
    if (bound) {
        out << "complex bound for generic equations of these degrees: " << to_string(*bound) << " pairs\n";
    }
    return success;
}

inline int cmd_check(bool fast, bool as_json, std::ostream &out)
{
    bool all = true;
    io::json rows = io::json::array();
    for (const auto &row : regression_table()) {
        const auto r = run_check(row, fast);
        all = all && r.passed;
        if (as_json) {
            rows.push_back(io::to_json(r));
            continue;
        }
        out << (r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title;
        if (!r.skipped) {
            out << "  (" << format_double(r.seconds, 3) << " s)  " << r.detail;
        }
        out << '\n' << std::flush;
    }
    if (as_json) {
        print_json(out, {{"passed", all}, {"rows", rows}});
    }
    return all ? success : failure;
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Bottleneck degrees from polar classes, bottleneck systems and real bottlenecks", "bnd"};
    app.require_subcommand(1);
    bool as_json = false;

    int dim = 0;
    int ambient = 0;
    std::optional<int> stability;
    auto *formula = app.add_subcommand("formula", "print the polynomial B_{m,n}");
    formula->add_option("--dim,-m", dim, "dimension m")->required();
    formula->add_option("--ambient,-n", ambient, "ambient dimension n")->required();
    formula->add_option("--stability", stability, "also compare B_{m,k} for ambient <= k <= this bound");
    formula->add_flag("--json", as_json, "JSON output");

    VarietyOptions bnd_opt;
    auto *bnd = app.add_subcommand("bnd", "bottleneck degree of a complete intersection");
    bnd_opt.add_to(*bnd, true);
    bnd->add_flag("--json", as_json, "JSON output");

    VarietyOptions edd_opt;
    auto *edd = app.add_subcommand("edd", "Euclidean distance degree eps_0");
    edd_opt.add_to(*edd, false);
    edd->add_flag("--json", as_json, "JSON output");

    std::string sys_input;
    std::string sys_catalog;
    std::string sys_form = "minor";
    std::string sys_output;
    std::optional<int> sys_dim;
    auto *system = app.add_subcommand("system", "build the bottleneck equations of an explicit variety");
    system->add_option("--input,-i", sys_input, "system file with the defining equations");
    system->add_option("--catalog", sys_catalog, "built-in variety instead of --input");
    system->add_option("--form", sys_form, "minor or lagrange")->check(CLI::IsMember({"minor", "lagrange"}));
    system->add_option("--dim,-m", sys_dim, "variety dimension (default: variables minus equations)");
    system->add_option("--output,-o", sys_output, "write the system here instead of standard output");
    system->add_flag("--json", as_json, "JSON output");

    SolveOptions solve_opt;
    auto *solve = app.add_subcommand("solve", "find real bottleneck pairs by multistart Newton iteration");
    solve->add_option("--input,-i", solve_opt.input, "system file with the defining equations");
    solve->add_option("--catalog", solve_opt.catalog_name, "built-in variety instead of --input");
    solve->add_option("--box", solve_opt.box, "search box lo,hi or lo1,hi1,...")->delimiter(',');
    solve->add_option("--density", solve_opt.config.density, "grid nodes per axis");
    solve->add_option("--seed", solve_opt.config.seed, "random seed");
    solve->add_option("--max-iter", solve_opt.config.max_iterations, "Newton iteration cap");
    solve->add_option("--halvings", solve_opt.config.max_halvings, "step halvings per iteration");
    solve->add_option("--tau-res", solve_opt.config.tau_res, "residual tolerance");
    solve->add_option("--tau-cluster", solve_opt.config.tau_cluster, "cluster radius");
    solve->add_option("--tau-sep", solve_opt.config.tau_sep, "minimum separation");
    solve->add_option("--spacing", solve_opt.config.start_spacing, "minimum distance between start points");
    solve->add_option("--threads", solve_opt.config.threads, "worker threads (default BND_THREADS or all cores)");
    solve->add_option("--plot", solve_opt.plot_path, "write segment data for plotting");
    solve->add_option("--output,-o", solve_opt.output_path, "write the JSON report here");
    solve->add_flag("--json", as_json, "JSON output");

    bool fast = false;
    auto *check = app.add_subcommand("check", "run the regression table");
    check->add_flag("--fast", fast, "skip the numeric solver rows");
    check->add_flag("--json", as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : usage;
    }

    try {
        if (*formula) {
            return cmd_formula(dim, ambient, stability, as_json, out);
        }
        if (*bnd) {
            return cmd_bnd(bnd_opt, as_json, out);
        }
        if (*edd) {
            return cmd_edd(edd_opt, as_json, out);
        }
        if (*system) {
            return cmd_system(load_input(sys_input, sys_catalog), sys_form, sys_dim, sys_output, as_json, out);
        }
        if (*solve) {
            return cmd_solve(solve_opt, as_json, out);
        }
        if (*check) {
            return cmd_check(fast, as_json, out);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return failure;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return usage;
}

} // namespace bnd::cli

#endif
