#include <cstdio>
#include <string>

#include <bnd/format.hpp>
#include <bnd/regression.hpp>

// One PASS/FAIL line per acceptance criterion; the exit status is nonzero if any fails.

int main()
{
    std::printf("coordinate tolerance %s, axis tolerance %s, solver tau_res %s\n",
                bnd::format_double(bnd::regression::coordinate_tolerance).c_str(),
                bnd::format_double(bnd::regression::axis_tolerance).c_str(),
                bnd::format_double(bnd::SolverConfig{}.tau_res).c_str());
    int failed = 0;
    for (const auto &row : bnd::regression_table()) {
        const auto r = bnd::run_check(row, false);
        failed += r.passed ? 0 : 1;
        std::printf("%s  criterion %-3s %-42s %8.3f s  %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                    r.title.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
