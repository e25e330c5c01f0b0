#ifndef BND_CATALOG_HPP
#define BND_CATALOG_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <bnd/bn_system.hpp>
#include <bnd/real_solver.hpp>

// Explicit low-degree varieties with known real bottlenecks.

namespace bnd
{

struct CatalogEntry {
    std::string name;
    std::string description;
    Polynomial::VarList variables;
    std::vector<std::string> equations;
    double box_half_width = 4.0;

    PolySystem system() const { return make_input_system(variables, equations); }

    SolverConfig solver_config() const
    {
        SolverConfig cfg;
        cfg.box = {{-box_half_width, box_half_width}};
        return cfg;
    }
};

inline const std::vector<CatalogEntry> &catalog()
{
    static const std::vector<CatalogEntry> entries{
        {"ellipse", "ellipse x^2 + y^2/2 = 1", {"x", "y"}, {"x^2 + y^2/2 - 1"}, 2.0},
        {"ellipsoid", "ellipsoid 36x^2 + 9y^2 + 4z^2 = 36", {"x", "y", "z"}, {"36*x^2 + 9*y^2 + 4*z^2 - 36"}, 4.0},
        {"spheroid", "spheroid 4x^2 + y^2 + z^2 = 4", {"x", "y", "z"}, {"4*x^2 + y^2 + z^2 - 4"}, 3.0},
        {"quartic",
         "plane quartic x^4 + y^4 + 1 - 4y - x^2y^2 - 4x^2 - x - 2y^2 = 0",
         {"x", "y"},
         {"x^4 + y^4 + 1 - 4*y - x^2*y^2 - 4*x^2 - x - 2*y^2"},
         3.0},
        {"space_curve",
         "sextic space curve x^3 - 3xy^2 - z = x^2 + y^2 + 3z^2 - 1 = 0",
         {"x", "y", "z"},
         {"x^3 - 3*x*y^2 - z", "x^2 + y^2 + 3*z^2 - 1"},
         1.5},
        {"trott",
         "Trott quartic 144(x^4 + y^4) - 225(x^2 + y^2) + 350x^2y^2 + 81 = 0",
         {"x1", "x2"},
         {"144*(x1^4 + x2^4) - 225*(x1^2 + x2^2) + 350*x1^2*x2^2 + 81"},
         1.5},
    };
    return entries;
}

inline const CatalogEntry &catalog_entry(const std::string &name)
{
    for (const auto &e : catalog()) {
        if (e.name == name) {
            return e;
        }
    }
    throw std::invalid_argument("unknown catalog variety '" + name + "'");
}

} // namespace bnd

#endif
