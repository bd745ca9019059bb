#include "rbgk/boundary.hpp"

#include <cmath>
#include <string>

#include "rbgk/errors.hpp"
#include "rbgk/maxwellian.hpp"

namespace rbgk {

double InflowSpec::evaluate(const Vec3& v, double mass, double kb) const {
    if (const auto* m = std::get_if<MaxwellianInflow>(&spec_)) {
        return rbgk::maxwellian(m->density, Vec3{m->drift_x, 0.0, 0.0}, m->temperature, mass, kb,
                                v);
    }
    return std::get<TabulatedInflow>(spec_)(v.x, v.y, v.z);
}

namespace {

std::vector<double> evaluate_on_grid(const InflowSpec& spec, const PhaseGrid& grid, double mass,
                                     double kb, int species, const char* wall) {
    std::vector<double> out(grid.velocity_count());
    auto v1 = grid.v1();
    auto v2 = grid.v2();
    auto v3 = grid.v3();
    for (std::size_t k = 0; k < out.size(); ++k) {
        double val = spec.evaluate({v1[k], v2[k], v3[k]}, mass, kb);
        if (!std::isfinite(val)) {
            throw ConfigError(std::string("boundary: non-finite inflow value for species ") +
                              std::to_string(species + 1) + " at the " + wall + " wall");
        }
        if (val < 0.0) {
            throw ConfigError(std::string("boundary: negative inflow value for species ") +
                              std::to_string(species + 1) + " at the " + wall + " wall");
        }
        out[k] = val;
    }
    return out;
}

// Zero transverse flow for tabulated inflow, checked on the relevant half range
// to quadrature tolerance relative to the inflow mass scale.
void check_transverse_flow(const std::vector<double>& vals, const PhaseGrid& grid, bool left,
                           int species, const char* wall) {
    auto v1 = grid.v1();
    auto v2 = grid.v2();
    auto v3 = grid.v3();
    double fy = 0.0, fz = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        bool in_range = left ? (v1[k] > 0.0) : (v1[k] < 0.0);
        if (!in_range) continue;
        fy += vals[k] * v2[k];
        fz += vals[k] * v3[k];
        scale += vals[k] * (1.0 + std::abs(v2[k]) + std::abs(v3[k]));
    }
    double tol = 1e-9 * (scale > 0.0 ? scale : 1.0);
    if (std::abs(fy) > tol || std::abs(fz) > tol) {
        throw ConfigError(std::string("boundary: tabulated inflow for species ") +
                          std::to_string(species + 1) + " at the " + wall +
                          " wall induces transverse flow (integrals " + std::to_string(fy * grid.cell_weight()) +
                          ", " + std::to_string(fz * grid.cell_weight()) + ")");
    }
}

}  // namespace

BoundaryTable tabulate_boundary(const BoundaryData& bd, const PhaseGrid& grid,
                                const PhysicalConfig& cfg) {
    BoundaryTable table;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        table.left[si] = evaluate_on_grid(bd.left[si], grid, cfg.mass[si], cfg.kb, i, "left");
        table.right[si] = evaluate_on_grid(bd.right[si], grid, cfg.mass[si], cfg.kb, i, "right");
        if (!bd.left[si].parametric()) check_transverse_flow(table.left[si], grid, true, i, "left");
        if (!bd.right[si].parametric()) check_transverse_flow(table.right[si], grid, false, i, "right");
    }
    return table;
}

}  // namespace rbgk
