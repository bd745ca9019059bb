#pragma once

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "rbgk/phase_grid.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/types.hpp"

namespace rbgk {

// Half-range Maxwellian inflow: drift is restricted to the slab axis, so the
// spec cannot induce transverse wall flow by construction.
struct MaxwellianInflow {
    double density = 1.0;
    double drift_x = 0.0;
    double temperature = 1.0;
};

// Arbitrary nonnegative inflow profile, evaluated at velocity nodes. The zero
// transverse flow condition is verified numerically when tabulated on a grid.
using TabulatedInflow = std::function<double(double v1, double v2, double v3)>;

class InflowSpec {
  public:
    InflowSpec() : spec_(MaxwellianInflow{}) {}
    InflowSpec(MaxwellianInflow m) : spec_(m) {}
    InflowSpec(TabulatedInflow f) : spec_(std::move(f)) {}

    bool parametric() const { return std::holds_alternative<MaxwellianInflow>(spec_); }
    const MaxwellianInflow& maxwellian() const { return std::get<MaxwellianInflow>(spec_); }

    double evaluate(const Vec3& v, double mass, double kb) const;

  private:
    std::variant<MaxwellianInflow, TabulatedInflow> spec_;
};

// Inflow data for all four species at both walls: the left spec feeds v1 > 0,
// the right spec feeds v1 < 0.
struct BoundaryData {
    std::array<InflowSpec, kSpecies> left;
    std::array<InflowSpec, kSpecies> right;
};

// Inflow evaluated on the velocity grid, one array per species and wall.
struct BoundaryTable {
    std::array<std::vector<double>, kSpecies> left;
    std::array<std::vector<double>, kSpecies> right;
};

// Evaluates the inflow at every velocity node and validates nonnegativity,
// finiteness and (for tabulated specs) the zero transverse flow condition.
BoundaryTable tabulate_boundary(const BoundaryData& bd, const PhaseGrid& grid,
                                const PhysicalConfig& cfg);

}  // namespace rbgk
