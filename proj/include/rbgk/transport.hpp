#pragma once

#include <array>
#include <vector>

#include "rbgk/boundary.hpp"
#include "rbgk/fields.hpp"
#include "rbgk/phase_grid.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/types.hpp"

namespace rbgk {

// Collision frequencies at the spatial nodes together with their cumulative
// integral N_i(x_j), accumulated by the trapezoid rule (N is linear inside
// each cell, which makes the cell attenuation exact).
struct FrequencyProfile {
    std::array<std::vector<double>, kSpecies> values;
    std::array<std::vector<double>, kSpecies> cumulative;
};

FrequencyProfile make_frequency_profile(const std::array<std::vector<double>, kSpecies>& nu_nodes,
                                        const PhaseGrid& grid);

// Reactive Maxwellian parameters per species and spatial node. For the
// fast-reaction model the velocity and temperature entries repeat the shared
// values across species.
struct EquilibriumProfile {
    std::array<std::vector<double>, kSpecies> density;
    std::array<std::vector<Vec3>, kSpecies> velocity;
    std::array<std::vector<double>, kSpecies> temperature;
};

// One application of the mild-solution operator: boundary data attenuated by
// the accumulated collision frequency plus the reactive Maxwellian source
// integrated exactly over each cell (piecewise-constant source at the cell
// midpoint parameters). Output is nonnegative whenever the inputs are.
DistributionField apply_mild_operator(const BoundaryTable& bd, const EquilibriumProfile& eq,
                                      const FrequencyProfile& freq, const PhaseGrid& grid,
                                      const PhysicalConfig& cfg, double tau, int threads = 0);

// Metric defect d(f, Phi f) for the operator assembled from the given
// equilibrium and frequencies; zero exactly when f is a discrete fixed point.
double mild_residual(const DistributionField& f, const BoundaryTable& bd,
                     const EquilibriumProfile& eq, const FrequencyProfile& freq,
                     const PhysicalConfig& cfg, double tau, int threads = 0);

}  // namespace rbgk
