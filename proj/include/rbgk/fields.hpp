#pragma once

#include <array>
#include <span>
#include <vector>

#include "rbgk/budget.hpp"
#include "rbgk/phase_grid.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/types.hpp"

namespace rbgk {

// The four species distributions tabulated on the phase-space grid,
// stored species-major then spatial-node-major.
class DistributionField {
  public:
    explicit DistributionField(const PhaseGrid& grid);

    const PhaseGrid& grid() const { return *grid_; }

    std::span<double> at(int species, int xj) {
        return {values_.data() + offset(species, xj), grid_->velocity_count()};
    }
    std::span<const double> at(int species, int xj) const {
        return {values_.data() + offset(species, xj), grid_->velocity_count()};
    }

    std::vector<double>& raw() { return values_; }
    const std::vector<double>& raw() const { return values_; }

  private:
    std::size_t offset(int species, int xj) const {
        return (static_cast<std::size_t>(species) * static_cast<std::size_t>(grid_->nodes_x()) +
                static_cast<std::size_t>(xj)) *
               grid_->velocity_count();
    }

    const PhaseGrid* grid_;
    std::vector<double> values_;
};

struct SpeciesMoments {
    double density = 0.0;      // integral of f
    Vec3 velocity{};           // bulk velocity U
    double temperature = 0.0;  // T
    double energy = 0.0;       // integral of |v|^2 f
    double v1_moment = 0.0;    // integral of v1 f
};

struct MomentSet {
    std::array<SpeciesMoments, kSpecies> species{};
    double density = 0.0;       // n
    double mass_density = 0.0;  // rho
    Vec3 velocity{};            // U
    double temperature = 0.0;   // T
};

// Moments of a single species distribution at one spatial node. Throws
// FieldError when the density is nonpositive (degenerate field).
SpeciesMoments species_moments(std::span<const double> f, const PhaseGrid& grid, double mass,
                               double kb);

// Global mixture moments from the per-species moments: n, rho, the
// mass-weighted velocity, and the temperature that absorbs the kinetic energy
// of the velocity spread.
void global_moments(MomentSet& m, const PhysicalConfig& cfg);

// Per-species and global moments at one spatial node.
MomentSet moments_at(const DistributionField& f, int xj, const PhysicalConfig& cfg);

// Velocity-space L1 norm with weight (1 + |v|^2).
double weighted_norm(std::span<const double> f, const PhaseGrid& grid);

// Solver metric: sum over species of the max over spatial nodes of the
// weighted norm of the difference. Throws FieldError on grid mismatch.
double metric_distance(const DistributionField& f, const DistributionField& g);

struct OmegaMargins {
    double positivity = 0.0;    // min of f over the node set
    double density_low = 0.0;   // min over x of (integral f) - a_{i,l}
    double density_high = 0.0;  // min over x of a_{i,u} - (integral f)
    double energy_low = 0.0;    // min over x of (integral |v|^2 f) - c_{i,l}
    double energy_high = 0.0;   // min over x of c_{i,u} - (integral |v|^2 f)
    double schwarz = 0.0;       // min over x of the Cauchy-Schwarz defect minus gamma_min

    double worst() const;
    bool pass() const { return worst() >= 0.0; }
};

struct OmegaReport {
    std::array<OmegaMargins, kSpecies> species{};
    double worst = 0.0;
    bool pass = false;
};

// Checks conditions (A), (B), (C) of the solution space against the budget and
// reports the worst margins; never throws on violation.
OmegaReport omega_membership(const DistributionField& f, const BoundaryBudget& budget);

}  // namespace rbgk
