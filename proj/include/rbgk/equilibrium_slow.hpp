#pragma once

#include <array>

#include "rbgk/fields.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/types.hpp"

namespace rbgk {

// Reactive Maxwellian parameters of the slow-reaction model. The collision
// frequencies satisfy nu_i (n_i - n^(i)) = lambda_i * source as an algebraic
// identity of the construction.
struct SlowEquilibrium {
    std::array<double, kSpecies> frequency{};    // nu_i
    double source = 0.0;                         // reaction exchange rate S
    std::array<double, kSpecies> density{};      // n_i
    std::array<Vec3, kSpecies> velocity{};       // U_i
    std::array<double, kSpecies> temperature{};  // T_i
};

// Collision frequencies: elastic part plus the threshold-weighted chemical
// part; species 3 and 4 carry the (mu12/mu34)^{3/2} e^{dE/kT} factor.
std::array<double, kSpecies> slow_frequencies(const MomentSet& m, const PhysicalConfig& cfg);

// Net reaction exchange rate; vanishes at mass-action balance and whenever the
// chemical frequency is zero.
double reaction_source(const MomentSet& m, const PhysicalConfig& cfg);

// Reactive densities, velocities, and temperatures. Throws
// EquilibriumBreakdown naming the species when a density or temperature comes
// out nonpositive (the chemical frequency is too large for these moments).
SlowEquilibrium slow_parameters(const MomentSet& m, const std::array<double, kSpecies>& nu,
                                double source, const PhysicalConfig& cfg);

}  // namespace rbgk
