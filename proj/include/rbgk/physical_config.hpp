#pragma once

#include <array>
#include <filesystem>

#include "rbgk/types.hpp"

namespace rbgk {

// Physical and chemical constants of the reacting mixture 1 + 2 <-> 3 + 4.
// All quantities are assumed pre-nondimensionalized; no unit conversion is
// performed. The Boltzmann constant is configurable and defaults to 1.
struct PhysicalConfig {
    std::array<double, kSpecies> mass{};         // m_i
    std::array<double, kSpecies> bond_energy{};  // E_i
    std::array<std::array<double, kSpecies>, kSpecies> chi{};       // interaction coefficients
    std::array<std::array<double, kSpecies>, kSpecies> nu_elastic{};  // microscopic collision frequencies
    double nu1234 = 0.0;  // chemical frequency of the slow-reaction model
    double nu3412 = 0.0;  // chemical frequency of the fast-reaction model
    double tau = 100.0;   // Knudsen number
    double kb = 1.0;      // Boltzmann constant

    // Derived, populated by validate().
    double total_mass = 0.0;  // M = m1 + m2 = m3 + m4
    double delta_e = 0.0;     // energy threshold, positive for the endothermic forward reaction

    double reduced_mass(int i, int j) const {
        return mass[static_cast<std::size_t>(i)] * mass[static_cast<std::size_t>(j)] /
               (mass[static_cast<std::size_t>(i)] + mass[static_cast<std::size_t>(j)]);
    }
    double mu12() const { return reduced_mass(0, 1); }
    double mu34() const { return reduced_mass(2, 3); }

    // Checks every invariant and fills the derived quantities. Throws
    // ConfigError naming the offending field and inequality.
    void validate();
};

// Parses the [species] and [interaction] sections of a config file and returns
// the validated physical configuration.
PhysicalConfig load_config(const std::filesystem::path& path);

}  // namespace rbgk
