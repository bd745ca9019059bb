#pragma once

#include <array>

#include "rbgk/boundary.hpp"
#include "rbgk/phase_grid.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/types.hpp"

namespace rbgk {

// Wall budget constants computed from the inflow data. They parameterize the
// solution space: species densities must stay in [a_lower, a_upper], energies
// in [c_lower, c_upper], and gamma_min bounds the Cauchy-Schwarz defect that
// keeps temperatures positive. The _sing quantities carry the singular 1/|v1|
// weight; they are reported for reference and are grid-dependent for inflow
// without a vanishing-v1 factor.
struct BoundaryBudget {
    std::array<double, kSpecies> a_upper{};   // a_{i,u}
    std::array<double, kSpecies> a_sing{};    // a_{i,s}
    std::array<double, kSpecies> a_lower{};   // a_{i,l} = a_{i,u}/8
    std::array<double, kSpecies> c_upper{};   // c_{i,u}
    std::array<double, kSpecies> c_sing{};    // c_{i,s}
    std::array<double, kSpecies> c_lower{};   // c_{i,l} = c_{i,u}/8
    std::array<double, kSpecies> gamma_lower{};  // gamma_{i,l}

    double a_max = 0.0;      // max_i a_{i,u}
    double a_min = 0.0;      // min_i a_{i,l}
    double c_max = 0.0;      // max_i c_{i,u}
    double c_min = 0.0;      // min_i c_{i,l}
    double gamma_min = 0.0;  // min_i gamma_{i,l}

    double temp_lower = 0.0;  // min_i m_i gamma_min / (3 k a_{i,u}^2)
    double temp_upper = 0.0;  // (c_max / (12 k a_min)) sum_i m_i
};

// Evaluates every budget integral with the grid quadrature. Throws ConfigError
// if any quantity comes out nonpositive or non-finite, which signals inflow
// data too degenerate for the grid.
BoundaryBudget compute_boundary_budget(const BoundaryTable& table, const PhysicalConfig& cfg,
                                       const PhaseGrid& grid);

}  // namespace rbgk
