#pragma once

#include <array>
#include <functional>
#include <random>
#include <utility>

#include "rbgk/budget.hpp"
#include "rbgk/fields.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/types.hpp"

// Test-only reference machinery, kept independent of the library's evaluation
// paths: generic adaptive quadrature and direct transliterations of the model
// formulas used to cross-check the production implementations.
namespace oracle {

// Adaptive Simpson quadrature on [a, b] to the given absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

// Upper incomplete gamma of first argument 3/2 by direct tail integration.
double incomplete_gamma_32(double x);

// Moments of an isotropic Maxwellian with drift along the first axis,
// truncated to the grid box, via tensorized adaptive quadrature. Returns
// {mass, v1 moment, energy moment}.
struct GaussianMoments {
    double mass;
    double momentum_x;
    double energy;
};
GaussianMoments maxwellian_box_moments(double n, double u, double t, double mass, double kb,
                                       double vmax);

// Direct transliterations of the equilibrium definitions (independent
// reimplementation used only to cross-check).
std::array<double, 4> slow_frequencies_ref(const rbgk::MomentSet& m, const rbgk::PhysicalConfig& cfg);
double reaction_source_ref(const rbgk::MomentSet& m, const rbgk::PhysicalConfig& cfg);
struct SlowParamsRef {
    std::array<double, 4> density;
    std::array<rbgk::Vec3, 4> velocity;
    std::array<double, 4> temperature;
};
SlowParamsRef slow_parameters_ref(const rbgk::MomentSet& m, const std::array<double, 4>& nu,
                                  double source, const rbgk::PhysicalConfig& cfg);

std::array<double, 4> fast_frequencies_ref(const rbgk::MomentSet& m, const rbgk::PhysicalConfig& cfg);
double fast_temperature_ref(double x, const rbgk::MomentSet& m, const std::array<double, 4>& nu,
                            const rbgk::Vec3& u_mix, const rbgk::PhysicalConfig& cfg);

// Ratio-form left side of the balance equation, evaluated directly as printed.
double balance_ratio_ref(double z, const rbgk::MomentSet& m, const std::array<double, 4>& nu,
                         const rbgk::Vec3& u_mix, const rbgk::PhysicalConfig& cfg);

// Draws moment sets consistent with the budget brackets: densities inside
// [a_l, a_u], energies inside [c_l, c_u], Cauchy-Schwarz defect above gamma.
rbgk::MomentSet sample_admissible_moments(const rbgk::BoundaryBudget& budget,
                                          const rbgk::PhysicalConfig& cfg, std::mt19937_64& rng);

}  // namespace oracle
