#pragma once

#include <array>
#include <utility>

#include "rbgk/fields.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/types.hpp"

namespace rbgk {

struct RootDiagnostics {
    double lower = 0.0;     // constraint bracket endpoints
    double upper = 0.0;
    double residual = 0.0;  // |L(root) - target| at exit
    int iterations = 0;
    int bisection_steps = 0;
};

// Reactive Maxwellian parameters of the fast-reaction model: per-species
// densities tied by the linear exchange relations, one shared velocity and
// temperature.
struct FastEquilibrium {
    std::array<double, kSpecies> frequency{};  // nu~_i
    std::array<double, kSpecies> density{};    // n~_i
    Vec3 velocity{};                           // U~
    double temperature = 0.0;                  // T~
    RootDiagnostics root;
};

std::array<double, kSpecies> fast_frequencies(const MomentSet& m, const PhysicalConfig& cfg);

// Frequency-mass weighted mixture velocity U~.
Vec3 fast_mixture_velocity(const MomentSet& m, const std::array<double, kSpecies>& nu,
                           const PhysicalConfig& cfg);

// The affine temperature map F(x): the shared temperature the mixture takes if
// the reactive density of species 1 equals x. Strictly increasing in x.
double fast_temperature_of(double x, const MomentSet& m, const std::array<double, kSpecies>& nu,
                           const Vec3& u_mix, const PhysicalConfig& cfg);

// Open interval of candidate n~_1 values keeping every reactive density and
// the shared temperature positive; always contains n^(1).
std::pair<double, double> fast_constraint_bracket(const MomentSet& m,
                                                  const std::array<double, kSpecies>& nu,
                                                  const Vec3& u_mix, const PhysicalConfig& cfg);

// Unique root of the mass-action balance equation inside the constraint
// bracket, solved on the log-form objective with bisection plus safeguarded
// Newton. tol bounds the final |L(root) - target|.
double fast_solve_n1(const MomentSet& m, const std::array<double, kSpecies>& nu, const Vec3& u_mix,
                     const PhysicalConfig& cfg, double tol, int max_iter,
                     RootDiagnostics* diag = nullptr);

// Assembles the remaining densities and the shared temperature from a root.
FastEquilibrium fast_parameters(const MomentSet& m, const std::array<double, kSpecies>& nu,
                                double n1, const PhysicalConfig& cfg);

// Full pipeline: frequencies, mixture velocity, root solve, assembly.
FastEquilibrium fast_equilibrium(const MomentSet& m, const PhysicalConfig& cfg, double tol = 1e-12,
                                 int max_iter = 200);

// ---------------------------------------------------------------------------
// Generalized log-form machinery. The balance equation in log form is
//   L(z) = a0 + log z + log(b0 + b1 z) - log(c0 - b1 z) - log(d0 - b1 z)
//          - e0 / (g0 + g1 z) = target,
// strictly increasing on the open interval where all arguments are positive
// and surjective onto the reals there.
struct LogFormCoefficients {
    double a0 = 0.0;
    double b0 = 0.0, b1 = 0.0;
    double c0 = 0.0, d0 = 0.0;
    double e0 = 0.0, g0 = 0.0, g1 = 0.0;

    double lower() const;  // max of the lower domain constraints
    double upper() const;  // min of the upper domain constraints
};

// Argument groups of the generalized functional: densities in the x and y
// slots, frequencies in the mu and eta slots, temperatures alpha, and relative
// speed magnitudes beta.
struct LogFormArgs {
    std::array<double, kSpecies> x{}, y{}, mu{}, eta{}, alpha{}, beta{};
};

LogFormCoefficients log_form_coefficients(const LogFormArgs& args, const PhysicalConfig& cfg);
double log_form_value(const LogFormCoefficients& c, double z);
double log_form_slope(const LogFormCoefficients& c, double z);

// Right-hand side of the balance equation in log form.
double balance_target(const PhysicalConfig& cfg);

double solve_log_form(const LogFormCoefficients& c, double target, double tol, int max_iter,
                      RootDiagnostics* diag = nullptr);

}  // namespace rbgk
