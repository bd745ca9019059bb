#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rbgk/boundary.hpp"
#include "rbgk/budget.hpp"
#include "rbgk/fields.hpp"
#include "rbgk/phase_grid.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/transport.hpp"

namespace rbgk {

enum class Model { Slow, Fast };

const char* model_name(Model m);

struct SolverOptions {
    double tolerance = 1e-10;      // stop when d(f^{k+1}, f^k) drops below this
    int max_iterations = 500;
    double relaxation = 1.0;       // optional under-relaxation in (0, 1]
    int threads = 0;               // 0: use available parallelism
    double root_tolerance = 1e-12;  // fast-model balance residual
    int root_max_iterations = 200;
};

enum class SolveStatus { Converged, MaxIterations, Diverged };

struct RootSweepStats {
    double worst_residual = 0.0;
    int max_iterations = 0;
};

struct SolveReport {
    Model model = Model::Slow;
    SolveStatus status = SolveStatus::MaxIterations;
    bool converged = false;
    int iterations = 0;
    std::vector<double> distance_history;      // d(f^{k+1}, f^k) per sweep
    std::vector<double> omega_margin_history;  // worst margin per sweep (iterate 0 first)
    std::vector<RootSweepStats> root_history;  // fast model only
    OmegaReport final_omega;
    double final_distance = 0.0;
    double final_residual = 0.0;        // d(f, Phi f) at the returned field
    double contraction_estimate = 0.0;  // max tail ratio of the d-history
    double wall_seconds = 0.0;
};

// Pure transport of the inflow: left data on v1 > 0, right data on v1 < 0 at
// every spatial node.
DistributionField initial_guess(const BoundaryTable& bd, const PhaseGrid& grid);

// Alternative admissible start: per-species global Maxwellians fitted to the
// budget midpoints.
DistributionField budget_maxwellian_guess(const BoundaryBudget& budget, const PhysicalConfig& cfg,
                                          const PhaseGrid& grid);

// Per-node reactive equilibrium and collision frequencies of the chosen model,
// computed from the field's own moments. Fills root sweep statistics for the
// fast model when requested.
void build_equilibrium_profile(Model model, const DistributionField& f, const PhysicalConfig& cfg,
                               const SolverOptions& opt, EquilibriumProfile& eq,
                               FrequencyProfile& freq, RootSweepStats* root_stats = nullptr);

// Metric defect of f under one application of the model's operator.
double model_mild_residual(Model model, const DistributionField& f, const BoundaryTable& bd,
                           const PhysicalConfig& cfg, const SolverOptions& opt);

// Fixed-point iteration f <- Phi(f). Stops on the metric tolerance, the sweep
// cap, or five consecutive distance increases. Equilibrium breakdown
// propagates as EquilibriumBreakdown with the sweep index attached. The
// iteration log (one line per sweep) goes to `log` when non-null.
std::pair<DistributionField, SolveReport> solve_fixed_point(
    Model model, const PhysicalConfig& cfg, const BoundaryTable& bd, const BoundaryBudget& budget,
    const PhaseGrid& grid, const SolverOptions& opt, std::ostream* log = nullptr,
    const DistributionField* initial = nullptr);

struct ContractionSample {
    double tau = 0.0;
    double alpha = 0.0;      // max over probe pairs of d(Phi f, Phi g) / d(f, g)
    int probe_pairs = 0;
    int regenerated = 0;     // probes rebuilt because they left the solution space
    int skipped = 0;         // probe pairs dropped for a zero denominator
};

// Empirical contraction factor of the operator at each tau: solve to a fixed
// point, perturb it inside the solution space with smooth positive factors,
// and take the worst metric ratio over probe pairs.
std::vector<ContractionSample> estimate_contraction(Model model, PhysicalConfig cfg,
                                                    const BoundaryData& bd, const PhaseGrid& grid,
                                                    std::span<const double> taus, int probe_pairs,
                                                    std::uint64_t seed, const SolverOptions& opt,
                                                    std::ostream* log = nullptr);

}  // namespace rbgk
