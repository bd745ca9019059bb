#pragma once

#include <cstdint>
#include <filesystem>

#include "rbgk/boundary.hpp"
#include "rbgk/phase_grid.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/solver.hpp"

namespace rbgk {

struct SolverSettings {
    Model model = Model::Slow;
    SolverOptions options;
    std::uint64_t seed = 0;
};

struct RunConfig {
    PhysicalConfig physical;
    BoundaryData boundary;
    GridSpec grid;
    bool vmax_auto = false;  // vmax absent from [grid]; derive from the budget
    SolverSettings solver;
};

// Parses the flat sectioned config ([species], [interaction], [boundary],
// [grid], [solver]) and validates everything that does not require a grid.
// Unknown keys are rejected. Throws ConfigError with the offending key.
RunConfig load_run_config(const std::filesystem::path& path);

// Builds the grid, resolving an automatic vmax from the wall budget computed
// on a provisional grid: vmax = 8 sqrt(k T_u / min_i m_i).
PhaseGrid resolve_grid(const RunConfig& run);

}  // namespace rbgk
