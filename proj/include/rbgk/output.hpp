#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rbgk/diagnostics.hpp"
#include "rbgk/fields.hpp"
#include "rbgk/solver.hpp"
#include "rbgk/transport.hpp"

namespace rbgk {

// Writes content to path via a temp file and rename, so readers never observe
// partial files.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// One delimiter-separated file per species (moments and equilibrium parameters
// per spatial node) plus one global file. Values are printed with full
// round-trip precision so identical runs produce identical bytes.
void write_profiles(const std::filesystem::path& dir, const PhaseGrid& grid,
                    std::span<const MomentSet> moments, const EquilibriumProfile& eq,
                    const FrequencyProfile& freq);

void write_solve_report(const std::filesystem::path& path, const SolveReport& report);

void write_contraction_table(const std::filesystem::path& path,
                             std::span<const ContractionSample> samples);

// Raw binary snapshot of the field; the header records the grid shape for
// validation on load.
void dump_field(const std::filesystem::path& path, const DistributionField& f);
DistributionField load_field(const std::filesystem::path& path, const PhaseGrid& grid);

}  // namespace rbgk
