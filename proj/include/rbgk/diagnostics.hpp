#pragma once

#include <span>
#include <string>
#include <vector>

#include "rbgk/budget.hpp"
#include "rbgk/fields.hpp"
#include "rbgk/physical_config.hpp"
#include "rbgk/solver.hpp"
#include "rbgk/transport.hpp"

namespace rbgk {

struct BoundCheck {
    std::string name;
    int species = -1;        // -1 for global quantities
    double bound = 0.0;      // value of the closed-form bound
    double observed = 0.0;   // extremum of the checked quantity over x
    double margin = 0.0;     // positive when the bound holds
    bool pass = false;
    bool qualitative = false;  // positivity/finiteness stand-in for a
                               // non-constructive constant
};

struct BoundReport {
    std::vector<BoundCheck> checks;
    bool all_pass() const;
};

// Per-species moment bounds expressed in budget constants: the bulk speed cap
// and the two-sided temperature bracket.
BoundReport check_species_bounds(std::span<const MomentSet> moments, const BoundaryBudget& budget,
                                 const PhysicalConfig& cfg);

// Global moment bounds plus every closed-form equilibrium bound of the chosen
// model: explicit reactive density brackets for the slow model, frequency
// brackets, mixture speed cap, and constraint-bracket containment for the fast
// model. Bounds stated only through non-constructive constants degrade to
// qualitative positivity checks.
BoundReport check_global_and_equilibrium_bounds(std::span<const MomentSet> moments,
                                                const EquilibriumProfile& eq,
                                                const BoundaryBudget& budget,
                                                const PhysicalConfig& cfg, Model model);

void write_bound_report(std::ostream& os, const BoundReport& report);

}  // namespace rbgk
