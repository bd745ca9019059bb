#include "rbgk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "rbgk/equilibrium_fast.hpp"
#include "rbgk/gamma.hpp"

namespace rbgk {

bool BoundReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

namespace {

BoundCheck upper_check(std::string name, int species, double bound, double observed,
                       bool qualitative = false) {
    BoundCheck c;
    c.name = std::move(name);
    c.species = species;
    c.bound = bound;
    c.observed = observed;
    c.margin = bound - observed;
    c.pass = c.margin >= 0.0 && std::isfinite(observed);
    c.qualitative = qualitative;
    return c;
}

BoundCheck lower_check(std::string name, int species, double bound, double observed,
                       bool qualitative = false) {
    BoundCheck c;
    c.name = std::move(name);
    c.species = species;
    c.bound = bound;
    c.observed = observed;
    c.margin = observed - bound;
    c.pass = c.margin >= 0.0 && std::isfinite(observed);
    c.qualitative = qualitative;
    return c;
}

}  // namespace

BoundReport check_species_bounds(std::span<const MomentSet> moments, const BoundaryBudget& budget,
                                 const PhysicalConfig& cfg) {
    BoundReport report;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        double speed_max = 0.0;
        double temp_min = std::numeric_limits<double>::infinity();
        double temp_max = -std::numeric_limits<double>::infinity();
        for (const auto& m : moments) {
            speed_max = std::max(speed_max, m.species[si].velocity.norm());
            temp_min = std::min(temp_min, m.species[si].temperature);
            temp_max = std::max(temp_max, m.species[si].temperature);
        }
        double speed_bound = (budget.a_upper[si] + budget.c_upper[si]) / (2.0 * budget.a_lower[si]);
        double t_low = cfg.mass[si] * budget.gamma_min /
                       (3.0 * cfg.kb * budget.a_upper[si] * budget.a_upper[si]);
        double t_high = cfg.mass[si] * budget.c_upper[si] / (3.0 * cfg.kb * budget.a_lower[si]);
        report.checks.push_back(upper_check("species_speed", i, speed_bound, speed_max));
        report.checks.push_back(lower_check("species_temperature_low", i, t_low, temp_min));
        report.checks.push_back(upper_check("species_temperature_high", i, t_high, temp_max));
    }
    return report;
}

namespace {

double mixture_speed_cap(const BoundaryBudget& budget) {
    double r = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        r = std::max(r, (budget.a_upper[si] + budget.c_upper[si]) / (2.0 * budget.a_lower[si]));
    }
    return r;
}

// Explicit lower bound for the slow-model reactive densities: the retained
// production term evaluated at the budget extremes. Zero when the chemical
// frequency vanishes.
double slow_density_floor(int species, const BoundaryBudget& budget, const PhysicalConfig& cfg) {
    if (cfg.nu1234 == 0.0) return 0.0;
    auto si = static_cast<std::size_t>(species);
    double xl = cfg.delta_e / (cfg.kb * budget.temp_lower);
    double xu = cfg.delta_e / (cfg.kb * budget.temp_upper);
    double sqrt_pi = std::sqrt(std::numbers::pi);
    double elastic_row = 0.0;
    for (int j = 0; j < kSpecies; ++j) {
        elastic_row += cfg.nu_elastic[si][static_cast<std::size_t>(j)];
    }
    double heavy = std::pow(cfg.mu12() / cfg.mu34(), 1.5);
    double nu_cap;
    double production;
    if (species < 2) {
        nu_cap = (elastic_row + 2.0 / sqrt_pi * incomplete_gamma_32(xu) * cfg.nu1234) * budget.a_max;
        // exp(dE/kT) >= exp(dE/kT_u); guard against overflow for extreme budgets.
        double growth = xu > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(xu);
        production = 2.0 * cfg.nu1234 / sqrt_pi * incomplete_gamma_32(xl) * budget.a_min *
                     budget.a_min * heavy * growth;
    } else {
        double suppressed = xl > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(xl);
        nu_cap = (elastic_row +
                  2.0 / sqrt_pi * incomplete_gamma_32(xu) * heavy * suppressed * cfg.nu1234) *
                 budget.a_max;
        production = 2.0 * cfg.nu1234 / sqrt_pi * incomplete_gamma_32(xl) * budget.a_min *
                     budget.a_min;
    }
    if (!std::isfinite(nu_cap)) return 0.0;
    return production / nu_cap;
}

// Explicit upper bound for the slow-model reactive densities from the exchange
// rate cap |S| <= nu1234 [ (mu12/mu34)^{3/2} e^{dE/kT_l} + 1 ] a_max^2 and the
// elastic frequency floor.
double slow_density_cap(int species, const BoundaryBudget& budget, const PhysicalConfig& cfg) {
    auto si = static_cast<std::size_t>(species);
    if (cfg.nu1234 == 0.0) return budget.a_upper[si];
    double xl = cfg.delta_e / (cfg.kb * budget.temp_lower);
    double growth = xl > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(xl);
    double source_cap =
        cfg.nu1234 * (std::pow(cfg.mu12() / cfg.mu34(), 1.5) * growth + 1.0) * budget.a_max *
        budget.a_max;
    double nu_floor = 0.0;
    for (int j = 0; j < kSpecies; ++j) {
        nu_floor += cfg.nu_elastic[si][static_cast<std::size_t>(j)];
    }
    nu_floor *= budget.a_min;
    return budget.a_upper[si] + source_cap / nu_floor;
}

std::pair<double, double> fast_frequency_bracket(int species, const BoundaryBudget& budget,
                                                 const PhysicalConfig& cfg) {
    auto si = static_cast<std::size_t>(species);
    double low = 0.0, high = 0.0;
    for (int j = 0; j < kSpecies; ++j) {
        auto sj = static_cast<std::size_t>(j);
        low += cfg.nu_elastic[si][sj] * budget.a_lower[sj];
        high += cfg.nu_elastic[si][sj] * budget.a_upper[sj];
    }
    double light = std::pow(cfg.mu34() / cfg.mu12(), 1.5);
    switch (species) {
        case 0: high += light * cfg.nu3412 * budget.a_upper[1]; break;
        case 1: high += light * cfg.nu3412 * budget.a_upper[0]; break;
        case 2: high += cfg.nu3412 * budget.a_upper[3]; break;
        default: high += cfg.nu3412 * budget.a_upper[2]; break;
    }
    return {low, high};
}

}  // namespace

BoundReport check_global_and_equilibrium_bounds(std::span<const MomentSet> moments,
                                                const EquilibriumProfile& eq,
                                                const BoundaryBudget& budget,
                                                const PhysicalConfig& cfg, Model model) {
    BoundReport report;

    double u_max = 0.0;
    double t_min = std::numeric_limits<double>::infinity();
    double t_max = -std::numeric_limits<double>::infinity();
    for (const auto& m : moments) {
        u_max = std::max(u_max, m.velocity.norm());
        t_min = std::min(t_min, m.temperature);
        t_max = std::max(t_max, m.temperature);
    }
    report.checks.push_back(upper_check("global_speed", -1, mixture_speed_cap(budget), u_max));
    report.checks.push_back(lower_check("global_temperature_low", -1, budget.temp_lower, t_min));
    report.checks.push_back(upper_check("global_temperature_high", -1, budget.temp_upper, t_max));

    auto nodes = moments.size();
    if (model == Model::Slow) {
        for (int i = 0; i < kSpecies; ++i) {
            auto si = static_cast<std::size_t>(i);
            double n_min = *std::min_element(eq.density[si].begin(), eq.density[si].end());
            double n_max = *std::max_element(eq.density[si].begin(), eq.density[si].end());
            double t_floor = *std::min_element(eq.temperature[si].begin(), eq.temperature[si].end());
            report.checks.push_back(
                lower_check("reactive_density_low", i, slow_density_floor(i, budget, cfg), n_min));
            report.checks.push_back(
                upper_check("reactive_density_high", i, slow_density_cap(i, budget, cfg), n_max));
            report.checks.push_back(
                lower_check("reactive_temperature_positive", i, 0.0, t_floor, true));
        }
    } else {
        for (int i = 0; i < kSpecies; ++i) {
            auto si = static_cast<std::size_t>(i);
            auto [nu_low, nu_high] = fast_frequency_bracket(i, budget, cfg);
            double obs_low = std::numeric_limits<double>::infinity();
            double obs_high = 0.0;
            for (std::size_t j = 0; j < nodes; ++j) {
                auto nu = fast_frequencies(moments[j], cfg);
                obs_low = std::min(obs_low, nu[si]);
                obs_high = std::max(obs_high, nu[si]);
            }
            report.checks.push_back(lower_check("frequency_low", i, nu_low, obs_low));
            report.checks.push_back(upper_check("frequency_high", i, nu_high, obs_high));
            double n_floor = *std::min_element(eq.density[si].begin(), eq.density[si].end());
            report.checks.push_back(lower_check("reactive_density_positive", i, 0.0, n_floor, true));
        }
        double mix_speed = 0.0;
        double temp_floor = std::numeric_limits<double>::infinity();
        bool contained = true;
        double worst_gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nodes; ++j) {
            mix_speed = std::max(mix_speed, eq.velocity[0][j].norm());
            temp_floor = std::min(temp_floor, eq.temperature[0][j]);
            auto nu = fast_frequencies(moments[j], cfg);
            Vec3 u_mix = fast_mixture_velocity(moments[j], nu, cfg);
            auto [lo, hi] = fast_constraint_bracket(moments[j], nu, u_mix, cfg);
            double n1 = eq.density[0][j];
            contained = contained && n1 > lo && n1 < hi;
            worst_gap = std::min({worst_gap, n1 - lo, hi - n1});
        }
        report.checks.push_back(upper_check("mixture_speed", -1, mixture_speed_cap(budget), mix_speed));
        report.checks.push_back(lower_check("shared_temperature_positive", -1, 0.0, temp_floor, true));
        BoundCheck bracket;
        bracket.name = "root_bracket_containment";
        bracket.species = 0;
        bracket.bound = 0.0;
        bracket.observed = worst_gap;
        bracket.margin = worst_gap;
        bracket.pass = contained;
        report.checks.push_back(bracket);
    }
    return report;
}

void write_bound_report(std::ostream& os, const BoundReport& report) {
    os << "# bound report\n";
    os << "# name species bound observed margin status kind\n";
    char buf[256];
    for (const auto& c : report.checks) {
        std::snprintf(buf, sizeof(buf), "%-32s %2d % .12e % .12e % .12e %s %s\n", c.name.c_str(),
                      c.species + 1, c.bound, c.observed, c.margin, c.pass ? "pass" : "FAIL",
                      c.qualitative ? "qualitative" : "exact");
        os << buf;
    }
}

}  // namespace rbgk
