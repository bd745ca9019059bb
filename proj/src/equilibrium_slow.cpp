#include "rbgk/equilibrium_slow.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rbgk/errors.hpp"
#include "rbgk/gamma.hpp"

namespace rbgk {

namespace {

void require_admissible(const MomentSet& m) {
    for (int i = 0; i < kSpecies; ++i) {
        if (!(m.species[static_cast<std::size_t>(i)].density > 0.0)) {
            throw EquilibriumBreakdown("equilibrium: nonpositive density for species " +
                                           std::to_string(i + 1),
                                       i, "density");
        }
    }
    if (!(m.temperature > 0.0)) {
        throw EquilibriumBreakdown("equilibrium: nonpositive global temperature " +
                                       std::to_string(m.temperature),
                                   -1, "temperature");
    }
}

}  // namespace

std::array<double, kSpecies> slow_frequencies(const MomentSet& m, const PhysicalConfig& cfg) {
    require_admissible(m);
    double x = cfg.delta_e / (cfg.kb * m.temperature);
    if (x > 700.0 && cfg.nu1234 > 0.0) {
        throw EquilibriumBreakdown("equilibrium: temperature " + std::to_string(m.temperature) +
                                       " too small against the reaction threshold",
                                   -1, "temperature");
    }
    double gfac = 2.0 / std::sqrt(std::numbers::pi) * incomplete_gamma_32(x);
    double heavy = std::pow(cfg.mu12() / cfg.mu34(), 1.5) * std::exp(x);

    std::array<double, kSpecies> nu{};
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        double elastic = 0.0;
        for (int j = 0; j < kSpecies; ++j) {
            elastic += cfg.nu_elastic[si][static_cast<std::size_t>(j)] *
                       m.species[static_cast<std::size_t>(j)].density;
        }
        double partner;
        switch (i) {
            case 0: partner = gfac * cfg.nu1234 * m.species[1].density; break;
            case 1: partner = gfac * cfg.nu1234 * m.species[0].density; break;
            case 2: partner = gfac * heavy * cfg.nu1234 * m.species[3].density; break;
            default: partner = gfac * heavy * cfg.nu1234 * m.species[2].density; break;
        }
        nu[si] = elastic + partner;
    }
    return nu;
}

double reaction_source(const MomentSet& m, const PhysicalConfig& cfg) {
    if (cfg.nu1234 == 0.0) return 0.0;
    double x = cfg.delta_e / (cfg.kb * m.temperature);
    if (x > 700.0) {
        throw EquilibriumBreakdown("equilibrium: temperature " + std::to_string(m.temperature) +
                                       " too small against the reaction threshold",
                                   -1, "temperature");
    }
    double gfac = 2.0 / std::sqrt(std::numbers::pi) * incomplete_gamma_32(x);
    double mass_ratio = std::pow(cfg.mass[0] * cfg.mass[1] / (cfg.mass[2] * cfg.mass[3]), 1.5);
    return cfg.nu1234 * gfac *
           (m.species[2].density * m.species[3].density * mass_ratio * std::exp(x) -
            m.species[0].density * m.species[1].density);
}

SlowEquilibrium slow_parameters(const MomentSet& m, const std::array<double, kSpecies>& nu,
                                double source, const PhysicalConfig& cfg) {
    require_admissible(m);
    SlowEquilibrium eq;
    eq.frequency = nu;
    eq.source = source;

    double x = cfg.delta_e / (cfg.kb * m.temperature);
    double gamma_ratio = incomplete_gamma_32_ratio(x);
    double kT = cfg.kb * m.temperature;

    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        const auto& sp = m.species[si];
        double mi = cfg.mass[si];
        double lam = kLambda[si];
        double shift = lam * source / nu[si];

        double ni = sp.density + shift;
        if (!(ni > 0.0) || !std::isfinite(ni)) {
            throw EquilibriumBreakdown(
                "equilibrium breakdown: reactive density for species " + std::to_string(i + 1) +
                    " is " + std::to_string(ni) + " (chemical frequency too large for these moments)",
                i, "density");
        }

        Vec3 exchange{};
        double heat_exchange = 0.0;
        double drift_work = 0.0;
        for (int j = 0; j < kSpecies; ++j) {
            auto sj = static_cast<std::size_t>(j);
            const auto& spj = m.species[sj];
            double mj = cfg.mass[sj];
            double coupling = cfg.chi[si][sj] * cfg.reduced_mass(i, j) * sp.density * spj.density;
            Vec3 dv = spj.velocity - sp.velocity;
            exchange += coupling * dv;
            heat_exchange += coupling / (mi + mj) * (spj.temperature - sp.temperature);
            drift_work += coupling / (mi + mj) * (mi * sp.velocity + mj * spj.velocity).dot(dv);
        }

        Vec3 momentum = mi * sp.density * sp.velocity + (2.0 / nu[si]) * exchange +
                        (lam / nu[si]) * mi * source * m.velocity;
        Vec3 ui = momentum / (mi * ni);

        double mass_frac = (cfg.total_mass - mi) / cfg.total_mass;
        double source_bracket = 0.5 * mi * m.velocity.norm2() + 1.5 * kT +
                                mass_frac * kT * gamma_ratio -
                                0.5 * (1.0 - lam) * mass_frac * cfg.delta_e;

        double energy = 1.5 * sp.density * cfg.kb * sp.temperature -
                        0.5 * mi * (ni * ui.norm2() - sp.density * sp.velocity.norm2()) +
                        (6.0 * cfg.kb / nu[si]) * heat_exchange +
                        (2.0 / nu[si]) * drift_work +
                        (lam / nu[si]) * source * source_bracket;
        double ti = energy / (1.5 * ni * cfg.kb);
        if (!(ti > 0.0) || !std::isfinite(ti)) {
            throw EquilibriumBreakdown(
                "equilibrium breakdown: reactive temperature for species " + std::to_string(i + 1) +
                    " is " + std::to_string(ti) + " (chemical frequency too large for these moments)",
                i, "temperature");
        }

        eq.density[si] = ni;
        eq.velocity[si] = ui;
        eq.temperature[si] = ti;
    }
    return eq;
}

}  // namespace rbgk
