#include "rbgk/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rbgk/errors.hpp"

namespace rbgk {

DistributionField::DistributionField(const PhaseGrid& grid)
    : grid_(&grid),
      values_(static_cast<std::size_t>(kSpecies) * static_cast<std::size_t>(grid.nodes_x()) *
              grid.velocity_count(), 0.0) {}

SpeciesMoments species_moments(std::span<const double> f, const PhaseGrid& grid, double mass,
                               double kb) {
    auto v1 = grid.v1();
    auto v2 = grid.v2();
    auto v3 = grid.v3();
    auto sp2 = grid.speed2();
    double s0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        double fv = f[k];
        s0 += fv;
        m1 += fv * v1[k];
        m2 += fv * v2[k];
        m3 += fv * v3[k];
        s2 += fv * sp2[k];
    }
    double w = grid.cell_weight();
    s0 *= w;
    m1 *= w;
    m2 *= w;
    m3 *= w;
    s2 *= w;
    if (!std::isfinite(s0) || !(s0 > 0.0)) {
        throw FieldError("moments: degenerate field, density = " + std::to_string(s0));
    }
    SpeciesMoments out;
    out.density = s0;
    out.velocity = Vec3{m1, m2, m3} / s0;
    out.energy = s2;
    out.v1_moment = m1;
    // T = m (S0 S2 - |M1|^2) / (3 k S0^2), the Cauchy-Schwarz defect form.
    double defect = s0 * s2 - (m1 * m1 + m2 * m2 + m3 * m3);
    out.temperature = mass * defect / (3.0 * kb * s0 * s0);
    return out;
}

void global_moments(MomentSet& m, const PhysicalConfig& cfg) {
    double n = 0.0, rho = 0.0;
    Vec3 momentum{};
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        const auto& s = m.species[si];
        double rho_i = cfg.mass[si] * s.density;
        n += s.density;
        rho += rho_i;
        momentum += rho_i * s.velocity;
    }
    m.density = n;
    m.mass_density = rho;
    m.velocity = momentum / rho;
    double heat = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        const auto& s = m.species[si];
        heat += s.density * cfg.kb * s.temperature;
        heat += (1.0 / 3.0) * cfg.mass[si] * s.density *
                (s.velocity.norm2() - m.velocity.norm2());
    }
    m.temperature = heat / (n * cfg.kb);
}

MomentSet moments_at(const DistributionField& f, int xj, const PhysicalConfig& cfg) {
    MomentSet m;
    for (int i = 0; i < kSpecies; ++i) {
        m.species[static_cast<std::size_t>(i)] =
            species_moments(f.at(i, xj), f.grid(), cfg.mass[static_cast<std::size_t>(i)], cfg.kb);
    }
    global_moments(m, cfg);
    return m;
}

double weighted_norm(std::span<const double> f, const PhaseGrid& grid) {
    auto sp2 = grid.speed2();
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += std::abs(f[k]) * (1.0 + sp2[k]);
    return s * grid.cell_weight();
}

double metric_distance(const DistributionField& f, const DistributionField& g) {
    if (&f.grid() != &g.grid() &&
        (f.grid().velocity_count() != g.grid().velocity_count() ||
         f.grid().nodes_x() != g.grid().nodes_x() || f.grid().vmax() != g.grid().vmax())) {
        throw FieldError("metric: fields live on different grids");
    }
    const PhaseGrid& grid = f.grid();
    auto sp2 = grid.speed2();
    double total = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        double worst = 0.0;
        for (int j = 0; j < grid.nodes_x(); ++j) {
            auto a = f.at(i, j);
            auto b = g.at(i, j);
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]) * (1.0 + sp2[k]);
            worst = std::max(worst, s);
        }
        total += worst * grid.cell_weight();
    }
    return total;
}

double OmegaMargins::worst() const {
    return std::min({positivity, density_low, density_high, energy_low, energy_high, schwarz});
}

OmegaReport omega_membership(const DistributionField& f, const BoundaryBudget& budget) {
    const PhaseGrid& grid = f.grid();
    auto v1 = grid.v1();
    auto sp2 = grid.speed2();
    double w = grid.cell_weight();
    OmegaReport report;
    report.worst = std::numeric_limits<double>::infinity();
    report.pass = true;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        OmegaMargins m;
        double inf = std::numeric_limits<double>::infinity();
        m.positivity = inf;
        m.density_low = inf;
        m.density_high = inf;
        m.energy_low = inf;
        m.energy_high = inf;
        m.schwarz = inf;
        for (int j = 0; j < grid.nodes_x(); ++j) {
            auto fv = f.at(i, j);
            double s0 = 0.0, s2 = 0.0, mv1 = 0.0, fmin = inf;
            for (std::size_t k = 0; k < fv.size(); ++k) {
                s0 += fv[k];
                s2 += fv[k] * sp2[k];
                mv1 += fv[k] * v1[k];
                fmin = std::min(fmin, fv[k]);
            }
            s0 *= w;
            s2 *= w;
            mv1 *= w;
            m.positivity = std::min(m.positivity, fmin);
            m.density_low = std::min(m.density_low, s0 - budget.a_lower[si]);
            m.density_high = std::min(m.density_high, budget.a_upper[si] - s0);
            m.energy_low = std::min(m.energy_low, s2 - budget.c_lower[si]);
            m.energy_high = std::min(m.energy_high, budget.c_upper[si] - s2);
            m.schwarz = std::min(m.schwarz, s0 * s2 - mv1 * mv1 - budget.gamma_min);
        }
        report.species[si] = m;
        report.worst = std::min(report.worst, m.worst());
    }
    report.pass = report.worst >= 0.0;
    return report;
}

}  // namespace rbgk
