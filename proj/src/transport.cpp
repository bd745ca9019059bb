#include "rbgk/transport.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rbgk/errors.hpp"
#include "rbgk/parallel.hpp"

namespace rbgk {

FrequencyProfile make_frequency_profile(const std::array<std::vector<double>, kSpecies>& nu_nodes,
                                        const PhaseGrid& grid) {
    FrequencyProfile p;
    auto nodes = static_cast<std::size_t>(grid.nodes_x());
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        if (nu_nodes[si].size() != nodes) {
            throw FieldError("frequency profile: species " + std::to_string(i + 1) + " has " +
                             std::to_string(nu_nodes[si].size()) + " values, expected " +
                             std::to_string(nodes));
        }
        for (double v : nu_nodes[si]) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw FieldError("frequency profile: collision frequency must be positive and "
                                 "finite, got " +
                                 std::to_string(v));
            }
        }
        p.values[si] = nu_nodes[si];
        p.cumulative[si].assign(nodes, 0.0);
        for (std::size_t j = 1; j < nodes; ++j) {
            p.cumulative[si][j] = p.cumulative[si][j - 1] +
                                  0.5 * (nu_nodes[si][j - 1] + nu_nodes[si][j]) * grid.dx();
        }
    }
    return p;
}

namespace {

// Separable per-cell Maxwellian tables: value at a node factors into
// coef * ax1[i1] * ax2[i2] * ax3[i3].
struct CellMaxwellians {
    std::vector<double> coef;  // per cell
    std::vector<double> ax1;   // cell-major [cell * nv1 + i1]
    std::vector<double> ax2;   // cell-major [cell * nv23 + i2]
    std::vector<double> ax3;
};

CellMaxwellians build_cell_tables(const EquilibriumProfile& eq, int species, const PhaseGrid& grid,
                                  const PhysicalConfig& cfg) {
    auto si = static_cast<std::size_t>(species);
    int cells = grid.cells();
    int nv1 = grid.nv1();
    int nv23 = grid.nv23();
    CellMaxwellians t;
    t.coef.resize(static_cast<std::size_t>(cells));
    t.ax1.resize(static_cast<std::size_t>(cells) * static_cast<std::size_t>(nv1));
    t.ax2.resize(static_cast<std::size_t>(cells) * static_cast<std::size_t>(nv23));
    t.ax3.resize(static_cast<std::size_t>(cells) * static_cast<std::size_t>(nv23));
    double mass = cfg.mass[si];
    for (int c = 0; c < cells; ++c) {
        auto sc = static_cast<std::size_t>(c);
        double n = 0.5 * (eq.density[si][sc] + eq.density[si][sc + 1]);
        Vec3 u = (eq.velocity[si][sc] + eq.velocity[si][sc + 1]) * 0.5;
        double temp = 0.5 * (eq.temperature[si][sc] + eq.temperature[si][sc + 1]);
        if (!(n > 0.0) || !(temp > 0.0) || !std::isfinite(n) || !std::isfinite(temp)) {
            throw FieldError("transport: non-admissible equilibrium parameters in cell " +
                             std::to_string(c) + " for species " + std::to_string(species + 1));
        }
        double inv2kt = mass / (2.0 * cfg.kb * temp);
        t.coef[sc] = n * std::pow(mass / (2.0 * std::numbers::pi * cfg.kb * temp), 1.5);
        for (int i = 0; i < nv1; ++i) {
            double d = grid.v1_axis(i) - u.x;
            t.ax1[sc * static_cast<std::size_t>(nv1) + static_cast<std::size_t>(i)] =
                std::exp(-inv2kt * d * d);
        }
        for (int i = 0; i < nv23; ++i) {
            double d2 = grid.v23_axis(i) - u.y;
            double d3 = grid.v23_axis(i) - u.z;
            t.ax2[sc * static_cast<std::size_t>(nv23) + static_cast<std::size_t>(i)] =
                std::exp(-inv2kt * d2 * d2);
            t.ax3[sc * static_cast<std::size_t>(nv23) + static_cast<std::size_t>(i)] =
                std::exp(-inv2kt * d3 * d3);
        }
    }
    return t;
}

}  // namespace

DistributionField apply_mild_operator(const BoundaryTable& bd, const EquilibriumProfile& eq,
                                      const FrequencyProfile& freq, const PhaseGrid& grid,
                                      const PhysicalConfig& cfg, double tau, int threads) {
    if (!(tau > 0.0)) throw ConfigError("transport: tau must be positive, got " + std::to_string(tau));
    int cells = grid.cells();
    int nv1 = grid.nv1();
    int nv23 = grid.nv23();
    std::size_t plane = static_cast<std::size_t>(nv23) * static_cast<std::size_t>(nv23);

    std::array<CellMaxwellians, kSpecies> tables;
    for (int i = 0; i < kSpecies; ++i) tables[static_cast<std::size_t>(i)] = build_cell_tables(eq, i, grid, cfg);

    DistributionField out(grid);
    std::size_t tasks = static_cast<std::size_t>(kSpecies) * static_cast<std::size_t>(nv1);
    parallel_for(tasks, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> att(static_cast<std::size_t>(cells));
        std::vector<double> weight(static_cast<std::size_t>(cells));
        std::vector<double> source(plane);
        for (std::size_t task = lo; task < hi; ++task) {
            int species = static_cast<int>(task / static_cast<std::size_t>(nv1));
            int i1 = static_cast<int>(task % static_cast<std::size_t>(nv1));
            auto si = static_cast<std::size_t>(species);
            const auto& cum = freq.cumulative[si];
            const auto& tab = tables[si];
            double v1 = grid.v1_axis(i1);
            double inv_speed = 1.0 / (tau * std::abs(v1));
            for (int c = 0; c < cells; ++c) {
                auto sc = static_cast<std::size_t>(c);
                double step = (cum[sc + 1] - cum[sc]) * inv_speed;
                double w = -std::expm1(-step);
                att[sc] = std::exp(-step);
                weight[sc] = w;
            }
            std::size_t voff = static_cast<std::size_t>(i1) * plane;

            auto cell_source = [&](int c) {
                auto sc = static_cast<std::size_t>(c);
                double base = tab.coef[sc] *
                              tab.ax1[sc * static_cast<std::size_t>(nv1) + static_cast<std::size_t>(i1)];
                const double* a2 = &tab.ax2[sc * static_cast<std::size_t>(nv23)];
                const double* a3 = &tab.ax3[sc * static_cast<std::size_t>(nv23)];
                for (int i2 = 0; i2 < nv23; ++i2) {
                    double row = base * a2[i2];
                    double* dst = source.data() + static_cast<std::size_t>(i2) * nv23;
                    for (int i3 = 0; i3 < nv23; ++i3) dst[static_cast<std::size_t>(i3)] = row * a3[i3];
                }
            };

            if (v1 > 0.0) {
                // March from the left wall; prefix structure in the cumulative
                // frequency turns the cell sum into a two-term recurrence.
                const double* inflow = bd.left[si].data() + voff;
                double* prev = out.at(species, 0).data() + voff;
                for (std::size_t k = 0; k < plane; ++k) prev[k] = inflow[k];
                for (int j = 1; j <= cells; ++j) {
                    cell_source(j - 1);
                    double e = att[static_cast<std::size_t>(j - 1)];
                    double w = weight[static_cast<std::size_t>(j - 1)];
                    double* cur = out.at(species, j).data() + voff;
                    for (std::size_t k = 0; k < plane; ++k) cur[k] = e * prev[k] + w * source[k];
                    prev = cur;
                }
            } else {
                const double* inflow = bd.right[si].data() + voff;
                double* prev = out.at(species, cells).data() + voff;
                for (std::size_t k = 0; k < plane; ++k) prev[k] = inflow[k];
                for (int j = cells - 1; j >= 0; --j) {
                    cell_source(j);
                    double e = att[static_cast<std::size_t>(j)];
                    double w = weight[static_cast<std::size_t>(j)];
                    double* cur = out.at(species, j).data() + voff;
                    for (std::size_t k = 0; k < plane; ++k) cur[k] = e * prev[k] + w * source[k];
                    prev = cur;
                }
            }
        }
    });
    return out;
}

double mild_residual(const DistributionField& f, const BoundaryTable& bd,
                     const EquilibriumProfile& eq, const FrequencyProfile& freq,
                     const PhysicalConfig& cfg, double tau, int threads) {
    DistributionField phi = apply_mild_operator(bd, eq, freq, f.grid(), cfg, tau, threads);
    return metric_distance(f, phi);
}

}  // namespace rbgk
