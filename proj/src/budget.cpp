#include "rbgk/budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rbgk/errors.hpp"

namespace rbgk {

namespace {

void require_positive(double value, const std::string& name) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw ConfigError("budget: " + name + " must be positive and finite, got " +
                          std::to_string(value) + " (inflow data too degenerate for the grid)");
    }
}

}  // namespace

BoundaryBudget compute_boundary_budget(const BoundaryTable& table, const PhysicalConfig& cfg,
                                       const PhaseGrid& grid) {
    BoundaryBudget b;
    auto v1 = grid.v1();
    auto sp2 = grid.speed2();
    auto inv = grid.inv_abs_v1();
    double w = grid.cell_weight();

    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        const auto& fl = table.left[si];
        const auto& fr = table.right[si];
        double mass0 = 0.0, mass2 = 0.0, sing0 = 0.0, sing2 = 0.0;
        double flux_left = 0.0, flux_right = 0.0;
        for (std::size_t k = 0; k < fl.size(); ++k) {
            // f_{i,LR} takes the left spec on v1 > 0 and the right spec on v1 < 0.
            double f = v1[k] > 0.0 ? fl[k] : fr[k];
            mass0 += f;
            mass2 += f * sp2[k];
            sing0 += f * inv[k];
            sing2 += f * sp2[k] * inv[k];
            if (v1[k] > 0.0) {
                flux_left += fl[k] * v1[k];
            } else {
                flux_right += fr[k] * (-v1[k]);
            }
        }
        b.a_upper[si] = 2.0 * mass0 * w;
        b.a_sing[si] = sing0 * w;
        b.a_lower[si] = b.a_upper[si] / 8.0;
        b.c_upper[si] = 2.0 * mass2 * w;
        b.c_sing[si] = sing2 * w;
        b.c_lower[si] = b.c_upper[si] / 8.0;
        b.gamma_lower[si] = (flux_left * w) * (flux_right * w) / 16.0;

        std::string tag = std::to_string(i + 1);
        require_positive(b.a_upper[si], "a_upper[" + tag + "]");
        require_positive(b.a_sing[si], "a_sing[" + tag + "]");
        require_positive(b.c_upper[si], "c_upper[" + tag + "]");
        require_positive(b.c_sing[si], "c_sing[" + tag + "]");
        require_positive(b.gamma_lower[si], "gamma_lower[" + tag + "]");
    }

    b.a_max = *std::max_element(b.a_upper.begin(), b.a_upper.end());
    b.a_min = *std::min_element(b.a_lower.begin(), b.a_lower.end());
    b.c_max = *std::max_element(b.c_upper.begin(), b.c_upper.end());
    b.c_min = *std::min_element(b.c_lower.begin(), b.c_lower.end());
    b.gamma_min = *std::min_element(b.gamma_lower.begin(), b.gamma_lower.end());

    double mass_sum = 0.0;
    b.temp_lower = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        mass_sum += cfg.mass[si];
        double tl = cfg.mass[si] * b.gamma_min / (3.0 * cfg.kb * b.a_upper[si] * b.a_upper[si]);
        b.temp_lower = std::min(b.temp_lower, tl);
    }
    b.temp_upper = b.c_max * mass_sum / (12.0 * cfg.kb * b.a_min);
    require_positive(b.temp_lower, "temp_lower");
    if (b.temp_lower > b.temp_upper) {
        throw ConfigError("budget: temperature bracket is empty, temp_lower = " +
                          std::to_string(b.temp_lower) + " > temp_upper = " +
                          std::to_string(b.temp_upper));
    }
    return b;
}

}  // namespace rbgk
