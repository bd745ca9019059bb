#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rbgk/budget.hpp"
#include "rbgk/equilibrium_fast.hpp"
#include "rbgk/errors.hpp"
#include "test_support.hpp"

using rbgk::LogFormArgs;
using rbgk::MomentSet;
using rbgk::PhysicalConfig;
using rbgk::Vec3;

namespace {

MomentSet uniform_moments(const std::array<double, 4>& n, Vec3 u, double t,
                          const PhysicalConfig& cfg) {
    MomentSet m;
    for (int i = 0; i < 4; ++i) {
        auto si = static_cast<std::size_t>(i);
        m.species[si].density = n[si];
        m.species[si].velocity = u;
        m.species[si].temperature = t;
        m.species[si].energy = 3.0 * cfg.kb * n[si] * t / cfg.mass[si] + n[si] * u.norm2();
        m.species[si].v1_moment = n[si] * u.x;
    }
    rbgk::global_moments(m, cfg);
    return m;
}

// Inputs constructed so the balance equation is satisfied at z = n^(1):
// common temperature and velocity, unit product densities for 3 and 4, and
// n1 n2 chosen by inverting the mass-action relation.
MomentSet balance_moments(const PhysicalConfig& cfg, double t0, Vec3 u) {
    double product = std::pow(cfg.mu12() / cfg.mu34(), 1.5) * std::exp(cfg.delta_e / (cfg.kb * t0));
    double n12 = std::sqrt(product);
    return uniform_moments({n12, n12, 1.0, 1.0}, u, t0, cfg);
}

rbgk::BoundaryBudget reference_budget(const PhysicalConfig& cfg) {
    rbgk::PhaseGrid grid = rbgk::build_grid(support::small_grid_spec());
    return rbgk::compute_boundary_budget(
        rbgk::tabulate_boundary(support::unit_boundary(), grid, cfg), cfg, grid);
}

}  // namespace

TEST_CASE("fast frequencies: no reaction and suppression limits") {
    PhysicalConfig cfg = support::unit_config(0.0, 0.0);
    MomentSet m = uniform_moments({1.0, 1.0, 1.0, 1.0}, {}, 1.0, cfg);
    auto nu = rbgk::fast_frequencies(m, cfg);
    for (double v : nu) CHECK(v == doctest::Approx(4.0).epsilon(1e-14));

    PhysicalConfig chem = support::unit_config(0.0, 0.8);
    // Tiny temperature: exp(-dE/kT) suppresses the chemical part of nu~_1,2.
    MomentSet cold = uniform_moments({1.0, 1.0, 1.0, 1.0}, {}, 0.005, chem);
    auto nuc = rbgk::fast_frequencies(cold, chem);
    CHECK(nuc[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(nuc[1] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(nuc[2] == doctest::Approx(4.8).epsilon(1e-14));
    CHECK(nuc[3] == doctest::Approx(4.8).epsilon(1e-14));
}

TEST_CASE("fast frequencies match the transcription oracle") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.3);
    auto budget = reference_budget(cfg);
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
        auto nu = rbgk::fast_frequencies(m, cfg);
        auto ref = oracle::fast_frequencies_ref(m, cfg);
        for (int i = 0; i < 4; ++i) {
            CHECK(nu[static_cast<std::size_t>(i)] ==
                  doctest::Approx(ref[static_cast<std::size_t>(i)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("temperature map F at the unshifted density") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.4);
    SUBCASE("common rest state returns the common temperature") {
        MomentSet m = uniform_moments({1.0, 0.7, 1.3, 0.9}, {}, 1.25, cfg);
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        CHECK(u.norm() < 1e-15);
        CHECK(rbgk::fast_temperature_of(m.species[0].density, m, nu, u, cfg) ==
              doctest::Approx(1.25).epsilon(1e-13));
    }
    SUBCASE("reaction-free mixture temperature at x = n1") {
        auto budget = reference_budget(cfg);
        std::mt19937_64 rng(7);
        MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        double direct = 0.0, weight = 0.0;
        for (int i = 0; i < 4; ++i) {
            auto si = static_cast<std::size_t>(i);
            direct += nu[si] * m.species[si].density *
                      (0.5 * cfg.mass[si] * (m.species[si].velocity.norm2() - u.norm2()) +
                       1.5 * cfg.kb * m.species[si].temperature);
            weight += nu[si] * m.species[si].density;
        }
        CHECK(rbgk::fast_temperature_of(m.species[0].density, m, nu, u, cfg) ==
              doctest::Approx(direct / (1.5 * cfg.kb * weight)).epsilon(1e-13));
    }
    SUBCASE("slope equals dE nu1 / (1.5 k sum nu n)") {
        auto budget = reference_budget(cfg);
        std::mt19937_64 rng(13);
        MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        double weight = 0.0;
        for (int i = 0; i < 4; ++i) {
            weight += nu[static_cast<std::size_t>(i)] * m.species[static_cast<std::size_t>(i)].density;
        }
        double analytic = cfg.delta_e * nu[0] / (1.5 * cfg.kb * weight);
        double x0 = m.species[0].density;
        double h = 1e-6 * x0;
        double fd = (rbgk::fast_temperature_of(x0 + h, m, nu, u, cfg) -
                     rbgk::fast_temperature_of(x0 - h, m, nu, u, cfg)) /
                    (2.0 * h);
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-8));
        CHECK(analytic > 0.0);
    }
}

TEST_CASE("constraint bracket endpoints") {
    PhysicalConfig cfg = support::unit_config(0.0, 0.5);
    SUBCASE("symmetric state") {
        MomentSet m = uniform_moments({1.0, 1.0, 1.0, 1.0}, {}, 1.0, cfg);
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        auto [lo, hi] = rbgk::fast_constraint_bracket(m, nu, u, cfg);
        // all frequencies agree for species 3,4 and 1,2 separately
        CHECK(hi == doctest::Approx(1.0 + nu[2] / nu[0]).epsilon(1e-14));
        double slack = 0.0;
        for (int i = 0; i < 4; ++i) {
            auto si = static_cast<std::size_t>(i);
            slack += nu[si] * 1.0 * (1.5 * cfg.kb * 1.0);
        }
        slack /= nu[0] * cfg.delta_e;
        CHECK(lo == doctest::Approx(std::max(0.0, 1.0 - slack)).epsilon(1e-13));
    }
    SUBCASE("scarce species 3 pins the upper endpoint near n1") {
        MomentSet m = uniform_moments({1.0, 1.0, 1e-7, 1.0}, {}, 1.0, cfg);
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        auto [lo, hi] = rbgk::fast_constraint_bracket(m, nu, u, cfg);
        CHECK(hi > 1.0);
        CHECK(hi < 1.0 + 1e-6);
        CHECK(lo < 1.0);
    }
    SUBCASE("n1 is always interior") {
        auto budget = reference_budget(cfg);
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 100; ++trial) {
            MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
            auto nu = rbgk::fast_frequencies(m, cfg);
            Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
            auto [lo, hi] = rbgk::fast_constraint_bracket(m, nu, u, cfg);
            CHECK(lo < m.species[0].density);
            CHECK(hi > m.species[0].density);
        }
    }
}

TEST_CASE("detailed balance is solved to the unshifted density") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.6);
    MomentSet m = balance_moments(cfg, 1.2, {0.15, 0.0, 0.0});
    auto nu = rbgk::fast_frequencies(m, cfg);
    Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
    rbgk::RootDiagnostics diag;
    double n1 = rbgk::fast_solve_n1(m, nu, u, cfg, 1e-12, 200, &diag);
    CHECK(std::abs(n1 - m.species[0].density) < 1e-10 * m.species[0].density);
    CHECK(diag.residual <= 1e-12);
    CHECK(n1 > diag.lower);
    CHECK(n1 < diag.upper);
}

TEST_CASE("the balance ratio confirms the root independently") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.25);
    auto budget = reference_budget(cfg);
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        double n1 = rbgk::fast_solve_n1(m, nu, u, cfg, 1e-13, 200, nullptr);
        double lhs = oracle::balance_ratio_ref(n1, m, nu, u, cfg);
        double rhs = std::pow(cfg.mu12() / cfg.mu34(), 1.5);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("raising the species 3 density pulls the root upward") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.6);
    MomentSet base = balance_moments(cfg, 1.2, {});
    auto solve_at = [&](const MomentSet& m) {
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        return rbgk::fast_solve_n1(m, nu, u, cfg, 1e-13, 200, nullptr);
    };
    double root0 = solve_at(base);
    MomentSet bumped = base;
    bumped.species[2].density *= 1.05;
    bumped.species[2].energy *= 1.05;
    bumped.species[2].v1_moment *= 1.05;
    rbgk::global_moments(bumped, cfg);
    double root1 = solve_at(bumped);
    CHECK(root1 > root0);
}

TEST_CASE("log objective diverges toward the bracket endpoints") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.4);
    MomentSet m = balance_moments(cfg, 1.0, {});
    auto nu = rbgk::fast_frequencies(m, cfg);
    Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
    auto [lo, hi] = rbgk::fast_constraint_bracket(m, nu, u, cfg);
    double width = hi - lo;
    LogFormArgs args;
    for (int i = 0; i < 4; ++i) {
        auto si = static_cast<std::size_t>(i);
        args.x[si] = args.y[si] = m.species[si].density;
        args.mu[si] = args.eta[si] = nu[si];
        args.alpha[si] = m.species[si].temperature;
        args.beta[si] = (m.species[si].velocity - u).norm();
    }
    auto coeffs = rbgk::log_form_coefficients(args, cfg);
    double target = rbgk::balance_target(cfg);
    double near_lo = rbgk::log_form_value(coeffs, lo + 1e-13 * width);
    double mid_lo = rbgk::log_form_value(coeffs, lo + 1e-6 * width);
    double near_hi = rbgk::log_form_value(coeffs, hi - 1e-13 * width);
    double mid_hi = rbgk::log_form_value(coeffs, hi - 1e-6 * width);
    CHECK(near_lo < mid_lo);
    CHECK(near_hi > mid_hi);
    CHECK(near_lo < target - 10.0);
    CHECK(near_hi > target + 10.0);
}

TEST_CASE("assembled parameters satisfy the exchange and positivity relations") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.5);
    SUBCASE("unshifted root returns the input densities") {
        MomentSet m = uniform_moments({1.3, 0.9, 1.1, 0.7}, {0.1, 0.0, 0.0}, 1.1, cfg);
        auto nu = rbgk::fast_frequencies(m, cfg);
        auto eq = rbgk::fast_parameters(m, nu, m.species[0].density, cfg);
        for (int i = 0; i < 4; ++i) {
            auto si = static_cast<std::size_t>(i);
            CHECK(eq.density[si] == doctest::Approx(m.species[si].density).epsilon(1e-14));
        }
        CHECK(eq.velocity.x == doctest::Approx(0.1).epsilon(1e-14));
    }
    SUBCASE("exchange relations at a generic root") {
        auto budget = reference_budget(cfg);
        std::mt19937_64 rng(19);
        for (int trial = 0; trial < 100; ++trial) {
            MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
            auto eq = rbgk::fast_equilibrium(m, cfg, 1e-12, 200);
            double shift = eq.frequency[0] * (eq.density[0] - m.species[0].density);
            for (int i = 1; i < 4; ++i) {
                auto si = static_cast<std::size_t>(i);
                double lhs = eq.frequency[si] * (eq.density[si] - m.species[si].density);
                double rhs = rbgk::kLambda[si] * shift;
                CHECK(std::abs(lhs - rhs) <= 1e-13 * (std::abs(shift) + 1e-30));
                CHECK(eq.density[si] > 0.0);
            }
            CHECK(eq.temperature > 0.0);
        }
    }
}

TEST_CASE("energy identity at the root") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.35);
    auto budget = reference_budget(cfg);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
        auto eq = rbgk::fast_equilibrium(m, cfg, 1e-12, 200);
        double lhs = 0.0, mixture = 0.0;
        double u2 = eq.velocity.norm2();
        for (int i = 0; i < 4; ++i) {
            auto si = static_cast<std::size_t>(i);
            double w = eq.frequency[si] * m.species[si].density;
            lhs += 1.5 * cfg.kb * w * eq.temperature;
            mixture += w * (0.5 * cfg.mass[si] * (m.species[si].velocity.norm2() - u2) +
                            1.5 * cfg.kb * m.species[si].temperature);
        }
        double rhs = cfg.delta_e * eq.frequency[0] * (eq.density[0] - m.species[0].density);
        CHECK(std::abs(lhs - mixture - rhs) <= 1e-12 * (std::abs(lhs) + 1e-30));
    }
}

TEST_CASE("log objective is strictly increasing across the bracket") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.45);
    auto budget = reference_budget(cfg);
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 30; ++trial) {
        MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        LogFormArgs args;
        for (int i = 0; i < 4; ++i) {
            auto si = static_cast<std::size_t>(i);
            args.x[si] = args.y[si] = m.species[si].density;
            args.mu[si] = args.eta[si] = nu[si];
            args.alpha[si] = m.species[si].temperature;
            args.beta[si] = (m.species[si].velocity - u).norm();
        }
        auto coeffs = rbgk::log_form_coefficients(args, cfg);
        double lo = coeffs.lower();
        double hi = coeffs.upper();
        double width = hi - lo;
        double prev_z = lo + 1e-6 * width;
        double prev = rbgk::log_form_value(coeffs, prev_z);
        for (int k = 1; k <= 100; ++k) {
            double z = lo + (1e-6 + (1.0 - 2e-6) * k / 100.0) * width;
            double cur = rbgk::log_form_value(coeffs, z);
            CHECK(cur > prev);
            CHECK(rbgk::log_form_slope(coeffs, 0.5 * (z + prev_z)) > 0.0);
            prev = cur;
            prev_z = z;
        }
    }
}

TEST_CASE("argument-group monotonicity of the log objective at fixed z") {
    // The objective rises with x densities, the frequencies in the mu slots,
    // temperatures, and relative speeds; it falls with y densities and the eta
    // frequencies. The root therefore moves the opposite way, which is what
    // the budget-extreme sandwich below relies on.
    PhysicalConfig cfg = support::generic_config(0.0, 0.45);
    auto budget = reference_budget(cfg);
    std::mt19937_64 rng(97);
    MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
    auto nu = rbgk::fast_frequencies(m, cfg);
    Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
    LogFormArgs base;
    for (int i = 0; i < 4; ++i) {
        auto si = static_cast<std::size_t>(i);
        base.x[si] = base.y[si] = m.species[si].density;
        base.mu[si] = base.eta[si] = nu[si];
        base.alpha[si] = m.species[si].temperature;
        base.beta[si] = (m.species[si].velocity - u).norm() + 0.05;
    }
    auto c0 = rbgk::log_form_coefficients(base, cfg);
    double z = 0.5 * (c0.lower() + c0.upper());
    double v0 = rbgk::log_form_value(c0, z);

    auto value_with = [&](auto mutate) {
        LogFormArgs args = base;
        mutate(args);
        auto c = rbgk::log_form_coefficients(args, cfg);
        REQUIRE(z > c.lower());
        REQUIRE(z < c.upper());
        return rbgk::log_form_value(c, z);
    };

    const double bump = 1.02;
    for (int i = 0; i < 4; ++i) {
        auto si = static_cast<std::size_t>(i);
        CHECK(value_with([&](LogFormArgs& a) { a.x[si] *= bump; }) > v0);
        CHECK(value_with([&](LogFormArgs& a) { a.alpha[si] *= bump; }) > v0);
        CHECK(value_with([&](LogFormArgs& a) { a.beta[si] *= bump; }) > v0);
        CHECK(value_with([&](LogFormArgs& a) { a.mu[si] *= bump; }) > v0);
        CHECK(value_with([&](LogFormArgs& a) { a.y[si] *= bump; }) < v0);
        CHECK(value_with([&](LogFormArgs& a) { a.eta[si] *= bump; }) < v0);
    }
}

TEST_CASE("roots from admissible moments obey the budget-extreme sandwich") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.5);
    auto budget = reference_budget(cfg);

    // Valid dominators: per-species temperature brackets and frequency
    // brackets evaluated at the budget extremes.
    LogFormArgs low_args, high_args;
    double r_max = 0.0;
    for (int i = 0; i < 4; ++i) {
        auto si = static_cast<std::size_t>(i);
        r_max = std::max(r_max,
                         (budget.a_upper[si] + budget.c_upper[si]) / (2.0 * budget.a_lower[si]));
    }
    for (int i = 0; i < 4; ++i) {
        auto si = static_cast<std::size_t>(i);
        double nu_low = 0.0, nu_high = 0.0;
        for (int j = 0; j < 4; ++j) {
            auto sj = static_cast<std::size_t>(j);
            nu_low += cfg.nu_elastic[si][sj] * budget.a_lower[sj];
            nu_high += cfg.nu_elastic[si][sj] * budget.a_upper[sj];
        }
        double light = std::pow(cfg.mu34() / cfg.mu12(), 1.5);
        switch (i) {
            case 0: nu_high += light * cfg.nu3412 * budget.a_upper[1]; break;
            case 1: nu_high += light * cfg.nu3412 * budget.a_upper[0]; break;
            case 2: nu_high += cfg.nu3412 * budget.a_upper[3]; break;
            default: nu_high += cfg.nu3412 * budget.a_upper[2]; break;
        }
        double t_low = cfg.mass[si] * budget.gamma_min /
                       (3.0 * cfg.kb * budget.a_upper[si] * budget.a_upper[si]);
        double t_high = cfg.mass[si] * budget.c_upper[si] / (3.0 * cfg.kb * budget.a_lower[si]);
        double r_i = (budget.a_upper[si] + budget.c_upper[si]) / (2.0 * budget.a_lower[si]);

        low_args.x[si] = budget.a_upper[si];
        low_args.y[si] = budget.a_lower[si];
        low_args.mu[si] = nu_high;
        low_args.eta[si] = nu_low;
        low_args.alpha[si] = t_high;
        low_args.beta[si] = r_i + r_max;

        high_args.x[si] = budget.a_lower[si];
        high_args.y[si] = budget.a_upper[si];
        high_args.mu[si] = nu_low;
        high_args.eta[si] = nu_high;
        high_args.alpha[si] = t_low;
        high_args.beta[si] = 0.0;
    }
    double target = rbgk::balance_target(cfg);
    double floor_root =
        rbgk::solve_log_form(rbgk::log_form_coefficients(low_args, cfg), target, 1e-12, 200, nullptr);
    double cap_root = rbgk::solve_log_form(rbgk::log_form_coefficients(high_args, cfg), target,
                                           1e-12, 200, nullptr);
    CHECK(floor_root > 0.0);
    CHECK(floor_root < cap_root);

    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 200; ++trial) {
        MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
        auto eq = rbgk::fast_equilibrium(m, cfg, 1e-12, 200);
        CHECK(eq.density[0] >= floor_root * (1.0 - 1e-9));
        CHECK(eq.density[0] <= cap_root * (1.0 + 1e-9));
    }
}

TEST_CASE("printed and relative-speed energy forms agree after summation") {
    PhysicalConfig cfg = support::generic_config(0.0, 0.4);
    auto budget = reference_budget(cfg);
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 50; ++trial) {
        MomentSet m = oracle::sample_admissible_moments(budget, cfg, rng);
        auto nu = rbgk::fast_frequencies(m, cfg);
        Vec3 u = rbgk::fast_mixture_velocity(m, nu, cfg);
        double printed = 0.0, relative = 0.0;
        for (int i = 0; i < 4; ++i) {
            auto si = static_cast<std::size_t>(i);
            const auto& sp = m.species[si];
            printed += nu[si] * sp.density * 0.5 * cfg.mass[si] *
                       (sp.velocity.norm2() - u.norm2());
            relative += nu[si] * sp.density * 0.5 * cfg.mass[si] * (sp.velocity - u).norm2();
        }
        double scale = std::abs(printed) + std::abs(relative) + 1.0;
        CHECK(std::abs(printed - relative) <= 1e-12 * scale);
    }
}
