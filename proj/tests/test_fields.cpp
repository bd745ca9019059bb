#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rbgk/errors.hpp"
#include "rbgk/fields.hpp"
#include "rbgk/maxwellian.hpp"
#include "test_support.hpp"

using rbgk::DistributionField;
using rbgk::PhaseGrid;
using rbgk::Vec3;

namespace {

void fill_maxwellian(std::span<double> dst, const PhaseGrid& g, double n, Vec3 u, double t,
                     double mass, double kb) {
    for (std::size_t k = 0; k < dst.size(); ++k) {
        dst[k] = rbgk::maxwellian(n, u, t, mass, kb, g.velocity(k));
    }
}

}  // namespace

TEST_CASE("species moments of drifted Maxwellians") {
    // Wider box than the solver default: the T = 1.5 tail needs vmax ~ 10 to
    // push the truncation error below the asserted tolerance.
    rbgk::GridSpec spec = support::desk_grid_spec();
    spec.vmax = 10.0;
    PhaseGrid g = rbgk::build_grid(spec);
    std::vector<double> f(g.velocity_count());
    fill_maxwellian(f, g, 2.0, {0.3, 0.0, 0.0}, 1.5, 1.0, 1.0);
    auto m = rbgk::species_moments(f, g, 1.0, 1.0);
    CHECK(m.density == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(m.velocity.x == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(std::abs(m.velocity.y) < 1e-12);
    CHECK(m.temperature == doctest::Approx(1.5).epsilon(1e-9));

    SUBCASE("unit Maxwellian") {
        fill_maxwellian(f, g, 1.0, {}, 1.0, 1.0, 1.0);
        auto u = rbgk::species_moments(f, g, 1.0, 1.0);
        CHECK(u.density == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(u.temperature == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("zero field is degenerate") {
        std::vector<double> zero(g.velocity_count(), 0.0);
        CHECK_THROWS_AS(rbgk::species_moments(zero, g, 1.0, 1.0), rbgk::FieldError);
    }
}

TEST_CASE("maxwellian point values") {
    // peak value n (m / 2 pi k T)^{3/2}
    CHECK(rbgk::maxwellian(1.0, {}, 1.0, 1.0, 1.0, {0.0, 0.0, 0.0}) ==
          doctest::Approx(std::pow(2.0 * std::numbers::pi, -1.5)).epsilon(1e-14));
    Vec3 u{0.5, -0.2, 0.1};
    CHECK(rbgk::maxwellian(2.5, u, 0.8, 3.0, 1.0, u) ==
          doctest::Approx(2.5 * std::pow(3.0 / (2.0 * std::numbers::pi * 0.8), 1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(rbgk::maxwellian(-1.0, u, 1.0, 1.0, 1.0, u), rbgk::FieldError);
}

TEST_CASE("moment closure: moments -> maxwellian -> moments is a fixed point") {
    PhaseGrid g = rbgk::build_grid(support::desk_grid_spec());
    std::vector<double> f(g.velocity_count());
    fill_maxwellian(f, g, 1.7, {0.2, 0.1, -0.3}, 1.2, 2.0, 1.0);
    auto m1 = rbgk::species_moments(f, g, 2.0, 1.0);
    fill_maxwellian(f, g, m1.density, m1.velocity, m1.temperature, 2.0, 1.0);
    auto m2 = rbgk::species_moments(f, g, 2.0, 1.0);
    CHECK(m2.density == doctest::Approx(m1.density).epsilon(1e-9));
    CHECK(m2.velocity.x == doctest::Approx(m1.velocity.x).epsilon(1e-8));
    CHECK(m2.temperature == doctest::Approx(m1.temperature).epsilon(1e-9));
}

TEST_CASE("global moments identities") {
    rbgk::PhysicalConfig cfg = support::unit_config();
    rbgk::MomentSet m;
    SUBCASE("identical species collapse to the common values") {
        for (int i = 0; i < 4; ++i) {
            m.species[i].density = 0.7;
            m.species[i].velocity = {0.25, 0.0, 0.0};
            m.species[i].temperature = 1.3;
        }
        rbgk::global_moments(m, cfg);
        CHECK(m.density == doctest::Approx(2.8));
        CHECK(m.velocity.x == doctest::Approx(0.25));
        CHECK(m.temperature == doctest::Approx(1.3));
    }
    SUBCASE("counter-drifting pair gains kinetic temperature") {
        double u = 0.4;
        for (int i = 0; i < 4; ++i) {
            m.species[i].density = 1.0;
            m.species[i].velocity = {};
            m.species[i].temperature = 1.0;
        }
        m.species[0].velocity = {u, 0.0, 0.0};
        m.species[1].velocity = {-u, 0.0, 0.0};
        rbgk::global_moments(m, cfg);
        CHECK(m.velocity.norm() < 1e-15);
        // hand reduction: T = T0 + (1/3nk) sum rho_i |U_i|^2
        double expected = 1.0 + (2.0 * u * u) / (3.0 * 4.0);
        CHECK(m.temperature == doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("global kinetic energy identity holds as computed") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> d(0.5, 2.0);
        for (int i = 0; i < 4; ++i) {
            m.species[i].density = d(rng);
            m.species[i].velocity = {d(rng) -  1.25, d(rng) - 1.25, d(rng) - 1.25};
            m.species[i].temperature = d(rng);
        }
        rbgk::global_moments(m, cfg);
        double lhs = m.density * cfg.kb * m.temperature;
        double rhs = 0.0;
        for (int i = 0; i < 4; ++i) {
            rhs += m.species[i].density * cfg.kb * m.species[i].temperature;
            rhs += cfg.mass[i] * m.species[i].density *
                   (m.species[i].velocity.norm2() - m.velocity.norm2()) / 3.0;
        }
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("weighted norm values and homogeneity") {
    PhaseGrid g = rbgk::build_grid(support::desk_grid_spec());
    std::vector<double> f(g.velocity_count(), 0.0);
    CHECK(rbgk::weighted_norm(f, g) == 0.0);
    fill_maxwellian(f, g, 1.0, {}, 1.0, 1.0, 1.0);
    // integral of M (1 + |v|^2) = n + 3 n k T / m = 4
    CHECK(rbgk::weighted_norm(f, g) == doctest::Approx(4.0).epsilon(1e-9));
    std::vector<double> f2(f);
    for (auto& v : f2) v *= 2.0;
    CHECK(rbgk::weighted_norm(f2, g) == doctest::Approx(2.0 * rbgk::weighted_norm(f, g)));
}

TEST_CASE("metric is a pseudo-metric") {
    PhaseGrid g = rbgk::build_grid(support::small_grid_spec());
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    DistributionField a(g), b(g), c(g);
    for (auto* f : {&a, &b, &c}) {
        for (double& v : f->raw()) v = d(rng);
    }
    CHECK(rbgk::metric_distance(a, a) == 0.0);
    double ab = rbgk::metric_distance(a, b);
    double ba = rbgk::metric_distance(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-15));
    double ac = rbgk::metric_distance(a, c);
    double cb = rbgk::metric_distance(c, b);
    CHECK(ab <= ac + cb + 1e-12);
    CHECK(ab > 0.0);

    SUBCASE("distance to zero is the summed sup norm") {
        DistributionField zero(g);
        double dz = rbgk::metric_distance(a, zero);
        double manual = 0.0;
        for (int i = 0; i < 4; ++i) {
            double worst = 0.0;
            for (int j = 0; j < g.nodes_x(); ++j) {
                worst = std::max(worst, rbgk::weighted_norm(a.at(i, j), g));
            }
            manual += worst;
        }
        CHECK(dz == doctest::Approx(manual).epsilon(1e-13));
    }
}

TEST_CASE("omega membership margins") {
    rbgk::PhysicalConfig cfg = support::unit_config();
    PhaseGrid g = rbgk::build_grid(support::desk_grid_spec());
    rbgk::BoundaryTable table = rbgk::tabulate_boundary(support::unit_boundary(), g, cfg);
    rbgk::BoundaryBudget budget = rbgk::compute_boundary_budget(table, cfg, g);

    DistributionField f(g);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < g.nodes_x(); ++j) {
            auto dst = f.at(i, j);
            auto v1 = g.v1();
            for (std::size_t k = 0; k < dst.size(); ++k) {
                dst[k] = v1[k] > 0.0 ? table.left[i][k] : table.right[i][k];
            }
        }
    }
    auto report = rbgk::omega_membership(f, budget);
    CHECK(report.pass);
    CHECK(report.worst > 0.0);

    SUBCASE("zero field fails the density floor with the expected margin") {
        DistributionField zero(g);
        auto bad = rbgk::omega_membership(zero, budget);
        CHECK_FALSE(bad.pass);
        CHECK(bad.species[0].density_low == doctest::Approx(-budget.a_lower[0]));
    }
    SUBCASE("one negative node fails positivity") {
        f.at(1, 2)[7] = -1e-3;
        auto bad = rbgk::omega_membership(f, budget);
        CHECK_FALSE(bad.pass);
        CHECK(bad.species[1].positivity < 0.0);
    }
}

TEST_CASE("Schwarz defect is invariant under v1 reflection") {
    rbgk::PhysicalConfig cfg = support::unit_config();
    PhaseGrid g = rbgk::build_grid(support::small_grid_spec());
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(0.1, 1.0);
    std::vector<double> f(g.velocity_count());
    for (auto& v : f) v = d(rng);

    auto defect = [&](const std::vector<double>& vals) {
        double s0 = 0.0, s2 = 0.0, m1 = 0.0;
        auto v1 = g.v1();
        auto sp2 = g.speed2();
        for (std::size_t k = 0; k < vals.size(); ++k) {
            s0 += vals[k];
            s2 += vals[k] * sp2[k];
            m1 += vals[k] * v1[k];
        }
        double w = g.cell_weight();
        return (s0 * w) * (s2 * w) - (m1 * w) * (m1 * w);
    };

    std::vector<double> reflected(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) reflected[g.reflect_v1(k)] = f[k];
    CHECK(defect(f) == doctest::Approx(defect(reflected)).epsilon(1e-12));
    (void)cfg;
}
