#include "rbgk/equilibrium_fast.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbgk/errors.hpp"

namespace rbgk {

namespace {

// Sum over species of nu_i n^(i) [ m_i (|U^(i)|^2 - |U~|^2)/2 + (3/2) k T^(i) ],
// the constant part of the numerator of F.
double energy_numerator(const MomentSet& m, const std::array<double, kSpecies>& nu,
                        const Vec3& u_mix, const PhysicalConfig& cfg) {
    double u2 = u_mix.norm2();
    double h = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        const auto& sp = m.species[si];
        h += nu[si] * sp.density *
             (0.5 * cfg.mass[si] * (sp.velocity.norm2() - u2) + 1.5 * cfg.kb * sp.temperature);
    }
    return h;
}

double weighted_density(const MomentSet& m, const std::array<double, kSpecies>& nu) {
    double s = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        s += nu[si] * m.species[si].density;
    }
    return s;
}

LogFormCoefficients balance_coefficients(const MomentSet& m, const std::array<double, kSpecies>& nu,
                                         const Vec3& u_mix, const PhysicalConfig& cfg) {
    const double n1 = m.species[0].density;
    LogFormCoefficients c;
    c.a0 = std::log(nu[2] * nu[3] / nu[1]);
    c.b1 = nu[0];
    c.b0 = nu[1] * m.species[1].density - nu[0] * n1;
    c.c0 = nu[2] * m.species[2].density + nu[0] * n1;
    c.d0 = nu[3] * m.species[3].density + nu[0] * n1;
    c.e0 = 1.5 * cfg.delta_e * weighted_density(m, nu);
    c.g0 = energy_numerator(m, nu, u_mix, cfg) - cfg.delta_e * nu[0] * n1;
    c.g1 = cfg.delta_e * nu[0];
    return c;
}

}  // namespace

std::array<double, kSpecies> fast_frequencies(const MomentSet& m, const PhysicalConfig& cfg) {
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
    double suppression = std::pow(cfg.mu34() / cfg.mu12(), 1.5) *
                         std::exp(-cfg.delta_e / (cfg.kb * m.temperature));
    std::array<double, kSpecies> nu{};
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        double elastic = 0.0;
        for (int j = 0; j < kSpecies; ++j) {
            elastic += cfg.nu_elastic[si][static_cast<std::size_t>(j)] *
                       m.species[static_cast<std::size_t>(j)].density;
        }
        double chem;
        switch (i) {
            case 0: chem = suppression * cfg.nu3412 * m.species[1].density; break;
            case 1: chem = suppression * cfg.nu3412 * m.species[0].density; break;
            case 2: chem = cfg.nu3412 * m.species[3].density; break;
            default: chem = cfg.nu3412 * m.species[2].density; break;
        }
        nu[si] = elastic + chem;
    }
    return nu;
}

Vec3 fast_mixture_velocity(const MomentSet& m, const std::array<double, kSpecies>& nu,
                           const PhysicalConfig& cfg) {
    Vec3 weighted{};
    double total = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        double w = nu[si] * cfg.mass[si] * m.species[si].density;
        weighted += w * m.species[si].velocity;
        total += w;
    }
    return weighted / total;
}

double fast_temperature_of(double x, const MomentSet& m, const std::array<double, kSpecies>& nu,
                           const Vec3& u_mix, const PhysicalConfig& cfg) {
    double h = energy_numerator(m, nu, u_mix, cfg);
    double num = h + cfg.delta_e * nu[0] * (x - m.species[0].density);
    double t = num / (1.5 * cfg.kb * weighted_density(m, nu));
    if (!(t > 0.0)) {
        throw EquilibriumBreakdown("fast equilibrium: candidate density " + std::to_string(x) +
                                       " yields nonpositive temperature " + std::to_string(t),
                                   0, "temperature");
    }
    return t;
}

std::pair<double, double> fast_constraint_bracket(const MomentSet& m,
                                                  const std::array<double, kSpecies>& nu,
                                                  const Vec3& u_mix, const PhysicalConfig& cfg) {
    const double n1 = m.species[0].density;
    // Temperature positivity, written with the relative speeds |U^(i) - U~|.
    double rel = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        const auto& sp = m.species[si];
        rel += nu[si] * sp.density *
               (0.5 * cfg.mass[si] * (sp.velocity - u_mix).norm2() + 1.5 * cfg.kb * sp.temperature);
    }
    double lo = std::max({0.0, n1 - (nu[1] / nu[0]) * m.species[1].density,
                          n1 - rel / (nu[0] * cfg.delta_e)});
    double hi = std::min(n1 + (nu[2] / nu[0]) * m.species[2].density,
                         n1 + (nu[3] / nu[0]) * m.species[3].density);
    if (!(lo < hi)) {
        throw RootSolveError("fast equilibrium: empty constraint bracket [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "]");
    }
    return {lo, hi};
}

double fast_solve_n1(const MomentSet& m, const std::array<double, kSpecies>& nu, const Vec3& u_mix,
                     const PhysicalConfig& cfg, double tol, int max_iter, RootDiagnostics* diag) {
    LogFormCoefficients c = balance_coefficients(m, nu, u_mix, cfg);
    return solve_log_form(c, balance_target(cfg), tol, max_iter, diag);
}

FastEquilibrium fast_parameters(const MomentSet& m, const std::array<double, kSpecies>& nu,
                                double n1, const PhysicalConfig& cfg) {
    FastEquilibrium eq;
    eq.frequency = nu;
    eq.velocity = fast_mixture_velocity(m, nu, cfg);
    eq.density[0] = n1;
    double shift = nu[0] * (n1 - m.species[0].density);
    for (int i = 1; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        eq.density[si] = m.species[si].density + kLambda[si] * shift / nu[si];
        if (!(eq.density[si] > 0.0)) {
            throw EquilibriumBreakdown("fast equilibrium: reactive density for species " +
                                           std::to_string(i + 1) + " is " +
                                           std::to_string(eq.density[si]),
                                       i, "density");
        }
    }
    eq.temperature = fast_temperature_of(n1, m, nu, eq.velocity, cfg);
    return eq;
}

FastEquilibrium fast_equilibrium(const MomentSet& m, const PhysicalConfig& cfg, double tol,
                                 int max_iter) {
    auto nu = fast_frequencies(m, cfg);
    Vec3 u_mix = fast_mixture_velocity(m, nu, cfg);
    RootDiagnostics diag;
    double n1 = fast_solve_n1(m, nu, u_mix, cfg, tol, max_iter, &diag);
    FastEquilibrium eq = fast_parameters(m, nu, n1, cfg);
    eq.root = diag;
    return eq;
}

// ---------------------------------------------------------------------------

double LogFormCoefficients::lower() const {
    return std::max({0.0, -b0 / b1, -g0 / g1});
}

double LogFormCoefficients::upper() const {
    return std::min(c0 / b1, d0 / b1);
}

LogFormCoefficients log_form_coefficients(const LogFormArgs& a, const PhysicalConfig& cfg) {
    LogFormCoefficients c;
    c.a0 = std::log(a.mu[2] * a.mu[3] / a.eta[1]);
    c.b1 = a.mu[0];
    c.b0 = a.mu[1] * a.x[1] - a.eta[0] * a.y[0];
    c.c0 = a.eta[2] * a.y[2] + a.eta[0] * a.y[0];
    c.d0 = a.eta[3] * a.y[3] + a.eta[0] * a.y[0];
    double eta_y = 0.0;
    double kinetic = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        eta_y += a.eta[si] * a.y[si];
        kinetic += a.mu[si] * a.x[si] *
                   (0.5 * cfg.mass[si] * a.beta[si] * a.beta[si] + 1.5 * cfg.kb * a.alpha[si]);
    }
    c.e0 = 1.5 * cfg.delta_e * eta_y;
    c.g0 = kinetic - cfg.delta_e * a.eta[0] * a.y[0];
    c.g1 = cfg.delta_e * a.mu[0];
    return c;
}

double log_form_value(const LogFormCoefficients& c, double z) {
    return c.a0 + std::log(z) + std::log(c.b0 + c.b1 * z) - std::log(c.c0 - c.b1 * z) -
           std::log(c.d0 - c.b1 * z) - c.e0 / (c.g0 + c.g1 * z);
}

double log_form_slope(const LogFormCoefficients& c, double z) {
    double den = c.g0 + c.g1 * z;
    return 1.0 / z + c.b1 / (c.b0 + c.b1 * z) + c.b1 / (c.c0 - c.b1 * z) +
           c.b1 / (c.d0 - c.b1 * z) + c.e0 * c.g1 / (den * den);
}

double balance_target(const PhysicalConfig& cfg) { return 1.5 * std::log(cfg.mu12() / cfg.mu34()); }

double solve_log_form(const LogFormCoefficients& c, double target, double tol, int max_iter,
                      RootDiagnostics* diag) {
    double lo = c.lower();
    double hi = c.upper();
    if (!(lo < hi)) {
        throw RootSolveError("log-form root: empty bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    }
    double width = hi - lo;
    // The endpoints are genuine log singularities; step inside before
    // evaluating.
    double margin = 1e-12 * width;
    double a = lo + margin;
    double b = hi - margin;
    double fa = log_form_value(c, a) - target;
    double fb = log_form_value(c, b) - target;
    if (fa > 0.0 || fb < 0.0) {
        margin *= 1e-3;
        a = lo + margin;
        b = hi - margin;
        fa = log_form_value(c, a) - target;
        fb = log_form_value(c, b) - target;
        if (fa > 0.0 || fb < 0.0) {
            throw RootSolveError("log-form root: bracket endpoints do not straddle the target "
                                 "(residuals " +
                                 std::to_string(fa) + ", " + std::to_string(fb) + ")");
        }
    }

    RootDiagnostics local;
    local.lower = lo;
    local.upper = hi;
    double z = 0.5 * (a + b);
    double f = 0.0;
    bool done = false;
    int bisections = 0;
    for (int it = 0; it < max_iter; ++it) {
        f = log_form_value(c, z) - target;
        local.iterations = it + 1;
        if (std::abs(f) <= tol) {
            done = true;
            break;
        }
        if (f < 0.0) {
            a = z;
        } else {
            b = z;
        }
        double zn = z - f / log_form_slope(c, z);
        if (!(zn > a && zn < b)) {
            zn = 0.5 * (a + b);
            ++bisections;
        }
        z = zn;
    }
    local.residual = std::abs(f);
    local.bisection_steps = bisections;
    if (diag != nullptr) *diag = local;
    if (!done) {
        throw RootSolveError("log-form root: residual " + std::to_string(local.residual) +
                             " above tolerance " + std::to_string(tol) + " after " +
                             std::to_string(max_iter) + " iterations");
    }
    return z;
}

}  // namespace rbgk
