#include "rbgk/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <utility>

#include "rbgk/equilibrium_fast.hpp"
#include "rbgk/equilibrium_slow.hpp"
#include "rbgk/errors.hpp"
#include "rbgk/maxwellian.hpp"
#include "rbgk/parallel.hpp"

namespace rbgk {

const char* model_name(Model m) { return m == Model::Slow ? "slow" : "fast"; }

DistributionField initial_guess(const BoundaryTable& bd, const PhaseGrid& grid) {
    DistributionField f(grid);
    auto v1 = grid.v1();
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        for (int j = 0; j < grid.nodes_x(); ++j) {
            auto dst = f.at(i, j);
            for (std::size_t k = 0; k < dst.size(); ++k) {
                dst[k] = v1[k] > 0.0 ? bd.left[si][k] : bd.right[si][k];
            }
        }
    }
    return f;
}

DistributionField budget_maxwellian_guess(const BoundaryBudget& budget, const PhysicalConfig& cfg,
                                          const PhaseGrid& grid) {
    DistributionField f(grid);
    auto v1 = grid.v1();
    auto v2 = grid.v2();
    auto v3 = grid.v3();
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        double n = 0.5 * (budget.a_lower[si] + budget.a_upper[si]);
        double energy = 0.5 * (budget.c_lower[si] + budget.c_upper[si]);
        double temp = cfg.mass[si] * energy / (3.0 * cfg.kb * n);
        std::vector<double> values(grid.velocity_count());
        for (std::size_t k = 0; k < values.size(); ++k) {
            values[k] = maxwellian(n, Vec3{}, temp, cfg.mass[si], cfg.kb, {v1[k], v2[k], v3[k]});
        }
        for (int j = 0; j < grid.nodes_x(); ++j) {
            auto dst = f.at(i, j);
            for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = values[k];
        }
    }
    return f;
}

void build_equilibrium_profile(Model model, const DistributionField& f, const PhysicalConfig& cfg,
                               const SolverOptions& opt, EquilibriumProfile& eq,
                               FrequencyProfile& freq, RootSweepStats* root_stats) {
    const PhaseGrid& grid = f.grid();
    auto nodes = static_cast<std::size_t>(grid.nodes_x());
    std::array<std::vector<double>, kSpecies> nu_nodes;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        nu_nodes[si].assign(nodes, 0.0);
        eq.density[si].assign(nodes, 0.0);
        eq.velocity[si].assign(nodes, Vec3{});
        eq.temperature[si].assign(nodes, 0.0);
    }

    std::vector<RootSweepStats> per_node(nodes);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for(nodes, opt.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            try {
                MomentSet m = moments_at(f, static_cast<int>(j), cfg);
                if (model == Model::Slow) {
                    auto nu = slow_frequencies(m, cfg);
                    double source = reaction_source(m, cfg);
                    SlowEquilibrium se = slow_parameters(m, nu, source, cfg);
                    for (int i = 0; i < kSpecies; ++i) {
                        auto si = static_cast<std::size_t>(i);
                        nu_nodes[si][j] = se.frequency[si];
                        eq.density[si][j] = se.density[si];
                        eq.velocity[si][j] = se.velocity[si];
                        eq.temperature[si][j] = se.temperature[si];
                    }
                } else {
                    FastEquilibrium fe =
                        fast_equilibrium(m, cfg, opt.root_tolerance, opt.root_max_iterations);
                    for (int i = 0; i < kSpecies; ++i) {
                        auto si = static_cast<std::size_t>(i);
                        nu_nodes[si][j] = fe.frequency[si];
                        eq.density[si][j] = fe.density[si];
                        eq.velocity[si][j] = fe.velocity;
                        eq.temperature[si][j] = fe.temperature;
                    }
                    per_node[j].worst_residual = fe.root.residual;
                    per_node[j].max_iterations = fe.root.iterations;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    });
    if (failure) std::rethrow_exception(failure);

    if (root_stats != nullptr) {
        RootSweepStats agg;
        for (const auto& s : per_node) {
            agg.worst_residual = std::max(agg.worst_residual, s.worst_residual);
            agg.max_iterations = std::max(agg.max_iterations, s.max_iterations);
        }
        *root_stats = agg;
    }
    freq = make_frequency_profile(nu_nodes, grid);
}

double model_mild_residual(Model model, const DistributionField& f, const BoundaryTable& bd,
                           const PhysicalConfig& cfg, const SolverOptions& opt) {
    EquilibriumProfile eq;
    FrequencyProfile freq;
    build_equilibrium_profile(model, f, cfg, opt, eq, freq);
    return mild_residual(f, bd, eq, freq, cfg, cfg.tau, opt.threads);
}

namespace {

void log_sweep(std::ostream* log, int sweep, double dist, double residual, double omega_margin,
               const RootSweepStats* root) {
    if (log == nullptr) return;
    char buf[256];
    char res[48];
    if (residual >= 0.0) {
        std::snprintf(res, sizeof(res), "%.6e", residual);
    } else {
        std::snprintf(res, sizeof(res), "-");
    }
    if (root != nullptr) {
        std::snprintf(buf, sizeof(buf),
                      "sweep %4d  d=%.6e  residual=%s  omega_margin=%+.6e  root_res=%.3e (%d it)",
                      sweep, dist, res, omega_margin, root->worst_residual, root->max_iterations);
    } else {
        std::snprintf(buf, sizeof(buf), "sweep %4d  d=%.6e  residual=%s  omega_margin=%+.6e",
                      sweep, dist, res, omega_margin);
    }
    (*log) << buf << '\n';
}

}  // namespace

std::pair<DistributionField, SolveReport> solve_fixed_point(
    Model model, const PhysicalConfig& cfg, const BoundaryTable& bd, const BoundaryBudget& budget,
    const PhaseGrid& grid, const SolverOptions& opt, std::ostream* log,
    const DistributionField* initial) {
    auto t0 = std::chrono::steady_clock::now();
    SolveReport report;
    report.model = model;

    DistributionField f = initial != nullptr ? *initial : initial_guess(bd, grid);
    {
        OmegaReport omega0 = omega_membership(f, budget);
        report.omega_margin_history.push_back(omega0.worst);
    }

    int rise_streak = 0;
    double prev_distance = std::numeric_limits<double>::infinity();
    EquilibriumProfile eq;
    FrequencyProfile freq;

    for (int sweep = 1; sweep <= opt.max_iterations; ++sweep) {
        RootSweepStats root;
        try {
            build_equilibrium_profile(model, f, cfg, opt, eq, freq,
                                      model == Model::Fast ? &root : nullptr);
        } catch (EquilibriumBreakdown& e) {
            e.set_sweep(sweep);
            throw;
        }
        DistributionField next = apply_mild_operator(bd, eq, freq, grid, cfg, cfg.tau, opt.threads);
        if (opt.relaxation < 1.0) {
            double w = opt.relaxation;
            auto& nv = next.raw();
            const auto& fv = f.raw();
            for (std::size_t k = 0; k < nv.size(); ++k) nv[k] = (1.0 - w) * fv[k] + w * nv[k];
        }
        double dist = metric_distance(next, f);
        OmegaReport omega = omega_membership(next, budget);

        report.distance_history.push_back(dist);
        report.omega_margin_history.push_back(omega.worst);
        if (model == Model::Fast) report.root_history.push_back(root);
        report.iterations = sweep;
        f = std::move(next);

        bool want_residual = log != nullptr && sweep % 10 == 0;
        double res_for_log = -1.0;
        if (want_residual) {
            res_for_log = model_mild_residual(model, f, bd, cfg, opt);
        }
        log_sweep(log, sweep, dist, res_for_log, omega.worst,
                  model == Model::Fast ? &root : nullptr);

        if (!std::isfinite(dist)) {
            report.status = SolveStatus::Diverged;
            report.final_omega = omega;
            report.final_distance = dist;
            break;
        }
        if (dist < opt.tolerance) {
            report.status = SolveStatus::Converged;
            report.converged = true;
            report.final_omega = omega;
            report.final_distance = dist;
            break;
        }
        rise_streak = dist > prev_distance ? rise_streak + 1 : 0;
        prev_distance = dist;
        if (rise_streak >= 5) {
            report.status = SolveStatus::Diverged;
            report.final_omega = omega;
            report.final_distance = dist;
            break;
        }
        if (sweep == opt.max_iterations) {
            report.status = SolveStatus::MaxIterations;
            report.final_omega = omega;
            report.final_distance = dist;
        }
    }

    report.final_residual = model_mild_residual(model, f, bd, cfg, opt);

    // Empirical contraction factor from the tail of the distance history.
    const auto& d = report.distance_history;
    double alpha = 0.0;
    std::size_t tail = d.size() > 6 ? d.size() - 5 : 1;
    for (std::size_t k = tail; k < d.size(); ++k) {
        if (d[k - 1] > 0.0) alpha = std::max(alpha, d[k] / d[k - 1]);
    }
    report.contraction_estimate = alpha;

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(f), std::move(report)};
}

namespace {

// Multiplies a copy of the base field by 1 + amp * cos(pi x) * exp(-|v|^2 / sigma).
DistributionField perturbed_probe(const DistributionField& base, double amp, double sigma) {
    const PhaseGrid& grid = base.grid();
    DistributionField out(grid);
    auto sp2 = grid.speed2();
    for (int i = 0; i < kSpecies; ++i) {
        for (int j = 0; j < grid.nodes_x(); ++j) {
            double cx = std::cos(std::numbers::pi * grid.x(j));
            auto src = base.at(i, j);
            auto dst = out.at(i, j);
            for (std::size_t k = 0; k < src.size(); ++k) {
                dst[k] = src[k] * (1.0 + amp * cx * std::exp(-sp2[k] / sigma));
            }
        }
    }
    return out;
}

}  // namespace

std::vector<ContractionSample> estimate_contraction(Model model, PhysicalConfig cfg,
                                                    const BoundaryData& bd, const PhaseGrid& grid,
                                                    std::span<const double> taus, int probe_pairs,
                                                    std::uint64_t seed, const SolverOptions& opt,
                                                    std::ostream* log) {
    std::vector<ContractionSample> table;
    table.reserve(taus.size());
    for (double tau : taus) {
        cfg.tau = tau;
        BoundaryTable bt = tabulate_boundary(bd, grid, cfg);
        BoundaryBudget budget = compute_boundary_budget(bt, cfg, grid);
        auto [fstar, report] = solve_fixed_point(model, cfg, bt, budget, grid, opt, nullptr);
        if (!report.converged) {
            throw RootSolveError("contraction: solve at tau = " + std::to_string(tau) +
                                 " did not converge");
        }

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> sigma_draw(2.0, 10.0);
        std::uniform_real_distribution<double> amp_draw(0.01, 0.04);

        ContractionSample sample;
        sample.tau = tau;
        for (int p = 0; p < probe_pairs; ++p) {
            double sigma_f = sigma_draw(rng);
            double sigma_g = sigma_draw(rng);
            double amp = amp_draw(rng);
            DistributionField pf(grid), pg(grid);
            for (int attempt = 0;; ++attempt) {
                pf = perturbed_probe(fstar, amp, sigma_f);
                pg = perturbed_probe(fstar, -amp, sigma_g);
                if (omega_membership(pf, budget).pass && omega_membership(pg, budget).pass) break;
                amp *= 0.5;
                ++sample.regenerated;
                if (attempt > 40) {
                    throw RootSolveError("contraction: could not place probes inside the solution "
                                         "space at tau = " +
                                         std::to_string(tau));
                }
            }
            double denom = metric_distance(pf, pg);
            if (denom == 0.0) {
                ++sample.skipped;
                continue;
            }
            EquilibriumProfile eqf, eqg;
            FrequencyProfile frf, frg;
            build_equilibrium_profile(model, pf, cfg, opt, eqf, frf);
            build_equilibrium_profile(model, pg, cfg, opt, eqg, frg);
            DistributionField phif = apply_mild_operator(bt, eqf, frf, grid, cfg, tau, opt.threads);
            DistributionField phig = apply_mild_operator(bt, eqg, frg, grid, cfg, tau, opt.threads);
            double num = metric_distance(phif, phig);
            sample.alpha = std::max(sample.alpha, num / denom);
            ++sample.probe_pairs;
        }
        if (log != nullptr) {
            (*log) << "tau=" << tau << "  alpha=" << sample.alpha
                   << "  probes=" << sample.probe_pairs << "  regenerated=" << sample.regenerated
                   << '\n';
        }
        table.push_back(sample);
    }
    return table;
}

}  // namespace rbgk
