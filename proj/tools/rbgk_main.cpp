#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbgk/budget.hpp"
#include "rbgk/config_file.hpp"
#include "rbgk/diagnostics.hpp"
#include "rbgk/errors.hpp"
#include "rbgk/output.hpp"
#include "rbgk/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitBreakdown = 3;

void print_budget(std::ostream& os, const rbgk::BoundaryBudget& b) {
    os << "wall budgets per species (a_l <= n <= a_u, c_l <= energy <= c_u):\n";
    for (int i = 0; i < rbgk::kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        os << "  species " << i + 1 << ": a = [" << b.a_lower[si] << ", " << b.a_upper[si]
           << "], c = [" << b.c_lower[si] << ", " << b.c_upper[si]
           << "], gamma_l = " << b.gamma_lower[si] << ", a_s = " << b.a_sing[si]
           << ", c_s = " << b.c_sing[si] << "\n";
    }
    os << "aggregates: a = [" << b.a_min << ", " << b.a_max << "], c = [" << b.c_min << ", "
       << b.c_max << "], gamma_l = " << b.gamma_min << "\n";
    os << "temperature bracket: [" << b.temp_lower << ", " << b.temp_upper << "]\n";
}

int run_solve(const std::string& config_path, const std::string& model_override,
              const std::string& out_dir, const std::string& resume_path, bool dump_final,
              double tau_override, double tol_override, int max_iter_override) {
    rbgk::RunConfig run = rbgk::load_run_config(config_path);
    if (!model_override.empty()) {
        run.solver.model = model_override == "fast" ? rbgk::Model::Fast : rbgk::Model::Slow;
    }
    if (tau_override > 0.0) run.physical.tau = tau_override;
    if (tol_override > 0.0) run.solver.options.tolerance = tol_override;
    if (max_iter_override > 0) run.solver.options.max_iterations = max_iter_override;

    rbgk::PhaseGrid grid = rbgk::resolve_grid(run);
    rbgk::BoundaryTable table = rbgk::tabulate_boundary(run.boundary, grid, run.physical);
    rbgk::BoundaryBudget budget = rbgk::compute_boundary_budget(table, run.physical, grid);

    std::filesystem::path out(out_dir);
    std::ostringstream iteration_log;

    std::optional<rbgk::DistributionField> initial;
    if (!resume_path.empty()) {
        initial = rbgk::load_field(resume_path, grid);
    }

    auto [field, report] = rbgk::solve_fixed_point(
        run.solver.model, run.physical, table, budget, grid, run.solver.options, &iteration_log,
        initial ? &*initial : nullptr);

    std::vector<rbgk::MomentSet> moments;
    moments.reserve(static_cast<std::size_t>(grid.nodes_x()));
    for (int j = 0; j < grid.nodes_x(); ++j) moments.push_back(rbgk::moments_at(field, j, run.physical));
    rbgk::EquilibriumProfile eq;
    rbgk::FrequencyProfile freq;
    rbgk::build_equilibrium_profile(run.solver.model, field, run.physical, run.solver.options, eq,
                                    freq);

    rbgk::write_profiles(out / "profiles", grid, moments, eq, freq);
    rbgk::atomic_write(out / "logs" / "iterations.log", iteration_log.str());
    rbgk::write_solve_report(out / "reports" / "solve.txt", report);

    rbgk::BoundReport species_bounds = rbgk::check_species_bounds(moments, budget, run.physical);
    rbgk::BoundReport eq_bounds = rbgk::check_global_and_equilibrium_bounds(
        moments, eq, budget, run.physical, run.solver.model);
    {
        std::ostringstream os;
        rbgk::write_bound_report(os, species_bounds);
        rbgk::write_bound_report(os, eq_bounds);
        rbgk::atomic_write(out / "reports" / "bounds.txt", os.str());
    }
    if (dump_final) {
        rbgk::dump_field(out / "fields" / "final.field", field);
    }

    if (!report.converged) {
        std::cerr << "solver did not converge after " << report.iterations
                  << " sweeps (status: " << (report.status == rbgk::SolveStatus::Diverged
                                                 ? "diverged"
                                                 : "max iterations")
                  << ", last d = " << report.final_distance << ")\n";
        return kExitNoConvergence;
    }
    std::cout << "converged in " << report.iterations << " sweeps, d = " << report.final_distance
              << ", mild residual = " << report.final_residual << ", outputs in " << out_dir
              << "\n";
    return kExitOk;
}

int run_contraction(const std::string& config_path, const std::string& model_override,
                    const std::string& out_dir, const std::string& tau_list, int probes) {
    rbgk::RunConfig run = rbgk::load_run_config(config_path);
    if (!model_override.empty()) {
        run.solver.model = model_override == "fast" ? rbgk::Model::Fast : rbgk::Model::Slow;
    }
    std::vector<double> taus;
    std::stringstream ss(tau_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            taus.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw rbgk::ConfigError("contraction: bad tau value '" + item + "'");
        }
    }
    if (taus.empty()) throw rbgk::ConfigError("contraction: empty tau list");

    rbgk::PhaseGrid grid = rbgk::resolve_grid(run);
    auto samples = rbgk::estimate_contraction(run.solver.model, run.physical, run.boundary, grid,
                                              taus, probes, run.solver.seed, run.solver.options,
                                              &std::cout);
    rbgk::write_contraction_table(std::filesystem::path(out_dir) / "reports" / "contraction.txt",
                                  samples);
    return kExitOk;
}

int run_check(const std::string& config_path) {
    rbgk::RunConfig run = rbgk::load_run_config(config_path);
    rbgk::PhaseGrid grid = rbgk::resolve_grid(run);
    rbgk::BoundaryTable table = rbgk::tabulate_boundary(run.boundary, grid, run.physical);
    rbgk::BoundaryBudget budget = rbgk::compute_boundary_budget(table, run.physical, grid);
    std::cout << "config ok: model " << rbgk::model_name(run.solver.model) << ", tau "
              << run.physical.tau << ", deltaE " << run.physical.delta_e << ", grid " << grid.cells()
              << "x" << grid.nv1() << "x" << grid.nv23() << "x" << grid.nv23() << " (vmax "
              << grid.vmax() << ")\n";
    print_budget(std::cout, budget);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-velocity solver for the stationary reactive BGK slab problems"};
    app.require_subcommand(1);

    std::string config_path, model, out_dir = "out", resume_path, tau_list = "25,50,100,200,400";
    bool dump_final = false;
    double tau_override = 0.0, tol_override = 0.0;
    int max_iter_override = 0, probes = 6;

    CLI::App* solve = app.add_subcommand("solve", "run the fixed-point solver");
    solve->add_option("--config", config_path, "config file")->required();
    solve->add_option("--model", model, "slow or fast")->check(CLI::IsMember({"slow", "fast"}));
    solve->add_option("--out", out_dir, "output directory");
    solve->add_option("--resume", resume_path, "start from a field dump");
    solve->add_flag("--dump-field", dump_final, "write the final field to fields/final.field");
    solve->add_option("--tau", tau_override, "override the Knudsen number");
    solve->add_option("--tol", tol_override, "override the metric tolerance");
    solve->add_option("--max-iter", max_iter_override, "override the sweep cap");

    CLI::App* contraction = app.add_subcommand("contraction", "measure contraction factors");
    contraction->add_option("--config", config_path, "config file")->required();
    contraction->add_option("--model", model, "slow or fast")
        ->check(CLI::IsMember({"slow", "fast"}));
    contraction->add_option("--out", out_dir, "output directory");
    contraction->add_option("--tau-list", tau_list, "comma-separated tau values");
    contraction->add_option("--probes", probes, "probe pairs per tau");

    CLI::App* check = app.add_subcommand("check-config", "validate a config and print budgets");
    check->add_option("--config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            return run_solve(config_path, model, out_dir, resume_path, dump_final, tau_override,
                             tol_override, max_iter_override);
        }
        if (contraction->parsed()) {
            return run_contraction(config_path, model, out_dir, tau_list, probes);
        }
        return run_check(config_path);
    } catch (const rbgk::EquilibriumBreakdown& e) {
        std::cerr << "equilibrium breakdown";
        if (e.sweep() >= 0) std::cerr << " at sweep " << e.sweep();
        std::cerr << ": " << e.what() << "\n";
        return kExitBreakdown;
    } catch (const rbgk::RootSolveError& e) {
        std::cerr << "root solve failure: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
