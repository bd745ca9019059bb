#include "rbgk/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rbgk/budget.hpp"
#include "rbgk/errors.hpp"

namespace rbgk {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

using Section = std::map<std::string, std::string>;
using Sections = std::map<std::string, Section>;

Sections parse_sections(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file " + path.string());
    Sections sections;
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno) + " of " + path.string());
            }
            current = trim(line.substr(1, line.size() - 2));
            sections[current];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno) +
                              " of " + path.string());
        }
        if (current.empty()) {
            throw ConfigError("config: key outside any section at line " + std::to_string(lineno));
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!sections[current].emplace(key, value).second) {
            throw ConfigError("config: duplicate key '" + key + "' in section [" + current + "]");
        }
    }
    return sections;
}

class SectionReader {
  public:
    SectionReader(const Sections& all, const std::string& name) : name_(name) {
        auto it = all.find(name);
        if (it != all.end()) entries_ = &it->second;
    }

    bool present() const { return entries_ != nullptr; }

    bool has(const std::string& key) const {
        return entries_ != nullptr && entries_->count(key) > 0;
    }

    double number(const std::string& key) const {
        const std::string& raw = fetch(key);
        try {
            std::size_t pos = 0;
            double v = std::stod(raw, &pos);
            if (pos != raw.size()) throw std::invalid_argument(raw);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' in [" + name_ +
                              "] is not a number: " + raw);
        }
    }

    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    long integer(const std::string& key) const {
        double v = number(key);
        long n = static_cast<long>(v);
        if (static_cast<double>(n) != v) {
            throw ConfigError("config: key '" + key + "' in [" + name_ + "] must be an integer");
        }
        return n;
    }

    long integer_or(const std::string& key, long fallback) const {
        return has(key) ? integer(key) : fallback;
    }

    std::string text(const std::string& key) const { return fetch(key); }

    void mark_known(const std::string& key) { known_.push_back(key); }

    void reject_unknown() const {
        if (entries_ == nullptr) return;
        for (const auto& [key, value] : *entries_) {
            if (std::find(known_.begin(), known_.end(), key) == known_.end()) {
                throw ConfigError("config: unknown key '" + key + "' in section [" + name_ + "]");
            }
        }
    }

  private:
    const std::string& fetch(const std::string& key) const {
        if (entries_ == nullptr) {
            throw ConfigError("config: missing section [" + name_ + "]");
        }
        auto it = entries_->find(key);
        if (it == entries_->end()) {
            throw ConfigError("config: missing key '" + key + "' in section [" + name_ + "]");
        }
        return it->second;
    }

    std::string name_;
    const Section* entries_ = nullptr;
    std::vector<std::string> known_;
};

PhysicalConfig read_physical(const Sections& sections) {
    PhysicalConfig cfg;
    SectionReader species(sections, "species");
    for (int i = 0; i < kSpecies; ++i) {
        std::string mi = "m" + std::to_string(i + 1);
        std::string ei = "E" + std::to_string(i + 1);
        cfg.mass[static_cast<std::size_t>(i)] = species.number(mi);
        cfg.bond_energy[static_cast<std::size_t>(i)] = species.number(ei);
        species.mark_known(mi);
        species.mark_known(ei);
    }
    species.reject_unknown();

    SectionReader inter(sections, "interaction");
    double nu_all = inter.number_or("nu_all", 0.0);
    double chi_all = inter.number_or("chi_all", 0.0);
    inter.mark_known("nu_all");
    inter.mark_known("chi_all");
    for (int i = 0; i < kSpecies; ++i) {
        for (int j = i; j < kSpecies; ++j) {
            std::string suffix = std::to_string(i + 1) + std::to_string(j + 1);
            std::string nu_key = "nu" + suffix;
            std::string chi_key = "chi" + suffix;
            double nu = inter.number_or(nu_key, nu_all);
            double chi = inter.number_or(chi_key, chi_all);
            auto si = static_cast<std::size_t>(i);
            auto sj = static_cast<std::size_t>(j);
            cfg.nu_elastic[si][sj] = nu;
            cfg.nu_elastic[sj][si] = nu;
            cfg.chi[si][sj] = chi;
            cfg.chi[sj][si] = chi;
            inter.mark_known(nu_key);
            inter.mark_known(chi_key);
        }
    }
    cfg.nu1234 = inter.number_or("nu1234", 0.0);
    cfg.nu3412 = inter.number_or("nu3412", 0.0);
    cfg.tau = inter.number("tau");
    cfg.kb = inter.number_or("k", 1.0);
    inter.mark_known("nu1234");
    inter.mark_known("nu3412");
    inter.mark_known("tau");
    inter.mark_known("k");
    inter.reject_unknown();

    cfg.validate();
    return cfg;
}

InflowSpec parse_inflow(const std::string& value, const std::string& key) {
    std::istringstream ss(value);
    std::string kind;
    ss >> kind;
    if (kind != "maxwellian") {
        throw ConfigError("config: inflow '" + key + "' must start with 'maxwellian', got '" +
                          kind + "' (tabulated inflow is available through the library API only)");
    }
    MaxwellianInflow m;
    if (!(ss >> m.density >> m.drift_x >> m.temperature)) {
        throw ConfigError("config: inflow '" + key +
                          "' needs three numbers: density drift_x temperature");
    }
    std::string extra;
    if (ss >> extra) {
        throw ConfigError("config: inflow '" + key + "' has trailing content '" + extra + "'");
    }
    if (!(m.density > 0.0) || !(m.temperature > 0.0)) {
        throw ConfigError("config: inflow '" + key + "' needs positive density and temperature");
    }
    return InflowSpec(m);
}

BoundaryData read_boundary(const Sections& sections) {
    BoundaryData bd;
    SectionReader b(sections, "boundary");
    for (int i = 0; i < kSpecies; ++i) {
        std::string lk = "left" + std::to_string(i + 1);
        std::string rk = "right" + std::to_string(i + 1);
        bd.left[static_cast<std::size_t>(i)] = parse_inflow(b.text(lk), lk);
        bd.right[static_cast<std::size_t>(i)] = parse_inflow(b.text(rk), rk);
        b.mark_known(lk);
        b.mark_known(rk);
    }
    b.reject_unknown();
    return bd;
}

}  // namespace

PhysicalConfig load_config(const std::filesystem::path& path) {
    return read_physical(parse_sections(path));
}

RunConfig load_run_config(const std::filesystem::path& path) {
    Sections sections = parse_sections(path);
    RunConfig run;
    run.physical = read_physical(sections);
    run.boundary = read_boundary(sections);

    SectionReader grid(sections, "grid");
    run.grid.nx = static_cast<int>(grid.integer("nx"));
    run.grid.nv1 = static_cast<int>(grid.integer("nv1"));
    run.grid.nv23 = static_cast<int>(grid.integer("nv23"));
    run.vmax_auto = !grid.has("vmax");
    run.grid.vmax = grid.number_or("vmax", 0.0);
    run.grid.gauss_tol = grid.number_or("gauss_tol", 1e-8);
    grid.mark_known("nx");
    grid.mark_known("nv1");
    grid.mark_known("nv23");
    grid.mark_known("vmax");
    grid.mark_known("gauss_tol");
    grid.reject_unknown();

    SectionReader solver(sections, "solver");
    if (solver.present()) {
        if (solver.has("model")) {
            std::string m = solver.text("model");
            if (m == "slow") {
                run.solver.model = Model::Slow;
            } else if (m == "fast") {
                run.solver.model = Model::Fast;
            } else {
                throw ConfigError("config: model must be 'slow' or 'fast', got '" + m + "'");
            }
        }
        run.solver.options.tolerance = solver.number_or("tol", run.solver.options.tolerance);
        run.solver.options.max_iterations =
            static_cast<int>(solver.integer_or("max_iter", run.solver.options.max_iterations));
        run.solver.options.relaxation = solver.number_or("relax", run.solver.options.relaxation);
        run.solver.options.threads =
            static_cast<int>(solver.integer_or("threads", run.solver.options.threads));
        run.solver.options.root_tolerance =
            solver.number_or("root_tol", run.solver.options.root_tolerance);
        run.solver.seed = static_cast<std::uint64_t>(solver.integer_or("seed", 0));
        solver.mark_known("model");
        solver.mark_known("tol");
        solver.mark_known("max_iter");
        solver.mark_known("relax");
        solver.mark_known("threads");
        solver.mark_known("root_tol");
        solver.mark_known("seed");
        solver.reject_unknown();
    }

    if (!(run.solver.options.relaxation > 0.0) || run.solver.options.relaxation > 1.0) {
        throw ConfigError("config: relax must lie in (0, 1]");
    }
    return run;
}

PhaseGrid resolve_grid(const RunConfig& run) {
    GridSpec spec = run.grid;
    if (!run.vmax_auto) {
        return PhaseGrid(spec);
    }
    double m_min = *std::min_element(run.physical.mass.begin(), run.physical.mass.end());
    // Provisional radius from the hottest parametric inflow spec.
    double t_ref = 0.0;
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        if (!run.boundary.left[si].parametric() || !run.boundary.right[si].parametric()) {
            throw ConfigError("config: vmax must be given explicitly for tabulated inflow");
        }
        t_ref = std::max({t_ref, run.boundary.left[si].maxwellian().temperature,
                          run.boundary.right[si].maxwellian().temperature});
    }
    spec.vmax = 8.0 * std::sqrt(run.physical.kb * t_ref / m_min);
    // Relax the self test for the provisional pass; the final grid re-checks.
    double tol = spec.gauss_tol;
    spec.gauss_tol = 0.5;
    PhaseGrid provisional(spec);
    BoundaryTable table = tabulate_boundary(run.boundary, provisional, run.physical);
    BoundaryBudget budget = compute_boundary_budget(table, run.physical, provisional);
    spec.vmax = 8.0 * std::sqrt(run.physical.kb * budget.temp_upper / m_min);
    spec.gauss_tol = tol;
    return PhaseGrid(spec);
}

}  // namespace rbgk
