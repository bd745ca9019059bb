#include "rbgk/output.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rbgk/errors.hpp"

namespace rbgk {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

constexpr char kFieldMagic[8] = {'R', 'B', 'G', 'K', 'F', 'D', '0', '1'};

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("output: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ConfigError("output: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_profiles(const std::filesystem::path& dir, const PhaseGrid& grid,
                    std::span<const MomentSet> moments, const EquilibriumProfile& eq,
                    const FrequencyProfile& freq) {
    for (int i = 0; i < kSpecies; ++i) {
        auto si = static_cast<std::size_t>(i);
        std::ostringstream os;
        os << "x n u1 u2 u3 T energy eq_n eq_u1 eq_u2 eq_u3 eq_T nu\n";
        for (int j = 0; j < grid.nodes_x(); ++j) {
            auto sj = static_cast<std::size_t>(j);
            const auto& sp = moments[sj].species[si];
            const Vec3& eu = eq.velocity[si][sj];
            os << fmt(grid.x(j)) << ' ' << fmt(sp.density) << ' ' << fmt(sp.velocity.x) << ' '
               << fmt(sp.velocity.y) << ' ' << fmt(sp.velocity.z) << ' ' << fmt(sp.temperature)
               << ' ' << fmt(sp.energy) << ' ' << fmt(eq.density[si][sj]) << ' ' << fmt(eu.x)
               << ' ' << fmt(eu.y) << ' ' << fmt(eu.z) << ' ' << fmt(eq.temperature[si][sj]) << ' '
               << fmt(freq.values[si][sj]) << '\n';
        }
        atomic_write(dir / ("species_" + std::to_string(i + 1) + ".dat"), os.str());
    }
    std::ostringstream os;
    os << "x n rho u1 u2 u3 T\n";
    for (int j = 0; j < grid.nodes_x(); ++j) {
        auto sj = static_cast<std::size_t>(j);
        const auto& m = moments[sj];
        os << fmt(grid.x(j)) << ' ' << fmt(m.density) << ' ' << fmt(m.mass_density) << ' '
           << fmt(m.velocity.x) << ' ' << fmt(m.velocity.y) << ' ' << fmt(m.velocity.z) << ' '
           << fmt(m.temperature) << '\n';
    }
    atomic_write(dir / "global.dat", os.str());
}

void write_solve_report(const std::filesystem::path& path, const SolveReport& report) {
    std::ostringstream os;
    os << "model " << model_name(report.model) << '\n';
    const char* status = report.status == SolveStatus::Converged     ? "converged"
                         : report.status == SolveStatus::Diverged    ? "diverged"
                                                                     : "max_iterations";
    os << "status " << status << '\n';
    os << "iterations " << report.iterations << '\n';
    os << "final_distance " << fmt(report.final_distance) << '\n';
    os << "final_mild_residual " << fmt(report.final_residual) << '\n';
    os << "contraction_estimate " << fmt(report.contraction_estimate) << '\n';
    os << "wall_seconds " << fmt(report.wall_seconds) << '\n';
    os << "final_omega_pass " << (report.final_omega.pass ? "yes" : "no") << '\n';
    os << "final_omega_worst_margin " << fmt(report.final_omega.worst) << '\n';
    os << "distance_history";
    for (double d : report.distance_history) os << ' ' << fmt(d);
    os << '\n';
    os << "omega_margin_history";
    for (double d : report.omega_margin_history) os << ' ' << fmt(d);
    os << '\n';
    if (!report.root_history.empty()) {
        os << "root_worst_residuals";
        for (const auto& r : report.root_history) os << ' ' << fmt(r.worst_residual);
        os << '\n';
    }
    atomic_write(path, os.str());
}

void write_contraction_table(const std::filesystem::path& path,
                             std::span<const ContractionSample> samples) {
    std::ostringstream os;
    os << "tau alpha probe_pairs regenerated skipped\n";
    for (const auto& s : samples) {
        os << fmt(s.tau) << ' ' << fmt(s.alpha) << ' ' << s.probe_pairs << ' ' << s.regenerated
           << ' ' << s.skipped << '\n';
    }
    atomic_write(path, os.str());
}

void dump_field(const std::filesystem::path& path, const DistributionField& f) {
    const PhaseGrid& grid = f.grid();
    std::ostringstream os(std::ios::binary);
    os.write(kFieldMagic, sizeof(kFieldMagic));
    std::int32_t dims[3] = {grid.cells(), grid.nv1(), grid.nv23()};
    double vmax = grid.vmax();
    os.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    os.write(reinterpret_cast<const char*>(&vmax), sizeof(vmax));
    const auto& raw = f.raw();
    os.write(reinterpret_cast<const char*>(raw.data()),
             static_cast<std::streamsize>(raw.size() * sizeof(double)));
    atomic_write(path, os.str());
}

DistributionField load_field(const std::filesystem::path& path, const PhaseGrid& grid) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("field: cannot open " + path.string());
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kFieldMagic, sizeof(magic)) != 0) {
        throw ConfigError("field: " + path.string() + " is not a field dump");
    }
    std::int32_t dims[3];
    double vmax = 0.0;
    in.read(reinterpret_cast<char*>(dims), sizeof(dims));
    in.read(reinterpret_cast<char*>(&vmax), sizeof(vmax));
    if (!in || dims[0] != grid.cells() || dims[1] != grid.nv1() || dims[2] != grid.nv23() ||
        vmax != grid.vmax()) {
        throw ConfigError("field: dump " + path.string() + " does not match the configured grid");
    }
    DistributionField f(grid);
    auto& raw = f.raw();
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(double)));
    if (!in) throw ConfigError("field: truncated dump " + path.string());
    return f;
}

}  // namespace rbgk
