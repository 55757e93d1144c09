#include "wavesplit/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wavesplit/diagnostics.hpp"
#include "wavesplit/eigen.hpp"
#include "wavesplit/phase.hpp"

namespace wavesplit {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

class OutputSet {
public:
    explicit OutputSet(const RunConfig& cfg, const std::string& command)
        : cfg_(cfg), command_(command) {
        fs::create_directories(cfg.out_dir);
    }

    ~OutputSet() {
        if (!committed_) {
            for (const auto& p : paths_) {
                std::error_code ec;
                fs::remove(p, ec);
            }
        }
    }

    std::ofstream open_csv(const std::string& name, const std::string& header) {
        const std::string path = (fs::path(cfg_.out_dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open output file: " + path);
        paths_.push_back(path);
        out << "# wavesplit-csv schema=1 command=" << command_ << "\n";
        out << "# config_hash=" << config_hash(cfg_) << "\n";
        out << header << "\n";
        return out;
    }

    void write_sidecar() {
        const std::string path = (fs::path(cfg_.out_dir) / (command_ + ".config")).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open sidecar file: " + path);
        paths_.push_back(path);
        out << serialize_config(cfg_);
        if (!out.good()) throw IoError("write failure: " + path);
    }

    std::vector<std::string> commit() {
        committed_ = true;
        return paths_;
    }

private:
    const RunConfig& cfg_;
    std::string command_;
    std::vector<std::string> paths_;
    bool committed_ = false;
};

std::vector<double> linspace(double a, double b, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

}  // namespace

std::vector<std::string> cmd_spectrum(const RunConfig& cfg) {
    OutputSet files(cfg, "spectrum");
    files.write_sidecar();
    const Grid grid = cfg.make_grid();
    const auto d_values = linspace(cfg.spectrum_d_min, cfg.spectrum_d_max, cfg.spectrum_count);
    const SpectrumTable table = adiabatic_spectrum(cfg.trap(), d_values, cfg.spectrum_k, grid);

    std::string header = "d";
    for (std::size_t l = 0; l < cfg.spectrum_k; ++l)
        header += ",E" + std::to_string(l / 2) + (l % 2 == 0 ? "_e" : "_o");
    auto out = files.open_csv("spectrum.csv", header);
    const int p = cfg.precision;
    for (std::size_t s = 0; s < table.d_values.size(); ++s) {
        out << fmt(table.d_values[s], p);
        for (const auto& lvl : table.levels[s]) out << "," << fmt(lvl.energy, p);
        out << "\n";
    }
    if (!out.good()) throw IoError("write failure: spectrum.csv");
    return files.commit();
}

std::vector<std::string> cmd_phase(const RunConfig& cfg) {
    OutputSet files(cfg, "phase");
    files.write_sidecar();
    const Grid grid = cfg.make_grid();
    const double area = area_loop(cfg.trap(), cfg.d_start, cfg.d_end, grid, cfg.n_quad);
    auto out = files.open_csv("phase.csv", "v,inv_v,theta_c,area,p_transfer_pred,p_stay_pred");
    const int p = cfg.precision;
    for (double v : cfg.resolved_v_list()) {
        const double theta = area / (2.0 * v);
        const auto pred = predicted_populations(theta);
        out << fmt(v, p) << "," << fmt(1.0 / v, p) << "," << fmt(theta, p) << ","
            << fmt(area, p) << "," << fmt(pred.transfer, p) << "," << fmt(pred.stay, p)
            << "\n";
    }
    if (!out.good()) throw IoError("write failure: phase.csv");
    return files.commit();
}

std::vector<std::string> cmd_split(const RunConfig& cfg) {
    OutputSet files(cfg, "split");
    files.write_sidecar();
    const SplitProtocol sp = cfg.make_protocol();
    const SplitResult res = run_split(sp);
    const int p = cfg.precision;

    {
        auto out = files.open_csv(
            "split_summary.csv",
            "p_stay,p_transfer,p_lost,theta_tdse,theta_predicted,max_adiabaticity_ratio");
        out << fmt(res.p_stay, p) << "," << fmt(res.p_transfer, p) << ","
            << fmt(res.p_lost, p) << "," << fmt(res.theta_tdse, p) << ","
            << fmt(res.theta_predicted, p) << "," << fmt(res.max_adiabaticity_ratio, p)
            << "\n";
        if (!out.good()) throw IoError("write failure: split_summary.csv");
    }
    {
        auto out = files.open_csv(
            "split_trajectory.csv",
            "t,d,mean_z,midpoint,c1,c2,norm,parity_even_weight,parity_odd_weight");
        for (const auto& rec : res.trajectory) {
            const double d = sp.d_start + sp.v * rec.t;
            const TrapCenters c = trap_centers(sp, d);
            out << fmt(rec.t, p) << "," << fmt(d, p) << "," << fmt(rec.mean_z, p) << ","
                << fmt(0.5 * (c.c1 + c.c2), p) << "," << fmt(c.c1, p) << "," << fmt(c.c2, p)
                << "," << fmt(rec.norm, p) << "," << fmt(rec.parity_even_weight, p) << ","
                << fmt(1.0 - rec.parity_even_weight, p) << "\n";
        }
        if (!out.good()) throw IoError("write failure: split_trajectory.csv");
    }
    if (cfg.record_density) {
        auto out = files.open_csv("split_density.csv", "t,z,density");
        const Grid& g = sp.grid;
        for (const auto& rec : res.trajectory) {
            if (!rec.density_snapshot) continue;
            for (std::size_t j = 0; j < g.n(); ++j)
                out << fmt(rec.t, p) << "," << fmt(g.z(j), p) << ","
                    << fmt((*rec.density_snapshot)[j], p) << "\n";
        }
        if (!out.good()) throw IoError("write failure: split_density.csv");
    }
    return files.commit();
}

std::vector<std::string> cmd_sweep(const RunConfig& cfg) {
    OutputSet files(cfg, "sweep");
    files.write_sidecar();
    auto out = files.open_csv(
        "sweep.csv", "v,inv_v,p_stay_tdse,p_stay_pred,theta_tdse,theta_pred,max_ratio,grid_n");
    const int p = cfg.precision;

    std::vector<std::size_t> resolutions = cfg.grid_n_list;
    if (resolutions.empty()) resolutions.push_back(cfg.grid_n);
    const auto v_list = cfg.resolved_v_list();
    for (std::size_t n : resolutions) {
        RunConfig sub = cfg;
        sub.grid_n = n;
        const SplitProtocol templ = sub.make_protocol();
        const auto rows = sweep_velocity(templ, v_list);
        for (const auto& row : rows) {
            const double nan = std::nan("");
            const double p_pred =
                row.error ? nan : predicted_populations(row.theta_predicted).stay;
            out << fmt(row.v, p) << "," << fmt(row.inv_v, p) << ","
                << fmt(row.error ? nan : row.p_stay, p) << "," << fmt(p_pred, p) << ","
                << fmt(row.error ? nan : row.theta_tdse, p) << ","
                << fmt(row.error ? nan : row.theta_predicted, p) << ","
                << fmt(row.error ? nan : row.max_adiabaticity_ratio, p) << "," << n << "\n";
        }
    }
    if (!out.good()) throw IoError("write failure: sweep.csv");
    return files.commit();
}

std::vector<std::string> cmd_diagnose(const RunConfig& cfg) {
    OutputSet files(cfg, "diagnose");
    files.write_sidecar();
    const Grid grid = cfg.make_grid();
    auto out = files.open_csv("diagnose.csv", "d,worst_ratio,worst_pair_i,worst_pair_j");
    const int p = cfg.precision;
    const auto d_values = linspace(cfg.spectrum_d_min, cfg.spectrum_d_max, cfg.diagnose_count);
    AdiabaticityReport global;
    for (double d : d_values) {
        const AdiabaticityReport rep =
            scan_adiabaticity(cfg.trap(), cfg.v, {d}, cfg.diagnose_k, grid);
        out << fmt(d, p) << "," << fmt(rep.worst_ratio, p) << "," << rep.worst_pair.first
            << "," << rep.worst_pair.second << "\n";
        if (rep.worst_ratio > global.worst_ratio) global = rep;
    }
    out << "# global worst\n";
    out << fmt(global.worst_d, p) << "," << fmt(global.worst_ratio, p) << ","
        << global.worst_pair.first << "," << global.worst_pair.second << "\n";
    if (!out.good()) throw IoError("write failure: diagnose.csv");
    return files.commit();
}

}  // namespace wavesplit
