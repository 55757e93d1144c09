// wavesplit: adiabatic wave-packet splitter simulator.
//
//   wavesplit <spectrum|phase|split|sweep|diagnose> --config <path>
//             [--out <dir>] [--grid-n <int>] [--v <float>]
//
// Exit codes: 0 success, 2 config error, 3 runtime error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wavesplit/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw wavesplit::IoError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adiabatic atomic wave-packet splitter simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    long long grid_n = -1;
    double v_override = 0.0;

    const std::vector<std::string> names = {"spectrum", "phase", "split", "sweep", "diagnose"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file (section.key = value)");
        sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
        sub->add_option("--grid-n", grid_n, "grid point count (overrides grid.n)");
        sub->add_option("--v", v_override, "velocity (overrides protocol.v)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        wavesplit::RunConfig cfg;
        try {
            const std::string text = config_path.empty() ? "" : read_file(config_path);
            cfg = wavesplit::parse_config(text);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (grid_n >= 0) cfg.grid_n = static_cast<std::size_t>(grid_n);
            if (v_override > 0.0) cfg.v = v_override;
        } catch (const wavesplit::Error& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }

        std::cout << "resolved config:\n" << wavesplit::serialize_config(cfg);
        std::vector<std::string> written;
        if (cmd == "spectrum") written = wavesplit::cmd_spectrum(cfg);
        else if (cmd == "phase") written = wavesplit::cmd_phase(cfg);
        else if (cmd == "split") written = wavesplit::cmd_split(cfg);
        else if (cmd == "sweep") written = wavesplit::cmd_sweep(cfg);
        else written = wavesplit::cmd_diagnose(cfg);
        for (const auto& path : written) std::cout << "wrote " << path << "\n";
        return 0;
    } catch (const wavesplit::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
