#ifndef WAVESPLIT_CONFIG_HPP
#define WAVESPLIT_CONFIG_HPP

// Line-oriented `section.key = value` configuration. Unknown keys are
// rejected with line numbers; missing keys take documented defaults; the
// fully resolved config can be re-serialized byte-stably (round-trip safe).

#include <optional>
#include <string>
#include <vector>

#include "wavesplit/core.hpp"
#include "wavesplit/propagate.hpp"
#include "wavesplit/protocol.hpp"

namespace wavesplit {

struct RunConfig {
    // trap.*
    double sigma = 1.0;
    std::optional<double> depth;  // default sigma^2

    // grid.*
    double z_max = 0.0;  // 0 = auto from protocol geometry
    std::size_t grid_n = 1000;

    // protocol.*
    double d_start = -12.0;
    double d_end = 12.0;
    double v = 0.15;
    std::string frame = "lab";  // lab | midpoint | midpoint_ramp
    double ramp_a = 0.0;
    double ramp_t0 = 0.0;
    double ramp_t1 = 0.0;  // 0 = whole run

    // propagation.*
    double dt = 1e-3;
    std::string method = "split_operator";  // split_operator | crank_nicolson
    std::size_t observe_every = 200;
    bool record_density = false;
    double edge_tolerance = 1e-6;  // boundary-mass guard; raise for fast sweeps

    // sweep.*
    std::vector<double> v_list;  // explicit list wins over min/max/count
    double v_min = 0.05;
    double v_max = 0.3;
    std::size_t v_count = 6;
    std::string v_scale = "linear";  // linear | log
    std::vector<std::size_t> grid_n_list;  // extra resolutions for cmd_sweep

    // spectrum.*
    double spectrum_d_min = -12.0;
    double spectrum_d_max = 12.0;
    std::size_t spectrum_count = 241;
    std::size_t spectrum_k = 6;

    // phase.*
    std::size_t n_quad = 256;

    // diagnose.*
    std::size_t diagnose_k = 6;
    std::size_t diagnose_count = 121;

    // units.*
    std::optional<double> si_mass;
    std::optional<double> si_omega;

    // output.*
    std::string out_dir = ".";
    int precision = 12;

    // --- resolved quantities ---
    double resolved_depth() const { return depth ? *depth : sigma * sigma; }
    double resolved_z_max() const;
    double resolved_ramp_t1() const;

    TrapParams trap() const { return TrapParams{sigma, resolved_depth()}; }
    Grid make_grid() const { return Grid(resolved_z_max(), grid_n); }
    SplitProtocol make_protocol() const;
    PropagationConfig make_propagation() const;
    std::vector<double> resolved_v_list() const;
    UnitsConvention units() const { return UnitsConvention{si_mass, si_omega}; }
};

// Parse a config document; throws ParseError (with line number) on syntax
// or unknown keys, ValidationError on violated invariants.
RunConfig parse_config(const std::string& text);

// Byte-stable serialization of the resolved config (every key explicit).
std::string serialize_config(const RunConfig& cfg);

// FNV-1a 64-bit hash of the serialized config, for output provenance.
std::string config_hash(const RunConfig& cfg);

}  // namespace wavesplit

#endif
