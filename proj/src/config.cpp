#include "wavesplit/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace wavesplit {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (...) {
        throw ParseError("line " + std::to_string(line) + ": not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw ParseError("line " + std::to_string(line) + ": trailing junk in number: '" + v + "'");
    return out;
}

std::size_t parse_count(const std::string& v, int line) {
    const double d = parse_double(v, line);
    if (d < 0.0 || d != std::floor(d))
        throw ParseError("line " + std::to_string(line) + ": not a non-negative integer: '" + v + "'");
    return static_cast<std::size_t>(d);
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError("line " + std::to_string(line) + ": not a bool: '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(v);
    while (ss >> item) {
        if (!item.empty() && item.back() == ',') item.pop_back();
        if (item.empty()) continue;
        out.push_back(parse_double(item, line));
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double RunConfig::resolved_z_max() const {
    if (z_max > 0.0) return z_max;
    const double span = std::max(std::abs(d_start), std::abs(d_end));
    // Tails of a finite-depth Gaussian trap decay as exp(-kappa|z|) with
    // kappa ~ 1 at the default depth; eight widths of padding keeps the
    // boundary mass a few orders below the leakage guard.
    const double pad = 8.0 * sigma;
    if (frame == "lab") return span + pad;
    return std::max(pad, span / 2.0 + pad);
}

double RunConfig::resolved_ramp_t1() const {
    if (ramp_t1 > 0.0) return ramp_t1;
    return (d_end - d_start) / v;
}

SplitProtocol RunConfig::make_protocol() const {
    SplitProtocol sp{trap(), make_grid()};
    sp.d_start = d_start;
    sp.d_end = d_end;
    sp.v = v;
    sp.cfg = make_propagation();
    sp.n_quad = n_quad;
    if (frame == "lab") {
        sp.frame = Frame::LabStationaryTrap;
    } else if (frame == "midpoint") {
        sp.frame = Frame::MidpointConstantV;
    } else {
        sp.frame = Frame::MidpointWithRamp;
        const double a = ramp_a, t0 = ramp_t0, t1 = resolved_ramp_t1();
        sp.ramp = [a, t0, t1](double t) { return (t >= t0 && t < t1) ? a : 0.0; };
    }
    return sp;
}

PropagationConfig RunConfig::make_propagation() const {
    PropagationConfig cfg;
    cfg.dt = dt;
    cfg.method = (method == "crank_nicolson") ? PropagationMethod::CrankNicolson
                                              : PropagationMethod::SplitOperator;
    cfg.observe_every = observe_every;
    cfg.record_density = record_density;
    cfg.edge_tolerance = edge_tolerance;
    return cfg;
}

std::vector<double> RunConfig::resolved_v_list() const {
    if (!v_list.empty()) return v_list;
    std::vector<double> out;
    out.reserve(v_count);
    if (v_count == 1) {
        out.push_back(v_min);
        return out;
    }
    for (std::size_t i = 0; i < v_count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(v_count - 1);
        if (v_scale == "log")
            out.push_back(v_min * std::pow(v_max / v_min, f));
        else
            out.push_back(v_min + (v_max - v_min) * f);
    }
    return out;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));

        if (key == "trap.sigma") cfg.sigma = parse_double(val, line);
        else if (key == "trap.depth") cfg.depth = parse_double(val, line);
        else if (key == "grid.z_max") cfg.z_max = parse_double(val, line);
        else if (key == "grid.n") cfg.grid_n = parse_count(val, line);
        else if (key == "protocol.d_start") cfg.d_start = parse_double(val, line);
        else if (key == "protocol.d_end") cfg.d_end = parse_double(val, line);
        else if (key == "protocol.v") cfg.v = parse_double(val, line);
        else if (key == "protocol.frame") cfg.frame = val;
        else if (key == "protocol.ramp_a") cfg.ramp_a = parse_double(val, line);
        else if (key == "protocol.ramp_t0") cfg.ramp_t0 = parse_double(val, line);
        else if (key == "protocol.ramp_t1") cfg.ramp_t1 = parse_double(val, line);
        else if (key == "propagation.dt") cfg.dt = parse_double(val, line);
        else if (key == "propagation.method") cfg.method = val;
        else if (key == "propagation.observe_every") cfg.observe_every = parse_count(val, line);
        else if (key == "propagation.record_density") cfg.record_density = parse_bool(val, line);
        else if (key == "propagation.edge_tolerance") cfg.edge_tolerance = parse_double(val, line);
        else if (key == "sweep.v_list") cfg.v_list = parse_list(val, line);
        else if (key == "sweep.v_min") cfg.v_min = parse_double(val, line);
        else if (key == "sweep.v_max") cfg.v_max = parse_double(val, line);
        else if (key == "sweep.v_count") cfg.v_count = parse_count(val, line);
        else if (key == "sweep.v_scale") cfg.v_scale = val;
        else if (key == "sweep.grid_n_list") {
            cfg.grid_n_list.clear();
            for (double d : parse_list(val, line))
                cfg.grid_n_list.push_back(static_cast<std::size_t>(d));
        }
        else if (key == "spectrum.d_min") cfg.spectrum_d_min = parse_double(val, line);
        else if (key == "spectrum.d_max") cfg.spectrum_d_max = parse_double(val, line);
        else if (key == "spectrum.count") cfg.spectrum_count = parse_count(val, line);
        else if (key == "spectrum.k") cfg.spectrum_k = parse_count(val, line);
        else if (key == "phase.n_quad") cfg.n_quad = parse_count(val, line);
        else if (key == "diagnose.k") cfg.diagnose_k = parse_count(val, line);
        else if (key == "diagnose.count") cfg.diagnose_count = parse_count(val, line);
        else if (key == "units.si_mass") cfg.si_mass = parse_double(val, line);
        else if (key == "units.si_omega") cfg.si_omega = parse_double(val, line);
        else if (key == "output.directory") cfg.out_dir = val;
        else if (key == "output.precision") cfg.precision = static_cast<int>(parse_count(val, line));
        else throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }

    // invariants
    if (!(cfg.sigma > 0.0)) throw ValidationError("trap.sigma must be > 0");
    if (cfg.depth && !(*cfg.depth > 0.0)) throw ValidationError("trap.depth must be > 0");
    if (cfg.z_max < 0.0) throw ValidationError("grid.z_max must be >= 0 (0 = auto)");
    if (cfg.grid_n < 64 || cfg.grid_n % 2 != 0)
        throw ValidationError("grid.n must be even and >= 64");
    if (!(cfg.v > 0.0)) throw ValidationError("protocol.v must be > 0");
    if (!(cfg.d_start < 0.0 && cfg.d_end > 0.0))
        throw ValidationError("protocol.d_start must be < 0 < protocol.d_end");
    if (cfg.frame != "lab" && cfg.frame != "midpoint" && cfg.frame != "midpoint_ramp")
        throw ValidationError("protocol.frame must be lab | midpoint | midpoint_ramp");
    if (!(cfg.dt > 0.0)) throw ValidationError("propagation.dt must be > 0");
    if (cfg.method != "split_operator" && cfg.method != "crank_nicolson")
        throw ValidationError("propagation.method must be split_operator | crank_nicolson");
    if (!(cfg.edge_tolerance > 0.0))
        throw ValidationError("propagation.edge_tolerance must be > 0");
    for (double v : cfg.v_list)
        if (!(v > 0.0)) throw ValidationError("sweep.v_list entries must be > 0");
    if (!(cfg.v_min > 0.0) || !(cfg.v_max >= cfg.v_min))
        throw ValidationError("sweep.v_min/v_max must satisfy 0 < v_min <= v_max");
    if (cfg.v_count < 1) throw ValidationError("sweep.v_count must be >= 1");
    if (cfg.v_scale != "linear" && cfg.v_scale != "log")
        throw ValidationError("sweep.v_scale must be linear | log");
    if (cfg.spectrum_count < 2) throw ValidationError("spectrum.count must be >= 2");
    if (cfg.spectrum_k < 1) throw ValidationError("spectrum.k must be >= 1");
    if (cfg.n_quad < 64) throw ValidationError("phase.n_quad must be >= 64");
    if (cfg.diagnose_k < 4) throw ValidationError("diagnose.k must be >= 4");
    if (cfg.si_mass && !(*cfg.si_mass > 0.0)) throw ValidationError("units.si_mass must be > 0");
    if (cfg.si_omega && !(*cfg.si_omega > 0.0)) throw ValidationError("units.si_omega must be > 0");
    if (cfg.precision < 3 || cfg.precision > 17)
        throw ValidationError("output.precision must be in [3, 17]");
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "trap.sigma = " << fmt_double(cfg.sigma) << "\n";
    out << "trap.depth = " << fmt_double(cfg.resolved_depth()) << "\n";
    out << "grid.z_max = " << fmt_double(cfg.z_max) << "\n";
    out << "grid.n = " << cfg.grid_n << "\n";
    out << "protocol.d_start = " << fmt_double(cfg.d_start) << "\n";
    out << "protocol.d_end = " << fmt_double(cfg.d_end) << "\n";
    out << "protocol.v = " << fmt_double(cfg.v) << "\n";
    out << "protocol.frame = " << cfg.frame << "\n";
    out << "protocol.ramp_a = " << fmt_double(cfg.ramp_a) << "\n";
    out << "protocol.ramp_t0 = " << fmt_double(cfg.ramp_t0) << "\n";
    out << "protocol.ramp_t1 = " << fmt_double(cfg.ramp_t1) << "\n";
    out << "propagation.dt = " << fmt_double(cfg.dt) << "\n";
    out << "propagation.method = " << cfg.method << "\n";
    out << "propagation.observe_every = " << cfg.observe_every << "\n";
    out << "propagation.record_density = " << (cfg.record_density ? "true" : "false") << "\n";
    out << "propagation.edge_tolerance = " << fmt_double(cfg.edge_tolerance) << "\n";
    out << "sweep.v_list =";
    for (double v : cfg.v_list) out << " " << fmt_double(v);
    out << "\n";
    out << "sweep.v_min = " << fmt_double(cfg.v_min) << "\n";
    out << "sweep.v_max = " << fmt_double(cfg.v_max) << "\n";
    out << "sweep.v_count = " << cfg.v_count << "\n";
    out << "sweep.v_scale = " << cfg.v_scale << "\n";
    out << "sweep.grid_n_list =";
    for (std::size_t n : cfg.grid_n_list) out << " " << n;
    out << "\n";
    out << "spectrum.d_min = " << fmt_double(cfg.spectrum_d_min) << "\n";
    out << "spectrum.d_max = " << fmt_double(cfg.spectrum_d_max) << "\n";
    out << "spectrum.count = " << cfg.spectrum_count << "\n";
    out << "spectrum.k = " << cfg.spectrum_k << "\n";
    out << "phase.n_quad = " << cfg.n_quad << "\n";
    out << "diagnose.k = " << cfg.diagnose_k << "\n";
    out << "diagnose.count = " << cfg.diagnose_count << "\n";
    if (cfg.si_mass) out << "units.si_mass = " << fmt_double(*cfg.si_mass) << "\n";
    if (cfg.si_omega) out << "units.si_omega = " << fmt_double(*cfg.si_omega) << "\n";
    out << "output.directory = " << cfg.out_dir << "\n";
    out << "output.precision = " << cfg.precision << "\n";
    return out.str();
}

std::string config_hash(const RunConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace wavesplit
