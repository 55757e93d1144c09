#ifndef WAVESPLIT_COMMANDS_HPP
#define WAVESPLIT_COMMANDS_HPP

// Command layer behind the CLI: each command writes deterministic CSV files
// (plus a resolved-config sidecar) into cfg.out_dir and returns the list of
// paths written. Partial files are removed on error.

#include <string>
#include <vector>

#include "wavesplit/config.hpp"

namespace wavesplit {

std::vector<std::string> cmd_spectrum(const RunConfig& cfg);
std::vector<std::string> cmd_phase(const RunConfig& cfg);
std::vector<std::string> cmd_split(const RunConfig& cfg);
std::vector<std::string> cmd_sweep(const RunConfig& cfg);
std::vector<std::string> cmd_diagnose(const RunConfig& cfg);

}  // namespace wavesplit

#endif
