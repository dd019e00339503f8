/*
   Copyright 2026 The memphase Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "memphase/channel.hpp"
#include "memphase/correlation.hpp"
#include "memphase/spectrum.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace memphase::cli {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Command { Decay, Fig2, Fig3, Validate };

Command parse_command(std::string_view name);
std::string_view command_name(Command command);

struct SweepRanges {
    double epsilon = 1e-3;  // fig2 operating point
    double mu1_step = 0.01;
    double eps_min = 1e-4;  // fig3 log grid
    double eps_max = 1e-1;
    std::size_t eps_points = 61;
};

struct McSettings {
    std::uint64_t seed = 12345;
    std::size_t samples = 200000;
    std::optional<double> dt;  // default transit_time / 200
    double epsilon = 0.05;
    double mu1 = 0.5;
    double mu2 = 0.25;
};

struct RunConfig {
    Command command = Command::Decay;
    PowerSpectrum spectrum = LorentzianSpectrum{};
    ChannelParams params;
    std::vector<CoherenceLabel> labels;  // empty: every (j, l) pair
    SweepRanges sweep;
    McSettings mc;
    std::string output_path;
    std::uint64_t hash = 0;
};

struct ConfigEntry {
    std::string value;
    std::size_t line = 0;  // 0 for command-line overrides
};

using ConfigEntries = std::map<std::string, ConfigEntry>;

/// `key = value` lines; `#` starts a comment. Throws ConfigError with the
/// origin and line number on malformed lines or repeated keys.
ConfigEntries parse_entries(std::string_view text, std::string_view origin = "config");

/// Validates every field and resolves defaults. Unknown keys are errors.
RunConfig build_config(Command command, const ConfigEntries& entries, std::string_view origin = "config");

/// FNV-1a over the sorted `key=value` pairs.
std::uint64_t config_hash(const ConfigEntries& entries);

/// Each command writes a CSV (or report) with `#` metadata lines first.
void cmd_decay(const RunConfig& config, std::ostream& out, std::ostream& warnings);
void cmd_fig2(const RunConfig& config, std::ostream& out, std::ostream& warnings);
void cmd_fig3(const RunConfig& config, std::ostream& out, std::ostream& warnings);

struct SuiteResult {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Runs the route-equivalence and Monte Carlo oracle suites. Returns one
/// entry per suite; the report is also written to `out`.
std::vector<SuiteResult> cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& warnings);

/// Entry point shared by the executable: returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace memphase::cli
