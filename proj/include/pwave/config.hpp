#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwave/conditioning.hpp"
#include "pwave/lm.hpp"
#include "pwave/synth.hpp"

namespace pwave::config {

// Which grid the cascade works on. Auto is the full scheme (cent grid
// primary, half-cent retry for sparse days); the forced modes pin a single
// grid and skip the retry.
enum class GridChoice { Auto, TwoDecimal, HalfCent };

GridChoice grid_choice_from_string(const std::string& s);  // "auto"|"2dp"|"halfcent"
std::string to_string(GridChoice g);

// Everything a batch run needs. Defaults here are the documented defaults;
// a config file overrides them and command-line flags override the file.
struct RunConfig {
    std::string input;      // tick CSV path (read commands)
    std::string out = ".";  // artifact directory
    double alpha = 0.05;
    int jobs = 1;
    GridChoice grid = GridChoice::Auto;
    bool log_returns = false;
    wavefit::FitConfig fit;
    std::vector<conditioning::PeriodSpec> periods;  // optional; empty = one full-range period
    synth::SynthCorpusSpec corpus;                  // synth subcommand parameters
};

// Key/value file: one `key = value` per line, '#' comments, strings quoted,
// arrays single-line `[ "a", "b" ]`. Periods are "label:start:end" strings.
// Unknown keys are ConfigError (typos should not pass silently).
RunConfig load_config_file(const std::string& path);

// Apply one key/value pair (the CLI uses this for flag overrides too).
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw_value);

// CSV-ish periods file: `label,start,end` per line, optional header, '#'
// comments allowed.
std::vector<conditioning::PeriodSpec> load_periods_file(const std::string& path);

// "label:start:end" with ISO dates.
conditioning::PeriodSpec parse_period(const std::string& text);

// Sanity checks shared by file and flag paths; throws ConfigError.
void validate(const RunConfig& cfg);

}  // namespace pwave::config
