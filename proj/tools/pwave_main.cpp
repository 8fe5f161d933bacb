// pwave: batch analysis of per-day volume-price distributions.
//
// Subcommands mirror the pipeline stages so intermediate artifacts can be
// inspected when a fit looks off:
//   ingest   tick CSV -> histograms.json + metrics.json
//   fit      histograms.json -> fits.json + plots/<day>.csv
//   analyze  fits.json + metrics.json -> daily/rate series CSV + analysis.json
//   synth    generate a labelled synthetic corpus (ticks.csv + truth.json)
//   run      all of ingest/fit/analyze in one process
//
// Exit codes: 0 ok, 2 config/usage error, 3 I/O error.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pwave/config.hpp"
#include "pwave/errors.hpp"
#include "pwave/pipeline.hpp"

namespace {

struct CliArgs {
    std::string command;
    std::string config_file;
    // flag values arrive as strings and flow through the same setting
    // parser as the config file, so types and errors stay consistent
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_flags(CLI::App* cmd, CliArgs& args) {
    cmd->add_option_function<std::string>(
           "--config", [&args](const std::string& v) { args.config_file = v; },
           "key = value config file; flags override it");
    const auto add = [cmd, &args](const std::string& flag, const std::string& key,
                                  const std::string& help) {
        cmd->add_option_function<std::string>(
            flag, [&args, key](const std::string& v) { args.overrides.emplace_back(key, v); },
            help);
    };
    add("--input", "input", "tick CSV (day,timestamp,price,volume)");
    add("--out", "out", "artifact directory (default .)");
    add("--alpha", "alpha", "significance level (default 0.05)");
    add("--jobs", "jobs", "fit worker threads (default 1)");
    add("--seed", "seed", "synth corpus seed");
    add("--grid", "grid", "auto | 2dp | halfcent (default auto)");
    add("--periods", "periods_file", "periods file: label,start,end per line");
    cmd->add_option_function<std::vector<std::string>>(
        "--set",
        [&args](const std::vector<std::string>& kvs) {
            for (const auto& kv : kvs) {
                const size_t eq = kv.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
                args.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
            }
        },
        "any config key, e.g. --set synth_rho=0.5 (repeatable)");
}

int dispatch(const CliArgs& args) {
    pwave::config::RunConfig cfg;
    if (!args.config_file.empty()) cfg = pwave::config::load_config_file(args.config_file);
    for (const auto& [key, value] : args.overrides)
        pwave::config::apply_setting(cfg, key, value);

    if (args.command == "ingest") pwave::pipeline::run_ingest(cfg);
    else if (args.command == "fit") pwave::pipeline::run_fit(cfg);
    else if (args.command == "analyze") pwave::pipeline::run_analyze(cfg);
    else if (args.command == "synth") pwave::pipeline::run_synth(cfg);
    else if (args.command == "run") pwave::pipeline::run_pipeline(cfg);
    else throw pwave::ConfigError("no subcommand given (see --help)");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"volume-price probability wave fitting and correlation analysis"};
    app.require_subcommand(0, 1);

    CliArgs args;
    for (const char* name : {"ingest", "fit", "analyze", "synth", "run"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common_flags(cmd, args);
        cmd->callback([&args, name] { args.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return dispatch(args);
    } catch (const pwave::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const pwave::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const pwave::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
