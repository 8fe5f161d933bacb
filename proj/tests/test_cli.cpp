// End-to-end checks of the installed binary. PWAVE_CLI_PATH is injected by
// CMake and points at the freshly built executable.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return PWAVE_CLI_PATH; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + cli_path() + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("--help exits cleanly") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("run --help") == 0);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("--no-such-flag") == 2);
    CHECK(run_cli("frobnicate") == 2);          // unknown subcommand
    CHECK(run_cli("") == 2);                    // no subcommand at all
    CHECK(run_cli("run --set alpha") == 2);     // --set wants key=value
    CHECK(run_cli("run --set alpha=2") == 2);   // validate() rejects alpha >= 1
    CHECK(run_cli("run") == 2);                 // run needs --input
}

TEST_CASE("I/O problems exit with 3") {
    CHECK(run_cli("run --input /nonexistent/ticks.csv") == 3);
    const fs::path dir = fresh_dir("pwave_cli_io");
    const fs::path bad = dir / "bad.csv";
    std::ofstream(bad) << "day,timestamp,price,volume\n2015-01-05,09:30:00,notaprice,100\n";
    CHECK(run_cli("run --input " + bad.string() + " --out " + (dir / "out").string()) == 3);
}

TEST_CASE("header-only input is an empty-input config error") {
    const fs::path dir = fresh_dir("pwave_cli_empty");
    const fs::path empty = dir / "empty.csv";
    std::ofstream(empty) << "day,timestamp,price,volume\n";
    CHECK(run_cli("run --input " + empty.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("synth then run completes and chained stages match the one-shot run") {
    const fs::path src = fresh_dir("pwave_cli_src");
    CHECK(run_cli("synth --out " + src.string() +
                  " --seed 31 --set synth_days=5 --set synth_base_volume=2000") == 0);
    REQUIRE(fs::exists(src / "ticks.csv"));
    REQUIRE(fs::exists(src / "truth.json"));

    const std::string input = " --input " + (src / "ticks.csv").string();

    const fs::path all = fresh_dir("pwave_cli_all");
    CHECK(run_cli("run" + input + " --out " + all.string()) == 0);
    for (const char* f : {"histograms.json", "metrics.json", "fits.json", "analysis.json",
                          "daily_series.csv", "rate_series.csv"})
        CHECK(fs::exists(all / f));

    const fs::path staged = fresh_dir("pwave_cli_staged");
    CHECK(run_cli("ingest" + input + " --out " + staged.string()) == 0);
    CHECK(run_cli("fit --out " + staged.string()) == 0);
    CHECK(run_cli("analyze --out " + staged.string()) == 0);

    for (const char* f : {"histograms.json", "metrics.json", "fits.json", "analysis.json",
                          "daily_series.csv", "rate_series.csv"})
        CHECK(slurp(all / f) == slurp(staged / f));
}

TEST_CASE("flags override the config file") {
    const fs::path dir = fresh_dir("pwave_cli_cfg");
    const fs::path cfg = dir / "run.cfg";
    std::ofstream(cfg) << "out = " << (dir / "from_file").string() << "\n"
                       << "synth_days = 4\n"
                       << "seed = 1\n";

    // config file alone
    CHECK(run_cli("synth --config " + cfg.string()) == 0);
    CHECK(fs::exists(dir / "from_file" / "ticks.csv"));

    // flag wins over the file
    CHECK(run_cli("synth --config " + cfg.string() + " --out " + (dir / "from_flag").string()) == 0);
    CHECK(fs::exists(dir / "from_flag" / "ticks.csv"));

    // --seed changes the corpus, same seed reproduces it
    const fs::path a = dir / "a", b = dir / "b", c = dir / "c";
    CHECK(run_cli("synth --config " + cfg.string() + " --out " + a.string() + " --seed 7") == 0);
    CHECK(run_cli("synth --config " + cfg.string() + " --out " + b.string() + " --seed 7") == 0);
    CHECK(run_cli("synth --config " + cfg.string() + " --out " + c.string() + " --seed 8") == 0);
    CHECK(slurp(a / "ticks.csv") == slurp(b / "ticks.csv"));
    CHECK(slurp(a / "ticks.csv") != slurp(c / "ticks.csv"));

    // a config file with an unknown key is a usage error
    const fs::path badcfg = dir / "bad.cfg";
    std::ofstream(badcfg) << "no_such_key = 1\n";
    CHECK(run_cli("synth --config " + badcfg.string()) == 2);
}
