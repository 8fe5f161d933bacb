#include "pwave/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "pwave/errors.hpp"

namespace pwave::config {

namespace {

std::string strip(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

// cut a trailing comment, respecting double quotes
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + v + "'");
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long long n = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> to_array(const std::string& key, const std::string& v) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ConfigError(key + ": expected [ ... ] array");
    std::vector<std::string> out;
    std::string body = v.substr(1, v.size() - 2);
    std::string cur;
    bool in_str = false;
    for (char c : body) {
        if (c == '"') in_str = !in_str;
        if (c == ',' && !in_str) {
            const std::string item = unquote(strip(cur));
            if (!item.empty()) out.push_back(item);
            cur.clear();
        } else {
            cur += c;
        }
    }
    const std::string item = unquote(strip(cur));
    if (!item.empty()) out.push_back(item);
    return out;
}

bool looks_like_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

GridChoice grid_choice_from_string(const std::string& s) {
    if (s == "auto") return GridChoice::Auto;
    if (s == "2dp") return GridChoice::TwoDecimal;
    if (s == "halfcent") return GridChoice::HalfCent;
    throw ConfigError("grid: expected auto, 2dp or halfcent, got '" + s + "'");
}

std::string to_string(GridChoice g) {
    switch (g) {
        case GridChoice::Auto: return "auto";
        case GridChoice::TwoDecimal: return "2dp";
        case GridChoice::HalfCent: return "halfcent";
    }
    return "?";
}

conditioning::PeriodSpec parse_period(const std::string& text) {
    const size_t a = text.find(':');
    const size_t b = text.rfind(':');
    if (a == std::string::npos || b == a)
        throw ConfigError("period: expected label:start:end, got '" + text + "'");
    conditioning::PeriodSpec p;
    p.label = strip(text.substr(0, a));
    p.start = strip(text.substr(a + 1, b - a - 1));
    p.end = strip(text.substr(b + 1));
    if (p.label.empty() || !looks_like_date(p.start) || !looks_like_date(p.end))
        throw ConfigError("period: bad dates in '" + text + "'");
    if (p.end < p.start) throw ConfigError("period '" + p.label + "': end before start");
    return p;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw_value) {
    const std::string v = unquote(strip(raw_value));
    if (key == "input") cfg.input = v;
    else if (key == "out") cfg.out = v;
    else if (key == "alpha") cfg.alpha = to_double(key, v);
    else if (key == "jobs") cfg.jobs = static_cast<int>(to_int(key, v));
    else if (key == "grid") cfg.grid = grid_choice_from_string(v);
    else if (key == "log_returns") cfg.log_returns = to_bool(key, v);
    else if (key == "periods") {
        cfg.periods.clear();
        for (const auto& item : to_array(key, strip(raw_value)))
            cfg.periods.push_back(parse_period(item));
    } else if (key == "periods_file") cfg.periods = load_periods_file(v);
    else if (key == "max_iterations") cfg.fit.max_iterations = static_cast<int>(to_int(key, v));
    else if (key == "lambda_init") cfg.fit.lambda_init = to_double(key, v);
    else if (key == "lambda_up") cfg.fit.lambda_up = to_double(key, v);
    else if (key == "lambda_down") cfg.fit.lambda_down = to_double(key, v);
    else if (key == "ssr_rel_tol") cfg.fit.ssr_rel_tol = to_double(key, v);
    else if (key == "step_tol") cfg.fit.step_tol = to_double(key, v);
    else if (key == "jacobian_step") cfg.fit.jacobian_step = to_double(key, v);
    else if (key == "multistart_count") cfg.fit.multistart_count = static_cast<int>(to_int(key, v));
    else if (key == "sparse_threshold") cfg.fit.sparse_threshold = static_cast<int>(to_int(key, v));
    else if (key == "min_separation_ticks") cfg.fit.min_separation_ticks = to_double(key, v);
    else if (key == "seed") cfg.corpus.seed = static_cast<std::uint64_t>(to_int(key, v));
    else if (key == "synth_days") cfg.corpus.day_count = static_cast<int>(to_int(key, v));
    else if (key == "synth_rho") cfg.corpus.rho = to_double(key, v);
    else if (key == "synth_step_sigma") cfg.corpus.step_sigma = to_double(key, v);
    else if (key == "synth_base_volume") cfg.corpus.base_volume = to_double(key, v);
    else if (key == "synth_volume_sensitivity") cfg.corpus.volume_sensitivity = to_double(key, v);
    else if (key == "synth_mean_trade_size") cfg.corpus.mean_trade_size = to_int(key, v);
    else if (key == "synth_start_price") cfg.corpus.start_price = to_double(key, v);
    else if (key == "synth_omega") cfg.corpus.omega = to_double(key, v);
    else if (key == "synth_window_ticks") cfg.corpus.half_window_ticks = static_cast<int>(to_int(key, v));
    else if (key == "synth_start_day") cfg.corpus.start_day = v;
    else throw ConfigError("unknown config key: '" + key + "'");
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(strip_comment(line));
        if (body.empty()) continue;
        const size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = strip(body.substr(0, eq));
        const std::string value = strip(body.substr(eq + 1));
        try {
            apply_setting(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

std::vector<conditioning::PeriodSpec> load_periods_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open periods file: " + path);
    std::vector<conditioning::PeriodSpec> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(strip_comment(line));
        if (body.empty()) continue;
        if (line_no == 1 && body == "label,start,end") continue;  // optional header
        std::string fields[3];
        std::istringstream ss(body);
        if (!std::getline(ss, fields[0], ',') || !std::getline(ss, fields[1], ',') ||
            !std::getline(ss, fields[2]))
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected label,start,end");
        out.push_back(parse_period(strip(fields[0]) + ":" + strip(fields[1]) + ":" +
                                   strip(fields[2])));
    }
    return out;
}

void validate(const RunConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must be in (0, 1)");
    if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
    if (cfg.fit.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
    if (cfg.fit.multistart_count < 1) throw ConfigError("multistart_count must be >= 1");
    if (cfg.fit.sparse_threshold < 0) throw ConfigError("sparse_threshold must be >= 0");
    if (cfg.fit.min_separation_ticks < 0.0)
        throw ConfigError("min_separation_ticks must be >= 0");
}

}  // namespace pwave::config
