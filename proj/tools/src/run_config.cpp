#include "qorth/cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qorth/errors.hpp"
#include "qorth/serialize.hpp"

namespace qorth::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw IngestError("config key '" + key + "': not a number: '" + v + "'");
    }
    return out;
}

std::size_t parse_size(const std::string& key, const std::string& v) {
    std::size_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw IngestError("config key '" + key + "': not a nonnegative integer: '" + v + "'");
    }
    return out;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

const std::vector<std::string>& known_functions() {
    static const std::vector<std::string> names{"sqrt", "abs_xi5", "rational", "pow32"};
    return names;
}

std::string RunConfig::canonical() const {
    std::string fns;
    for (std::size_t i = 0; i < functions.size(); ++i) fns += (i ? "," : "") + functions[i];
    // Keys in lexicographic order.
    std::ostringstream o;
    o << "a=" << io::format_double(a) << '\n'
      << "beta0_mode=" << to_string(beta0_mode) << '\n'
      << "c_grid_resolution=" << io::format_double(c_grid_resolution) << '\n'
      << "functions=" << fns << '\n'
      << "k=" << k << '\n'
      << "lin_max=" << lin_max << '\n'
      << "n_max=" << n_max << '\n'
      << "out=" << out << '\n'
      << "q=" << io::format_double(q) << '\n'
      << "rel_tol=" << io::format_double(rel_tol) << '\n'
      << "suite=" << suite << '\n'
      << "table=" << table << '\n'
      << "tail_rule=" << to_string(tail_rule) << '\n';
    return o.str();
}

void RunConfig::validate() const {
    if (!(rel_tol > 0.0)) throw IngestError("rel_tol must be positive");
    if (!(c_grid_resolution > 0.0)) throw IngestError("c_grid_resolution must be positive");
    if (k < 1) throw IngestError("k must be at least 1");
    if (suite != "default" && suite != "remark1") throw IngestError("unknown suite '" + suite + "'");
    for (const auto& f : functions) {
        if (std::find(known_functions().begin(), known_functions().end(), f) == known_functions().end()) {
            throw IngestError("unknown test function '" + f + "'");
        }
    }
}

void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "a") {
            cfg.a = parse_double(key, value);
        } else if (key == "q") {
            cfg.q = parse_double(key, value);
        } else if (key == "beta0_mode") {
            cfg.beta0_mode = parse_beta0_mode(value);
        } else if (key == "table") {
            cfg.table = value;
        } else if (key == "tail_rule") {
            cfg.tail_rule = parse_tail_rule(value);
        } else if (key == "k") {
            cfg.k = parse_size(key, value);
        } else if (key == "n_max") {
            cfg.n_max = parse_size(key, value);
        } else if (key == "lin_max") {
            cfg.lin_max = parse_size(key, value);
        } else if (key == "rel_tol") {
            cfg.rel_tol = parse_double(key, value);
        } else if (key == "c_grid_resolution") {
            cfg.c_grid_resolution = parse_double(key, value);
        } else if (key == "functions") {
            cfg.functions = split_list(value);
        } else if (key == "suite") {
            cfg.suite = value;
        } else if (key == "out") {
            cfg.out = value;
        } else {
            throw IngestError("unknown config key '" + key + "'");
        }
    } catch (const DomainError& e) {
        throw IngestError("config key '" + key + "': " + e.what());
    }
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw IngestError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        apply_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    apply_config_text(cfg, text);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

RecurrenceCoefficients make_coefficients(const RunConfig& cfg) {
    if (!cfg.table.empty()) {
        return make_table_coefficients(read_coefficient_csv(cfg.table), cfg.tail_rule, cfg.beta0_mode);
    }
    return make_example_family(cfg.a, cfg.q, cfg.beta0_mode);
}

}  // namespace qorth::cli
