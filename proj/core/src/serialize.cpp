#include "qorth/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qorth::io {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json numbers(const std::vector<double>& vs) {
    Json arr = Json::array();
    for (double v : vs) arr.push_back(number(v));
    return arr;
}

Json witness(const std::optional<std::size_t>& w) {
    if (w) return *w;
    return nullptr;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (res.ec != std::errc()) throw std::runtime_error("double formatting failed");
    return std::string(buf, res.ptr);
}

std::string to_json(const HypothesisReport& report) {
    Json j;
    j["q_est"] = number(report.q_est);
    j["s_est"] = number(report.s_est);
    j["kappa_est"] = number(report.kappa_est);
    const CInterval& c = report.c_interval;
    j["c_lo"] = c.empty ? Json(nullptr) : number(c.lo);
    j["c_hi"] = c.empty ? Json(nullptr) : number(c.hi);
    j["c_lo_open"] = c.lo_open;
    j["c_hi_open"] = c.hi_open;
    j["c_empty"] = c.empty;
    j["N_est"] = report.N_est;
    j["n_max"] = report.n_max;
    Json verdicts = Json::object();
    for (const auto& [key, v] : report.verdicts) {
        verdicts[key] = {{"status", to_string(v.status)}, {"witness", witness(v.witness)}, {"detail", v.detail}};
    }
    j["verdicts"] = verdicts;
    j["notes"] = report.notes;
    return dump(j);
}

std::string to_json(const DiscreteMeasure& measure) {
    Json j;
    j["support"] = numbers(measure.support);
    j["masses"] = numbers(measure.masses);
    j["tail_bound"] = number(measure.tail_bound);
    j["truncation_size"] = measure.truncation_size;
    return dump(j);
}

std::string to_json(const Theorem1Verdict& verdict) {
    Json j;
    j["c"] = number(verdict.c);
    j["ratio_bound"] = number(verdict.ratio_bound);
    j["n_from"] = verdict.n_from;
    j["n_to"] = verdict.n_to;
    Json checks = Json::object();
    for (const auto& [key, r] : verdict.checks) {
        checks[key] = {{"holds", r.holds},
                       {"witness", witness(r.witness)},
                       {"detail", r.detail},
                       {"series", numbers(r.series)}};
    }
    j["checks"] = checks;
    j["all_hold"] = verdict.all_hold();
    return dump(j);
}

std::string to_json(const TmsResult& result) {
    Json j;
    j["N"] = result.N;
    j["christoffel_smallest"] = number(result.christoffel_smallest);
    j["mass_below_second"] = number(result.mass_below_second);
    j["margin"] = number(result.margin);
    j["holds"] = result.holds;
    return dump(j);
}

std::string to_json(const LinearizationTable& table) {
    Json j;
    j["n"] = table.n;
    j["m"] = table.m;
    j["g"] = numbers(table.g);
    j["row_sum"] = number(table.row_sum());
    j["min_coefficient"] = number(table.min_coefficient());
    j["max_magnitude"] = number(table.max_magnitude());
    return dump(j);
}

std::string to_json(const Remark1Stats& stats) {
    Json j;
    j["K"] = stats.K;
    j["window_from"] = stats.window_from;
    j["total_mass"] = number(stats.total_mass);
    j["total_mass_summed"] = number(stats.total_mass_summed);
    j["tail_scaled"] = numbers(stats.tail_scaled);
    j["mass_scaled"] = numbers(stats.mass_scaled);
    j["tail_window"] = number(stats.tail_window);
    j["odd_constant"] = stats.odd_constant;
    j["even_halving"] = stats.even_halving;
    return dump(j);
}

std::string support_csv(const DiscreteMeasure& measure) {
    std::ostringstream out;
    out << "k,xi,mass\n";
    for (std::size_t k = 0; k < measure.size(); ++k) {
        out << (k + 1) << ',' << format_double(measure.support[k]) << ',' << format_double(measure.masses[k]) << '\n';
    }
    return out.str();
}

std::string sequence_csv(const std::string& index_name, const std::string& value_name,
                         const std::vector<std::size_t>& index, const std::vector<double>& values) {
    if (index.size() != values.size()) throw std::invalid_argument("index and value columns differ in length");
    std::ostringstream out;
    out << index_name << ',' << value_name << '\n';
    for (std::size_t i = 0; i < index.size(); ++i) out << index[i] << ',' << format_double(values[i]) << '\n';
    return out.str();
}

}  // namespace qorth::io
