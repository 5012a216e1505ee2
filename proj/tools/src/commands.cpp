#include "qorth/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "qorth/analysis.hpp"
#include "qorth/errors.hpp"
#include "qorth/serialize.hpp"
#include "qorth/spectrum.hpp"

namespace qorth::cli {

namespace {

using Json = nlohmann::ordered_json;

// Acceptance thresholds of the verification suites.
constexpr double kLebesgueMedianFactor = 3.0;
constexpr double kProjectionTolerance = 1e-9;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kBoundednessSlack = 1e-10;
constexpr double kNonnegativeTolerance = 1e-10;
constexpr double kRowSumTolerance = 1e-10;
constexpr double kSymmetryTolerance = 1e-12;
constexpr double kRemark1Window = 4.0;
constexpr std::size_t kBoundednessOrders = 60;
constexpr std::size_t kBoundednessPoints = 20;
constexpr std::size_t kProjectionOrders = 20;
constexpr std::size_t kTmsFrom = 3;
constexpr std::size_t kTmsTo = 30;
constexpr std::size_t kExpansionCheckpoints[] = {5, 10, 20, 40};

Json parse(const std::string& text) { return Json::parse(text); }

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::function<double(double)> test_function(const std::string& name, const DiscreteMeasure& mu) {
    if (name == "sqrt") return [](double y) { return std::sqrt(y); };
    if (name == "rational") return [](double y) { return 1.0 / (1.0 + y); };
    if (name == "pow32") return [](double y) { return y * std::sqrt(y); };
    if (name == "abs_xi5") {
        if (mu.size() < 5) throw DomainError("test function abs_xi5 needs k >= 5");
        const double xi5 = mu.support[4];
        return [xi5](double y) { return std::fabs(y - xi5); };
    }
    throw DomainError("unknown test function '" + name + "'");
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::size_t> iota_sizes(std::size_t from, std::size_t to) {
    std::vector<std::size_t> out;
    for (std::size_t i = from; i <= to; ++i) out.push_back(i);
    return out;
}

int verdict_status(bool holds) { return holds ? exit_code::kOk : exit_code::kVerdictFails; }

int report_status(const HypothesisReport& report) {
    if (report.any_fails()) return exit_code::kVerdictFails;
    if (!report.all_hold()) return exit_code::kInconclusive;
    return exit_code::kOk;
}

Json report_json(const RunConfig& cfg, const HypothesisReport& report) {
    Json j = parse(io::to_json(report));
    if (cfg.table.empty()) {
        const FamilyFeasibility f = example_feasibility(cfg.a, cfg.q);
        j["family_feasibility"] = {{"lhs", number(f.lhs)}, {"rhs", number(f.rhs)}, {"holds", f.holds}};
    }
    return j;
}

// --- shared pieces of expand / lebesgue / linearize / verify ---------------

struct ExpansionRun {
    std::string name;
    std::vector<double> sup_error;  // n = 0..n_max
    double remainder_bound = 0.0;
};

std::vector<ExpansionRun> run_expansions(const RunConfig& cfg, const SupportBasis& basis) {
    std::vector<ExpansionRun> runs;
    for (const auto& name : cfg.functions) {
        ExpansionRun run{name, {}, 0.0};
        const auto values = basis.sample(test_function(name, basis.measure()));
        for (std::size_t n = 0; n <= cfg.n_max; ++n) {
            const ExpansionResult r = partial_sum(basis, values, n);
            run.sup_error.push_back(r.sup_error);
            run.remainder_bound = r.remainder_bound;
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

Json expansion_json(const std::vector<ExpansionRun>& runs, bool with_checks, bool& all_monotone) {
    Json fns = Json::object();
    all_monotone = true;
    for (const auto& run : runs) {
        Json f;
        f["remainder_bound"] = number(run.remainder_bound);
        f["sup_error"] = Json::array();
        for (double v : run.sup_error) f["sup_error"].push_back(number(v));
        if (with_checks) {
            Json cps = Json::array();
            bool monotone = true;
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t n : kExpansionCheckpoints) {
                if (n >= run.sup_error.size()) continue;
                cps.push_back({{"n", n}, {"sup_error", number(run.sup_error[n])}});
                if (run.sup_error[n] > prev + kMonotoneSlack) monotone = false;
                prev = run.sup_error[n];
            }
            f["checkpoints"] = cps;
            f["non_increasing"] = monotone;
            all_monotone = all_monotone && monotone;
        }
        fns[run.name] = f;
    }
    return fns;
}

void add_expansion_csvs(CommandResult& res, const std::vector<ExpansionRun>& runs) {
    for (const auto& run : runs) {
        res.files.emplace_back("expansion_" + run.name + ".csv",
                               io::sequence_csv("n", "sup_error", iota_sizes(0, run.sup_error.size() - 1),
                                                run.sup_error));
    }
}

struct LebesgueRun {
    std::vector<double> values;
    std::vector<std::size_t> argmax;
    double max = 0.0;
    double median = 0.0;
    bool bounded = false;
};

LebesgueRun run_lebesgue(const SupportBasis& basis, std::size_t n_max) {
    LebesgueRun run;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const LebesgueConstant c = lebesgue_constant(basis, n);
        run.values.push_back(c.value);
        run.argmax.push_back(c.argmax);
    }
    run.max = *std::max_element(run.values.begin(), run.values.end());
    run.median = median(run.values);
    run.bounded = run.max <= kLebesgueMedianFactor * run.median;
    return run;
}

Json lebesgue_json(const LebesgueRun& run) {
    Json j;
    j["values"] = Json::array();
    for (double v : run.values) j["values"].push_back(number(v));
    j["argmax_point"] = run.argmax;
    j["max"] = number(run.max);
    j["median"] = number(run.median);
    j["max_over_median"] = number(run.max / run.median);
    j["bound"] = kLebesgueMedianFactor;
    j["bounded"] = run.bounded;
    return j;
}

struct LinearizationRun {
    std::size_t lin_max = 0;
    double min_relative = std::numeric_limits<double>::infinity();
    double max_row_sum_error = 0.0;
    double max_asymmetry = 0.0;
    bool nonnegative = false;
    bool row_sums = false;
    bool symmetric = false;
    std::vector<LinearizationTable> small;  // n <= m <= 6
};

LinearizationRun run_linearization(const RecurrenceCoefficients& coeffs, std::size_t lin_max) {
    LinearizationRun run;
    run.lin_max = lin_max;
    for (std::size_t n = 0; n <= lin_max; ++n) {
        for (std::size_t m = n; m <= lin_max; ++m) {
            const LinearizationTable t = linearization(coeffs, n, m);
            const LinearizationTable u = linearization(coeffs, m, n);
            run.min_relative = std::min(run.min_relative, t.min_coefficient() / t.max_magnitude());
            run.max_row_sum_error = std::max(run.max_row_sum_error, std::fabs(t.row_sum() - 1.0));
            for (std::size_t k = 0; k < t.g.size(); ++k) {
                run.max_asymmetry = std::max(run.max_asymmetry, std::fabs(t.g[k] - u.g[k]));
            }
            if (m <= 6) run.small.push_back(t);
        }
    }
    run.nonnegative = run.min_relative >= -kNonnegativeTolerance;
    run.row_sums = run.max_row_sum_error <= kRowSumTolerance;
    run.symmetric = run.max_asymmetry <= kSymmetryTolerance;
    return run;
}

Json linearization_json(const LinearizationRun& run, bool with_tables) {
    Json j;
    j["lin_max"] = run.lin_max;
    j["min_relative_coefficient"] = number(run.min_relative);
    j["max_row_sum_error"] = number(run.max_row_sum_error);
    j["max_asymmetry"] = number(run.max_asymmetry);
    j["nonnegative"] = run.nonnegative;
    j["row_sums"] = run.row_sums;
    j["symmetric"] = run.symmetric;
    if (with_tables) {
        Json tables = Json::array();
        for (const auto& t : run.small) tables.push_back(parse(io::to_json(t)));
        j["tables"] = tables;
    }
    return j;
}

bool linearization_holds(const LinearizationRun& run) { return run.nonnegative && run.row_sums && run.symmetric; }

std::string yes_no(bool b) { return b ? "holds" : "fails"; }

}  // namespace

// ---------------------------------------------------------------------------

CommandResult cmd_check(const RunConfig& cfg) {
    const RecurrenceCoefficients coeffs = make_coefficients(cfg);
    const HypothesisReport report = check_hypotheses(coeffs, cfg.n_max, cfg.c_grid_resolution);
    CommandResult res;
    res.status = report_status(report);
    res.files.emplace_back("check.json", dump(report_json(cfg, report)));
    const CInterval& c = report.c_interval;
    res.summary = "check: " +
                  std::string(res.status == 0 ? "all conditions hold" : res.status == 1 ? "a condition fails"
                                                                                          : "inconclusive");
    if (!c.empty) {
        res.summary += "; c in " + std::string(c.lo_open ? "(" : "[") + io::format_double(c.lo) + ", " +
                       io::format_double(c.hi) + (c.hi_open ? ")" : "]");
    }
    return res;
}

CommandResult cmd_measure(const RunConfig& cfg) {
    const RecurrenceCoefficients coeffs = make_coefficients(cfg);
    const DiscreteMeasure mu = measure(coeffs, cfg.k, cfg.rel_tol);
    CommandResult res;
    res.files.emplace_back("measure.json", io::to_json(mu));
    res.files.emplace_back("support.csv", io::support_csv(mu));
    res.summary = "measure: " + std::to_string(mu.size()) + " support points, tail_bound " +
                  io::format_double(mu.tail_bound) + ", truncation " + std::to_string(mu.truncation_size);
    return res;
}

CommandResult cmd_expand(const RunConfig& cfg) {
    const RecurrenceCoefficients coeffs = make_coefficients(cfg);
    const DiscreteMeasure mu = measure(coeffs, cfg.k, cfg.rel_tol);
    const SupportBasis basis(mu, coeffs, cfg.n_max);
    const auto runs = run_expansions(cfg, basis);
    bool monotone = true;
    Json j;
    j["n_max"] = cfg.n_max;
    j["k"] = mu.size();
    j["functions"] = expansion_json(runs, true, monotone);
    CommandResult res;
    res.files.emplace_back("expansion.json", dump(j));
    add_expansion_csvs(res, runs);
    res.summary = "expand: " + std::to_string(runs.size()) + " functions, n <= " + std::to_string(cfg.n_max);
    return res;
}

CommandResult cmd_lebesgue(const RunConfig& cfg) {
    const RecurrenceCoefficients coeffs = make_coefficients(cfg);
    const DiscreteMeasure mu = measure(coeffs, cfg.k, cfg.rel_tol);
    const SupportBasis basis(mu, coeffs, cfg.n_max);
    const LebesgueRun run = run_lebesgue(basis, cfg.n_max);
    CommandResult res;
    res.status = verdict_status(run.bounded);
    res.files.emplace_back("lebesgue.json", dump(lebesgue_json(run)));
    res.files.emplace_back("lebesgue.csv", io::sequence_csv("n", "lambda", iota_sizes(0, cfg.n_max), run.values));
    res.summary = "lebesgue: max " + io::format_double(run.max) + ", median " + io::format_double(run.median) +
                  " (" + (run.bounded ? "bounded" : "not bounded") + ")";
    return res;
}

CommandResult cmd_linearize(const RunConfig& cfg) {
    const RecurrenceCoefficients coeffs = make_coefficients(cfg);
    const LinearizationRun run = run_linearization(coeffs, cfg.lin_max);
    CommandResult res;
    res.status = verdict_status(linearization_holds(run));
    res.files.emplace_back("linearization.json", dump(linearization_json(run, true)));
    res.summary = "linearize: n, m <= " + std::to_string(cfg.lin_max) + ", min relative coefficient " +
                  io::format_double(run.min_relative) + " (" + yes_no(linearization_holds(run)) + ")";
    return res;
}

namespace {

CommandResult verify_remark1(const RunConfig& cfg) {
    const Remark1Stats st = remark1_fixture_stats(cfg.k);
    Json checks;
    checks["total_mass_exact"] = st.total_mass == 1.0;
    checks["tail_window"] = st.tail_window <= kRemark1Window;
    checks["odd_constant"] = st.odd_constant;
    checks["even_halving"] = st.even_halving;
    bool all = true;
    for (const auto& [k, v] : checks.items()) all = all && v.get<bool>();
    Json j = parse(io::to_json(st));
    j["tail_window_bound"] = kRemark1Window;
    j["checks"] = checks;
    j["all_hold"] = all;
    CommandResult res;
    res.status = verdict_status(all);
    res.files.emplace_back("remark1.json", dump(j));
    res.summary = "verify remark1: " + yes_no(all) + ", tail window " + io::format_double(st.tail_window);
    return res;
}

}  // namespace

CommandResult cmd_verify(const RunConfig& cfg) {
    if (cfg.suite == "remark1") return verify_remark1(cfg);

    const RecurrenceCoefficients coeffs = make_coefficients(cfg);
    const HypothesisReport report = check_hypotheses(coeffs, cfg.n_max, cfg.c_grid_resolution);
    Json j;
    j["hypotheses"] = report_json(cfg, report);
    CommandResult res;
    if (!report.all_hold()) {
        j["note"] = "hypotheses not satisfied; theorem checks skipped";
        j["all_hold"] = false;
        res.status = report.any_fails() ? exit_code::kVerdictFails : exit_code::kInconclusive;
        res.files.emplace_back("verify.json", dump(j));
        res.summary = "verify: hypotheses not satisfied; theorem checks skipped";
        return res;
    }

    const DiscreteMeasure mu = measure(coeffs, cfg.k, cfg.rel_tol);
    std::map<std::string, bool> verdicts;

    const Theorem1Verdict t1 = verify_theorem1(coeffs, report, mu);
    j["theorem1"] = parse(io::to_json(t1));
    verdicts["theorem1"] = t1.all_hold();

    {
        Json tms = Json::array();
        bool all = true;
        for (std::size_t N = kTmsFrom; N <= kTmsTo; ++N) {
            const TmsResult r = verify_tms(coeffs, mu, N);
            tms.push_back(parse(io::to_json(r)));
            all = all && r.holds;
        }
        j["tms"] = {{"results", tms}, {"all_hold", all}};
        verdicts["tms"] = all;
    }

    const SupportBasis basis(mu, coeffs, std::max(cfg.n_max, kBoundednessOrders));
    {
        double worst = 0.0;
        const std::size_t points = std::min(kBoundednessPoints, mu.size());
        for (std::size_t n = 0; n <= kBoundednessOrders; ++n) {
            for (std::size_t k = 1; k <= points; ++k) worst = std::max(worst, std::fabs(basis.R(n, k)));
        }
        const bool holds = worst <= 1.0 + kBoundednessSlack;
        j["boundedness"] = {{"max_abs_R", number(worst)}, {"orders", kBoundednessOrders}, {"points", points},
                            {"holds", holds}};
        verdicts["boundedness"] = holds;
    }

    {
        const LinearizationRun run = run_linearization(coeffs, cfg.lin_max);
        j["linearization"] = linearization_json(run, false);
        verdicts["linearization"] = linearization_holds(run);
    }

    const LebesgueRun leb = run_lebesgue(basis, cfg.n_max);
    j["lebesgue"] = lebesgue_json(leb);
    verdicts["lebesgue"] = leb.bounded;

    {
        double worst = 0.0;
        const std::size_t top = std::min(kProjectionOrders, cfg.n_max);
        for (std::size_t n = 0; n <= top; ++n) {
            for (std::size_t m = 0; m <= n; ++m) {
                worst = std::max(worst, partial_sum(basis, basis.basis_function(m), n).sup_error);
            }
        }
        const bool holds = worst <= kProjectionTolerance;
        j["projection"] = {{"max_sup_error", number(worst)}, {"orders", top}, {"holds", holds}};
        verdicts["projection"] = holds;
    }

    RunConfig sqrt_only = cfg;
    sqrt_only.functions = {"sqrt"};
    const auto sqrt_runs = run_expansions(sqrt_only, basis);
    const auto runs = run_expansions(cfg, basis);
    {
        bool monotone = true;
        expansion_json(sqrt_runs, true, monotone);
        bool all_monotone = true;
        j["expansion"] = {{"functions", expansion_json(runs, true, all_monotone)}, {"sqrt_non_increasing", monotone}};
        verdicts["expansion"] = monotone;
    }

    bool all = true;
    Json summary = Json::object();
    for (const auto& [name, holds] : verdicts) {
        summary[name] = holds;
        all = all && holds;
    }
    j["verdicts"] = summary;
    j["all_hold"] = all;

    res.status = verdict_status(all);
    res.files.emplace_back("verify.json", dump(j));
    res.files.emplace_back("measure.json", io::to_json(mu));
    res.files.emplace_back("support.csv", io::support_csv(mu));
    res.files.emplace_back("lebesgue.csv",
                           io::sequence_csv("n", "lambda", iota_sizes(0, leb.values.size() - 1), leb.values));
    add_expansion_csvs(res, runs);
    res.summary = "verify: " + yes_no(all);
    return res;
}

// ---------------------------------------------------------------------------

namespace {

struct CommonFlags {
    std::map<std::string, std::string> values;  // config key -> flag text
    std::string seed_config;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags) {
    const std::pair<const char*, const char*> keyed[] = {
        {"--a", "a"},
        {"--q", "q"},
        {"--beta0-mode", "beta0_mode"},
        {"--table", "table"},
        {"--tail-rule", "tail_rule"},
        {"--k", "k"},
        {"--nmax", "n_max"},
        {"--lin-max", "lin_max"},
        {"--rel-tol", "rel_tol"},
        {"--c-res", "c_grid_resolution"},
        {"--functions", "functions"},
        {"--suite", "suite"},
        {"--out", "out"},
    };
    for (const auto& [flag, key] : keyed) {
        sub->add_option_function<std::string>(
            flag, [&flags, key = std::string(key)](const std::string& v) { flags.values[key] = v; },
            "overrides config key '" + std::string(key) + "'");
    }
    sub->add_option("--seed-config", flags.seed_config, "key=value file applied before the flags");
}

void emit(const RunConfig& cfg, const CommandResult& res, std::ostream& out) {
    if (cfg.out.empty()) {
        for (const auto& [name, contents] : res.files) out << "==> " << name << " <==\n" << contents;
        out << res.summary << '\n';
        return;
    }
    const std::filesystem::path dir(cfg.out);
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& contents) {
        std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
        f << contents;
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    };
    // The artifact omits the output directory so reruns elsewhere compare equal.
    RunConfig recorded = cfg;
    recorded.out.clear();
    write("config.txt", recorded.canonical());
    for (const auto& [name, contents] : res.files) write(name, contents);
    out << res.summary << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orthogonality measures of exponentially decaying recurrences"};
    app.require_subcommand(1);
    CommonFlags flags;
    const std::pair<const char*, const char*> commands[] = {
        {"check", "check the hypothesis system"},
        {"measure", "reconstruct support points and masses"},
        {"expand", "Fourier partial sums of the test functions"},
        {"lebesgue", "Lebesgue constants"},
        {"linearize", "product linearization coefficients"},
        {"verify", "run a verification suite"},
    };
    for (const auto& [name, help] : commands) add_common_flags(app.add_subcommand(name, help), flags);

    std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kParseError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    try {
        if (!flags.seed_config.empty()) cfg = load_config(flags.seed_config);
        for (const auto& [key, value] : flags.values) apply_config_value(cfg, key, value);
        cfg.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kParseError;
    }

    try {
        CommandResult res;
        if (command == "check") res = cmd_check(cfg);
        else if (command == "measure") res = cmd_measure(cfg);
        else if (command == "expand") res = cmd_expand(cfg);
        else if (command == "lebesgue") res = cmd_lebesgue(cfg);
        else if (command == "linearize") res = cmd_linearize(cfg);
        else res = cmd_verify(cfg);
        emit(cfg, res, out);
        return res.status;
    } catch (const IngestError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kParseError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kParseError;
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << '\n';
        return exit_code::kConvergence;
    } catch (const PrecisionError& e) {
        err << "precision failure: " << e.what() << '\n';
        return exit_code::kConvergence;
    } catch (const NumericalConsistencyError& e) {
        err << "numerical inconsistency: " << e.what() << '\n';
        return exit_code::kConvergence;
    }
}

}  // namespace qorth::cli
