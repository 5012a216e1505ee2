#include "qorth/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qorth/errors.hpp"

namespace qorth {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Least-squares slope of ys against xs.
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

// Fitted geometric ratio of a positive sequence on [from, to].
double fit_ratio(const std::function<double(std::size_t)>& seq, std::size_t from, std::size_t to) {
    std::vector<double> xs, ys;
    for (std::size_t n = from; n <= to; ++n) {
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::log(seq(n)));
    }
    return std::exp(ls_slope(xs, ys));
}

// Window factor used for the bounded-ratio checks.
constexpr double kWindow = 10.0;

}  // namespace

std::string to_string(Beta0Mode mode) {
    return mode == Beta0Mode::GammaOnly ? "gamma-only" : "alpha-plus-gamma";
}

Beta0Mode parse_beta0_mode(const std::string& text) {
    if (text == "gamma-only" || text == "GammaOnly") return Beta0Mode::GammaOnly;
    if (text == "alpha-plus-gamma" || text == "AlphaPlusGamma") return Beta0Mode::AlphaPlusGamma;
    throw DomainError("unknown beta0 mode '" + text + "'");
}

std::string to_string(TailRule rule) { return rule == TailRule::None ? "none" : "geometric"; }

TailRule parse_tail_rule(const std::string& text) {
    if (text == "none") return TailRule::None;
    if (text == "geometric") return TailRule::Geometric;
    throw DomainError("unknown tail rule '" + text + "'");
}

std::string to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::Holds: return "holds";
        case VerdictStatus::Fails: return "fails";
        case VerdictStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

// ---------------------------------------------------------------------------

RecurrenceCoefficients::RecurrenceCoefficients(Generator alpha_fn, Generator gamma_fn, Beta0Mode mode,
                                               std::optional<std::size_t> horizon, std::string label)
    : alpha_fn_(std::move(alpha_fn)),
      gamma_fn_(std::move(gamma_fn)),
      mode_(mode),
      horizon_(horizon),
      label_(std::move(label)) {}

void RecurrenceCoefficients::check_index(std::size_t n) const {
    if (horizon_ && n > *horizon_) {
        throw DomainError("coefficient index " + std::to_string(n) + " beyond table end " +
                          std::to_string(*horizon_) + " and no tail extension rule");
    }
}

double RecurrenceCoefficients::alpha(std::size_t n) const {
    if (n == 0) return 0.0;
    check_index(n);
    return alpha_fn_(n);
}

double RecurrenceCoefficients::alpha0_formal() const { return alpha_fn_(0); }

double RecurrenceCoefficients::gamma(std::size_t n) const {
    check_index(n);
    return gamma_fn_(n);
}

double RecurrenceCoefficients::beta(std::size_t n) const {
    if (n == 0) {
        return mode_ == Beta0Mode::GammaOnly ? gamma(0) : alpha0_formal() + gamma(0);
    }
    return alpha(n) + gamma(n);
}

double RecurrenceCoefficients::lambda(std::size_t n) const { return std::sqrt(alpha(n + 1)) * std::sqrt(gamma(n)); }

ScaledReal RecurrenceCoefficients::h(std::size_t n) const { return h_prefix(n).back(); }

std::vector<ScaledReal> RecurrenceCoefficients::h_prefix(std::size_t n) const {
    std::vector<ScaledReal> out;
    out.reserve(n + 1);
    out.emplace_back(1.0);
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(out.back() * ScaledReal(gamma(k)) / ScaledReal(alpha(k + 1)));
    }
    return out;
}

void RecurrenceCoefficients::validate_prefix(std::size_t n) const {
    for (std::size_t k = 0; k <= n; ++k) {
        const double g = gamma(k);
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw DomainError("non-positive gamma at n=" + std::to_string(k));
        }
        if (k >= 1) {
            const double a = alpha(k);
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw DomainError("non-positive alpha at n=" + std::to_string(k));
            }
        }
    }
}

RecurrenceCoefficients RecurrenceCoefficients::with_beta0_mode(Beta0Mode mode) const {
    RecurrenceCoefficients out = *this;
    out.mode_ = mode;
    return out;
}

RecurrenceCoefficients make_example_family(double a, double q, Beta0Mode mode) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("parameter a=" + fmt_double(a) + " outside (0,1)");
    if (!(q > 0.0 && q < 1.0)) throw DomainError("parameter q=" + fmt_double(q) + " outside (0,1)");
    const double a2 = a * a;
    RecurrenceCoefficients out(
        [a2, q](std::size_t n) { return a2 * std::pow(q, static_cast<double>(n)); },
        [q](std::size_t n) { return std::pow(q, static_cast<double>(n)); }, mode, std::nullopt,
        "geometric(a=" + fmt_double(a) + ",q=" + fmt_double(q) + ")");
    out.family_ = GeometricFamily{a, q};
    return out;
}

RecurrenceCoefficients make_table_coefficients(const std::vector<TableRow>& rows, TailRule tail,
                                               Beta0Mode mode) {
    if (rows.empty()) throw IngestError("empty coefficient table");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].n != i) {
            throw IngestError("gap in indices: expected n=" + std::to_string(i) + ", found n=" +
                              std::to_string(rows[i].n));
        }
        if (!(rows[i].gamma > 0.0) || !std::isfinite(rows[i].gamma)) {
            throw IngestError("non-positive gamma at n=" + std::to_string(i));
        }
        if (i >= 1 && (!(rows[i].alpha > 0.0) || !std::isfinite(rows[i].alpha))) {
            throw IngestError("non-positive alpha at n=" + std::to_string(i));
        }
        if (i == 0 && (rows[0].alpha < 0.0 || !std::isfinite(rows[0].alpha))) {
            throw IngestError("negative alpha at n=0");
        }
    }
    auto table = std::make_shared<const std::vector<TableRow>>(rows);
    const std::size_t last = rows.size() - 1;

    double ratio_alpha = 0.0, ratio_gamma = 0.0;
    std::optional<std::size_t> horizon = last;
    if (tail == TailRule::Geometric) {
        if (last < 2) throw IngestError("geometric tail needs at least three rows");
        const std::size_t from = std::max<std::size_t>(1, last / 2);
        ratio_alpha = fit_ratio([&](std::size_t n) { return rows[n].alpha; }, from, last);
        ratio_gamma = fit_ratio([&](std::size_t n) { return rows[n].gamma; }, from, last);
        horizon = std::nullopt;
    }
    auto extend = [table, last](double ratio, bool use_alpha) {
        return [table, last, ratio, use_alpha](std::size_t n) {
            if (n <= last) return use_alpha ? (*table)[n].alpha : (*table)[n].gamma;
            const double base = use_alpha ? (*table)[last].alpha : (*table)[last].gamma;
            return base * std::pow(ratio, static_cast<double>(n - last));
        };
    };
    return RecurrenceCoefficients(extend(ratio_alpha, true), extend(ratio_gamma, false), mode, horizon,
                                  "table(" + std::to_string(rows.size()) + " rows, tail=" + to_string(tail) + ")");
}

std::vector<TableRow> parse_coefficient_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::vector<TableRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            std::string compact;
            for (char ch : line) {
                if (ch != ' ' && ch != '\t') compact.push_back(ch);
            }
            if (compact != "n,alpha,gamma") {
                throw IngestError("expected header 'n,alpha,gamma' on line " + std::to_string(lineno));
            }
            header_seen = true;
            continue;
        }
        std::istringstream fields(line);
        std::string f_n, f_a, f_g, extra;
        if (!std::getline(fields, f_n, ',') || !std::getline(fields, f_a, ',') ||
            !std::getline(fields, f_g, ',') || std::getline(fields, extra, ',')) {
            throw IngestError("expected three fields on line " + std::to_string(lineno));
        }
        TableRow row;
        try {
            std::size_t pos = 0;
            const long long n = std::stoll(f_n, &pos);
            if (n < 0) throw IngestError("negative index on line " + std::to_string(lineno));
            row.n = static_cast<std::size_t>(n);
            row.alpha = std::stod(f_a);
            row.gamma = std::stod(f_g);
        } catch (const std::logic_error&) {
            throw IngestError("unparsable number on line " + std::to_string(lineno));
        }
        rows.push_back(row);
    }
    if (!header_seen) throw IngestError("missing header 'n,alpha,gamma'");
    return rows;
}

std::vector<TableRow> read_coefficient_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open coefficient table '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_coefficient_csv(buf.str());
}

FamilyFeasibility example_feasibility(double a, double q) {
    FamilyFeasibility f;
    f.lhs = a / (1.0 + a * a);
    f.rhs = std::sqrt(q) * (1.0 - q) / (1.0 + q * q);
    f.holds = f.lhs < f.rhs;
    return f;
}

// ---------------------------------------------------------------------------

bool CInterval::contains(double c) const {
    if (empty) return false;
    const bool above = lo_open ? c > lo : c >= lo;
    const bool below = hi_open ? c < hi : c <= hi;
    return above && below;
}

bool HypothesisReport::all_hold() const {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const auto& kv) { return kv.second.status == VerdictStatus::Holds; });
}

bool HypothesisReport::any_fails() const {
    return std::any_of(verdicts.begin(), verdicts.end(),
                       [](const auto& kv) { return kv.second.status == VerdictStatus::Fails; });
}

bool c_satisfies(const RecurrenceCoefficients& coeffs, double c, std::size_t N, std::size_t n_max) {
    for (std::size_t n = 0; n + 2 <= n_max; ++n) {
        if (!(coeffs.lambda(n) <= coeffs.beta(n + 1) - c * coeffs.beta(n + 2))) return false;
        if (n >= N && !(coeffs.beta(n) - c * coeffs.beta(n + 1) >= coeffs.beta(n + 1) - c * coeffs.beta(n + 2))) {
            return false;
        }
    }
    return true;
}

namespace {

// Half-line bookkeeping for intersecting linear constraints in c.
struct Bounds {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = true;
    bool hi_open = true;
    bool infeasible = false;

    void upper(double v, bool open) {
        if (v < hi || (v == hi && open)) {
            hi = v;
            hi_open = open;
        }
    }
    void lower(double v, bool open) {
        if (v > lo || (v == lo && open)) {
            lo = v;
            lo_open = open;
        }
    }
    bool empty() const {
        if (infeasible) return true;
        if (lo < hi) return false;
        return !(lo == hi && !lo_open && !hi_open);
    }
    CInterval as_interval() const {
        CInterval out;
        out.lo = lo;
        out.hi = hi;
        out.lo_open = lo_open;
        out.hi_open = hi_open;
        out.empty = empty();
        return out;
    }
};

// Adds beta_n - c beta_{n+1} >= beta_{n+1} - c beta_{n+2}.
void add_eventual_constraint(Bounds& b, const RecurrenceCoefficients& coeffs, std::size_t n) {
    const double d1 = coeffs.beta(n) - coeffs.beta(n + 1);
    const double d2 = coeffs.beta(n + 1) - coeffs.beta(n + 2);
    if (d2 > 0.0) {
        b.upper(d1 / d2, false);
    } else if (d2 < 0.0) {
        b.lower(d1 / d2, false);
    } else if (d1 < 0.0) {
        b.infeasible = true;
    }
}

}  // namespace

HypothesisReport check_hypotheses(const RecurrenceCoefficients& coeffs, std::size_t n_max,
                                  double c_grid_resolution) {
    if (n_max < 10) throw DomainError("check_hypotheses needs n_max >= 10");
    if (!(c_grid_resolution > 0.0)) throw DomainError("c_grid_resolution must be positive");
    HypothesisReport rep;
    if (coeffs.horizon() && *coeffs.horizon() < n_max) {
        rep.notes.push_back("n_max reduced from " + std::to_string(n_max) + " to table end " +
                            std::to_string(*coeffs.horizon()));
        n_max = *coeffs.horizon();
        if (n_max < 10) throw DomainError("coefficient table shorter than 11 rows");
    }
    coeffs.validate_prefix(n_max);
    rep.n_max = n_max;
    rep.notes.push_back("verdicts cover 0 <= n <= " + std::to_string(n_max) + " only");

    const std::size_t fit_from = std::max<std::size_t>(1, n_max / 2);

    // Decay of alpha and gamma.
    {
        const double q_gamma = fit_ratio([&](std::size_t n) { return coeffs.gamma(n); }, fit_from, n_max);
        const double q_alpha = fit_ratio([&](std::size_t n) { return coeffs.alpha(n); }, fit_from, n_max);
        rep.q_est = q_gamma;
        Verdict v;
        if (!(q_gamma > 0.0 && q_gamma < 1.0 && q_alpha > 0.0 && q_alpha < 1.0)) {
            v.status = VerdictStatus::Fails;
            std::size_t w = fit_from;
            for (std::size_t n = 1; n < n_max; ++n) {
                if (coeffs.gamma(n + 1) >= coeffs.gamma(n) || coeffs.alpha(n + 1) >= coeffs.alpha(n)) {
                    w = n;
                    break;
                }
            }
            v.witness = w;
            v.detail = "fitted ratios q_gamma=" + fmt_double(q_gamma) + ", q_alpha=" + fmt_double(q_alpha) +
                       " not in (0,1)";
        } else if (std::fabs(q_alpha - q_gamma) > 1e-3 * q_gamma) {
            v.status = VerdictStatus::Fails;
            v.witness = n_max;
            v.detail = "alpha and gamma decay at different rates " + fmt_double(q_alpha) + " vs " +
                       fmt_double(q_gamma);
        } else {
            // Each sequence gets its own window; their ratio is the separate
            // alpha/gamma condition.
            double window = 0.0;
            std::size_t witness = 1;
            for (const bool use_alpha : {true, false}) {
                double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
                std::size_t arg_lo = 1, arg_hi = 1;
                for (std::size_t n = 1; n <= n_max; ++n) {
                    const double r = (use_alpha ? coeffs.alpha(n) : coeffs.gamma(n)) /
                                     std::pow(q_gamma, static_cast<double>(n));
                    if (r < lo) { lo = r; arg_lo = n; }
                    if (r > hi) { hi = r; arg_hi = n; }
                }
                if (hi / lo > window) {
                    window = hi / lo;
                    witness = std::max(arg_lo, arg_hi);
                }
            }
            if (window <= kWindow) {
                v.status = VerdictStatus::Holds;
                v.detail = "q_est=" + fmt_double(q_gamma) + ", normalized window " + fmt_double(window);
            } else {
                v.status = VerdictStatus::Fails;
                v.witness = witness;
                v.detail = "alpha_n/q^n or gamma_n/q^n window " + fmt_double(window) + " exceeds 10";
            }
        }
        rep.verdicts[condition::kDecay] = v;
    }

    // alpha_n <= kappa gamma_n with 1 <= kappa < 1/q + q - 1.
    {
        double sup = 0.0;
        std::size_t arg = 1;
        for (std::size_t n = 1; n <= n_max; ++n) {
            const double r = coeffs.alpha(n) / coeffs.gamma(n);
            if (r > sup) { sup = r; arg = n; }
        }
        rep.kappa_est = std::max(1.0, sup);
        const double q = rep.q_est;
        const double bound = 1.0 / q + q - 1.0;
        Verdict v;
        if (rep.kappa_est < bound) {
            v.status = VerdictStatus::Holds;
        } else {
            v.status = VerdictStatus::Fails;
            v.witness = arg;
        }
        v.detail = "kappa_est=" + fmt_double(rep.kappa_est) + ", bound 1/q+q-1=" + fmt_double(bound);
        rep.verdicts[condition::kRatio] = v;
    }

    // h(n) ~ s^n, s > 1.
    {
        const auto h = coeffs.h_prefix(n_max);
        std::vector<double> xs, ys;
        for (std::size_t n = fit_from; n <= n_max; ++n) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(h[n].log_abs());
        }
        const double log_s = ls_slope(xs, ys);
        rep.s_est = std::exp(log_s);
        Verdict v;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        std::size_t arg_lo = 0, arg_hi = 0;
        for (std::size_t n = 0; n <= n_max; ++n) {
            const double r = h[n].log_abs() - log_s * static_cast<double>(n);
            if (r < lo) { lo = r; arg_lo = n; }
            if (r > hi) { hi = r; arg_hi = n; }
        }
        const double window = std::exp(hi - lo);
        if (!(rep.s_est > 1.0)) {
            v.status = VerdictStatus::Fails;
            v.witness = n_max;
            v.detail = "s_est=" + fmt_double(rep.s_est) + " not > 1";
        } else if (window > kWindow) {
            v.status = VerdictStatus::Fails;
            v.witness = std::max(arg_lo, arg_hi);
            v.detail = "h(n)/s^n window " + fmt_double(window) + " exceeds 10";
        } else {
            v.status = VerdictStatus::Holds;
            v.detail = "s_est=" + fmt_double(rep.s_est) + ", window " + fmt_double(window);
        }
        rep.verdicts[condition::kGrowth] = v;
        if (const auto& fam = coeffs.family()) {
            const double printed = 1.0 / (fam->a * fam->a);
            const double direct = 1.0 / (fam->a * fam->a * fam->q);
            rep.notes.push_back("geometric family: s=a^-2=" + fmt_double(printed) +
                                " differs from the product formula value (a^2 q)^-1=" + fmt_double(direct) +
                                "; s_est=" + fmt_double(rep.s_est) + " is taken from the data");
        }
    }

    // beta_1 <= beta_0.
    {
        Verdict v;
        v.status = coeffs.beta(1) <= coeffs.beta(0) ? VerdictStatus::Holds : VerdictStatus::Fails;
        if (v.status == VerdictStatus::Fails) v.witness = 1;
        v.detail = "beta_0=" + fmt_double(coeffs.beta(0)) + ", beta_1=" + fmt_double(coeffs.beta(1));
        rep.verdicts[condition::kBetaStart] = v;
    }

    // lambda_n <= beta_{n+1} - c beta_{n+2} on ((1+q)/(1+q^2), 1/q).
    const double q = rep.q_est;
    Bounds base;
    if (q > 0.0 && q < 1.0) {
        base.lower((1.0 + q) / (1.0 + q * q), true);
        base.upper(1.0 / q, true);
    } else {
        base.infeasible = true;
    }
    Bounds lam = base;
    std::size_t lam_witness = 0;
    for (std::size_t n = 0; n + 2 <= n_max; ++n) {
        const double bound = (coeffs.beta(n + 1) - coeffs.lambda(n)) / coeffs.beta(n + 2);
        const bool was_empty = lam.empty();
        lam.upper(bound, false);
        if (!was_empty && lam.empty()) lam_witness = n;
    }
    {
        Verdict v;
        if (lam.empty()) {
            v.status = VerdictStatus::Fails;
            v.witness = lam_witness;
            v.detail = "no c in ((1+q)/(1+q^2), 1/q) satisfies the lambda bound";
        } else {
            v.status = VerdictStatus::Holds;
            v.detail = "c <= " + fmt_double(lam.hi);
        }
        rep.verdicts[condition::kLambdaBound] = v;
    }

    // beta_n - c beta_{n+1} >= beta_{n+1} - c beta_{n+2} for n >= N, jointly
    // with the lambda bound when that is feasible. Suffix intersections shrink
    // as N decreases, so the smallest feasible N is found by a downward scan.
    {
        const Bounds& start = lam.empty() ? base : lam;
        Bounds acc = start;
        std::optional<std::size_t> smallest;
        Bounds at_smallest = start;
        for (std::size_t N = n_max - 1; N-- > 0;) {
            add_eventual_constraint(acc, coeffs, N);
            if (acc.empty()) break;
            smallest = N;
            at_smallest = acc;
        }
        Verdict v;
        if (!smallest) {
            v.status = VerdictStatus::Fails;
            v.witness = n_max - 2;
            v.detail = "infeasible even at the last checked index";
            rep.N_est = n_max - 2;
        } else {
            rep.N_est = *smallest;
            if (*smallest <= n_max / 2) {
                v.status = VerdictStatus::Holds;
            } else {
                v.status = VerdictStatus::Inconclusive;
                v.witness = *smallest;
            }
            v.detail = "N_est=" + std::to_string(*smallest);
        }
        rep.verdicts[condition::kBetaEventual] = v;
        if (!lam.empty() && smallest) {
            rep.c_interval = at_smallest.as_interval();
        } else {
            rep.c_interval = CInterval{};
        }
    }

    // Certify the interval by substitution on a grid; pull a closed upper end
    // inward if rounding makes it fail.
    if (!rep.c_interval.empty) {
        CInterval& ci = rep.c_interval;
        if (!ci.hi_open && !c_satisfies(coeffs, ci.hi, rep.N_est, n_max)) {
            double good = ci.midpoint(), bad = ci.hi;
            while (bad - good > c_grid_resolution * 1e-3) {
                const double mid = 0.5 * (good + bad);
                (c_satisfies(coeffs, mid, rep.N_est, n_max) ? good : bad) = mid;
            }
            ci.hi = good;
        }
        const double width = ci.hi - ci.lo;
        const auto steps = static_cast<std::size_t>(std::min(1e6, std::floor(width / c_grid_resolution)));
        for (std::size_t i = 1; i < steps; ++i) {
            const double c = ci.lo + static_cast<double>(i) * c_grid_resolution;
            if (!c_satisfies(coeffs, c, rep.N_est, n_max)) {
                rep.notes.push_back("grid point c=" + fmt_double(c) + " failed re-substitution");
                rep.verdicts[condition::kLambdaBound].status = VerdictStatus::Inconclusive;
                break;
            }
        }
    }

    // lambda_n <= beta_{n+1} - beta_{n+2} together with beta decreasing.
    {
        Verdict v;
        v.status = VerdictStatus::Holds;
        for (std::size_t n = 0; n + 2 <= n_max; ++n) {
            if (!(coeffs.lambda(n) <= coeffs.beta(n + 1) - coeffs.beta(n + 2)) ||
                !(coeffs.beta(n + 1) <= coeffs.beta(n))) {
                v.status = VerdictStatus::Fails;
                v.witness = n;
                break;
            }
        }
        rep.verdicts[condition::kLinearization] = v;
    }
    return rep;
}

}  // namespace qorth
