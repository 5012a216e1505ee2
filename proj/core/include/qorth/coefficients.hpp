#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qorth/scaled_real.hpp"

namespace qorth {

/// Selects the diagonal entry beta(0) of the Jacobi matrix.
///
/// GammaOnly uses beta(0) = gamma(0), which keeps R_n(0) = 1 for every n.
/// AlphaPlusGamma uses beta(0) = alpha0_formal + gamma(0), where alpha0_formal
/// is the n = 0 value of the alpha formula (a^2 for the geometric family).
enum class Beta0Mode { GammaOnly, AlphaPlusGamma };

std::string to_string(Beta0Mode mode);
Beta0Mode parse_beta0_mode(const std::string& text);

/// How a coefficient table is continued past its last row.
enum class TailRule { None, Geometric };

std::string to_string(TailRule rule);
TailRule parse_tail_rule(const std::string& text);

/// One row of a user-supplied coefficient table.
struct TableRow {
    std::size_t n = 0;
    double alpha = 0.0;
    double gamma = 0.0;
};

/// Parameters of the geometric family alpha_n = a^2 q^n, gamma_n = q^n.
struct GeometricFamily {
    double a = 0.0;
    double q = 0.0;
};

/// Coefficients of x R_n = -gamma_n R_{n+1} + beta_n R_n - alpha_n R_{n-1}.
///
/// Immutable value type; copies share the underlying generator. alpha(0) is
/// always 0 in the recurrence. Indices beyond horizon() throw DomainError.
class RecurrenceCoefficients {
  public:
    using Generator = std::function<double(std::size_t)>;

    /// alpha_fn(0) is the formal n = 0 value used only by AlphaPlusGamma.
    RecurrenceCoefficients(Generator alpha_fn, Generator gamma_fn, Beta0Mode mode,
                           std::optional<std::size_t> horizon = std::nullopt,
                           std::string label = "custom");

    double alpha(std::size_t n) const;
    double gamma(std::size_t n) const;
    double beta(std::size_t n) const;
    /// sqrt(alpha(n+1) * gamma(n)).
    double lambda(std::size_t n) const;
    double alpha0_formal() const;

    /// h(n) = gamma_0...gamma_{n-1} / (alpha_1...alpha_n), h(0) = 1.
    ScaledReal h(std::size_t n) const;
    /// h(0..n) inclusive, built by the step h(k+1) = h(k) gamma_k / alpha_{k+1}.
    std::vector<ScaledReal> h_prefix(std::size_t n) const;

    Beta0Mode beta0_mode() const { return mode_; }
    std::optional<std::size_t> horizon() const { return horizon_; }
    const std::string& label() const { return label_; }
    const std::optional<GeometricFamily>& family() const { return family_; }

    /// Throws DomainError naming the first non-positive entry on [0, n].
    void validate_prefix(std::size_t n) const;

    /// Same coefficients with a different beta(0) convention.
    RecurrenceCoefficients with_beta0_mode(Beta0Mode mode) const;

  private:
    friend RecurrenceCoefficients make_example_family(double, double, Beta0Mode);

    void check_index(std::size_t n) const;

    Generator alpha_fn_;
    Generator gamma_fn_;
    Beta0Mode mode_;
    std::optional<std::size_t> horizon_;
    std::string label_;
    std::optional<GeometricFamily> family_;
};

/// alpha_n = a^2 q^n (n >= 1), gamma_n = q^n. Requires 0 < a < 1, 0 < q < 1.
RecurrenceCoefficients make_example_family(double a, double q,
                                           Beta0Mode mode = Beta0Mode::GammaOnly);

/// Builds coefficients from rows contiguous from n = 0. Values on the table
/// range are reproduced exactly; TailRule::Geometric continues alpha and gamma
/// with ratios fitted on the upper half of the table.
RecurrenceCoefficients make_table_coefficients(const std::vector<TableRow>& rows,
                                               TailRule tail = TailRule::None,
                                               Beta0Mode mode = Beta0Mode::GammaOnly);

/// Parses CSV with header `n,alpha,gamma`. Throws IngestError.
std::vector<TableRow> parse_coefficient_csv(const std::string& text);
std::vector<TableRow> read_coefficient_csv(const std::string& path);

/// Closed-form sufficient condition for the geometric family:
/// a / (1 + a^2) < sqrt(q) (1 - q) / (1 + q^2).
struct FamilyFeasibility {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};
FamilyFeasibility example_feasibility(double a, double q);

// ---------------------------------------------------------------------------
// Hypothesis checking

enum class VerdictStatus { Holds, Fails, Inconclusive };
std::string to_string(VerdictStatus status);

struct Verdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::optional<std::size_t> witness;
    std::string detail;
};

/// Interval of admissible c, each end open or closed.
struct CInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = true;
    bool hi_open = true;
    bool empty = true;

    bool contains(double c) const;
    double midpoint() const { return 0.5 * (lo + hi); }
};

/// Verdict keys used in HypothesisReport::verdicts.
namespace condition {
inline constexpr const char* kDecay = "exponential_decay";         // alpha_n, gamma_n ~ q^n
inline constexpr const char* kRatio = "alpha_gamma_ratio";         // alpha_n <= kappa gamma_n
inline constexpr const char* kGrowth = "h_growth";                 // h(n) ~ s^n, s > 1
inline constexpr const char* kLambdaBound = "lambda_bound";        // lambda_n <= beta_{n+1} - c beta_{n+2}
inline constexpr const char* kBetaStart = "beta_start";            // beta_1 <= beta_0
inline constexpr const char* kBetaEventual = "beta_eventual";      // beta_n - c beta_{n+1} nonincreasing
inline constexpr const char* kLinearization = "linearization_criterion";  // lambda_n <= beta_{n+1} - beta_{n+2}
}  // namespace condition

/// Verdicts for the structural conditions over n <= n_max. All verdicts are
/// statements about the checked range only.
struct HypothesisReport {
    double q_est = 0.0;
    double s_est = 0.0;
    double kappa_est = 0.0;
    CInterval c_interval;
    std::size_t N_est = 0;
    std::size_t n_max = 0;
    std::map<std::string, Verdict> verdicts;
    std::vector<std::string> notes;

    bool all_hold() const;
    bool any_fails() const;
};

/// Checks the hypothesis system on n <= n_max (n_max >= 10). The c interval
/// is the exact intersection of the per-index half-lines; c_grid_resolution
/// is the spacing of the certification scan and of endpoint refinement.
HypothesisReport check_hypotheses(const RecurrenceCoefficients& coeffs, std::size_t n_max,
                                  double c_grid_resolution = 1e-4);

/// Re-substitutes c into the lambda bound for n + 2 <= n_max and the eventual
/// monotonicity for N <= n, n + 2 <= n_max.
bool c_satisfies(const RecurrenceCoefficients& coeffs, double c, std::size_t N, std::size_t n_max);

}  // namespace qorth
