#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qorth/coefficients.hpp"
#include "qorth/polyeval.hpp"
#include "qorth/scaled_real.hpp"
#include "qorth/spectrum.hpp"

namespace qorth {

/// Values of p_0..p_{n+1} on {0} u {xi_1..xi_K}.
///
/// Point index 0 is x = 0 (where p_k(0) = sqrt(h(k))); index j >= 1 is xi_j.
/// At support points the values are the square-summable solution of the
/// recurrence, obtained by two-sided evaluation against a truncation well
/// past n.
class SupportBasis {
  public:
    SupportBasis(DiscreteMeasure measure, RecurrenceCoefficients coeffs, std::size_t n_max);

    std::size_t n_max() const { return n_max_; }
    /// Number of support points K (point indices run 0..K).
    std::size_t size() const { return measure_.size(); }
    double point(std::size_t j) const { return j == 0 ? 0.0 : measure_.support[j - 1]; }
    /// Mass of point j; 0 for j = 0.
    double mass(std::size_t j) const { return j == 0 ? 0.0 : measure_.masses[j - 1]; }

    /// p_0..p_{n_max+1} at point j.
    std::span<const ScaledReal> p(std::size_t j) const { return values_p_[j]; }
    double R(std::size_t k, std::size_t j) const { return values_R_[j][k]; }
    /// R_m on {0} u support, indexed like point().
    std::vector<double> basis_function(std::size_t m) const;
    /// f evaluated on {0} u support.
    std::vector<double> sample(const std::function<double(double)>& f) const;

    /// Point index for x in {0} u support; DomainError otherwise.
    std::size_t index_of(double x) const;

    const DiscreteMeasure& measure() const { return measure_; }
    const RecurrenceCoefficients& coefficients() const { return coeffs_; }
    std::size_t evaluation_truncation() const { return truncation_; }

  private:
    DiscreteMeasure measure_;
    RecurrenceCoefficients coeffs_;
    std::size_t n_max_;
    std::size_t truncation_;
    std::vector<std::vector<ScaledReal>> values_p_;
    std::vector<std::vector<double>> values_R_;
};

/// a_k(f) over the computed atoms plus the bound on what the tail can add.
struct FourierCoefficient {
    double value = 0.0;
    /// |f|_inf * tail_bound, using |R_k| <= 1 on the support.
    double remainder_bound = 0.0;
};

/// f_values indexed like SupportBasis::point. Throws PrecisionError when the
/// remainder bound exceeds tolerance.
FourierCoefficient fourier_coefficient(const SupportBasis& basis, std::span<const double> f_values, std::size_t k,
                                       double tolerance = 1e-8);

FourierCoefficient fourier_coefficient(const DiscreteMeasure& measure, const RecurrenceCoefficients& coeffs,
                                       const std::function<double(double)>& f, std::size_t k,
                                       double tolerance = 1e-8);

struct ExpansionResult {
    std::size_t n = 0;
    std::vector<double> coefficients;  // a_0(f)..a_n(f)
    std::vector<std::size_t> points;   // point indices evaluated
    std::vector<double> values;        // s_n(f, x) at points
    double sup_error = 0.0;
    /// Largest remainder bound over the coefficients.
    double remainder_bound = 0.0;
};

/// s_n(f, x) = sum_{k<=n} a_k(f) R_k(x) h(k) at the given point indices
/// (all of {0} u support when empty). n must not exceed basis.n_max().
ExpansionResult partial_sum(const SupportBasis& basis, std::span<const double> f_values, std::size_t n,
                            std::span<const std::size_t> points = {}, double tolerance = 1e-8);

/// Value-based form: every point must be 0 or a computed support point.
ExpansionResult partial_sum(const DiscreteMeasure& measure, const RecurrenceCoefficients& coeffs,
                            const std::function<double(double)>& f, std::size_t n, std::span<const double> points,
                            double tolerance = 1e-8);

struct LebesgueValue {
    double value = 0.0;      // head + tail_term
    double head = 0.0;       // sum_j |K_n(x, xi_j)| mu(xi_j)
    double tail_term = 0.0;  // tail_bound * sum_{k<=n} p_k(0)^2
    double diagonal_term = 0.0;  // K_n(x, x) mu({x}); 0 at x = 0
};

/// Lebesgue function at point index j. Throws PrecisionError when the tail
/// term exceeds tail_tolerance * value.
LebesgueValue lebesgue_function(const SupportBasis& basis, std::size_t n, std::size_t j,
                                KernelPath path = KernelPath::Auto, double tail_tolerance = 1e-6);

double lebesgue_function(const DiscreteMeasure& measure, const RecurrenceCoefficients& coeffs, std::size_t n,
                         double x, KernelPath path = KernelPath::Auto);

struct LebesgueConstant {
    double value = 0.0;
    std::size_t argmax = 0;  // point index
};

/// max of the Lebesgue function over {0} u support.
LebesgueConstant lebesgue_constant(const SupportBasis& basis, std::size_t n, KernelPath path = KernelPath::Auto);

double lebesgue_constant(const DiscreteMeasure& measure, const RecurrenceCoefficients& coeffs, std::size_t n);

/// Coefficients g(n,m,k) of R_n R_m = sum_k g(n,m,k) R_k, k = 0..n+m
/// (entries below |n-m| vanish up to rounding).
struct LinearizationTable {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> g;

    double at(std::size_t k) const { return k < g.size() ? g[k] : 0.0; }
    double row_sum() const;
    double min_coefficient() const;
    double max_magnitude() const;
};

/// g(n,m,k) = h(k) * integral of R_n R_m R_k by Gauss quadrature on n+m+1
/// nodes (exact for this degree). Induction on the recurrence is avoided: it
/// divides by gamma_i and amplifies rounding geometrically.
LinearizationTable linearization(const RecurrenceCoefficients& coeffs, std::size_t n, std::size_t m);

// ---------------------------------------------------------------------------
// Verification suites

struct CheckResult {
    bool holds = false;
    std::optional<std::size_t> witness;
    std::string detail;
    std::vector<double> series;  // per-index values the check looked at
};

struct Theorem1Verdict {
    double c = 0.0;
    double ratio_bound = 0.0;  // (1 + q - c q^2) / c
    std::size_t n_from = 0;
    std::size_t n_to = 0;
    std::map<std::string, CheckResult> checks;

    bool all_hold() const;
};

inline constexpr double kScalingWindow = 10.0;

/// Spectral bounds, scalings and ratio gap for c = report.c_interval
/// midpoint on n in [max(N_est, 2), K - 2]. Requires a nonempty c interval.
Theorem1Verdict verify_theorem1(const RecurrenceCoefficients& coeffs, const HypothesisReport& report,
                                const DiscreteMeasure& measure);
Theorem1Verdict verify_theorem1(const RecurrenceCoefficients& coeffs, const HypothesisReport& report,
                                std::size_t K);

/// mu_{N,1} <= mu([0, x_{N,2})).
struct TmsResult {
    std::size_t N = 0;
    double christoffel_smallest = 0.0;  // mu_{N,1}
    double mass_below_second = 0.0;     // mu([0, x_{N,2}))
    double margin = 0.0;                // rhs - lhs
    bool holds = false;
};

/// Requires N >= 3. Throws PrecisionError if x_{N,2} does not lie above the
/// smallest computed atom.
TmsResult verify_tms(const RecurrenceCoefficients& coeffs, const DiscreteMeasure& measure, std::size_t N);

/// Measure with atoms (3/2) 4^{-(m+1)} at 2^{-2m} and (7/2) 8^{-(m+1)} at
/// 2^{-(2m+1)}, m >= 0. Atom k (1-based) sits at 2^{-(k-1)}.
struct ExplicitMeasure {
    static double point(std::size_t k);
    static double mass(std::size_t k);
    /// mu([0, xi_k]) in closed form.
    static double mass_below(std::size_t k);
    /// 3/2 * 1/3 + 7/2 * 1/7.
    static double total_mass();
};

struct Remark1Stats {
    std::size_t K = 0;
    std::size_t window_from = 0;
    double total_mass = 0.0;          // closed form
    double total_mass_summed = 0.0;   // atoms 1..K plus closed-form tail
    std::vector<double> tail_scaled;  // mu([0, xi_n]) 2^n, n = 1..K
    std::vector<double> mass_scaled;  // mu({xi_n}) 2^n, n = 1..K
    double tail_window = 0.0;         // max/min of tail_scaled over n >= window_from
    bool odd_constant = false;        // odd n: mass_scaled == 3/4 exactly
    bool even_halving = false;        // even n: each step halves exactly
};

/// Requires K >= 6.
Remark1Stats remark1_fixture_stats(std::size_t K, std::size_t window_from = 5);

}  // namespace qorth
