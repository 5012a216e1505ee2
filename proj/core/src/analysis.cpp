#include "qorth/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qorth/errors.hpp"

namespace qorth {

namespace {

// Extra truncation beyond n_max for the backward half of the two-sided
// evaluation.
constexpr std::size_t kEvaluationMargin = 32;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double window_ratio(const std::vector<double>& values) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi / *lo;
}

}  // namespace

SupportBasis::SupportBasis(DiscreteMeasure measure, RecurrenceCoefficients coeffs, std::size_t n_max)
    : measure_(std::move(measure)),
      coeffs_(std::move(coeffs)),
      n_max_(n_max),
      truncation_(std::max(measure_.truncation_size, n_max + kEvaluationMargin)) {
    const std::size_t len = n_max_ + 2;
    values_p_.reserve(size() + 1);
    values_R_.reserve(size() + 1);
    {
        const PolySequenceEval at_zero = eval_R(coeffs_, len - 1, 0.0);
        values_p_.push_back(at_zero.values_p);
        values_R_.push_back(at_zero.values_R);
    }
    for (std::size_t j = 1; j <= size(); ++j) {
        const TwoSidedEval ev = eval_p_two_sided(coeffs_, point(j), truncation_);
        values_p_.emplace_back(ev.values_p.begin(), ev.values_p.begin() + static_cast<std::ptrdiff_t>(len));
        std::vector<double> r;
        r.reserve(len);
        for (std::size_t k = 0; k < len; ++k) r.push_back(ev.values_R[k].to_double());
        values_R_.push_back(std::move(r));
    }
}

std::vector<double> SupportBasis::basis_function(std::size_t m) const {
    if (m > n_max_ + 1) throw DomainError("basis function index beyond n_max + 1");
    std::vector<double> out;
    out.reserve(size() + 1);
    for (std::size_t j = 0; j <= size(); ++j) out.push_back(values_R_[j][m]);
    return out;
}

std::vector<double> SupportBasis::sample(const std::function<double(double)>& f) const {
    std::vector<double> out;
    out.reserve(size() + 1);
    for (std::size_t j = 0; j <= size(); ++j) out.push_back(f(point(j)));
    return out;
}

std::size_t SupportBasis::index_of(double x) const {
    if (x == 0.0) return 0;
    for (std::size_t j = 1; j <= size(); ++j) {
        if (point(j) == x) return j;
    }
    throw DomainError("point " + fmt(x) + " is neither 0 nor a computed support point");
}

// ---------------------------------------------------------------------------

namespace {

void check_values(const SupportBasis& basis, std::span<const double> f_values) {
    if (f_values.size() != basis.size() + 1) {
        throw DomainError("function values must cover 0 and every support point");
    }
}

double sup_norm(std::span<const double> f_values) {
    double m = 0.0;
    for (double v : f_values) m = std::max(m, std::fabs(v));
    return m;
}

// b_k = sum_j f(xi_j) p_k(xi_j) mu(xi_j) = a_k(f) sqrt(h(k)), ascending j.
ScaledReal orthonormal_coefficient(const SupportBasis& basis, std::span<const double> f_values, std::size_t k) {
    ScaledReal sum;
    for (std::size_t j = 1; j <= basis.size(); ++j) {
        if (f_values[j] == 0.0) continue;
        sum += ScaledReal(f_values[j]) * basis.p(j)[k] * ScaledReal(basis.mass(j));
    }
    return sum;
}

}  // namespace

FourierCoefficient fourier_coefficient(const SupportBasis& basis, std::span<const double> f_values, std::size_t k,
                                       double tolerance) {
    check_values(basis, f_values);
    if (k > basis.n_max() + 1) throw DomainError("coefficient index beyond the basis range");
    FourierCoefficient out;
    out.remainder_bound = sup_norm(f_values) * basis.measure().tail_bound;
    if (out.remainder_bound > tolerance) {
        throw PrecisionError("tail remainder " + fmt(out.remainder_bound) + " exceeds tolerance " +
                             fmt(tolerance) + "; increase K");
    }
    ScaledReal sum;
    for (std::size_t j = 1; j <= basis.size(); ++j) {
        sum += ScaledReal(f_values[j]) * ScaledReal(basis.R(k, j)) * ScaledReal(basis.mass(j));
    }
    out.value = sum.to_double();
    return out;
}

FourierCoefficient fourier_coefficient(const DiscreteMeasure& measure, const RecurrenceCoefficients& coeffs,
                                       const std::function<double(double)>& f, std::size_t k, double tolerance) {
    const SupportBasis basis(measure, coeffs, k);
    return fourier_coefficient(basis, basis.sample(f), k, tolerance);
}

ExpansionResult partial_sum(const SupportBasis& basis, std::span<const double> f_values, std::size_t n,
                            std::span<const std::size_t> points, double tolerance) {
    check_values(basis, f_values);
    if (n > basis.n_max()) throw DomainError("partial sum order beyond the basis range");
    ExpansionResult out;
    out.n = n;
    out.remainder_bound = sup_norm(f_values) * basis.measure().tail_bound;
    if (out.remainder_bound > tolerance) {
        throw PrecisionError("tail remainder " + fmt(out.remainder_bound) + " exceeds tolerance " +
                             fmt(tolerance) + "; increase K");
    }
    std::vector<ScaledReal> b;
    b.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        b.push_back(orthonormal_coefficient(basis, f_values, k));
        // p_k(0) = sqrt(h(k)) in gamma-only mode; use h directly so the
        // coefficient is right in either mode.
        out.coefficients.push_back((b.back() / basis.coefficients().h(k).sqrt()).to_double());
    }
    if (points.empty()) {
        for (std::size_t j = 0; j <= basis.size(); ++j) out.points.push_back(j);
    } else {
        out.points.assign(points.begin(), points.end());
    }
    for (std::size_t j : out.points) {
        if (j > basis.size()) throw DomainError("point index outside the support");
        ScaledReal s;
        const auto px = basis.p(j);
        for (std::size_t k = 0; k <= n; ++k) s += b[k] * px[k];
        const double value = s.to_double();
        out.values.push_back(value);
        out.sup_error = std::max(out.sup_error, std::fabs(value - f_values[j]));
    }
    return out;
}

ExpansionResult partial_sum(const DiscreteMeasure& measure, const RecurrenceCoefficients& coeffs,
                            const std::function<double(double)>& f, std::size_t n, std::span<const double> points,
                            double tolerance) {
    const SupportBasis basis(measure, coeffs, n);
    std::vector<std::size_t> idx;
    for (double x : points) idx.push_back(basis.index_of(x));
    return partial_sum(basis, basis.sample(f), n, idx, tolerance);
}

// ---------------------------------------------------------------------------

LebesgueValue lebesgue_function(const SupportBasis& basis, std::size_t n, std::size_t j, KernelPath path,
                                double tail_tolerance) {
    if (n > basis.n_max()) throw DomainError("Lebesgue function order beyond the basis range");
    if (j > basis.size()) throw DomainError("point index outside the support");
    const double lambda_n = basis.coefficients().lambda(n);
    const double x = basis.point(j);
    const auto px = basis.p(j);
    ScaledReal head;
    for (std::size_t i = 1; i <= basis.size(); ++i) {
        const ScaledReal k = kernel_from_values(px, basis.p(i), x, basis.point(i), n, lambda_n, path);
        head += k.abs() * ScaledReal(basis.mass(i));
    }
    ScaledReal diag_sum;
    for (std::size_t k = 0; k <= n; ++k) diag_sum += basis.p(0)[k] * basis.p(0)[k];

    LebesgueValue out;
    out.head = head.to_double();
    out.tail_term = (ScaledReal(basis.measure().tail_bound) * diag_sum).to_double();
    out.value = out.head + out.tail_term;
    if (j > 0) {
        ScaledReal kxx;
        for (std::size_t k = 0; k <= n; ++k) kxx += px[k] * px[k];
        out.diagonal_term = (kxx * ScaledReal(basis.mass(j))).to_double();
    }
    if (out.tail_term > tail_tolerance * out.value) {
        throw PrecisionError("tail term " + fmt(out.tail_term) + " dominates the Lebesgue function at n=" +
                             std::to_string(n) + "; increase K");
    }
    return out;
}

double lebesgue_function(const DiscreteMeasure& measure, const RecurrenceCoefficients& coeffs, std::size_t n,
                         double x, KernelPath path) {
    const SupportBasis basis(measure, coeffs, n);
    return lebesgue_function(basis, n, basis.index_of(x), path).value;
}

LebesgueConstant lebesgue_constant(const SupportBasis& basis, std::size_t n, KernelPath path) {
    LebesgueConstant out;
    out.value = -1.0;
    for (std::size_t j = 0; j <= basis.size(); ++j) {
        const double v = lebesgue_function(basis, n, j, path).value;
        if (v > out.value) {
            out.value = v;
            out.argmax = j;
        }
    }
    return out;
}

double lebesgue_constant(const DiscreteMeasure& measure, const RecurrenceCoefficients& coeffs, std::size_t n) {
    const SupportBasis basis(measure, coeffs, n);
    return lebesgue_constant(basis, n).value;
}

// ---------------------------------------------------------------------------

double LinearizationTable::row_sum() const {
    double s = 0.0;
    for (double v : g) s += v;
    return s;
}

double LinearizationTable::min_coefficient() const {
    double lo = std::numeric_limits<double>::infinity();
    for (double v : g) lo = std::min(lo, v);
    return lo;
}

double LinearizationTable::max_magnitude() const {
    double hi = 0.0;
    for (double v : g) hi = std::max(hi, std::fabs(v));
    return hi;
}

LinearizationTable linearization(const RecurrenceCoefficients& coeffs, std::size_t n, std::size_t m) {
    // Symmetric in (n, m); fix the order so both calls round identically.
    const std::size_t lo = std::min(n, m);
    const std::size_t hi = std::max(n, m);
    const std::size_t len = n + m + 1;
    // g(n,m,k) = h(k) * integral of R_n R_m R_k, a polynomial of degree at
    // most 2(n+m), so Gauss quadrature on n+m+1 nodes is exact.
    const std::size_t N = len;
    const QuadratureRule rule = quadrature(coeffs, N);
    std::vector<ScaledReal> sums(len);
    for (std::size_t i = 0; i < N; ++i) {
        const TwoSidedEval ev = eval_p_two_sided(coeffs, rule.nodes[i], N);
        const ScaledReal wnm = rule.weights[i] * ev.values_R[lo] * ev.values_R[hi];
        for (std::size_t k = 0; k < len; ++k) sums[k] += wnm * ev.values_R[k];
    }
    std::vector<double> g(len);
    for (std::size_t k = 0; k < len; ++k) g[k] = (sums[k] * coeffs.h(k)).to_double();
    return {n, m, std::move(g)};
}

// ---------------------------------------------------------------------------

bool Theorem1Verdict::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.holds; });
}

Theorem1Verdict verify_theorem1(const RecurrenceCoefficients& coeffs, const HypothesisReport& report,
                                const DiscreteMeasure& measure) {
    if (report.c_interval.empty) throw DomainError("verify_theorem1 needs a nonempty c interval");
    const std::size_t K = measure.size();
    Theorem1Verdict v;
    v.c = report.c_interval.midpoint();
    const double c = v.c;
    const double q = report.q_est;
    const double s = report.s_est;
    v.ratio_bound = (1.0 + q - c * q * q) / c;
    v.n_from = std::max<std::size_t>(report.N_est, 2);
    v.n_to = K >= 2 ? K - 2 : 0;
    if (v.n_to < v.n_from + 1) throw DomainError("verify_theorem1 needs K >= max(N_est, 2) + 3");
    const auto xi = [&](std::size_t n) { return measure.support[n - 1]; };

    {
        CheckResult r;
        r.holds = true;
        for (std::size_t n = v.n_from; n <= v.n_to; ++n) {
            const double lower = c * coeffs.beta(n);
            const double upper = coeffs.beta(n - 1) + coeffs.beta(n) - c * coeffs.beta(n + 1);
            r.series.push_back(xi(n));
            if (r.holds && !(lower <= xi(n) && xi(n) <= upper)) {
                r.holds = false;
                r.witness = n;
                r.detail = "xi_n=" + fmt(xi(n)) + " outside [" + fmt(lower) + ", " + fmt(upper) + "]";
            }
        }
        if (r.holds) r.detail = "c beta_n <= xi_n <= beta_{n-1} + beta_n - c beta_{n+1}";
        v.checks["spectral_bounds"] = r;
    }
    {
        CheckResult r;
        for (std::size_t n = v.n_from; n <= v.n_to; ++n) {
            r.series.push_back(xi(n) * std::pow(q, -static_cast<double>(n)));
        }
        const double w = window_ratio(r.series);
        r.holds = w <= kScalingWindow;
        r.detail = "max/min of xi_n q^-n = " + fmt(w);
        v.checks["support_scaling"] = r;
    }
    {
        CheckResult r;
        for (std::size_t n = v.n_from; n <= v.n_to; ++n) {
            r.series.push_back(measure.mass_below(n) * std::pow(s, static_cast<double>(n)));
        }
        const double w = window_ratio(r.series);
        r.holds = w <= kScalingWindow;
        r.detail = "max/min of mu([0,xi_n]) s^n = " + fmt(w);
        v.checks["tail_scaling"] = r;
    }
    {
        CheckResult r;
        r.holds = v.ratio_bound < 1.0;
        constexpr double slack = 1e-12;
        for (std::size_t n = std::max<std::size_t>(report.N_est, 1); n + 1 <= K; ++n) {
            const double ratio = xi(n + 1) / xi(n);
            r.series.push_back(ratio);
            if (r.holds && !(1.0 - ratio >= 1.0 - v.ratio_bound - slack)) {
                r.holds = false;
                r.witness = n;
            }
        }
        r.detail = "xi_{n+1}/xi_n <= (1+q-cq^2)/c = " + fmt(v.ratio_bound);
        v.checks["ratio_gap"] = r;
    }
    return v;
}

Theorem1Verdict verify_theorem1(const RecurrenceCoefficients& coeffs, const HypothesisReport& report,
                                std::size_t K) {
    return verify_theorem1(coeffs, report, measure(coeffs, K));
}

TmsResult verify_tms(const RecurrenceCoefficients& coeffs, const DiscreteMeasure& measure, std::size_t N) {
    if (N < 3) throw DomainError("verify_tms needs N >= 3");
    const QuadratureRule rule = quadrature(coeffs, N);
    TmsResult out;
    out.N = N;
    out.christoffel_smallest = rule.weight(0);
    out.mass_below_second = measure.mass_strictly_below(rule.nodes[1]);
    out.margin = out.mass_below_second - out.christoffel_smallest;
    out.holds = out.margin > 0.0;
    return out;
}

// ---------------------------------------------------------------------------

double ExplicitMeasure::point(std::size_t k) {
    if (k == 0) throw DomainError("atoms are numbered from 1");
    return std::ldexp(1.0, -static_cast<int>(k - 1));
}

double ExplicitMeasure::mass(std::size_t k) {
    if (k == 0) throw DomainError("atoms are numbered from 1");
    const int m = static_cast<int>((k - 1) / 2);
    if (k % 2 == 1) return 1.5 * std::ldexp(1.0, -2 * (m + 1));
    return 3.5 * std::ldexp(1.0, -3 * (m + 1));
}

double ExplicitMeasure::mass_below(std::size_t k) {
    if (k == 0) throw DomainError("atoms are numbered from 1");
    const int m = static_cast<int>((k - 1) / 2);
    if (k % 2 == 1) return 0.5 * (std::ldexp(1.0, -2 * m) + std::ldexp(1.0, -3 * m));
    return 0.5 * std::ldexp(1.0, -2 * (m + 1)) + 0.5 * std::ldexp(1.0, -3 * m);
}

double ExplicitMeasure::total_mass() { return 1.5 * (1.0 / 3.0) + 3.5 * (1.0 / 7.0); }

Remark1Stats remark1_fixture_stats(std::size_t K, std::size_t window_from) {
    if (K < 6) throw DomainError("remark1_fixture_stats needs K >= 6");
    if (window_from < 1 || window_from >= K) throw DomainError("window start outside 1..K-1");
    Remark1Stats st;
    st.K = K;
    st.window_from = window_from;
    st.total_mass = ExplicitMeasure::total_mass();
    double summed = ExplicitMeasure::mass_below(K + 1);
    for (std::size_t k = K; k >= 1; --k) summed += ExplicitMeasure::mass(k);
    st.total_mass_summed = summed;
    for (std::size_t n = 1; n <= K; ++n) {
        st.tail_scaled.push_back(ExplicitMeasure::mass_below(n) * std::ldexp(1.0, static_cast<int>(n)));
        st.mass_scaled.push_back(ExplicitMeasure::mass(n) * std::ldexp(1.0, static_cast<int>(n)));
    }
    st.tail_window = window_ratio(
        std::vector<double>(st.tail_scaled.begin() + static_cast<std::ptrdiff_t>(window_from - 1), st.tail_scaled.end()));
    st.odd_constant = true;
    st.even_halving = true;
    for (std::size_t n = 1; n <= K; ++n) {
        if (n % 2 == 1 && st.mass_scaled[n - 1] != 0.75) st.odd_constant = false;
        if (n % 2 == 0 && n >= 4 && st.mass_scaled[n - 1] != 0.5 * st.mass_scaled[n - 3]) st.even_halving = false;
    }
    return st;
}

}  // namespace qorth
