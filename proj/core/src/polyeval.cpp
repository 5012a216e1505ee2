#include "qorth/polyeval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qorth/errors.hpp"

namespace qorth {

namespace {

void require_finite(double x) {
    if (!std::isfinite(x)) throw DomainError("evaluation point must be finite");
}

// Keeps 1 + delta away from an exact zero so the next ratio stays finite.
double guarded(double one_plus_delta) {
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    if (one_plus_delta == 0.0) return tiny;
    return one_plus_delta;
}

}  // namespace

PolySequenceEval eval_R(const RecurrenceCoefficients& coeffs, std::size_t n, double x) {
    require_finite(x);
    PolySequenceEval out;
    out.x = x;
    out.values_R_scaled.reserve(n + 1);
    out.values_R_scaled.emplace_back(1.0);
    if (n >= 1) {
        const double g0 = coeffs.gamma(0);
        // beta_0 - gamma_0 is 0 or alpha0_formal depending on the mode.
        const double offset = coeffs.beta0_mode() == Beta0Mode::GammaOnly ? 0.0 : coeffs.alpha0_formal();
        ScaledReal diff = ScaledReal((offset - x) / g0);
        ScaledReal r = ScaledReal(1.0) + diff;
        out.values_R_scaled.push_back(r);
        for (std::size_t k = 1; k < n; ++k) {
            const ScaledReal next_diff =
                (ScaledReal(coeffs.alpha(k)) * diff - ScaledReal(x) * r) / ScaledReal(coeffs.gamma(k));
            diff = next_diff;
            r += diff;
            out.values_R_scaled.push_back(r);
        }
    }
    const auto h = coeffs.h_prefix(n);
    out.values_R.reserve(n + 1);
    out.values_p.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        out.values_R.push_back(out.values_R_scaled[k].to_double());
        out.values_p.push_back(h[k].sqrt() * out.values_R_scaled[k]);
    }
    return out;
}

std::vector<ScaledReal> eval_p(const RecurrenceCoefficients& coeffs, std::size_t n, double x) {
    return eval_R(coeffs, n, x).values_p;
}

TwoSidedEval eval_p_two_sided(const RecurrenceCoefficients& coeffs, double x, std::size_t truncation) {
    require_finite(x);
    if (truncation == 0) throw DomainError("two-sided evaluation needs truncation >= 1");
    const std::size_t m = truncation;

    // Forward ratios R_j / R_{j-1} = 1 + delta_j, j = 1..m.
    std::vector<double> fwd(m + 1, 1.0);
    {
        const double offset = coeffs.beta0_mode() == Beta0Mode::GammaOnly ? 0.0 : coeffs.alpha0_formal();
        double delta = (offset - x) / coeffs.gamma(0);
        fwd[1] = guarded(1.0 + delta);
        for (std::size_t j = 1; j < m; ++j) {
            const double ratio = fwd[j];
            delta = (coeffs.alpha(j) * ((ratio - 1.0) / ratio) - x) / coeffs.gamma(j);
            fwd[j + 1] = guarded(1.0 + delta);
        }
    }
    // Backward ratios R_{j+1} / R_j, j = m-1..0, starting from R_m = 0.
    std::vector<double> bwd(m, 0.0);
    for (std::size_t j = m - 1; j >= 1; --j) {
        const double denom = coeffs.alpha(j) + coeffs.gamma(j) * (1.0 - bwd[j]) - x;
        bwd[j - 1] = coeffs.alpha(j) / guarded(denom);
    }

    // Twisted residual at row r is gamma_r (fwd_{r+1} - bwd_r).
    std::size_t twist = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
        const double g = std::fabs(coeffs.gamma(r) * (fwd[r + 1] - bwd[r]));
        if (g < best) {
            best = g;
            twist = r;
        }
    }

    TwoSidedEval out;
    out.x = x;
    out.twist = twist;
    out.twist_residual = best / (coeffs.beta(twist) + std::fabs(x));
    out.values_R.reserve(m);
    out.values_R.emplace_back(1.0);
    for (std::size_t j = 1; j < m; ++j) {
        const double ratio = j <= twist ? fwd[j] : bwd[j - 1];
        out.values_R.push_back(out.values_R.back() * ScaledReal(ratio));
    }
    const auto h = coeffs.h_prefix(m - 1);
    out.values_p.reserve(m);
    for (std::size_t j = 0; j < m; ++j) out.values_p.push_back(h[j].sqrt() * out.values_R[j]);
    return out;
}

bool uses_christoffel_darboux(double x, double y, double theta) {
    return std::fabs(x - y) > theta * std::max({std::fabs(x), std::fabs(y), 1.0});
}

ScaledReal kernel_from_values(std::span<const ScaledReal> px, std::span<const ScaledReal> py, double x,
                              double y, std::size_t n, double lambda_n, KernelPath path, double theta) {
    if (y < x) {
        std::swap(px, py);
        std::swap(x, y);
    }
    bool cd = false;
    switch (path) {
        case KernelPath::Auto: cd = uses_christoffel_darboux(x, y, theta); break;
        case KernelPath::Direct: cd = false; break;
        case KernelPath::ChristoffelDarboux: cd = x != y; break;
    }
    if (cd) {
        if (px.size() < n + 2 || py.size() < n + 2) {
            throw DomainError("Christoffel-Darboux path needs p_{n+1} values");
        }
        // With the recurrence x p_n = -lambda_n p_{n+1} + ..., the leading
        // factor carries a minus sign.
        const ScaledReal num = px[n + 1] * py[n] - px[n] * py[n + 1];
        return ScaledReal(-lambda_n) * num / ScaledReal(x - y);
    }
    if (px.size() < n + 1 || py.size() < n + 1) throw DomainError("kernel needs p_0..p_n values");
    ScaledReal sum;
    for (std::size_t k = 0; k <= n; ++k) sum += px[k] * py[k];
    return sum;
}

ScaledReal dirichlet_kernel_scaled(const RecurrenceCoefficients& coeffs, std::size_t n, double x, double y,
                                   KernelPath path, double theta) {
    const auto px = eval_p(coeffs, n + 1, x);
    const auto py = eval_p(coeffs, n + 1, y);
    return kernel_from_values(px, py, x, y, n, coeffs.lambda(n), path, theta);
}

double dirichlet_kernel(const RecurrenceCoefficients& coeffs, std::size_t n, double x, double y, KernelPath path,
                        double theta) {
    return dirichlet_kernel_scaled(coeffs, n, x, y, path, theta).to_double();
}

}  // namespace qorth
