#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qorth/coefficients.hpp"
#include "qorth/scaled_real.hpp"

namespace qorth {

/// R_0(x)..R_n(x) and p_0(x)..p_n(x) at a single point.
struct PolySequenceEval {
    double x = 0.0;
    /// Nearest doubles of R_k(x); +-inf where |R_k(x)| leaves the double range.
    std::vector<double> values_R;
    std::vector<ScaledReal> values_R_scaled;
    /// p_k(x) = sqrt(h(k)) R_k(x).
    std::vector<ScaledReal> values_p;
};

/// Forward recurrence from R_0 = 1, written in difference form
///   D_{k+1} = (alpha_k D_k - x R_k) / gamma_k,  R_{k+1} = R_k + D_{k+1},
/// with D_1 = (beta_0 - gamma_0 - x) / gamma_0. This is the three-term
/// recurrence solved for R_{k+1}; at x = 0 it reproduces R_k(0) = 1 exactly in
/// gamma-only mode. Exact polynomial values, accurate wherever the wanted
/// solution dominates (off the support, at 0). At support points the
/// l2 solution is recessive; use eval_p_two_sided there.
PolySequenceEval eval_R(const RecurrenceCoefficients& coeffs, std::size_t n, double x);

/// p_0(x)..p_n(x) by eval_R.
std::vector<ScaledReal> eval_p(const RecurrenceCoefficients& coeffs, std::size_t n, double x);

/// Solution of the recurrence that is forward-computed up to a twist index and
/// backward-computed (from p_truncation = 0) beyond it, normalized to p_0 = 1.
///
/// At an eigenvalue x of the truncated Jacobi matrix J_truncation this is the
/// eigenvector scaled to first component 1. At a support point of the
/// orthogonality measure it is the square-summable solution as long as the
/// truncation is well past the indices of interest.
struct TwoSidedEval {
    double x = 0.0;
    std::size_t twist = 0;
    /// Residual of the twisted row, relative to beta_twist + x.
    double twist_residual = 0.0;
    std::vector<ScaledReal> values_R;
    std::vector<ScaledReal> values_p;
};

TwoSidedEval eval_p_two_sided(const RecurrenceCoefficients& coeffs, double x, std::size_t truncation);

enum class KernelPath { Auto, Direct, ChristoffelDarboux };

/// Default relative separation below which Auto uses the direct sum.
inline constexpr double kKernelSwitchTheta = 1e-6;

/// K_n(x,y) = sum_{k<=n} p_k(x) p_k(y) from precomputed values (each span
/// must hold at least n+2 entries when the Christoffel-Darboux path can be
/// taken). Arguments are put in canonical order first, so K_n(x,y) and
/// K_n(y,x) are bitwise equal.
ScaledReal kernel_from_values(std::span<const ScaledReal> px, std::span<const ScaledReal> py, double x,
                              double y, std::size_t n, double lambda_n, KernelPath path = KernelPath::Auto,
                              double theta = kKernelSwitchTheta);

/// Dirichlet kernel with p values from eval_p.
ScaledReal dirichlet_kernel_scaled(const RecurrenceCoefficients& coeffs, std::size_t n, double x, double y,
                                   KernelPath path = KernelPath::Auto, double theta = kKernelSwitchTheta);

double dirichlet_kernel(const RecurrenceCoefficients& coeffs, std::size_t n, double x, double y,
                        KernelPath path = KernelPath::Auto, double theta = kKernelSwitchTheta);

/// True when Auto selects the Christoffel-Darboux quotient for (x, y).
bool uses_christoffel_darboux(double x, double y, double theta = kKernelSwitchTheta);

}  // namespace qorth
