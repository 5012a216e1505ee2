#pragma once

#include <cstddef>
#include <vector>

#include "qorth/coefficients.hpp"
#include "qorth/scaled_real.hpp"

namespace qorth {

/// Leading N x N block of the Jacobi matrix.
struct TruncatedJacobi {
    std::vector<double> diagonal;      // beta_0..beta_{N-1}
    std::vector<double> off_diagonal;  // lambda_0..lambda_{N-2}

    std::size_t size() const { return diagonal.size(); }
};

TruncatedJacobi make_truncated_jacobi(const RecurrenceCoefficients& coeffs, std::size_t N);

/// Upper bidiagonal B with B^T B equal to a truncated Jacobi matrix (up to
/// the documented rank-one term).
struct BidiagonalFactor {
    std::vector<double> diagonal;
    std::vector<double> super_diagonal;

    std::size_t size() const { return diagonal.size(); }
};

/// The factor with diagonal sqrt(gamma_k) and superdiagonal sqrt(alpha_{k+1}).
/// S^T S equals J_N except for the (0,0) entry in AlphaPlusGamma mode, which
/// is short by alpha0_formal.
BidiagonalFactor make_gamma_alpha_factor(const RecurrenceCoefficients& coeffs, std::size_t N);

/// Exact Cholesky factor of J_N in either beta0 mode. Pivots are
/// d_k = gamma_k + e_k with e_0 = beta_0 - gamma_0 and
/// e_k = alpha_k e_{k-1} / d_{k-1}, a sum of positive terms, so every entry
/// keeps high relative accuracy. In GammaOnly mode this is the gamma/alpha
/// factor.
BidiagonalFactor make_cholesky_factor(const RecurrenceCoefficients& coeffs, std::size_t N);

/// Eigenvalues of J_N in ascending order (zeros of p_N), each to a few ulps
/// relative accuracy: bisection on the negative count of the shifted
/// factored form L D L^T - tau, never on the assembled tridiagonal.
std::vector<double> truncated_zeros(const RecurrenceCoefficients& coeffs, std::size_t N);

/// Number of eigenvalues of J_N strictly below tau, from the factored form.
std::size_t eigenvalue_count_below(const RecurrenceCoefficients& coeffs, std::size_t N, double tau);

struct QuadratureRule {
    std::vector<double> nodes;  // ascending
    /// Christoffel numbers (sum_{j<N} p_j(x_i)^2)^{-1}.
    std::vector<ScaledReal> weights;
    /// Squared first components of normalized eigenvectors, computed from a
    /// twisted factorization of the shifted factored form.
    std::vector<ScaledReal> eigenvector_weights;
    /// max_i |w_i - w_i'| / w_i over all nodes.
    double max_relative_disagreement = 0.0;

    std::size_t size() const { return nodes.size(); }
    double weight(std::size_t i) const { return weights[i].to_double(); }
};

/// Gauss rule with N nodes. Throws NumericalConsistencyError when the two
/// weight routes disagree by more than consistency_tol.
QuadratureRule quadrature(const RecurrenceCoefficients& coeffs, std::size_t N, double consistency_tol = 1e-6);

/// Squared first eigenvector component of J_N at eigenvalue `shift`
/// (twisted factorization / one inverse iteration step from e_r).
ScaledReal eigenvector_first_component_squared(const RecurrenceCoefficients& coeffs, std::size_t N,
                                               double shift);

struct SupportPoints {
    std::vector<double> points;  // decreasing
    std::size_t truncation_size = 0;
};

inline constexpr std::size_t kDefaultMaxTruncation = 400;
inline constexpr double kDefaultRelTol = 1e-10;

/// Largest K eigenvalues of J_N, growing N by N <- max(2N, N+K) until each
/// changes by at most rel_tol. Throws ConvergenceError past max_truncation.
SupportPoints support_points(const RecurrenceCoefficients& coeffs, std::size_t K, double rel_tol = kDefaultRelTol,
                             std::size_t max_truncation = kDefaultMaxTruncation);

/// Orthogonality measure restricted to its K largest atoms.
struct DiscreteMeasure {
    std::vector<double> support;  // xi_1 > xi_2 > ... > xi_K
    std::vector<double> masses;
    /// Mass of [0, xi_K): the Christoffel numbers of the nodes below the top
    /// K, summed from the smallest node up.
    double tail_bound = 0.0;
    std::size_t truncation_size = 0;

    std::size_t size() const { return support.size(); }
    /// mu([0, xi_n]) for 1 <= n <= K, summed from the tail upward.
    double mass_below(std::size_t n) const;
    /// mu([0, x)) from atoms below x plus the tail. Requires x > xi_K.
    double mass_strictly_below(double x) const;
};

/// Support, masses and tail. Masses and the tail are required to stabilize
/// under the same rel_tol as the support. The point 0 carries no mass and is
/// never emitted.
DiscreteMeasure measure(const RecurrenceCoefficients& coeffs, std::size_t K, double rel_tol = kDefaultRelTol,
                        std::size_t max_truncation = kDefaultMaxTruncation);

/// (J_N^m)_{00} by m tridiagonal products on e_0. Requires N >= m + 2.
double moment(const RecurrenceCoefficients& coeffs, std::size_t m, std::size_t N);

/// Smallest (xi_k - xi_{k+1}) / xi_{k+1} over the computed support; any
/// d below it gives |xi_j - xi_k| >= d min(xi_j, xi_k).
double separation_constant(const DiscreteMeasure& mu);

}  // namespace qorth
