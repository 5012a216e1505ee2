#include "qorth/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qorth/errors.hpp"
#include "qorth/polyeval.hpp"

namespace qorth {

namespace {

// L D L^T form of J_N: pivots q_i and e_i = l_i^2 q_i, so the off-diagonal
// entry of J_N is sqrt(q_i e_i).
struct QdArrays {
    std::vector<double> q;
    std::vector<double> e;
};

QdArrays make_qd(const RecurrenceCoefficients& coeffs, std::size_t N) {
    QdArrays qd;
    qd.q.resize(N);
    qd.e.resize(N > 0 ? N - 1 : 0);
    double extra = coeffs.beta0_mode() == Beta0Mode::GammaOnly ? 0.0 : coeffs.alpha0_formal();
    for (std::size_t k = 0; k < N; ++k) {
        if (k > 0) extra = coeffs.alpha(k) * extra / qd.q[k - 1];
        qd.q[k] = coeffs.gamma(k) + extra;
        if (k + 1 < N) {
            // alpha_{k+1} gamma_k / d_k, written so that d_k = gamma_k gives alpha_{k+1} exactly.
            qd.e[k] = extra == 0.0 ? coeffs.alpha(k + 1) : coeffs.alpha(k + 1) * (coeffs.gamma(k) / qd.q[k]);
        }
    }
    return qd;
}

// Sign-count of the stationary qd transform of L D L^T - tau.
std::size_t negcount(const QdArrays& qd, double tau) {
    const std::size_t n = qd.q.size();
    std::size_t count = 0;
    double s = -tau;
    for (std::size_t i = 0; i < n; ++i) {
        double dp = qd.q[i] + s;
        if (dp < 0.0 || (dp == 0.0 && std::signbit(dp))) ++count;
        if (dp == 0.0) dp = -std::numeric_limits<double>::min();
        if (i + 1 < n) {
            double t = s / dp;
            if (std::isnan(t)) t = 1.0;
            s = qd.e[i] * t - tau;
        }
    }
    return count;
}

double gershgorin_upper(const QdArrays& qd) {
    const std::size_t n = qd.q.size();
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = qd.q[i] + (i > 0 ? qd.e[i - 1] : 0.0);
        if (i > 0) row += std::sqrt(qd.q[i - 1]) * std::sqrt(qd.e[i - 1]);
        if (i + 1 < n) row += std::sqrt(qd.q[i]) * std::sqrt(qd.e[i]);
        u = std::max(u, row);
    }
    return u * (1.0 + 1e-12) + std::numeric_limits<double>::min();
}

// k-th smallest eigenvalue (0-based). Geometric bisection while the bracket
// spans more than a factor 2, arithmetic afterwards.
double bisect_eigenvalue(const QdArrays& qd, std::size_t k, double upper) {
    double lo = std::numeric_limits<double>::min();
    double hi = upper;
    if (negcount(qd, lo) > k) return lo;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    while (hi - lo > 2.0 * eps * hi) {
        const double mid = hi > 2.0 * lo ? std::sqrt(lo) * std::sqrt(hi) : lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        (negcount(qd, mid) > k ? hi : lo) = mid;
    }
    return lo + 0.5 * (hi - lo);
}

// Twisted factorization of L D L^T - shift, vector with z_r = 1.
std::vector<ScaledReal> twisted_vector(const QdArrays& qd, double shift) {
    const std::size_t n = qd.q.size();
    std::vector<double> s(n), lp(n > 0 ? n - 1 : 0), p(n), um(n > 0 ? n - 1 : 0);
    s[0] = -shift;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double dp = qd.q[i] + s[i];
        if (dp == 0.0) dp = -std::numeric_limits<double>::min();
        lp[i] = (std::sqrt(qd.q[i]) * std::sqrt(qd.e[i])) / dp;
        double t = s[i] / dp;
        if (std::isnan(t)) t = 1.0;
        s[i + 1] = qd.e[i] * t - shift;
    }
    p[n - 1] = qd.q[n - 1] - shift;
    for (std::size_t i = n - 1; i-- > 0;) {
        double dm = qd.e[i] + p[i + 1];
        if (dm == 0.0) dm = -std::numeric_limits<double>::min();
        um[i] = (std::sqrt(qd.q[i]) * std::sqrt(qd.e[i])) / dm;
        double t = qd.q[i] / dm;
        p[i] = p[i + 1] * t - shift;
        if (std::isnan(p[i])) p[i] = -shift;
    }
    std::size_t twist = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r) {
        const double g = std::fabs(s[r] + p[r] + shift);
        if (g < best) {
            best = g;
            twist = r;
        }
    }
    std::vector<ScaledReal> z(n);
    z[twist] = ScaledReal(1.0);
    for (std::size_t i = twist; i-- > 0;) z[i] = -(ScaledReal(lp[i]) * z[i + 1]);
    for (std::size_t i = twist; i + 1 < n; ++i) z[i + 1] = -(ScaledReal(um[i]) * z[i]);
    return z;
}

double relative_change(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

}  // namespace

TruncatedJacobi make_truncated_jacobi(const RecurrenceCoefficients& coeffs, std::size_t N) {
    if (N == 0) throw DomainError("truncated Jacobi matrix needs N >= 1");
    TruncatedJacobi j;
    for (std::size_t k = 0; k < N; ++k) {
        j.diagonal.push_back(coeffs.beta(k));
        if (k + 1 < N) j.off_diagonal.push_back(coeffs.lambda(k));
    }
    return j;
}

BidiagonalFactor make_gamma_alpha_factor(const RecurrenceCoefficients& coeffs, std::size_t N) {
    if (N == 0) throw DomainError("bidiagonal factor needs N >= 1");
    BidiagonalFactor b;
    for (std::size_t k = 0; k < N; ++k) {
        b.diagonal.push_back(std::sqrt(coeffs.gamma(k)));
        if (k + 1 < N) b.super_diagonal.push_back(std::sqrt(coeffs.alpha(k + 1)));
    }
    return b;
}

BidiagonalFactor make_cholesky_factor(const RecurrenceCoefficients& coeffs, std::size_t N) {
    if (N == 0) throw DomainError("bidiagonal factor needs N >= 1");
    const QdArrays qd = make_qd(coeffs, N);
    BidiagonalFactor b;
    for (std::size_t k = 0; k < N; ++k) {
        b.diagonal.push_back(std::sqrt(qd.q[k]));
        if (k + 1 < N) b.super_diagonal.push_back(std::sqrt(qd.e[k]));
    }
    return b;
}

std::size_t eigenvalue_count_below(const RecurrenceCoefficients& coeffs, std::size_t N, double tau) {
    if (N == 0) throw DomainError("eigenvalue count needs N >= 1");
    return negcount(make_qd(coeffs, N), tau);
}

std::vector<double> truncated_zeros(const RecurrenceCoefficients& coeffs, std::size_t N) {
    if (N == 0) throw DomainError("truncated_zeros needs N >= 1");
    const QdArrays qd = make_qd(coeffs, N);
    const double upper = gershgorin_upper(qd);
    std::vector<double> out(N);
    for (std::size_t k = 0; k < N; ++k) out[k] = bisect_eigenvalue(qd, k, upper);
    return out;
}

ScaledReal eigenvector_first_component_squared(const RecurrenceCoefficients& coeffs, std::size_t N,
                                               double shift) {
    if (N == 0) throw DomainError("eigenvector needs N >= 1");
    const auto z = twisted_vector(make_qd(coeffs, N), shift);
    ScaledReal norm2;
    for (const auto& v : z) norm2 += v * v;
    return z[0] * z[0] / norm2;
}

QuadratureRule quadrature(const RecurrenceCoefficients& coeffs, std::size_t N, double consistency_tol) {
    if (N == 0) throw DomainError("quadrature needs N >= 1");
    QuadratureRule rule;
    rule.nodes = truncated_zeros(coeffs, N);
    const QdArrays qd = make_qd(coeffs, N);
    rule.weights.reserve(N);
    rule.eigenvector_weights.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double x = rule.nodes[i];
        const TwoSidedEval ev = eval_p_two_sided(coeffs, x, N);
        ScaledReal sum;
        for (const auto& p : ev.values_p) sum += p * p;
        const ScaledReal w = ScaledReal(1.0) / sum;

        const auto z = twisted_vector(qd, x);
        ScaledReal norm2;
        for (const auto& v : z) norm2 += v * v;
        const ScaledReal w_vec = z[0] * z[0] / norm2;

        const double rel = ((w - w_vec).abs() / w).to_double();
        rule.max_relative_disagreement = std::max(rule.max_relative_disagreement, rel);
        rule.weights.push_back(w);
        rule.eigenvector_weights.push_back(w_vec);
    }
    if (!(rule.max_relative_disagreement <= consistency_tol)) {
        throw NumericalConsistencyError("quadrature weights disagree between Christoffel and eigenvector routes: " +
                                        std::to_string(rule.max_relative_disagreement) + " at N=" +
                                        std::to_string(N));
    }
    return rule;
}

namespace {

std::size_t initial_truncation(std::size_t K, std::size_t max_truncation) {
    if (K == 0) throw DomainError("need K >= 1");
    if (K >= max_truncation) {
        throw ConvergenceError("K=" + std::to_string(K) + " not below the truncation limit " +
                               std::to_string(max_truncation));
    }
    return std::min(std::max<std::size_t>(2 * K, 16), max_truncation);
}

std::size_t next_truncation(std::size_t N, std::size_t K, std::size_t max_truncation) {
    return std::min(std::max(2 * N, N + K), max_truncation);
}

}  // namespace

SupportPoints support_points(const RecurrenceCoefficients& coeffs, std::size_t K, double rel_tol,
                             std::size_t max_truncation) {
    std::size_t N = initial_truncation(K, max_truncation);
    auto top = [&](std::size_t n) {
        auto z = truncated_zeros(coeffs, n);
        return std::vector<double>(z.rbegin(), z.rbegin() + static_cast<std::ptrdiff_t>(K));
    };
    std::vector<double> prev = top(N);
    while (true) {
        if (N == max_truncation) {
            throw ConvergenceError("support points did not stabilize by N=" + std::to_string(max_truncation));
        }
        const std::size_t next = next_truncation(N, K, max_truncation);
        std::vector<double> cur = top(next);
        double worst = 0.0;
        std::size_t worst_index = 0;
        for (std::size_t k = 0; k < K; ++k) {
            const double change = relative_change(prev[k], cur[k]);
            if (change > worst) {
                worst = change;
                worst_index = k + 1;
            }
        }
        N = next;
        if (worst <= rel_tol) return {std::move(cur), N};
        if (N == max_truncation) {
            throw ConvergenceError("support points did not stabilize by N=" + std::to_string(max_truncation) +
                                   "; worst index " + std::to_string(worst_index));
        }
        prev = std::move(cur);
    }
}

DiscreteMeasure measure(const RecurrenceCoefficients& coeffs, std::size_t K, double rel_tol,
                        std::size_t max_truncation) {
    std::size_t N = initial_truncation(K, max_truncation);
    auto build = [&](std::size_t n) {
        const QuadratureRule rule = quadrature(coeffs, n);
        DiscreteMeasure m;
        m.truncation_size = n;
        for (std::size_t k = 0; k < K; ++k) {
            m.support.push_back(rule.nodes[n - 1 - k]);
            m.masses.push_back(rule.weight(n - 1 - k));
        }
        ScaledReal tail;
        for (std::size_t i = 0; i + K < n; ++i) tail += rule.weights[i];
        m.tail_bound = tail.to_double();
        return m;
    };
    DiscreteMeasure prev = build(N);
    while (true) {
        if (N == max_truncation) {
            throw ConvergenceError("measure did not stabilize by N=" + std::to_string(max_truncation));
        }
        N = next_truncation(N, K, max_truncation);
        DiscreteMeasure cur = build(N);
        double worst = relative_change(prev.tail_bound, cur.tail_bound);
        std::size_t worst_index = K + 1;
        for (std::size_t k = 0; k < K; ++k) {
            const double change = std::max(relative_change(prev.support[k], cur.support[k]),
                                           relative_change(prev.masses[k], cur.masses[k]));
            if (change > worst) {
                worst = change;
                worst_index = k + 1;
            }
        }
        if (worst <= rel_tol) return cur;
        if (N == max_truncation) {
            throw ConvergenceError("measure did not stabilize by N=" + std::to_string(max_truncation) +
                                   "; worst index " + std::to_string(worst_index));
        }
        prev = std::move(cur);
    }
}

double DiscreteMeasure::mass_below(std::size_t n) const {
    if (n == 0 || n > support.size()) throw DomainError("mass_below index outside 1..K");
    double sum = tail_bound;
    for (std::size_t k = support.size(); k >= n; --k) sum += masses[k - 1];
    return sum;
}

double DiscreteMeasure::mass_strictly_below(double x) const {
    if (support.empty() || !(x > support.back())) {
        throw PrecisionError("mass below x not resolved: x is not above the smallest computed atom");
    }
    double sum = tail_bound;
    for (std::size_t k = support.size(); k-- > 0;) {
        if (support[k] < x) sum += masses[k];
    }
    return sum;
}

double moment(const RecurrenceCoefficients& coeffs, std::size_t m, std::size_t N) {
    if (N < m + 2) throw DomainError("moment needs N >= m + 2");
    const TruncatedJacobi j = make_truncated_jacobi(coeffs, N);
    std::vector<double> v(N, 0.0), w(N, 0.0);
    v[0] = 1.0;
    for (std::size_t step = 0; step < m; ++step) {
        for (std::size_t i = 0; i < N; ++i) {
            double acc = j.diagonal[i] * v[i];
            if (i > 0) acc += j.off_diagonal[i - 1] * v[i - 1];
            if (i + 1 < N) acc += j.off_diagonal[i] * v[i + 1];
            w[i] = acc;
        }
        std::swap(v, w);
    }
    return v[0];
}

double separation_constant(const DiscreteMeasure& mu) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < mu.support.size(); ++k) {
        d = std::min(d, (mu.support[k] - mu.support[k + 1]) / mu.support[k + 1]);
    }
    return d;
}

}  // namespace qorth
