#include <doctest.h>

#include <cmath>

#include "high_precision.hpp"
#include "qorth/polyeval.hpp"
#include "qorth/spectrum.hpp"

using namespace qorth;

TEST_CASE("R_n(0) = 1 exactly in gamma-only mode") {
    const auto c = make_example_family(0.3, 0.25);
    const auto ev = eval_R(c, 300, 0.0);
    for (double r : ev.values_R) CHECK(r == 1.0);
    for (std::size_t k = 0; k <= 300; k += 50) {
        CHECK(ev.values_p[k].log_abs() == doctest::Approx(0.5 * c.h(k).log_abs()).epsilon(1e-14));
    }
}

TEST_CASE("forward values match the high-precision recurrence off the support") {
    const auto c = make_example_family(0.3, 0.25);
    const oracle::Family f(0.3, 0.25);
    for (double x : {-0.5, 2.0, 0.7}) {
        const auto R = oracle::monomial_R(f, 8);
        const auto ev = eval_R(c, 8, x);
        for (std::size_t k = 0; k <= 8; ++k) {
            oracle::Real v = 0, xp = 1;
            for (const auto& coef : R[k]) {
                v += coef * xp;
                xp *= x;
            }
            CHECK(ev.values_R[k] == doctest::Approx(static_cast<double>(v)).epsilon(1e-9));
        }
    }
}

TEST_CASE("alpha-plus-gamma mode moves R_1(0) off 1") {
    const auto c = make_example_family(0.3, 0.25, Beta0Mode::AlphaPlusGamma);
    const auto ev = eval_R(c, 3, 0.0);
    CHECK(ev.values_R[0] == 1.0);
    CHECK(ev.values_R[1] == doctest::Approx(1.0 + 0.09));
}

TEST_CASE("two-sided evaluation at a truncated zero is the eigenvector") {
    const auto c = make_example_family(0.3, 0.25);
    const std::size_t N = 12;
    const auto zeros = truncated_zeros(c, N);
    const auto rule = quadrature(c, N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto ev = eval_p_two_sided(c, zeros[i], N);
        ScaledReal norm;
        for (std::size_t k = 0; k < N; ++k) norm += ev.values_p[k] * ev.values_p[k];
        // Christoffel number = 1 / sum p_k^2.
        CHECK((ScaledReal(1.0) / norm).log_abs() == doctest::Approx(rule.weights[i].log_abs()).epsilon(1e-12));
    }
}

TEST_CASE("|p_n(x)| <= p_n(0) at support points") {
    const auto c = make_example_family(0.3, 0.25);
    const auto sp = support_points(c, 15);
    for (double x : sp.points) {
        const auto ev = eval_p_two_sided(c, x, 200);
        const auto at0 = eval_p(c, 40, 0.0);
        for (std::size_t n = 0; n <= 40; ++n) {
            CHECK(ev.values_p[n].abs().log_abs() <= at0[n].log_abs() + 1e-10);
        }
    }
}

TEST_CASE("Dirichlet kernel: symmetry, paths and n = 0") {
    const auto c = make_example_family(0.3, 0.25);
    CHECK(dirichlet_kernel(c, 0, 0.3, 0.7) == 1.0);
    CHECK(dirichlet_kernel(c, 0, 0.3, 0.7, KernelPath::ChristoffelDarboux) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t n : {1u, 3u, 8u}) {
        for (auto [x, y] : {std::pair{0.25, 1.03}, std::pair{0.0, 0.0625}, std::pair{0.9, 0.01}}) {
            const double direct = dirichlet_kernel(c, n, x, y, KernelPath::Direct);
            const double cd = dirichlet_kernel(c, n, x, y, KernelPath::ChristoffelDarboux);
            CHECK(cd == doctest::Approx(direct).epsilon(1e-9));
            CHECK(dirichlet_kernel(c, n, x, y) == dirichlet_kernel(c, n, y, x));
        }
    }
    CHECK_FALSE(uses_christoffel_darboux(1.0, 1.0 + 1e-9));
    CHECK(uses_christoffel_darboux(1.0, 0.5));
}
