#include <doctest.h>

#include <cmath>

#include "high_precision.hpp"
#include "qorth/analysis.hpp"
#include "qorth/errors.hpp"

using namespace qorth;

namespace {
const RecurrenceCoefficients& family() {
    static const auto c = make_example_family(0.3, 0.25);
    return c;
}
const DiscreteMeasure& mu60() {
    static const auto m = measure(family(), 60);
    return m;
}
}  // namespace

TEST_CASE("Fourier coefficients of R_m are 1/h(m) on the diagonal") {
    const SupportBasis basis(mu60(), family(), 12);
    for (std::size_t m = 0; m <= 10; ++m) {
        const auto f = basis.basis_function(m);
        for (std::size_t k = 0; k <= 10; ++k) {
            const auto a = fourier_coefficient(basis, f, k);
            const double scaled = a.value * family().h(k).to_double();
            CHECK(scaled == doctest::Approx(k == m ? 1.0 : 0.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("Parseval inequality for the test battery") {
    const SupportBasis basis(mu60(), family(), 30);
    for (auto fn : {+[](double y) { return std::sqrt(y); }, +[](double y) { return 1.0 / (1.0 + y); }}) {
        const auto f = basis.sample(fn);
        double rhs = 0.0, sup = 0.0;
        for (std::size_t j = 1; j <= basis.size(); ++j) {
            rhs += f[j] * f[j] * basis.mass(j);
            sup = std::max(sup, std::fabs(f[j]));
        }
        rhs += sup * sup * mu60().tail_bound;
        double lhs = 0.0;
        for (std::size_t k = 0; k <= 30; ++k) {
            const double a = fourier_coefficient(basis, f, k).value;
            lhs += a * a * family().h(k).to_double();
        }
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("partial sums reproduce basis functions") {
    const SupportBasis basis(mu60(), family(), 20);
    for (std::size_t n = 0; n <= 20; n += 4) {
        for (std::size_t m = 0; m <= n; ++m) {
            CHECK(partial_sum(basis, basis.basis_function(m), n).sup_error <= 1e-9);
        }
    }
    const double pts[] = {0.0, mu60().support[3]};
    const auto r = partial_sum(mu60(), family(), [](double y) { return y; }, 1, pts);
    CHECK(r.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.values[1] == doctest::Approx(mu60().support[3]).epsilon(1e-12));
}

TEST_CASE("coarse measures trip the remainder guard") {
    const auto small = measure(family(), 3);
    const SupportBasis basis(small, family(), 2);
    CHECK_THROWS_AS(fourier_coefficient(basis, basis.sample([](double) { return 1.0; }), 0), PrecisionError);
    CHECK_THROWS_AS(lebesgue_function(basis, 2, 0), PrecisionError);
}

TEST_CASE("Lebesgue function: paths agree, n = 0 gives 1") {
    const SupportBasis basis(mu60(), family(), 40);
    CHECK(lebesgue_function(basis, 0, 3).value == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n : {5u, 20u, 40u}) {
        for (std::size_t j : {0u, 1u, 7u, 30u}) {
            const double d = lebesgue_function(basis, n, j, KernelPath::Direct).value;
            const double a = lebesgue_function(basis, n, j, KernelPath::Auto).value;
            CHECK(a == doctest::Approx(d).epsilon(1e-8));
            CHECK(a >= 1.0 - 1e-12);
        }
    }
    const auto c = lebesgue_constant(basis, 10);
    CHECK(c.value >= lebesgue_function(basis, 10, 0).value);
    CHECK(lebesgue_constant(mu60(), family(), 10) == c.value);
}

TEST_CASE("linearization matches the monomial oracle") {
    const oracle::Family f(0.3, 0.25);
    for (std::size_t n = 0; n <= 6; ++n) {
        for (std::size_t m = 0; m <= 6; ++m) {
            const auto t = linearization(family(), n, m);
            const auto o = oracle::linearization(f, n, m);
            REQUIRE(t.g.size() == o.size());
            for (std::size_t k = 0; k < o.size(); ++k) {
                CHECK(std::fabs(t.g[k] - static_cast<double>(o[k])) <= 1e-12);
            }
        }
    }
    const auto t = linearization(family(), 0, 5);
    CHECK(t.at(5) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(t.at(99) == 0.0);
}

TEST_CASE("spectral bound checks on the example family") {
    const auto report = check_hypotheses(family(), 40);
    const auto v = verify_theorem1(family(), report, mu60());
    CHECK(v.all_hold());
    CHECK(v.c == doctest::Approx(report.c_interval.midpoint()));
    CHECK(v.ratio_bound < 1.0);
    CHECK(v.checks.count("spectral_bounds") == 1);
    CHECK_THROWS_AS(verify_theorem1(family(), report, measure(family(), 3)), DomainError);
}

TEST_CASE("TMS inequality and its precondition") {
    for (std::size_t N : {3u, 10u, 30u}) CHECK(verify_tms(family(), mu60(), N).holds);
    CHECK_THROWS_AS(verify_tms(family(), mu60(), 2), DomainError);
}

TEST_CASE("explicit measure closed forms") {
    CHECK(ExplicitMeasure::total_mass() == 1.0);
    CHECK(ExplicitMeasure::point(1) == 1.0);
    CHECK(ExplicitMeasure::point(2) == 0.5);
    CHECK(ExplicitMeasure::mass(1) == 3.0 / 8.0);
    CHECK(ExplicitMeasure::mass(2) == 7.0 / 16.0);
    for (std::size_t k = 1; k <= 40; ++k) {
        CHECK(ExplicitMeasure::mass_below(k) ==
              doctest::Approx(ExplicitMeasure::mass(k) + ExplicitMeasure::mass_below(k + 1)).epsilon(1e-15));
    }
    CHECK(ExplicitMeasure::mass_below(1) == 1.0);
    const auto st = remark1_fixture_stats(40);
    CHECK(st.odd_constant);
    CHECK(st.even_halving);
    CHECK(st.tail_window <= 4.0);
    CHECK(st.total_mass_summed == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(remark1_fixture_stats(5), DomainError);
}
