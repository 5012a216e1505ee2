#include <doctest.h>

#include <cmath>

#include "qorth/coefficients.hpp"
#include "qorth/errors.hpp"

using namespace qorth;

TEST_CASE("geometric family entries") {
    const auto c = make_example_family(0.3, 0.25);
    CHECK(c.alpha(0) == 0.0);
    CHECK(c.gamma(0) == 1.0);
    CHECK(c.beta(0) == 1.0);
    CHECK(c.alpha(1) == doctest::Approx(0.0225));
    CHECK(c.beta(1) == doctest::Approx(0.2725));
    CHECK(c.beta(2) == doctest::Approx(0.068125));
    CHECK(c.lambda(0) == doctest::Approx(std::sqrt(0.0225)));
    CHECK(c.alpha0_formal() == doctest::Approx(0.09));

    const auto d = c.with_beta0_mode(Beta0Mode::AlphaPlusGamma);
    CHECK(d.beta(0) == doctest::Approx(1.09));
    CHECK(d.beta(1) == c.beta(1));
}

TEST_CASE("h(n) equals (a^2 q)^(-n) for the geometric family") {
    const auto c = make_example_family(0.3, 0.25);
    const auto h = c.h_prefix(200);
    for (std::size_t n : {0u, 1u, 5u, 50u, 200u}) {
        const double expected_log = -static_cast<double>(n) * std::log(0.09 * 0.25);
        CHECK(h[n].log_abs() == doctest::Approx(expected_log).epsilon(1e-12));
        CHECK(c.h(n).log_abs() == doctest::Approx(h[n].log_abs()).epsilon(1e-13));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_example_family(1.2, 0.25), DomainError);
    CHECK_THROWS_AS(make_example_family(0.3, 1.0), DomainError);
    CHECK_THROWS_AS(make_example_family(0.0, 0.5), DomainError);
    CHECK(parse_beta0_mode("alpha-plus-gamma") == Beta0Mode::AlphaPlusGamma);
    CHECK(parse_tail_rule("geometric") == TailRule::Geometric);
    CHECK_THROWS(parse_beta0_mode("nope"));
}

TEST_CASE("coefficient CSV ingestion") {
    const auto rows = parse_coefficient_csv("n,alpha,gamma\n0,0,1\n1,0.0225,0.25\n2,0.005625,0.0625\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].gamma == 0.0625);

    const auto table = make_table_coefficients(rows);
    CHECK(table.gamma(1) == 0.25);
    CHECK_THROWS_AS(table.gamma(3), DomainError);

    const auto tailed = make_table_coefficients(rows, TailRule::Geometric);
    CHECK(tailed.gamma(4) == doctest::Approx(std::pow(0.25, 4)));
    CHECK(tailed.alpha(5) == doctest::Approx(0.09 * std::pow(0.25, 5)));

    CHECK_THROWS_AS(make_table_coefficients(parse_coefficient_csv("n,alpha,gamma\n0,0,1\n1,0.1,0.3\n3,0.01,0.1\n")),
                    IngestError);
    CHECK_THROWS_AS(parse_coefficient_csv("n,a,g\n0,0,1\n"), IngestError);
    CHECK_THROWS_AS(make_table_coefficients(parse_coefficient_csv("n,alpha,gamma\n0,0,1\n1,0.1,-0.3\n")),
                    IngestError);
}

TEST_CASE("closed-form feasibility boundary") {
    const auto ok = example_feasibility(0.3, 0.25);
    CHECK(ok.lhs == doctest::Approx(0.27523).epsilon(1e-5));
    CHECK(ok.rhs == doctest::Approx(0.35294).epsilon(1e-5));
    CHECK(ok.holds);
    const auto bad = example_feasibility(0.99, 0.25);
    CHECK(bad.lhs == doctest::Approx(0.49997).epsilon(1e-5));
    CHECK_FALSE(bad.holds);
}

TEST_CASE("hypotheses for the example family") {
    const auto c = make_example_family(0.3, 0.25);
    const auto r = check_hypotheses(c, 40);
    CHECK(r.all_hold());
    CHECK(r.q_est == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.s_est == doctest::Approx(1.0 / (0.09 * 0.25)).epsilon(1e-10));
    CHECK(r.N_est == 0);
    REQUIRE_FALSE(r.c_interval.empty);
    CHECK(r.c_interval.lo == doctest::Approx(1.25 / 1.0625).epsilon(1e-12));
    CHECK(r.c_interval.lo_open);
    CHECK(r.c_interval.hi == doctest::Approx(1.79817).epsilon(1e-5));
    CHECK_FALSE(r.c_interval.hi_open);
    CHECK(r.c_interval.contains(1.5));
    CHECK_FALSE(r.c_interval.contains(r.c_interval.lo));
    CHECK(c_satisfies(c, r.c_interval.midpoint(), r.N_est, 40));
    CHECK_FALSE(c_satisfies(c, 1.9, r.N_est, 40));
}

TEST_CASE("a = 0.99 violates the lambda bound") {
    const auto r = check_hypotheses(make_example_family(0.99, 0.25), 40);
    CHECK(r.any_fails());
    CHECK(r.verdicts.at(condition::kLambdaBound).status == VerdictStatus::Fails);
    CHECK(r.c_interval.empty);
}

TEST_CASE("n_max below 10 is rejected") {
    CHECK_THROWS_AS(check_hypotheses(make_example_family(0.3, 0.25), 5), DomainError);
}
