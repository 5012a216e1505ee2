#include <doctest.h>

#include <json.hpp>

#include "qorth/serialize.hpp"

using namespace qorth;

TEST_CASE("measure JSON round-trips every double") {
    const auto mu = measure(make_example_family(0.3, 0.25), 12);
    const auto j = nlohmann::json::parse(io::to_json(mu));
    REQUIRE(j["support"].size() == 12);
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK(j["support"][k].get<double>() == mu.support[k]);
        CHECK(j["masses"][k].get<double>() == mu.masses[k]);
    }
    CHECK(j["tail_bound"].get<double>() == mu.tail_bound);
    CHECK(j["truncation_size"].get<std::size_t>() == mu.truncation_size);
}

TEST_CASE("hypothesis report JSON carries the contract fields") {
    const auto r = check_hypotheses(make_example_family(0.3, 0.25), 20);
    const auto j = nlohmann::json::parse(io::to_json(r));
    for (const char* key : {"q_est", "s_est", "kappa_est", "c_lo", "c_hi", "N_est", "verdicts"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["verdicts"]["lambda_bound"]["status"] == "holds");
    CHECK(j["c_lo"].get<double>() == r.c_interval.lo);
}

TEST_CASE("CSV output") {
    const auto mu = measure(make_example_family(0.3, 0.25), 2);
    const std::string csv = io::support_csv(mu);
    CHECK(csv.rfind("k,xi,mass\n1,", 0) == 0);
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::sequence_csv("n", "lambda", {0, 1}, {1.0, 2.5}) == "n,lambda\n0,1\n1,2.5\n");
    CHECK_THROWS(io::sequence_csv("n", "v", {0}, {}));
}
