#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "bflab/experiments.hpp"

using namespace bflab;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

} // namespace

TEST_CASE("exhaustive_oracle: exact law on 2 variables") {
    const ExhaustiveSummary s = exhaustive_oracle(2);
    CHECK(s.functions == 16);
    CHECK(s.mean_delta == 2.0);
    CHECK(s.mean_sos == 40.0);
    CHECK(s.delta_histogram ==
          std::map<std::int64_t, std::uint64_t>{{0, 8}, {4, 8}});
    CHECK(s.nl_histogram ==
          std::map<std::int64_t, std::uint64_t>{{0, 8}, {1, 8}});
}

TEST_CASE("exhaustive_oracle: exact law on 3 variables") {
    const ExhaustiveSummary s = exhaustive_oracle(3);
    CHECK(s.functions == 256);
    CHECK(s.mean_delta == 6.0);
    CHECK(s.mean_sos == 176.0);
    CHECK(s.delta_histogram ==
          std::map<std::int64_t, std::uint64_t>{{4, 128}, {8, 128}});
    CHECK(s.nl_histogram ==
          std::map<std::int64_t, std::uint64_t>{{0, 16}, {1, 128}, {2, 112}});
    CHECK(s.stddev_delta == 2.0); // values 4 and 8, half-half
}

TEST_CASE("exhaustive_oracle: dimension limits") {
    CHECK_THROWS_AS(exhaustive_oracle(5), DimensionTooLarge);
    CHECK_THROWS_AS(exhaustive_oracle(1), InvalidDimension);
}

TEST_CASE("estimate_ratio: agrees with the exact law at n=3") {
    const ExperimentRow row = estimate_ratio(3, 10000, 7);
    const double scale = std::sqrt(8.0 * std::log(8.0));
    const double exact_mean = 6.0 / scale;
    const double exact_sd = 2.0 / scale;
    const double se = exact_sd / std::sqrt(10000.0);
    REQUIRE(row.mean_ratio.has_value());
    CHECK(std::abs(*row.mean_ratio - exact_mean) <= 3.0 * se);
    CHECK(*row.stddev_ratio == doctest::Approx(exact_sd).epsilon(0.1));
    CHECK(row.trials == 10000);
    CHECK(row.seed == 7);
    CHECK_FALSE(row.empirical_tail.has_value());
}

TEST_CASE("estimate_ratio: validation") {
    CHECK_THROWS_AS(estimate_ratio(1, 1000, 0), InvalidDimension);
    CHECK_THROWS_AS(estimate_ratio(8, 99, 0), InvalidArgument);
}

TEST_CASE("experiments are deterministic and worker-count independent") {
    const ExperimentRow a = estimate_ratio(6, 400, 3, 1);
    const ExperimentRow b = estimate_ratio(6, 400, 3, 4);
    const ExperimentRow c = estimate_ratio(6, 400, 3, 0);
    CHECK(to_csv({a}) == to_csv({b}));
    CHECK(to_csv({a}) == to_csv({c}));
    CHECK(to_json({a}) == to_json({b}));

    const ExperimentRow p = pair_tail(8, 500, 11, 1);
    const ExperimentRow q = pair_tail(8, 500, 11, 3);
    CHECK(to_csv({p}) == to_csv({q}));

    const ExperimentRow u = concentration_check(7, 300, 20.0, 5, 1);
    const ExperimentRow v = concentration_check(7, 300, 20.0, 5, 5);
    CHECK(to_csv({u}) == to_csv({v}));
}

TEST_CASE("tail_check: unreachable threshold gives a zero estimate") {
    const ExperimentRow row = tail_check(8, 200, 10.0, 1);
    CHECK(*row.empirical_tail == 0.0);
    CHECK(*row.bound_satisfied);
    CHECK(*row.epsilon == 10.0);
    CHECK(row.note.empty());
}

TEST_CASE("tail_check: validation") {
    CHECK_THROWS_AS(tail_check(8, 200, 0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(tail_check(8, 200, -1.0, 1), InvalidArgument);
}

TEST_CASE("single_u_tail: second-moment audit centers on 1") {
    const ExperimentRow row = single_u_tail(10, 20000, 9);
    REQUIRE(row.mean_ratio.has_value());
    CHECK(std::abs(*row.mean_ratio - 1.0) < 0.05);
    CHECK(*row.bound_value == doctest::Approx(1.8546301564614366e-4));
    CHECK_FALSE(row.note.empty()); // n <= 10 carries the small-n caveat
    CHECK(single_u_tail(12, 100, 1).note.empty());
}

TEST_CASE("pair_tail: joint events are rare, bound records the target") {
    const ExperimentRow row = pair_tail(8, 500, 2);
    CHECK(*row.bound_value == doctest::Approx(4.0 / 65536.0));
    CHECK(*row.bound_satisfied);
    CHECK(row.note.find("u=1, v=2") != std::string::npos);
    CHECK(pair_tail(4, 100, 1).note.find("n >= 7") != std::string::npos);
}

TEST_CASE("concentration_check: extreme thresholds behave") {
    const ExperimentRow wide = concentration_check(8, 500, 1000.0, 3);
    CHECK(*wide.empirical_tail == 0.0);
    CHECK(*wide.bound_satisfied);
    const ExperimentRow tight = concentration_check(8, 500, 1e-9, 3);
    CHECK(*tight.empirical_tail > 0.9);
    CHECK(*tight.bound_value == doctest::Approx(2.0));
    CHECK(*tight.bound_satisfied); // everything deviates, but the bound is 2
}

TEST_CASE("sos_mean: Monte Carlo matches the exact law at n=3") {
    const ExhaustiveSummary s = exhaustive_oracle(3);
    const ExperimentRow row = sos_mean(3, 5000, 21);
    const double se = s.stddev_sos / std::sqrt(5000.0);
    CHECK(std::abs(*row.mean_ratio - s.mean_sos) <= 3.0 * se);
    CHECK_FALSE(row.exact_expectation.has_value());
}

TEST_CASE("sos_mean: trials 0 enumerates exactly") {
    const ExperimentRow row = sos_mean(2, 0, 0);
    CHECK(row.trials == 16);
    CHECK(*row.mean_ratio == 40.0);
    CHECK(*row.exact_expectation == 40.0);
    CHECK_FALSE(row.seed.has_value());
    CHECK(row.note.find("exhaustive") != std::string::npos);
    CHECK_THROWS_AS(sos_mean(5, 0, 0), DimensionTooLarge);
}

TEST_CASE("run_experiment: kind-specific validation") {
    ExperimentConfig config;
    config.kind = ExperimentKind::tail;
    config.n_values = {8};
    config.trials = 200;
    CHECK_THROWS_AS(run_experiment(config), InvalidArgument); // no epsilon
    config.epsilon = 0.5;
    CHECK(run_experiment(config).size() == 1);
    config.n_values = {};
    CHECK_THROWS_AS(run_experiment(config), InvalidArgument);
    config.kind = ExperimentKind::concentration;
    config.n_values = {8};
    CHECK_THROWS_AS(run_experiment(config), InvalidArgument); // no theta
}

TEST_CASE("run_experiment: rows follow the requested n order") {
    ExperimentConfig config;
    config.kind = ExperimentKind::exhaustive;
    config.n_values = {3, 2};
    const auto rows = run_experiment(config);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 3);
    CHECK(rows[1].n == 2);
    CHECK(*rows[0].exact_expectation == 6.0);
    CHECK(*rows[1].exact_expectation == 2.0);
}

TEST_CASE("kind names: canonical and hyphenated spellings") {
    CHECK(kind_name(ExperimentKind::single_u_tail) == "single_u_tail");
    CHECK(kind_from_name("single-u-tail") == ExperimentKind::single_u_tail);
    CHECK(kind_from_name("sos_mean") == ExperimentKind::sos_mean);
    CHECK_THROWS_AS(kind_from_name("nope"), InvalidArgument);
}

TEST_CASE("to_csv: fixed header and per-kind cell population") {
    ExperimentConfig config;
    config.kind = ExperimentKind::exhaustive;
    config.n_values = {2};
    const std::string csv = to_csv(run_experiment(config));
    const auto nl = csv.find('\n');
    CHECK(csv.substr(0, nl) ==
          "kind,n,trials,seed,epsilon,theta,mean_ratio,stddev_ratio,"
          "empirical_tail,bound_value,bound_satisfied,exact_expectation");
    const std::string line = csv.substr(nl + 1, csv.size() - nl - 2);
    const auto cells = split_csv_line(line);
    REQUIRE(cells.size() == 12);
    CHECK(cells[0] == "exhaustive");
    CHECK(cells[1] == "2");
    CHECK(cells[2] == "16");
    CHECK(cells[3] == "");   // seed: not applicable
    CHECK(cells[4] == "");   // epsilon
    CHECK(cells[5] == "");   // theta
    CHECK(std::strtod(cells[6].c_str(), nullptr) ==
          doctest::Approx(2.0 / std::sqrt(4.0 * std::log(4.0))));
    CHECK(cells[8] == "");   // empirical_tail
    CHECK(cells[10] == "");  // bound_satisfied
    CHECK(cells[11] == "2"); // exact E[Delta]
}

TEST_CASE("to_csv: reals carry 17 significant digits") {
    const ExperimentRow row = tail_check(8, 200, 1.0 / 3.0, 1);
    const std::string csv = to_csv({row});
    CHECK(csv.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("to_json: same cells, nulls for not-applicable, note included") {
    ExperimentConfig config;
    config.kind = ExperimentKind::exhaustive;
    config.n_values = {2};
    const auto rows = run_experiment(config);
    const nlohmann::json arr = nlohmann::json::parse(to_json(rows));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 1);
    const auto& o = arr[0];
    CHECK(o.at("kind") == "exhaustive");
    CHECK(o.at("n") == 2);
    CHECK(o.at("trials") == 16);
    CHECK(o.at("seed").is_null());
    CHECK(o.at("epsilon").is_null());
    CHECK(o.at("exact_expectation") == 2.0);
    CHECK_FALSE(o.contains("note")); // no caveat on this kind

    const nlohmann::json noted =
        nlohmann::json::parse(to_json({single_u_tail(8, 100, 1)}))[0];
    CHECK(noted.at("note").is_string());
}
