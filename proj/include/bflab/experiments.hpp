#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bflab/boolean_function.hpp"

namespace bflab {

// Monte Carlo / enumeration experiments over random functions.  Every kind
// emits rows with the same 12 columns; cells that do not apply to a kind stay
// empty.  All randomness is SplitMix64 on per-trial stream seeds, so a row is
// a pure function of (kind, n, trials, seed, parameters) regardless of the
// worker count.
enum class ExperimentKind {
    ratio,         // mean/stddev of Delta(f) / (2*sqrt(l*ln l))
    tail,          // P[Delta(f) > (2+eps)*sqrt(l*ln l)]  vs  2*l^-eps
    single_u_tail, // P[|ac_u| >= 2*sqrt(l*ln l)] vs 1/(2*l*sqrt(ln l)), and E[ac_u^2]/(2l)
    pair_tail,     // P[|ac_u| >= t and |ac_v| >= t] vs 4*l^-2  (u=1, v=2)
    concentration, // P[|Delta(f) - mean| >= theta] vs 2*exp(-theta^2 / (8l))
    exhaustive,    // exact law of Delta over all 2^(2^n) functions (n <= 4)
    sos_mean,      // mean/stddev of sigma(f); trials == 0 enumerates exactly
};

// Canonical name (underscores); used in CSV/JSON and accepted by the CLI in
// both underscore and hyphen spellings.
std::string kind_name(ExperimentKind kind);
ExperimentKind kind_from_name(const std::string& name);

// One result row.  Field use by kind:
//   ratio          mean_ratio, stddev_ratio
//   tail           epsilon, empirical_tail, bound_value, bound_satisfied (<=)
//   single_u_tail  empirical_tail, bound_value, bound_satisfied (>=, a lower
//                  bound), mean_ratio = mean(ac_u^2) / (2l)  [target 1]
//   pair_tail      empirical_tail, bound_value, bound_satisfied (<=)
//   concentration  theta, empirical_tail, bound_value, bound_satisfied (<=),
//                  mean_ratio = observed mean of the ratio
//   exhaustive     trials = 2^(2^n), exact_expectation = E[Delta],
//                  mean_ratio/stddev_ratio = exact law of the ratio
//   sos_mean       mean_ratio/stddev_ratio = RAW sigma statistics;
//                  exhaustive mode additionally sets exact_expectation
// `note` carries caveats (small-n asymptotics, resolution limits); it is
// emitted in JSON only — the CSV keeps exactly the 12 contractual columns.
struct ExperimentRow {
    ExperimentKind kind = ExperimentKind::ratio;
    int n = 0;
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    std::optional<double> theta;
    std::optional<double> mean_ratio;
    std::optional<double> stddev_ratio;
    std::optional<double> empirical_tail;
    std::optional<double> bound_value;
    std::optional<bool> bound_satisfied;
    std::optional<double> exact_expectation;
    std::string note;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::ratio;
    std::vector<int> n_values;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::optional<double> epsilon; // tail only
    std::optional<double> theta;   // concentration only
    unsigned workers = 0;          // 0 = hardware concurrency
};

// Exact distribution data from full enumeration (n <= 4, else
// DimensionTooLarge).
struct ExhaustiveSummary {
    int n = 0;
    std::uint64_t functions = 0; // 2^(2^n)
    std::map<std::int64_t, std::uint64_t> delta_histogram;
    std::map<std::int64_t, std::uint64_t> nl_histogram;
    double mean_delta = 0.0;
    double stddev_delta = 0.0;
    double mean_sos = 0.0;
    double stddev_sos = 0.0;
};

ExperimentRow estimate_ratio(int n, std::uint64_t trials, std::uint64_t seed,
                             unsigned workers = 1);
ExperimentRow tail_check(int n, std::uint64_t trials, double epsilon,
                         std::uint64_t seed, unsigned workers = 1);
ExperimentRow single_u_tail(int n, std::uint64_t trials, std::uint64_t seed,
                            unsigned workers = 1);
ExperimentRow pair_tail(int n, std::uint64_t trials, std::uint64_t seed,
                        unsigned workers = 1);
ExperimentRow concentration_check(int n, std::uint64_t trials, double theta,
                                  std::uint64_t seed, unsigned workers = 1);
ExhaustiveSummary exhaustive_oracle(int n);
ExperimentRow sos_mean(int n, std::uint64_t trials, std::uint64_t seed,
                       unsigned workers = 1);

// Runs the configured kind for every n in n_values, in order.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

// CSV with the fixed header
//   kind,n,trials,seed,epsilon,theta,mean_ratio,stddev_ratio,empirical_tail,
//   bound_value,bound_satisfied,exact_expectation
// Reals use printf "%.17g"; empty cell = not applicable.
std::string to_csv(const std::vector<ExperimentRow>& rows);

// The same rows as a JSON array (null = not applicable) plus the `note` field
// where one is set.
std::string to_json(const std::vector<ExperimentRow>& rows);

} // namespace bflab
