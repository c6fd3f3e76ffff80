#include "bflab/experiments.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "bflab/generators.hpp"
#include "bflab/spectra.hpp"

namespace bflab {

namespace {

using ordered_json = nlohmann::ordered_json;

// Denominator of the indicator ratio Delta(f) / sqrt(l * ln l); the ratio
// tends to 2 for random functions.
double ratio_scale(int n) {
    const double l = std::ldexp(1.0, n);
    return std::sqrt(l * std::log(l));
}

void require_dimension(int n) {
    if (n < 2 || n > 30) {
        throw InvalidDimension("experiments require 2 <= n <= 30, got " +
                               std::to_string(n));
    }
}

void require_trials(std::uint64_t trials) {
    if (trials < 100) {
        throw InvalidArgument("Monte Carlo experiments need trials >= 100, got " +
                              std::to_string(trials));
    }
}

unsigned resolve_workers(unsigned workers, std::uint64_t trials) {
    std::uint64_t w =
        workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    if (w > trials) w = trials;
    return static_cast<unsigned>(std::max<std::uint64_t>(1, w));
}

// Splits [0, trials) into contiguous shards, one accumulator per worker.
// Every trial derives its own PRNG stream from its global index, and the
// accumulators are exact integer sums, so the merged result is identical for
// any worker count.
template <typename Acc, typename PerTrial>
std::vector<Acc> run_sharded(std::uint64_t trials, unsigned workers,
                             const PerTrial& per_trial) {
    const unsigned w = resolve_workers(workers, trials);
    std::vector<Acc> accs(w);
    if (w == 1) {
        for (std::uint64_t t = 0; t < trials; ++t) per_trial(t, accs[0]);
        return accs;
    }
    std::vector<std::thread> threads;
    threads.reserve(w);
    const std::uint64_t base = trials / w;
    const std::uint64_t extra = trials % w;
    std::uint64_t start = 0;
    for (unsigned i = 0; i < w; ++i) {
        const std::uint64_t count = base + (i < extra ? 1 : 0);
        threads.emplace_back([&, i, start, count] {
            for (std::uint64_t t = start; t < start + count; ++t) {
                per_trial(t, accs[i]);
            }
        });
        start += count;
    }
    for (auto& th : threads) th.join();
    return accs;
}

// Fills a packed truth table from one trial's PRNG stream.
void fill_random_words(std::vector<std::uint64_t>& words, int n,
                       std::uint64_t trial_seed) {
    SplitMix64 rng(trial_seed);
    for (auto& w : words) w = rng.next();
    const std::uint64_t l = std::uint64_t{1} << n;
    if (l < 64) words[0] &= (std::uint64_t{1} << l) - 1;
}

std::string join_notes(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "; " + b;
}

} // namespace

std::string kind_name(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::ratio: return "ratio";
    case ExperimentKind::tail: return "tail";
    case ExperimentKind::single_u_tail: return "single_u_tail";
    case ExperimentKind::pair_tail: return "pair_tail";
    case ExperimentKind::concentration: return "concentration";
    case ExperimentKind::exhaustive: return "exhaustive";
    case ExperimentKind::sos_mean: return "sos_mean";
    }
    throw InvalidArgument("unknown experiment kind");
}

ExperimentKind kind_from_name(const std::string& name) {
    std::string canon = name;
    for (auto& c : canon) {
        if (c == '-') c = '_';
    }
    if (canon == "ratio") return ExperimentKind::ratio;
    if (canon == "tail") return ExperimentKind::tail;
    if (canon == "single_u_tail") return ExperimentKind::single_u_tail;
    if (canon == "pair_tail") return ExperimentKind::pair_tail;
    if (canon == "concentration") return ExperimentKind::concentration;
    if (canon == "exhaustive") return ExperimentKind::exhaustive;
    if (canon == "sos_mean") return ExperimentKind::sos_mean;
    throw InvalidArgument("unknown experiment kind '" + name + "'");
}

ExperimentRow estimate_ratio(int n, std::uint64_t trials, std::uint64_t seed,
                             unsigned workers) {
    require_dimension(n);
    require_trials(trials);
    struct Acc {
        std::uint64_t sum = 0;
        uint128 sum_sq = 0;
    };
    const auto accs = run_sharded<Acc>(
        trials, workers, [&](std::uint64_t t, Acc& acc) {
            const BooleanFunction f = random_function(n, stream_seed(seed, t));
            const auto delta =
                static_cast<std::uint64_t>(absolute_indicator(f).value);
            acc.sum += delta;
            acc.sum_sq += static_cast<uint128>(delta) * delta;
        });
    std::uint64_t sum = 0;
    uint128 sum_sq = 0;
    for (const auto& a : accs) {
        sum += a.sum;
        sum_sq += a.sum_sq;
    }
    const double scale = ratio_scale(n);
    const double tn = static_cast<double>(trials);
    const double mean = static_cast<double>(sum) / tn;
    const double var =
        (static_cast<double>(sum_sq) - mean * mean * tn) / (tn - 1.0);
    ExperimentRow row;
    row.kind = ExperimentKind::ratio;
    row.n = n;
    row.trials = trials;
    row.seed = seed;
    row.mean_ratio = mean / scale;
    row.stddev_ratio = std::sqrt(std::max(0.0, var)) / scale;
    return row;
}

ExperimentRow tail_check(int n, std::uint64_t trials, double epsilon,
                         std::uint64_t seed, unsigned workers) {
    require_dimension(n);
    require_trials(trials);
    if (!(epsilon > 0.0)) {
        throw InvalidArgument("tail requires epsilon > 0");
    }
    const double l = std::ldexp(1.0, n);
    const double threshold = (2.0 + epsilon) * std::sqrt(l * std::log(l));
    struct Acc {
        std::uint64_t exceed = 0;
    };
    const auto accs = run_sharded<Acc>(
        trials, workers, [&](std::uint64_t t, Acc& acc) {
            const BooleanFunction f = random_function(n, stream_seed(seed, t));
            if (static_cast<double>(absolute_indicator(f).value) > threshold) {
                ++acc.exceed;
            }
        });
    std::uint64_t exceed = 0;
    for (const auto& a : accs) exceed += a.exceed;

    const double empirical = static_cast<double>(exceed) / static_cast<double>(trials);
    const double bound = 2.0 * std::pow(l, -epsilon);
    ExperimentRow row;
    row.kind = ExperimentKind::tail;
    row.n = n;
    row.trials = trials;
    row.seed = seed;
    row.epsilon = epsilon;
    row.empirical_tail = empirical;
    row.bound_value = bound;
    row.bound_satisfied = empirical <= bound;
    const double se =
        std::sqrt(std::max(0.0, empirical * (1.0 - empirical)) /
                  static_cast<double>(trials));
    if (std::abs(empirical - bound) <= 3.0 * se) {
        row.note = "bound within 3 standard errors of the estimate";
    }
    return row;
}

ExperimentRow single_u_tail(int n, std::uint64_t trials, std::uint64_t seed,
                            unsigned workers) {
    require_dimension(n);
    require_trials(trials);
    const double l = std::ldexp(1.0, n);
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    const std::uint64_t nwords = (half + 63) / 64;
    const std::uint64_t last_mask =
        (half % 64 == 0) ? ~std::uint64_t{0}
                         : (std::uint64_t{1} << (half % 64)) - 1;
    const double threshold = 2.0 * std::sqrt(l * std::log(l)); // on |ac_u|
    struct Acc {
        std::uint64_t exceed = 0;
        uint128 sum_sq = 0;
    };
    // ac_u over the l/2 complementary pairs: each pair contributes +-2, so
    // ac_u = 2 * (half - 2 * disagreements) with Binomial(half, 1/2)
    // disagreements.  One random bit per pair; no table is materialized.
    const auto accs = run_sharded<Acc>(
        trials, workers, [&](std::uint64_t t, Acc& acc) {
            SplitMix64 rng(stream_seed(seed, t));
            std::uint64_t ones = 0;
            for (std::uint64_t w = 0; w + 1 < nwords; ++w) {
                ones += static_cast<std::uint64_t>(std::popcount(rng.next()));
            }
            ones += static_cast<std::uint64_t>(
                std::popcount(rng.next() & last_mask));
            const std::int64_t ac =
                2 * (static_cast<std::int64_t>(half) -
                     2 * static_cast<std::int64_t>(ones));
            if (std::abs(static_cast<double>(ac)) >= threshold) ++acc.exceed;
            acc.sum_sq += static_cast<uint128>(ac * ac);
        });
    std::uint64_t exceed = 0;
    uint128 sum_sq = 0;
    for (const auto& a : accs) {
        exceed += a.exceed;
        sum_sq += a.sum_sq;
    }
    const double empirical = static_cast<double>(exceed) / static_cast<double>(trials);
    const double bound = 1.0 / (2.0 * l * std::sqrt(std::log(l)));
    ExperimentRow row;
    row.kind = ExperimentKind::single_u_tail;
    row.n = n;
    row.trials = trials;
    row.seed = seed;
    row.empirical_tail = empirical;
    row.bound_value = bound;
    row.bound_satisfied = empirical >= bound; // a lower bound on the tail
    row.mean_ratio =
        static_cast<double>(sum_sq) / static_cast<double>(trials) / (2.0 * l);
    if (n <= 10) {
        row.note = "small-n: lower bound is asymptotic; exact event "
                   "probability can fall below it";
    }
    return row;
}

ExperimentRow pair_tail(int n, std::uint64_t trials, std::uint64_t seed,
                        unsigned workers) {
    require_dimension(n);
    require_trials(trials);
    const double l = std::ldexp(1.0, n);
    const double threshold = 2.0 * std::sqrt(l * std::log(l));
    const std::uint64_t lw = std::uint64_t{1} << n;
    const std::uint64_t u = 1;
    const std::uint64_t v = 2;
    struct Acc {
        std::uint64_t joint = 0;
        std::vector<std::uint64_t> words; // per-worker scratch table
    };
    const auto accs = run_sharded<Acc>(
        trials, workers, [&](std::uint64_t t, Acc& acc) {
            if (acc.words.empty()) acc.words.resize((lw + 63) / 64);
            fill_random_words(acc.words, n, stream_seed(seed, t));
            const double a1 = std::abs(static_cast<double>(
                detail::directional_autocorrelation(acc.words, n, u)));
            if (a1 < threshold) return;
            const double a2 = std::abs(static_cast<double>(
                detail::directional_autocorrelation(acc.words, n, v)));
            if (a2 >= threshold) ++acc.joint;
        });
    std::uint64_t joint = 0;
    for (const auto& a : accs) joint += a.joint;

    const double empirical = static_cast<double>(joint) / static_cast<double>(trials);
    const double bound = 4.0 / (l * l);
    ExperimentRow row;
    row.kind = ExperimentKind::pair_tail;
    row.n = n;
    row.trials = trials;
    row.seed = seed;
    row.empirical_tail = empirical;
    row.bound_value = bound;
    row.bound_satisfied = empirical <= bound;
    row.note = "joint frequency at directions u=1, v=2; expected order is "
               "below Monte Carlo resolution at feasible trial counts";
    if (n < 7) {
        row.note = join_notes(row.note, "bound stated for n >= 7");
    }
    return row;
}

ExperimentRow concentration_check(int n, std::uint64_t trials, double theta,
                                  std::uint64_t seed, unsigned workers) {
    require_dimension(n);
    require_trials(trials);
    if (!(theta > 0.0)) {
        throw InvalidArgument("concentration requires theta > 0");
    }
    const double l = std::ldexp(1.0, n);
    // Pass 1: store every indicator by trial index (worker-order independent)
    // and accumulate the exact sum.
    std::vector<std::int64_t> deltas(trials);
    struct Acc {
        std::uint64_t sum = 0;
    };
    const auto accs = run_sharded<Acc>(
        trials, workers, [&](std::uint64_t t, Acc& acc) {
            const BooleanFunction f = random_function(n, stream_seed(seed, t));
            const std::int64_t d = absolute_indicator(f).value;
            deltas[t] = d;
            acc.sum += static_cast<std::uint64_t>(d);
        });
    std::uint64_t sum = 0;
    for (const auto& a : accs) sum += a.sum;
    const double mean = static_cast<double>(sum) / static_cast<double>(trials);

    // Pass 2: deviations around the empirical mean.
    std::uint64_t deviate = 0;
    for (const std::int64_t d : deltas) {
        if (std::abs(static_cast<double>(d) - mean) >= theta) ++deviate;
    }
    const double empirical = static_cast<double>(deviate) / static_cast<double>(trials);
    const double bound = 2.0 * std::exp(-theta * theta / (8.0 * l));
    ExperimentRow row;
    row.kind = ExperimentKind::concentration;
    row.n = n;
    row.trials = trials;
    row.seed = seed;
    row.theta = theta;
    row.mean_ratio = mean / ratio_scale(n);
    row.empirical_tail = empirical;
    row.bound_value = bound;
    row.bound_satisfied = empirical <= bound;
    row.note = "deviations measured around the empirical mean";
    return row;
}

ExhaustiveSummary exhaustive_oracle(int n) {
    if (n < 2) {
        throw InvalidDimension("exhaustive_oracle requires n >= 2, got " +
                               std::to_string(n));
    }
    if (n > 4) {
        throw DimensionTooLarge(
            "exhaustive_oracle enumerates 2^(2^n) functions; refuse n = " +
            std::to_string(n) + " > 4");
    }
    const std::uint64_t l = std::uint64_t{1} << n;
    const std::uint64_t total = std::uint64_t{1} << l;
    ExhaustiveSummary s;
    s.n = n;
    s.functions = total;
    std::uint64_t sum_delta = 0;
    uint128 sum_delta_sq = 0;
    uint128 sum_sos = 0;
    uint128 sum_sos_sq = 0;
    for (std::uint64_t table = 0; table < total; ++table) {
        const BooleanFunction f(n, {table});
        const IndicatorSummary is = analyze(f);
        ++s.delta_histogram[is.absolute_indicator];
        ++s.nl_histogram[is.nonlinearity];
        sum_delta += static_cast<std::uint64_t>(is.absolute_indicator);
        sum_delta_sq += static_cast<uint128>(is.absolute_indicator) *
                        static_cast<uint128>(is.absolute_indicator);
        sum_sos += is.sum_of_squares;
        sum_sos_sq += is.sum_of_squares * is.sum_of_squares;
    }
    const double tn = static_cast<double>(total);
    s.mean_delta = static_cast<double>(sum_delta) / tn;
    s.mean_sos = static_cast<double>(sum_sos) / tn;
    // Exact-law (population) spreads.
    s.stddev_delta = std::sqrt(std::max(
        0.0, static_cast<double>(sum_delta_sq) / tn - s.mean_delta * s.mean_delta));
    s.stddev_sos = std::sqrt(std::max(
        0.0, static_cast<double>(sum_sos_sq) / tn - s.mean_sos * s.mean_sos));
    return s;
}

namespace {

ExperimentRow exhaustive_row(int n) {
    const ExhaustiveSummary s = exhaustive_oracle(n);
    const double scale = ratio_scale(n);
    ExperimentRow row;
    row.kind = ExperimentKind::exhaustive;
    row.n = n;
    row.trials = s.functions;
    row.mean_ratio = s.mean_delta / scale;
    row.stddev_ratio = s.stddev_delta / scale;
    row.exact_expectation = s.mean_delta;
    return row;
}

} // namespace

ExperimentRow sos_mean(int n, std::uint64_t trials, std::uint64_t seed,
                       unsigned workers) {
    require_dimension(n);
    ExperimentRow row;
    row.kind = ExperimentKind::sos_mean;
    row.n = n;
    row.note = "mean_ratio/stddev_ratio hold raw sum-of-squares statistics";
    if (trials == 0) {
        // Exact enumeration instead of sampling.
        const ExhaustiveSummary s = exhaustive_oracle(n);
        row.trials = s.functions;
        row.mean_ratio = s.mean_sos;
        row.stddev_ratio = s.stddev_sos;
        row.exact_expectation = s.mean_sos;
        row.note = join_notes(row.note, "exhaustive enumeration");
        return row;
    }
    require_trials(trials);
    struct Acc {
        uint128 sum = 0;
        uint128 sum_sq = 0;
    };
    const auto accs = run_sharded<Acc>(
        trials, workers, [&](std::uint64_t t, Acc& acc) {
            const BooleanFunction f = random_function(n, stream_seed(seed, t));
            const uint128 s = sum_of_squares(f);
            acc.sum += s;
            acc.sum_sq += s * s;
        });
    uint128 sum = 0;
    uint128 sum_sq = 0;
    for (const auto& a : accs) {
        sum += a.sum;
        sum_sq += a.sum_sq;
    }
    const double tn = static_cast<double>(trials);
    const double mean = static_cast<double>(sum) / tn;
    const double var =
        (static_cast<double>(sum_sq) - mean * mean * tn) / (tn - 1.0);
    row.trials = trials;
    row.seed = seed;
    row.mean_ratio = mean;
    row.stddev_ratio = std::sqrt(std::max(0.0, var));
    return row;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
    if (config.n_values.empty()) {
        throw InvalidArgument("experiment needs at least one n");
    }
    std::vector<ExperimentRow> rows;
    rows.reserve(config.n_values.size());
    for (const int n : config.n_values) {
        switch (config.kind) {
        case ExperimentKind::ratio:
            rows.push_back(
                estimate_ratio(n, config.trials, config.seed, config.workers));
            break;
        case ExperimentKind::tail:
            if (!config.epsilon) {
                throw InvalidArgument("tail requires --epsilon");
            }
            rows.push_back(tail_check(n, config.trials, *config.epsilon,
                                      config.seed, config.workers));
            break;
        case ExperimentKind::single_u_tail:
            rows.push_back(
                single_u_tail(n, config.trials, config.seed, config.workers));
            break;
        case ExperimentKind::pair_tail:
            rows.push_back(
                pair_tail(n, config.trials, config.seed, config.workers));
            break;
        case ExperimentKind::concentration:
            if (!config.theta) {
                throw InvalidArgument("concentration requires --theta");
            }
            rows.push_back(concentration_check(n, config.trials, *config.theta,
                                               config.seed, config.workers));
            break;
        case ExperimentKind::exhaustive:
            rows.push_back(exhaustive_row(n));
            break;
        case ExperimentKind::sos_mean:
            rows.push_back(
                sos_mean(n, config.trials, config.seed, config.workers));
            break;
        }
    }
    return rows;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
std::string cell(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, double>) {
        return format_double(*v);
    } else if constexpr (std::is_same_v<T, bool>) {
        return *v ? "true" : "false";
    } else {
        return std::to_string(*v);
    }
}

} // namespace

std::string to_csv(const std::vector<ExperimentRow>& rows) {
    std::string out =
        "kind,n,trials,seed,epsilon,theta,mean_ratio,stddev_ratio,"
        "empirical_tail,bound_value,bound_satisfied,exact_expectation\n";
    for (const auto& r : rows) {
        out += kind_name(r.kind);
        out += ',' + std::to_string(r.n);
        out += ',' + std::to_string(r.trials);
        out += ',' + cell(r.seed);
        out += ',' + cell(r.epsilon);
        out += ',' + cell(r.theta);
        out += ',' + cell(r.mean_ratio);
        out += ',' + cell(r.stddev_ratio);
        out += ',' + cell(r.empirical_tail);
        out += ',' + cell(r.bound_value);
        out += ',' + cell(r.bound_satisfied);
        out += ',' + cell(r.exact_expectation);
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<ExperimentRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json o;
        o["kind"] = kind_name(r.kind);
        o["n"] = r.n;
        o["trials"] = r.trials;
        const auto put = [&o](const char* key, const auto& opt) {
            if (opt) {
                o[key] = *opt;
            } else {
                o[key] = nullptr;
            }
        };
        put("seed", r.seed);
        put("epsilon", r.epsilon);
        put("theta", r.theta);
        put("mean_ratio", r.mean_ratio);
        put("stddev_ratio", r.stddev_ratio);
        put("empirical_tail", r.empirical_tail);
        put("bound_value", r.bound_value);
        put("bound_satisfied", r.bound_satisfied);
        put("exact_expectation", r.exact_expectation);
        if (!r.note.empty()) {
            o["note"] = r.note;
        }
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

} // namespace bflab
