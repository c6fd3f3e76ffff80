#include "bflab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bflab/experiments.hpp"
#include "bflab/generators.hpp"
#include "bflab/randomness_test.hpp"
#include "bflab/spectra.hpp"

namespace bflab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::map<std::string, Format> kFormats = {
    {"ascii01", Format::ascii01},
    {"raw", Format::raw},
    {"hex", Format::hex},
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot open input file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InvalidArgument("cannot open output file '" + path + "'");
    }
    out << content;
    if (!out) {
        throw InvalidArgument("failed writing output file '" + path + "'");
    }
}

void emit(const std::string& text, const std::optional<std::string>& out_path,
          std::ostream& out) {
    if (out_path) {
        write_file(*out_path, text);
    } else {
        out << text;
    }
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::string u128_to_string(uint128 v) {
    if (v == 0) return "0";
    std::string digits;
    while (v != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {digits.rbegin(), digits.rend()};
}

// sum-of-squares can exceed uint64; emit a JSON number when it fits and a
// decimal string otherwise so no value is silently truncated.
void put_u128(ordered_json& o, const char* key, uint128 v) {
    if (v <= static_cast<uint128>(~std::uint64_t{0})) {
        o[key] = static_cast<std::uint64_t>(v);
    } else {
        o[key] = u128_to_string(v);
    }
}

ordered_json summary_json(const BooleanFunction& f, const IndicatorSummary& s) {
    ordered_json o;
    o["n"] = s.n;
    o["nonlinearity"] = s.nonlinearity;
    o["absolute_indicator"] = s.absolute_indicator;
    o["argmax_u"] = s.argmax_u;
    put_u128(o, "sum_of_squares", s.sum_of_squares);
    o["ai_ratio"] = s.ai_ratio;
    o["table_hash"] = hash_hex(table_hash(f));
    return o;
}

struct CommonIo {
    std::string in_path;
    std::string format = "ascii01";
    std::optional<std::string> out_path;
};

BooleanFunction load_function(const CommonIo& io, int n) {
    return parse(read_file(io.in_path), n, kFormats.at(io.format));
}

int cmd_analyze(const CommonIo& io, int n, std::ostream& out) {
    const BooleanFunction f = load_function(io, n);
    const ordered_json o = summary_json(f, analyze(f));
    emit(o.dump(2) + "\n", io.out_path, out);
    return 0;
}

int cmd_test(const CommonIo& io, int n, double alpha, std::ostream& out) {
    const BooleanFunction f = load_function(io, n);
    TestConfig config;
    config.alpha = alpha;
    const TestReport r = run_test(f, config);
    ordered_json o = summary_json(f, r.summary);
    o["alpha"] = r.alpha;
    o["thresholds"] = {
        {"nl_low", r.thresholds.nl_low},
        {"nl_high", r.thresholds.nl_high},
        {"nl_high_clamped", r.thresholds.nl_high_clamped},
        {"ai_expected", r.thresholds.ai_expected},
        {"ai_upper", r.thresholds.ai_upper},
        {"ai_epsilon", r.thresholds.ai_epsilon},
    };
    o["verdicts"] = {
        {"nl", to_string(r.nl_verdict)},
        {"ai", to_string(r.ai_verdict)},
    };
    emit(o.dump(2) + "\n", io.out_path, out);
    const bool failed =
        r.nl_verdict == Verdict::fail || r.ai_verdict == Verdict::fail;
    return failed ? 1 : 0;
}

struct GenArgs {
    std::string kind;
    int n = 0;
    std::uint64_t seed = 0;
    std::optional<std::string> inner_in;
    std::optional<std::uint64_t> inner_seed;
    std::optional<std::uint64_t> r;
    std::string format = "ascii01";
    std::string out_path;
};

BooleanFunction gen_inner(const GenArgs& a) {
    if (a.inner_in && a.inner_seed) {
        throw InvalidArgument("--inner-in and --inner-seed are exclusive");
    }
    if (a.inner_in) {
        return parse(read_file(*a.inner_in), a.n - 1, kFormats.at(a.format));
    }
    if (a.inner_seed) {
        return random_function(a.n - 1, *a.inner_seed);
    }
    throw InvalidArgument("kind '" + a.kind +
                          "' needs --inner-in or --inner-seed");
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
    std::optional<BooleanFunction> f;
    if (a.kind == "random") {
        f = random_function(a.n, a.seed);
    } else if (a.kind == "two-period") {
        f = two_period_extend(gen_inner(a));
    } else if (a.kind == "disturbed") {
        if (!a.r) {
            throw InvalidArgument("kind 'disturbed' needs --r");
        }
        f = disturb(two_period_extend(gen_inner(a)), *a.r, a.seed);
    } else if (a.kind == "constant") {
        // Selector encoding: bit 0 of --seed is the constant value.
        f = constant_function(a.n, (a.seed & 1) != 0);
    } else if (a.kind == "affine") {
        // Selector encoding: low n bits of --seed are the linear mask, bit n
        // is the constant term.
        const std::uint64_t mask = a.seed & ((std::uint64_t{1} << a.n) - 1);
        const bool constant = ((a.seed >> a.n) & 1) != 0;
        f = affine_function(a.n, mask, constant);
    } else {
        throw InvalidArgument("unknown gen kind '" + a.kind + "'");
    }
    write_file(a.out_path, serialize(*f, kFormats.at(a.format)));

    ordered_json o;
    o["kind"] = a.kind;
    o["n"] = a.n;
    o["seed"] = a.seed;
    if (a.inner_seed) o["inner_seed"] = *a.inner_seed;
    if (a.inner_in) o["inner_in"] = *a.inner_in;
    if (a.r) o["r"] = *a.r;
    o["bits"] = f->size();
    o["format"] = a.format;
    o["out"] = a.out_path;
    o["table_hash"] = hash_hex(table_hash(*f));
    out << o.dump(2) + "\n";
    return 0;
}

int cmd_oracle(int n, const std::optional<std::string>& out_path,
               std::ostream& out) {
    const ExhaustiveSummary s = exhaustive_oracle(n);
    ordered_json o;
    o["n"] = s.n;
    o["functions"] = s.functions;
    o["mean_delta"] = s.mean_delta;
    o["stddev_delta"] = s.stddev_delta;
    o["mean_sos"] = s.mean_sos;
    o["stddev_sos"] = s.stddev_sos;
    ordered_json dh = ordered_json::object();
    for (const auto& [value, count] : s.delta_histogram) {
        dh[std::to_string(value)] = count;
    }
    o["delta_histogram"] = std::move(dh);
    ordered_json nh = ordered_json::object();
    for (const auto& [value, count] : s.nl_histogram) {
        nh[std::to_string(value)] = count;
    }
    o["nl_histogram"] = std::move(nh);
    emit(o.dump(2) + "\n", out_path, out);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Cryptographic indicators of Boolean functions"};
    app.require_subcommand(1);

    // analyze
    auto* analyze_cmd =
        app.add_subcommand("analyze", "Compute all indicators of one function");
    CommonIo an_io;
    int an_n = 0;
    analyze_cmd->add_option("--in", an_io.in_path, "truth-table file")
        ->required();
    analyze_cmd->add_option("--n", an_n, "number of variables")->required();
    analyze_cmd->add_option("--format", an_io.format, "table format")
        ->check(CLI::IsMember({"ascii01", "raw", "hex"}));
    std::string an_out;
    analyze_cmd->add_option("--out", an_out, "write the JSON report here");

    // test
    auto* test_cmd =
        app.add_subcommand("test", "Randomness test for one function");
    CommonIo te_io;
    int te_n = 0;
    double te_alpha = 0.01;
    test_cmd->add_option("--in", te_io.in_path, "truth-table file")->required();
    test_cmd->add_option("--n", te_n, "number of variables")->required();
    test_cmd->add_option("--format", te_io.format, "table format")
        ->check(CLI::IsMember({"ascii01", "raw", "hex"}));
    test_cmd->add_option("--alpha", te_alpha, "significance level");
    std::string te_out;
    test_cmd->add_option("--out", te_out, "write the JSON report here");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "Generate a truth table");
    GenArgs ga;
    gen_cmd
        ->add_option("--kind", ga.kind,
                     "random|two-period|disturbed|constant|affine")
        ->required()
        ->check(CLI::IsMember(
            {"random", "two-period", "disturbed", "constant", "affine"}));
    gen_cmd->add_option("--n", ga.n, "number of variables")->required();
    gen_cmd->add_option("--seed", ga.seed,
                        "seed (also the selector for constant/affine)");
    std::string ga_inner_in;
    auto* inner_in_opt = gen_cmd->add_option(
        "--inner-in", ga_inner_in, "inner-function truth-table file");
    std::uint64_t ga_inner_seed = 0;
    auto* inner_seed_opt = gen_cmd->add_option(
        "--inner-seed", ga_inner_seed, "seed for a random inner function");
    std::uint64_t ga_r = 0;
    auto* r_opt = gen_cmd->add_option("--r", ga_r, "number of bit flips");
    gen_cmd->add_option("--format", ga.format, "table format")
        ->check(CLI::IsMember({"ascii01", "raw", "hex"}));
    gen_cmd->add_option("--out", ga.out_path, "write the table here")
        ->required();

    // experiment
    auto* exp_cmd =
        app.add_subcommand("experiment", "Monte Carlo / enumeration sweeps");
    std::string ex_kind;
    exp_cmd
        ->add_option("--experiment", ex_kind,
                     "ratio|tail|single-u-tail|pair-tail|concentration|"
                     "exhaustive|sos-mean")
        ->required();
    std::vector<int> ex_ns;
    exp_cmd->add_option("--n-list", ex_ns, "dimensions, comma separated")
        ->required()
        ->delimiter(',');
    std::uint64_t ex_trials = 0;
    exp_cmd->add_option("--trials", ex_trials, "Monte Carlo trials");
    std::uint64_t ex_seed = 0;
    exp_cmd->add_option("--seed", ex_seed, "base seed");
    double ex_epsilon = 0.0;
    auto* eps_opt = exp_cmd->add_option("--epsilon", ex_epsilon,
                                        "tail exponent (tail kind)");
    double ex_theta = 0.0;
    auto* theta_opt = exp_cmd->add_option(
        "--theta", ex_theta, "deviation threshold (concentration kind)");
    std::string ex_format = "csv";
    exp_cmd->add_option("--format", ex_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    unsigned ex_workers = 0;
    exp_cmd->add_option("--workers", ex_workers,
                        "worker threads (0 = hardware)");
    std::string ex_out;
    exp_cmd->add_option("--out", ex_out, "write the table here");

    // oracle
    auto* or_cmd =
        app.add_subcommand("oracle", "Exact exhaustive law for small n");
    int or_n = 0;
    or_cmd->add_option("--n", or_n, "number of variables (<= 4)")->required();
    std::string or_out;
    or_cmd->add_option("--out", or_out, "write the JSON report here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*analyze_cmd) {
            if (!an_out.empty()) an_io.out_path = an_out;
            return cmd_analyze(an_io, an_n, out);
        }
        if (*test_cmd) {
            if (!te_out.empty()) te_io.out_path = te_out;
            return cmd_test(te_io, te_n, te_alpha, out);
        }
        if (*gen_cmd) {
            if (inner_in_opt->count() > 0) ga.inner_in = ga_inner_in;
            if (inner_seed_opt->count() > 0) ga.inner_seed = ga_inner_seed;
            if (r_opt->count() > 0) ga.r = ga_r;
            return cmd_gen(ga, out);
        }
        if (*exp_cmd) {
            ExperimentConfig config;
            config.kind = kind_from_name(ex_kind);
            config.n_values = ex_ns;
            config.trials = ex_trials;
            config.seed = ex_seed;
            if (eps_opt->count() > 0) config.epsilon = ex_epsilon;
            if (theta_opt->count() > 0) config.theta = ex_theta;
            config.workers = ex_workers;
            const auto rows = run_experiment(config);
            const std::string text =
                ex_format == "json" ? to_json(rows) : to_csv(rows);
            emit(text, ex_out.empty()
                           ? std::nullopt
                           : std::optional<std::string>(ex_out),
                 out);
            return 0;
        }
        if (*or_cmd) {
            return cmd_oracle(or_n,
                              or_out.empty()
                                  ? std::nullopt
                                  : std::optional<std::string>(or_out),
                              out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

} // namespace bflab::cli
