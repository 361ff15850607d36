// Command-line driver: verify bundled certificate functions, evaluate and
// optimize step functions, brute-force the discrete minimum M(n).
//
// Exit codes (stable): 0 ok/verified, 1 verification failed, 2 bad input,
// 3 capacity exceeded.

#include "overlap/discrete.hpp"
#include "overlap/objective.hpp"
#include "overlap/optimizer.hpp"
#include "overlap/rational.hpp"
#include "overlap/stepfn.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace overlap;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCapacity = 3;

constexpr int kReportDigits = 40;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string shift_set(const std::vector<int>& shifts) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (i) out << ", ";
        out << shifts[i];
    }
    out << '}';
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

// Bracket each bundled function must satisfy, pinned as exact decimals.
struct Claim {
    const char* name;
    const char* description;
    bool (*check)(const Rational& v);
};

const Claim kClaims[] = {
    {"p15", "0.38153154 < max <= 0.38153155",
     [](const Rational& v) {
         return parse_decimal("0.38153154") < v && v <= parse_decimal("0.38153155");
     }},
    {"p19", "0.381112263316104815 <= max <= 0.381112263316104817",
     [](const Rational& v) {
         return parse_decimal("0.381112263316104815") <= v &&
                v <= parse_decimal("0.381112263316104817");
     }},
    {"p51", "|max - 0.3809268534330870| <= 5e-17",
     [](const Rational& v) {
         const Rational diff = v - parse_decimal("0.3809268534330870");
         return boost::multiprecision::abs(diff) <= Rational(5) / pow10(17);
     }},
};

int cmd_verify(const std::string& target) {
    bool matched = false;
    bool all_pass = true;
    for (const Claim& claim : kClaims) {
        if (target != "all" && target != claim.name) continue;
        matched = true;
        StepFunction f = builtin_stepfn(claim.name);
        auto [value, argmax] = max_overlap_exact(f);
        const bool pass = claim.check(value);
        all_pass = all_pass && pass;
        std::cout << claim.name << ": n=" << f.steps() << "\n"
                  << "  max overlap = " << decimal_string(value, kReportDigits) << "\n"
                  << "  exact       = " << fraction_string(value) << "\n"
                  << "  argmax j    = " << shift_set(argmax) << "\n"
                  << "  check       = " << claim.description << "\n"
                  << "  result      = " << (pass ? "PASS" : "FAIL") << "\n";
    }
    if (!matched) throw std::invalid_argument("unknown verify target '" + target + "'");
    return all_pass ? 0 : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

int cmd_eval(const std::string& path, bool exact, const std::string& csv_path) {
    StepFunction f = load_stepfn(path);
    std::cout << "file      = " << path << "\n";
    if (!f.label().empty()) std::cout << "label     = " << f.label() << "\n";
    std::cout << "n         = " << f.steps() << "\n"
              << "symmetric = " << (f.is_symmetric() ? "yes" : "no") << "\n"
              << "integral  = " << fraction_string(f.integral())
              << (f.is_normalized() ? "" : "  (not normalized)") << "\n";

    if (exact) {
        ShiftReport report = shift_values_exact(f);
        std::cout << "max overlap = " << decimal_string(report.max_value, kReportDigits)
                  << "\n"
                  << "exact       = " << fraction_string(report.max_value) << "\n"
                  << "argmax j    = " << shift_set(report.argmax) << "\n";
        if (!csv_path.empty()) {
            write_text_file(csv_path, to_csv(report));
            std::cout << "csv         = " << csv_path << "\n";
        }
    } else {
        ShiftReportF report = shift_values_float(f);
        std::cout << "max overlap = " << format_double(report.max_value) << "\n"
                  << "argmax j    = " << shift_set(report.argmax) << "\n";
        if (!csv_path.empty()) {
            write_text_file(csv_path, to_csv(report));
            std::cout << "csv         = " << csv_path << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

int cmd_optimize(const OptimizerConfig& cfg, const std::string& out_path) {
    RunResult result = multi_start(cfg);
    std::cout << "steps        = " << cfg.steps << "\n"
              << "symmetric    = " << (cfg.symmetric ? "yes" : "no") << "\n"
              << "restarts     = " << cfg.restarts << "\n"
              << "seed         = " << cfg.seed << "\n"
              << "best restart = " << result.best_restart << "\n"
              << "certified    = " << decimal_string(result.best_value_exact, kReportDigits)
              << "\n"
              << "exact        = " << fraction_string(result.best_value_exact) << "\n"
              << "float        = " << format_double(result.best_value_float) << "\n";
    if (!out_path.empty()) {
        std::ostringstream label;
        label << "optimized-n" << cfg.steps << "-seed" << cfg.seed;
        StepFunction named = StepFunction::normalized(result.best.values(), label.str());
        store_stepfn(named, out_path);
        write_text_file(out_path + ".report.txt", run_report(result, cfg));
        std::cout << "out          = " << out_path << "\n"
                  << "report       = " << out_path << ".report.txt\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// discrete
// ---------------------------------------------------------------------------

int cmd_discrete(int n_single, const std::string& range, int cap,
                 const std::string& csv_path) {
    int lo = n_single, hi = n_single;
    if (!range.empty()) {
        const std::size_t dots = range.find("..");
        if (dots == std::string::npos) {
            throw std::invalid_argument("--range expects A..B, got '" + range + "'");
        }
        try {
            lo = std::stoi(range.substr(0, dots));
            hi = std::stoi(range.substr(dots + 2));
        } catch (const std::exception&) {
            throw std::invalid_argument("--range expects integers A..B, got '" + range + "'");
        }
        if (lo < 1 || hi < lo) {
            throw std::invalid_argument("--range needs 1 <= A <= B");
        }
    }

    std::vector<MinOverlapResult> rows;
    for (int n = lo; n <= hi; ++n) {
        MinOverlapResult r = min_over_partitions(n, cap);
        rows.push_back(r);
        std::cout << "n=" << r.n << "  M(n)=" << r.value
                  << "  M(n)/n=" << decimal_string(Rational(r.value, r.n), 6)
                  << "  witness=0x" << std::hex << r.witness.a_mask << std::dec << " {";
        const std::vector<int> elems = r.witness.a_elements();
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) std::cout << ',';
            std::cout << elems[i];
        }
        std::cout << "}\n";
    }
    if (!csv_path.empty()) {
        write_text_file(csv_path, min_overlap_csv(rows));
        std::cout << "csv = " << csv_path << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

// sqrt(4 - sqrt(15)) via integer square roots at `digits` precision.
Rational moser_lower_bound(int digits) {
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
    const BigInt s15 = boost::multiprecision::sqrt(BigInt(15) * scale * scale);
    const BigInt radicand = BigInt(4) * scale * scale - s15 * scale;
    return Rational(boost::multiprecision::sqrt(radicand), scale);
}

int cmd_bounds() {
    const Rational lower = moser_lower_bound(30);
    const Rational upper = parse_decimal("0.3809268534330870");
    std::cout << "lower (sqrt(4-sqrt(15))) = " << decimal_string(lower, 15) << "\n"
              << "upper (51-step)          = 0.3809268534330870\n"
              << "gap                      = " << decimal_string(upper - lower, 15) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"Minimum-overlap step function toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    bool no_timing = false;
    app.add_flag("--no-timing", no_timing, "suppress the trailing timing line");

    // verify
    auto* verify = app.add_subcommand("verify", "check the bundled certificate functions");
    std::string target = "all";
    verify->add_option("target", target, "p15|p19|p51|all")->default_val("all");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a step function file");
    std::string eval_path, eval_csv;
    bool eval_exact = false;
    eval->add_option("file", eval_path, "step function JSON file")->required();
    eval->add_flag("--exact", eval_exact, "exact rational arithmetic");
    eval->add_option("--csv", eval_csv, "write the per-shift table to this CSV file");

    // optimize
    auto* optimize = app.add_subcommand("optimize", "search for low-overlap step functions");
    OptimizerConfig cfg;
    std::string opt_out;
    optimize->add_option("--steps", cfg.steps, "number of steps n")->required()
        ->check(CLI::PositiveNumber);
    optimize->add_flag("--symmetric", cfg.symmetric, "restrict to f(x) = f(2-x)");
    optimize->add_option("--restarts", cfg.restarts, "independent seeded restarts");
    optimize->add_option("--seed", cfg.seed, "PRNG seed");
    optimize->add_option("--iters", cfg.max_iters, "iterations per restart");
    optimize->add_option("--s0", cfg.initial_step, "initial step size");
    optimize->add_option("--tol", cfg.stop_tolerance, "min improvement per sweep");
    optimize->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    optimize->add_flag("--anneal", cfg.anneal.enabled, "annealing kicks when stalled");
    optimize->add_option("--anneal-t0", cfg.anneal.initial_temperature, "initial temperature");
    optimize->add_option("--anneal-decay", cfg.anneal.decay, "temperature decay per kick");
    optimize->add_option("--out", opt_out, "write the best function (JSON) here");

    // discrete
    auto* discrete = app.add_subcommand("discrete", "brute-force M(n) over all partitions");
    int disc_n = 0;
    std::string disc_range, disc_csv;
    int cap = kDefaultPartitionCap;
    if (const char* env = std::getenv("OVERLAP_CAP")) {
        if (const int parsed = std::atoi(env); parsed >= 1) cap = parsed;
    }
    auto* n_opt = discrete->add_option("--n", disc_n, "single instance size");
    discrete->add_option("--range", disc_range, "range of sizes A..B")->excludes(n_opt);
    discrete->add_option("--cap", cap, "enumeration cap (default 12; env OVERLAP_CAP)");
    discrete->add_option("--csv", disc_csv, "write results to this CSV file");

    // bounds
    app.add_subcommand("bounds", "print the known lower/upper bounds and their gap");

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    }

    const auto started = std::chrono::steady_clock::now();
    int status = 0;
    if (verify->parsed()) {
        status = cmd_verify(target);
    } else if (eval->parsed()) {
        status = cmd_eval(eval_path, eval_exact, eval_csv);
    } else if (optimize->parsed()) {
        cfg.validate();
        status = cmd_optimize(cfg, opt_out);
    } else if (discrete->parsed()) {
        if (disc_n == 0 && disc_range.empty()) {
            throw std::invalid_argument("discrete needs --n or --range");
        }
        status = cmd_discrete(disc_n, disc_range, cap, disc_csv);
    } else {
        status = cmd_bounds();
    }

    if (!no_timing) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started);
        std::cout << "# elapsed_ms=" << elapsed.count() << "\n";
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
