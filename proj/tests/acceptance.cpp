// Acceptance suite: runs every release criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero on any FAIL.

#include "overlap/discrete.hpp"
#include "overlap/objective.hpp"
#include "overlap/optimizer.hpp"
#include "overlap/rational.hpp"
#include "overlap/stepfn.hpp"

#include "subprocess.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace overlap;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    const char* id;
    const char* title;
    std::function<bool(std::string&)> body;
    double time_limit_s = 0.0;  // 0 = no limit
};

void run(const Criterion& c) {
    std::string detail;
    bool ok = false;
    const auto t0 = Clock::now();
    try {
        ok = c.body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - t0).count();
    if (c.time_limit_s > 0 && seconds > c.time_limit_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
    }
    if (!ok) ++failures;
    std::printf("[%s] %s %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title, seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

double uniform(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

StepFunction random_boxed(std::mt19937_64& gen, int n) {
    std::vector<Rational> vals;
    vals.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals.emplace_back(static_cast<int>(gen() % 1001), 1000);
    return StepFunction::raw(std::move(vals));
}

// --- criteria -------------------------------------------------------------

bool c1_p15(std::string& detail) {
    const Rational v = max_overlap_exact(builtin_stepfn("p15")).first;
    detail = "max = " + decimal_string(v, 20);
    return parse_decimal("0.38153154") < v && v <= parse_decimal("0.38153155");
}

bool c2_p19(std::string& detail) {
    const Rational v = max_overlap_exact(builtin_stepfn("p19")).first;
    detail = "max = " + decimal_string(v, 24);
    return parse_decimal("0.381112263316104815") <= v &&
           v <= parse_decimal("0.381112263316104817");
}

bool c3_p51(std::string& detail) {
    const Rational v = max_overlap_exact(builtin_stepfn("p51")).first;
    detail = "max = " + decimal_string(v, 24);
    return boost::multiprecision::abs(v - parse_decimal("0.3809268534330870")) <=
           Rational(5) / pow10(17);
}

bool c4_integral(std::string&) {
    for (const std::string& name : builtin_names()) {
        StepFunction f = builtin_stepfn(name);
        if (f.integral() != 1 || !f.in_unit_box()) return false;
    }
    return true;
}

bool check_partition_bridge(const Partition& p) {
    const DifferenceCounts dc = difference_counts(p);
    const ShiftReport r = shift_values_exact(partition_to_stepfn(p));
    for (int k = dc.min_k(); k <= dc.max_k(); ++k) {
        if (Rational(dc.count(k)) != Rational(p.n) * r.at(-k)) return false;
    }
    return true;
}

bool c5_bridge(std::string& detail) {
    long checked = 0;
    for (int n = 1; n <= 5; ++n) {
        const std::uint64_t limit = 1ULL << (2 * n);
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            if (std::popcount(mask) != n) continue;
            if (!check_partition_bridge(Partition{n, mask})) return false;
            ++checked;
        }
    }
    std::mt19937_64 gen(1205);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 12;
        std::uint64_t mask = 0;
        int placed = 0;
        while (placed < n) {
            const int e = static_cast<int>(gen() % static_cast<std::uint64_t>(2 * n));
            if (!(mask & (1ULL << e))) {
                mask |= 1ULL << e;
                ++placed;
            }
        }
        if (!check_partition_bridge(Partition{n, mask})) return false;
        ++checked;
    }
    detail = std::to_string(checked) + " partitions";
    return true;
}

bool c6_grid(std::string& detail) {
    std::mt19937_64 gen(1206);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 39);  // up to 40
        StepFunction f = random_boxed(gen, n);
        ShiftReportF r = shift_values_float(f);
        const double grid_max = r.max_value;
        for (int s = 0; s <= 10000; ++s) {
            const double k = -2.0 + 4.0 * s / 10000.0;
            if (continuous_at(f, k).value > grid_max + 1e-12) {
                detail = "dense sample beat grid max at n=" + std::to_string(n);
                return false;
            }
        }
        const double h = 2.0 / n;
        for (int probe = 0; probe < 50; ++probe) {
            const int j = -(n - 1) + static_cast<int>(gen() % static_cast<std::uint64_t>(2 * n - 2));
            const double t = uniform(gen);
            const double expected = (1 - t) * r.at(j) + t * r.at(j + 1);
            if (std::abs(continuous_at(f, (j + t) * h).value - expected) > 1e-12) {
                detail = "interpolation off at n=" + std::to_string(n);
                return false;
            }
        }
    }
    detail = "100 functions x 10001 shifts";
    return true;
}

bool c7_gradient(std::string&) {
    std::mt19937_64 gen(1207);
    std::vector<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 29);
        StepFunction f = random_boxed(gen, n);
        const int j = -(n - 1) + static_cast<int>(gen() % static_cast<std::uint64_t>(2 * n - 1));
        const std::vector<double> analytic = subgradient(f, j);
        std::vector<double> v = f.float_values();
        const double eps = 1e-6;
        for (int m = 0; m < n; ++m) {
            const double saved = v[static_cast<std::size_t>(m)];
            v[static_cast<std::size_t>(m)] = saved + eps;
            shift_values_raw(v, g);
            const double up = g[static_cast<std::size_t>(j + n - 1)];
            v[static_cast<std::size_t>(m)] = saved - eps;
            shift_values_raw(v, g);
            const double down = g[static_cast<std::size_t>(j + n - 1)];
            v[static_cast<std::size_t>(m)] = saved;
            const double fd = (up - down) / (2 * eps);
            const double scale = std::max(1.0, std::abs(analytic[static_cast<std::size_t>(m)]));
            if (std::abs(analytic[static_cast<std::size_t>(m)] - fd) > 1e-6 * scale) return false;
        }
    }
    return true;
}

bool c8_projection(std::string&) {
    std::mt19937_64 gen(1208);
    // feasibility + idempotence + identity, 1000 trials
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 12);
        std::vector<double> v(static_cast<std::size_t>(n));
        for (double& x : v) x = 6.0 * uniform(gen) - 3.0;
        const std::vector<double> p = project_feasible(v);
        double sum = 0.0;
        for (double x : p) {
            if (x < 0.0 || x > 1.0) return false;
            sum += x;
        }
        if (std::abs(sum - n / 2.0) > 1e-12) return false;
        const std::vector<double> pp = project_feasible(p);
        for (int i = 0; i < n; ++i) {
            if (std::abs(pp[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)]) > 1e-12)
                return false;
        }
    }
    // optimality against random feasible samples, 1000 trials
    for (int n = 2; n <= 6; ++n) {
        std::vector<std::vector<double>> pool;
        pool.reserve(10000);
        for (int s = 0; s < 10000; ++s) {
            std::vector<double> q(static_cast<std::size_t>(n));
            for (double& x : q) x = uniform(gen);
            pool.push_back(project_feasible(q));
        }
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> v(static_cast<std::size_t>(n));
            for (double& x : v) x = 4.0 * uniform(gen) - 2.0;
            const std::vector<double> p = project_feasible(v);
            double dp = 0.0;
            for (int i = 0; i < n; ++i) {
                dp += (v[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)]) *
                      (v[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)]);
            }
            dp = std::sqrt(dp);
            for (const auto& q : pool) {
                double dq = 0.0;
                for (int i = 0; i < n; ++i) {
                    dq += (v[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i)]) *
                          (v[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i)]);
                }
                if (dp > std::sqrt(dq) + 1e-9) return false;
            }
        }
    }
    return true;
}

bool c9_brute_force(std::string& detail) {
    const int expected_m1 = 1, expected_m2 = 1;
    std::string table;
    for (int n = 1; n <= 10; ++n) {
        MinOverlapResult r = min_over_partitions(n, 10);
        if (r.value < 1 || r.value > n) return false;
        if (n == 1 && r.value != expected_m1) return false;
        if (n == 2 && r.value != expected_m2) return false;
        table += (n > 1 ? " " : "") + std::to_string(r.value);
    }
    for (int n = 1; n <= 6; ++n) {
        if (min_over_partitions(n, 6, true).value != min_over_partitions(n, 6, false).value)
            return false;
    }
    detail = "M(1..10) = " + table;
    return true;
}

bool c10_optimizer(std::string& detail) {
    OptimizerConfig cfg;
    cfg.steps = 15;
    cfg.symmetric = true;
    cfg.restarts = 50;
    cfg.seed = 1;
    cfg.threads = 0;
    RunResult r = multi_start(cfg);
    detail = "n=15 certified " + decimal_string(r.best_value_exact, 8);
    if (!(r.best_value_exact <= parse_decimal("0.39"))) return false;
    if (r.best_value_exact != max_overlap_exact(r.best).first) return false;
    if (!r.best.is_normalized() || !r.best.is_symmetric()) return false;

    OptimizerConfig two;
    two.steps = 2;
    two.symmetric = true;
    two.restarts = 1;
    two.seed = 0;
    RunResult r2 = multi_start(two);
    detail += ", n=2 certified " + decimal_string(r2.best_value_exact, 8);
    return boost::multiprecision::abs(r2.best_value_exact - Rational(1, 2)) <=
           Rational(1, 1000000000);
}

bool c11_cli(std::string& detail) {
    const std::string cli = OVERLAP_CLI_PATH;
    auto bounds = testutil::run_command(cli + " bounds --no-timing");
    if (bounds.status != 0) return false;
    if (bounds.output.find("lower (sqrt(4-sqrt(15))) = 0.356393") == std::string::npos) {
        detail = "lower-bound prefix missing";
        return false;
    }
    for (const char* args :
         {" bounds --no-timing", " verify all --no-timing", " discrete --n 3 --no-timing"}) {
        auto a = testutil::run_command(cli + args);
        auto b = testutil::run_command(cli + args);
        if (a.status != b.status || a.output != b.output) {
            detail = std::string("non-deterministic output for") + args;
            return false;
        }
    }
    detail = "byte-identical reruns";
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"01", "15-step certificate: 0.38153154 < max <= 0.38153155", c1_p15, 1.0},
        {"02", "19-step certificate within one unit in the 18th digit", c2_p19, 1.0},
        {"03", "51-step certificate equals 0.3809268534330870 to 5e-17", c3_p51, 5.0},
        {"04", "bundled functions: exact integral 1, values in [0,1]", c4_integral, 0.0},
        {"05", "discrete/continuous bridge M_k = n*g[-k], exact", c5_bridge, 30.0},
        {"06", "grid reduction + interpolation over 10001 dense shifts", c6_grid, 60.0},
        {"07", "subgradient vs central differences, rel err <= 1e-6", c7_gradient, 0.0},
        {"08", "projection: feasible, idempotent, identity, optimal", c8_projection, 0.0},
        {"09", "brute force M(n) for n <= 10, pruning consistent", c9_brute_force, 60.0},
        {"10", "optimizer: n=15 sym/50 restarts <= 0.39; n=2 sym = 0.5", c10_optimizer, 0.0},
        {"11", "CLI bounds prefix 0.356393; reruns byte-identical", c11_cli, 0.0},
    };
    for (const Criterion& c : criteria) run(c);
    if (failures == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
