#include "overlap/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace overlap {

namespace {

constexpr double kProjectionTol = 1e-12;

// mt19937_64 seeded through SplitMix64 so that (seed, restart) pairs give
// decorrelated, platform-independent streams.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, int restart) {
    return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(restart) + 1));
}

class Prng {
public:
    explicit Prng(std::uint64_t seed) : gen_(seed) {}
    // 53-bit uniform in [0,1); avoids the implementation-defined
    // std::uniform_real_distribution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform_signed() { return 2.0 * uniform() - 1.0; }

private:
    std::mt19937_64 gen_;
};

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void symmetrize(std::vector<double>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double avg = 0.5 * (v[i] + v[n - 1 - i]);
        v[i] = avg;
        v[n - 1 - i] = avg;
    }
}

// Snap a double in [0,1] to the exact rational with 18 fractional digits.
Rational snap18(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.18f", clamp01(x));
    return parse_decimal(buf);
}

struct DescentOutcome {
    std::vector<double> best_vec;
    double best_value = 0.0;
    bool moved = false;  // best_vec differs from the start vector
};

DescentOutcome descend(std::vector<double> v, const OptimizerConfig& cfg, Prng& rng) {
    const int n = cfg.steps;
    std::vector<double> g;
    std::vector<double> grad(static_cast<std::size_t>(n));

    DescentOutcome out;
    out.best_value = max_shift_value_raw(v, g);
    out.best_vec = v;

    double current = out.best_value;
    double temperature = cfg.anneal.initial_temperature;
    double sweep_start_best = out.best_value;
    const int sweep_len = n;

    for (int t = 0; t < cfg.max_iters; ++t) {
        int j_star = 0;
        max_shift_value_raw(v, g, &j_star);
        subgradient_raw(v, j_star, grad);
        if (cfg.symmetric) {
            for (int m = 0; m < n; ++m) {
                const int mm = n - 1 - m;
                if (m < mm) {
                    const double avg = 0.5 * (grad[static_cast<std::size_t>(m)] +
                                              grad[static_cast<std::size_t>(mm)]);
                    grad[static_cast<std::size_t>(m)] = avg;
                    grad[static_cast<std::size_t>(mm)] = avg;
                }
            }
        }

        const double step = cfg.initial_step / std::sqrt(static_cast<double>(t) + 1.0);
        for (int m = 0; m < n; ++m) {
            v[static_cast<std::size_t>(m)] -= step * grad[static_cast<std::size_t>(m)];
        }
        v = project_feasible(std::move(v));
        if (cfg.symmetric) symmetrize(v);

        current = max_shift_value_raw(v, g);
        if (!std::isfinite(current)) {
            throw std::runtime_error("non-finite objective at iteration " +
                                     std::to_string(t));
        }
        if (current < out.best_value) {
            out.best_value = current;
            out.best_vec = v;
            out.moved = true;
        }

        if ((t + 1) % sweep_len == 0) {
            const bool stalled = sweep_start_best - out.best_value < cfg.stop_tolerance;
            sweep_start_best = out.best_value;
            if (!stalled) continue;
            if (cfg.anneal.enabled && temperature > cfg.anneal.min_temperature) {
                // SA kick: perturb, project, Metropolis-accept.
                std::vector<double> trial = v;
                for (double& x : trial) x += temperature * rng.uniform_signed();
                trial = project_feasible(std::move(trial));
                if (cfg.symmetric) symmetrize(trial);
                const double trial_value = max_shift_value_raw(trial, g);
                const double delta = trial_value - current;
                if (delta < 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
                    v = std::move(trial);
                    current = trial_value;
                    if (current < out.best_value) {
                        out.best_value = current;
                        out.best_vec = v;
                        out.moved = true;
                    }
                }
                temperature *= cfg.anneal.decay;
            } else {
                break;
            }
        }
    }
    return out;
}

// Distribute the exact deficit n/2 - sum over one value (or a mirror pair
// in symmetric mode), preferring the largest value strictly inside (0,1).
std::vector<Rational> rebalance(std::vector<Rational> vals, bool symmetric) {
    const int n = static_cast<int>(vals.size());
    Rational sum = 0;
    for (const Rational& r : vals) sum += r;
    const Rational delta = Rational(n, 2) - sum;
    if (delta == 0) return vals;

    const int scan = symmetric ? (n + 1) / 2 : n;
    std::vector<int> order(static_cast<std::size_t>(scan));
    for (int i = 0; i < scan; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const bool ia = vals[static_cast<std::size_t>(a)] > 0 &&
                        vals[static_cast<std::size_t>(a)] < 1;
        const bool ib = vals[static_cast<std::size_t>(b)] > 0 &&
                        vals[static_cast<std::size_t>(b)] < 1;
        if (ia != ib) return ia;
        return vals[static_cast<std::size_t>(a)] > vals[static_cast<std::size_t>(b)];
    });

    for (int idx : order) {
        const int mirror = n - 1 - idx;
        const Rational amount =
            (symmetric && mirror != idx) ? delta / 2 : delta;
        const Rational adjusted = vals[static_cast<std::size_t>(idx)] + amount;
        if (adjusted < 0 || adjusted > 1) continue;
        vals[static_cast<std::size_t>(idx)] = adjusted;
        if (symmetric && mirror != idx) vals[static_cast<std::size_t>(mirror)] = adjusted;
        return vals;
    }
    throw std::runtime_error("cannot re-balance candidate to integral 1 (residual " +
                             fraction_string(delta) + ")");
}

StepFunction certify_candidate(const std::vector<double>& vec, bool symmetric,
                               std::string label) {
    std::vector<Rational> vals;
    vals.reserve(vec.size());
    for (double x : vec) vals.push_back(snap18(x));
    vals = rebalance(std::move(vals), symmetric);
    return StepFunction::normalized(std::move(vals), std::move(label));
}

struct RestartResult {
    StepFunction best;
    Rational value;
};

RestartResult run_restart(const OptimizerConfig& cfg, int restart) {
    Prng rng(stream_seed(cfg.seed, restart));
    const int n = cfg.steps;
    std::vector<double> v0(static_cast<std::size_t>(n));
    if (cfg.symmetric) {
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) v0[static_cast<std::size_t>(i)] = rng.uniform();
        for (int i = m; i < n; ++i) {
            v0[static_cast<std::size_t>(i)] = v0[static_cast<std::size_t>(n - 1 - i)];
        }
    } else {
        for (double& x : v0) x = rng.uniform();
    }
    v0 = project_feasible(std::move(v0));
    if (cfg.symmetric) symmetrize(v0);

    DescentOutcome outcome = descend(std::move(v0), cfg, rng);
    StepFunction best = certify_candidate(outcome.best_vec, cfg.symmetric, "");
    Rational value = max_overlap_exact(best).first;
    return {std::move(best), std::move(value)};
}

}  // namespace

void OptimizerConfig::validate() const {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
    if (!(initial_step > 0)) throw std::invalid_argument("initial_step must be > 0");
    if (stop_tolerance < 0) throw std::invalid_argument("stop_tolerance must be >= 0");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (anneal.enabled) {
        if (!(anneal.initial_temperature > 0))
            throw std::invalid_argument("anneal temperature must be > 0");
        if (!(anneal.decay > 0) || anneal.decay >= 1)
            throw std::invalid_argument("anneal decay must lie in (0,1)");
    }
}

std::vector<double> project_feasible(std::vector<double> v) {
    if (v.empty()) return v;
    const double target = static_cast<double>(v.size()) / 2.0;

    double lo = -*std::max_element(v.begin(), v.end());
    double hi = 1.0 - *std::min_element(v.begin(), v.end());
    double lambda = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        lambda = 0.5 * (lo + hi);
        double sum = 0.0;
        for (double x : v) sum += clamp01(x + lambda);
        if (std::abs(sum - target) <= kProjectionTol) break;
        if (sum < target) {
            lo = lambda;
        } else {
            hi = lambda;
        }
    }
    for (double& x : v) x = clamp01(x + lambda);
    return v;
}

RunResult minimize(const StepFunction& start, const OptimizerConfig& cfg) {
    cfg.validate();
    if (start.steps() != cfg.steps) {
        throw std::invalid_argument("start has " + std::to_string(start.steps()) +
                                    " steps, config says " + std::to_string(cfg.steps));
    }
    if (!start.in_unit_box() || !start.is_normalized()) {
        throw std::invalid_argument("infeasible start: needs values in [0,1] and integral 1");
    }
    if (cfg.symmetric && !start.is_symmetric()) {
        throw std::invalid_argument("symmetric mode needs a symmetric start");
    }

    Prng rng(stream_seed(cfg.seed, 0));
    DescentOutcome outcome = descend(start.float_values(), cfg, rng);

    // No iterate beat the start: keep its exact values untouched.
    StepFunction best = outcome.moved
                            ? certify_candidate(outcome.best_vec, cfg.symmetric, "")
                            : start;
    Rational value = max_overlap_exact(best).first;

    RunResult result{std::move(best), to_double(value), std::move(value),
                     {}, cfg.seed, 0};
    result.restart_history.push_back(to_double(result.best_value_exact));
    return result;
}

RunResult multi_start(const OptimizerConfig& cfg) {
    cfg.validate();
    const int restarts = cfg.restarts;
    std::vector<std::optional<RestartResult>> results(static_cast<std::size_t>(restarts));

    unsigned thread_count = cfg.threads == 0 ? std::thread::hardware_concurrency()
                                             : static_cast<unsigned>(cfg.threads);
    thread_count = std::max(1u, std::min(thread_count, static_cast<unsigned>(restarts)));

    if (thread_count == 1) {
        for (int r = 0; r < restarts; ++r) {
            results[static_cast<std::size_t>(r)] = run_restart(cfg, r);
        }
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= restarts) return;
                try {
                    results[static_cast<std::size_t>(r)] = run_restart(cfg, r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Reduction by (certified value, restart index): order-independent.
    int best_index = 0;
    for (int r = 1; r < restarts; ++r) {
        if (results[static_cast<std::size_t>(r)]->value <
            results[static_cast<std::size_t>(best_index)]->value) {
            best_index = r;
        }
    }

    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(restarts));
    for (const auto& r : results) history.push_back(to_double(r->value));

    RestartResult& winner = *results[static_cast<std::size_t>(best_index)];
    RunResult result{std::move(winner.best), to_double(winner.value),
                     std::move(winner.value), std::move(history), cfg.seed, best_index};
    return result;
}

std::string run_report(const RunResult& result, const OptimizerConfig& cfg) {
    char buf[64];
    std::ostringstream out;
    out << "certified = " << decimal_string(result.best_value_exact, 40) << "\n"
        << "exact     = " << fraction_string(result.best_value_exact) << "\n"
        << "steps=" << cfg.steps << " symmetric=" << (cfg.symmetric ? "yes" : "no")
        << " restarts=" << cfg.restarts << " max_iters=" << cfg.max_iters
        << " initial_step=" << cfg.initial_step << " stop_tolerance=" << cfg.stop_tolerance
        << " anneal=" << (cfg.anneal.enabled ? "on" : "off") << " seed=" << result.seed
        << "\n"
        << "best_restart = " << result.best_restart << "\n"
        << "history:\n";
    for (std::size_t r = 0; r < result.restart_history.size(); ++r) {
        std::snprintf(buf, sizeof(buf), "%.17g", result.restart_history[r]);
        out << "  restart " << r << ": " << buf << "\n";
    }
    return out.str();
}

}  // namespace overlap
