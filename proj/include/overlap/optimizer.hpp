#pragma once

#include "overlap/objective.hpp"
#include "overlap/stepfn.hpp"

#include <cstdint>
#include <vector>

namespace overlap {

// Simulated-annealing kick applied between sweeps once plain descent
// stalls: uniform perturbation scaled by the current temperature with
// Metropolis acceptance, temperature decaying geometrically.
struct AnnealSchedule {
    bool enabled = false;
    double initial_temperature = 0.05;
    double decay = 0.9;
    double min_temperature = 1e-6;
};

struct OptimizerConfig {
    int steps = 15;             // n
    bool symmetric = false;     // search ceil(n/2) free values, mirrored
    int restarts = 16;
    int max_iters = 4000;       // per restart; 0 = certify the start only
    double initial_step = 0.1;  // s0 in s_t = s0 / sqrt(t+1)
    AnnealSchedule anneal;
    std::uint64_t seed = 0;
    double stop_tolerance = 1e-12;  // min best-so-far improvement per sweep
    int threads = 1;                // 0 = hardware concurrency

    void validate() const;  // throws std::invalid_argument
};

struct RunResult {
    StepFunction best;               // normalized, certified
    double best_value_float = 0.0;
    Rational best_value_exact;       // = exact max overlap of `best`
    std::vector<double> restart_history;  // certified value per restart
    std::uint64_t seed = 0;
    int best_restart = 0;
};

// Euclidean projection onto {v in [0,1]^n : sum v = n/2}, by bisection on
// the clamp shift until |sum - n/2| <= 1e-12.
std::vector<double> project_feasible(std::vector<double> v);

// Projected subgradient descent on max_j g_j from a feasible start
// (exact integral 1, values in [0,1]; symmetric when cfg.symmetric).
// The final candidate is snapped to 18 decimal digits, re-balanced in
// exact arithmetic and certified with the exact evaluator.
RunResult minimize(const StepFunction& start, const OptimizerConfig& cfg);

// Independent seeded restarts from random feasible starts; returns the
// run with the smallest certified value (ties: lowest restart index).
// Bit-identical results for a fixed seed at any thread count.
RunResult multi_start(const OptimizerConfig& cfg);

// Plain-text sidecar describing a run: certified value, seed, config,
// per-restart history.
std::string run_report(const RunResult& result, const OptimizerConfig& cfg);

}  // namespace overlap
