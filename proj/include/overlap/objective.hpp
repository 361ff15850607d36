#pragma once

#include "overlap/rational.hpp"
#include "overlap/stepfn.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace overlap {

// Float-mode values within this distance of the maximum count as ties.
inline constexpr double kTieTolerance = 1e-12;

// Per-shift objective values g[j] = h * sum_i v[i]*(1 - v[i+j]) for
// j in [-(n-1), n-1], i.e. the overlap integral at shift k = j*h.
template <typename Value>
struct ShiftTable {
    int n = 0;
    std::vector<Value> g;     // g[index(j)], 2n-1 entries
    Value max_value{};
    std::vector<int> argmax;  // ascending shift indices attaining max_value

    int index(int j) const { return j + n - 1; }
    const Value& at(int j) const { return g.at(static_cast<std::size_t>(index(j))); }
    int min_shift() const { return -(n - 1); }
    int max_shift() const { return n - 1; }
};

using ShiftReport = ShiftTable<Rational>;
using ShiftReportF = ShiftTable<double>;

// Exact per-shift table; argmax lists exact ties. Throws std::domain_error
// if any value is outside [0,1].
ShiftReport shift_values_exact(const StepFunction& f);

// Double-precision table; each g[j] is summed in ascending step order, so
// results are independent of any internal scheduling. Ties group within
// kTieTolerance of the maximum.
ShiftReportF shift_values_float(const StepFunction& f);

// Hot path used by the optimizer and by finite-difference checks: fills
// g (resized to 2n-1) from a bare value vector, no domain checks.
void shift_values_raw(std::span<const double> v, std::vector<double>& g);

// max over the raw table; if argmax_low is given it receives the lowest
// maximizing shift index (the optimizer's tie-break).
double max_shift_value_raw(std::span<const double> v, std::vector<double>& scratch,
                           int* argmax_low = nullptr);

// Overlap integral at an arbitrary real shift, integrated piece by piece
// with no grid assumption. `outside` flags |k| > 2 (value 0 by convention).
struct WindowValue {
    double value = 0.0;
    bool outside = false;
};
WindowValue continuous_at(const StepFunction& f, double k);

// d g_j / d v_m = h*(1 - v[m+j]) [m+j valid] - h*v[m-j] [m-j valid].
std::vector<double> subgradient(const StepFunction& f, int j);
void subgradient_raw(std::span<const double> v, int j, std::span<double> out);

// (max_value, argmax) convenience wrappers over the tables above.
std::pair<Rational, std::vector<int>> max_overlap_exact(const StepFunction& f);
std::pair<double, std::vector<int>> max_overlap_float(const StepFunction& f);

// CSV with columns j,k,g (k = 2j/n) and a trailing comment row carrying
// the maximum and argmax. Exact values are rendered to 40 digits.
std::string to_csv(const ShiftReport& report);
std::string to_csv(const ShiftReportF& report);

}  // namespace overlap
