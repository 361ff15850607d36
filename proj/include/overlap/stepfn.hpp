#pragma once

#include "overlap/rational.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace overlap {

// A function on [0,2] that is constant on each interval [2i/n, 2(i+1)/n)
// (last step closed at 2). Values are exact rationals; immutable once built.
class StepFunction {
public:
    // Enforces values in [0,1] and integral exactly 1.
    static StepFunction normalized(std::vector<Rational> values, std::string label = "");

    // Only requires n >= 1; validity is checked on demand. Optimizer
    // iterates and experimental inputs live here.
    static StepFunction raw(std::vector<Rational> values, std::string label = "");

    // Builds the n-step function with values[i] = half[i] for i < ceil(n/2)
    // mirrored so that f(x) = f(2-x). Entries must lie in [0,1].
    static StepFunction symmetric_from_half(int n, const std::vector<Rational>& half,
                                            std::string label = "");

    int steps() const { return static_cast<int>(values_.size()); }
    Rational step_width() const { return Rational(2, steps()); }
    const std::vector<Rational>& values() const { return values_; }
    const Rational& value(int i) const { return values_.at(static_cast<std::size_t>(i)); }
    const std::string& label() const { return label_; }

    Rational integral() const;                 // step_width * sum(values)
    bool in_unit_box() const;                  // all values in [0,1]
    bool is_normalized() const;                // integral == 1 exactly
    bool is_symmetric() const;                 // values[i] == values[n-1-i]

    std::vector<double> float_values() const;  // nearest-double shadow

    bool operator==(const StepFunction& other) const {
        return values_ == other.values_;
    }

private:
    StepFunction(std::vector<Rational> values, std::string label);

    std::vector<Rational> values_;
    std::string label_;
};

// The bundled certificate functions "p15", "p19", "p51"; throws
// std::invalid_argument for any other name.
StepFunction builtin_stepfn(const std::string& name);
const std::vector<std::string>& builtin_names();

// JSON file format: {"n": int, "values": [decimal strings]} or
// {"n": int, "half_values": [...]} plus optional "label". Exactly one of
// values/half_values; strings only, so exact values survive round-trips.
StepFunction stepfn_from_json(const std::string& text);
std::string stepfn_to_json(const StepFunction& f);

StepFunction load_stepfn(const std::filesystem::path& path);
void store_stepfn(const StepFunction& f, const std::filesystem::path& path);

}  // namespace overlap
