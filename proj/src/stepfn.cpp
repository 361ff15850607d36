#include "overlap/stepfn.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <utility>

namespace overlap {

namespace {

void check_unit_box(const std::vector<Rational>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] > 1) {
            throw std::domain_error("step value " + std::to_string(i) + " = " +
                                    fraction_string(values[i]) + " outside [0,1]");
        }
    }
}

}  // namespace

StepFunction::StepFunction(std::vector<Rational> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) throw std::domain_error("step function needs at least one step");
}

StepFunction StepFunction::normalized(std::vector<Rational> values, std::string label) {
    StepFunction f(std::move(values), std::move(label));
    check_unit_box(f.values_);
    if (!f.is_normalized()) {
        throw std::domain_error("integral is " + fraction_string(f.integral()) +
                                ", expected exactly 1");
    }
    return f;
}

StepFunction StepFunction::raw(std::vector<Rational> values, std::string label) {
    return StepFunction(std::move(values), std::move(label));
}

StepFunction StepFunction::symmetric_from_half(int n, const std::vector<Rational>& half,
                                               std::string label) {
    if (n < 1) throw std::domain_error("step count must be >= 1");
    const std::size_t m = static_cast<std::size_t>((n + 1) / 2);
    if (half.size() != m) {
        throw std::domain_error("half-value list has " + std::to_string(half.size()) +
                                " entries, expected " + std::to_string(m) + " for n=" +
                                std::to_string(n));
    }
    check_unit_box(half);
    std::vector<Rational> full(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        full[static_cast<std::size_t>(i)] =
            half[static_cast<std::size_t>(i < static_cast<int>(m) ? i : n - 1 - i)];
    }
    return StepFunction(std::move(full), std::move(label));
}

Rational StepFunction::integral() const {
    Rational sum = 0;
    for (const Rational& v : values_) sum += v;
    return step_width() * sum;
}

bool StepFunction::in_unit_box() const {
    for (const Rational& v : values_) {
        if (v < 0 || v > 1) return false;
    }
    return true;
}

bool StepFunction::is_normalized() const { return integral() == 1; }

bool StepFunction::is_symmetric() const {
    const int n = steps();
    for (int i = 0; i < n / 2; ++i) {
        if (values_[static_cast<std::size_t>(i)] !=
            values_[static_cast<std::size_t>(n - 1 - i)]) {
            return false;
        }
    }
    return true;
}

std::vector<double> StepFunction::float_values() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (const Rational& v : values_) out.push_back(to_double(v));
    return out;
}

// ---------------------------------------------------------------------------
// Bundled certificate functions. Half-value tables; f(x) = f(2-x).
// ---------------------------------------------------------------------------

namespace {

const char* const kP15Half[] = {
    "0",          "0.09938602", "0.64299877", "0.36104582",
    "0.69536426", "0.59241335", "0.89573331", "0.92611694",
};

const char* const kP19Half[] = {
    "0",
    "0",
    "0.348795091509472207",
    "0.742684181900847446",
    "0.207655267155520404",
    "0.780222086674911898",
    "0.568104573396874436",
    "0.689049157609512654",
    "0.967251286500411737",
    "0.892476710504898436",
};

const char* const kP51Half[] = {
    "0", "0", "0", "0", "0",
    "0.0002938681556273",
    "0.5952882223921177",
    "0.7844530825484313",
    "0.8950034338013842",
    "0.0597964076006748",
    "0.0189602838469592",
    "0.7420501628172980",
    "0.6444559588500921",
    "0.3549040817844764",
    "0.8762442385073478",
    "0.5437907313675501",
    "0.2679640048997296",
    "0.8518954615823791",
    "0.5211171156914872",
    "1",
    "0.5506146790047043",
    "0.9007715390796991",
    "0.8229000691941086",
    "0.8879541710440111",
    "0.9315424878319221",
    "1",
};

template <std::size_t N>
StepFunction build_builtin(int n, const char* const (&table)[N], const char* name) {
    std::vector<Rational> half;
    half.reserve(N);
    for (const char* s : table) half.push_back(parse_decimal(s));
    return StepFunction::symmetric_from_half(n, half, name);
}

}  // namespace

StepFunction builtin_stepfn(const std::string& name) {
    if (name == "p15") return build_builtin(15, kP15Half, "p15");
    if (name == "p19") return build_builtin(19, kP19Half, "p19");
    if (name == "p51") return build_builtin(51, kP51Half, "p51");
    throw std::invalid_argument("unknown built-in step function '" + name +
                                "' (expected p15, p19 or p51)");
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"p15", "p19", "p51"};
    return names;
}

// ---------------------------------------------------------------------------
// JSON (de)serialization
// ---------------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

std::vector<Rational> parse_value_array(const json& arr, const char* field) {
    std::vector<Rational> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string()) {
            throw std::domain_error(std::string(field) + "[" + std::to_string(i) +
                                    "] must be a decimal string, not a number literal");
        }
        out.push_back(parse_decimal(arr[i].get<std::string>()));
    }
    return out;
}

}  // namespace

StepFunction stepfn_from_json(const std::string& text) {
    json doc = json::parse(text);
    if (!doc.is_object()) throw std::domain_error("top-level JSON value must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw std::domain_error("missing integer field 'n'");
    }
    const int n = doc["n"].get<int>();
    if (n < 1) throw std::domain_error("'n' must be >= 1");

    const bool has_values = doc.contains("values");
    const bool has_half = doc.contains("half_values");
    if (has_values == has_half) {
        throw std::domain_error("exactly one of 'values' or 'half_values' is required");
    }
    std::string label;
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw std::domain_error("'label' must be a string");
        label = doc["label"].get<std::string>();
    }

    if (has_half) {
        return StepFunction::symmetric_from_half(
            n, parse_value_array(doc["half_values"], "half_values"), label);
    }
    std::vector<Rational> values = parse_value_array(doc["values"], "values");
    if (values.size() != static_cast<std::size_t>(n)) {
        throw std::domain_error("'values' has " + std::to_string(values.size()) +
                                " entries, expected n=" + std::to_string(n));
    }
    check_unit_box(values);
    return StepFunction::raw(std::move(values), label);
}

std::string stepfn_to_json(const StepFunction& f) {
    json doc;
    doc["n"] = f.steps();
    if (!f.label().empty()) doc["label"] = f.label();
    const bool symmetric = f.is_symmetric();
    const char* field = symmetric ? "half_values" : "values";
    const int count = symmetric ? (f.steps() + 1) / 2 : f.steps();
    json arr = json::array();
    for (int i = 0; i < count; ++i) arr.push_back(exact_decimal_string(f.value(i)));
    doc[field] = std::move(arr);
    return doc.dump(2) + "\n";
}

StepFunction load_stepfn(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return stepfn_from_json(buf.str());
}

void store_stepfn(const StepFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << stepfn_to_json(f);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace overlap
