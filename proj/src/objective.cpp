#include "overlap/objective.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace overlap {

namespace {

void require_unit_box(const StepFunction& f) {
    if (!f.in_unit_box()) {
        throw std::domain_error("shift objective needs values in [0,1]; function '" +
                                (f.label().empty() ? std::string("<unnamed>") : f.label()) +
                                "' violates the box");
    }
}

std::string join_shifts(const std::vector<int>& shifts) {
    std::ostringstream out;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (i) out << ';';
        out << shifts[i];
    }
    return out.str();
}

}  // namespace

ShiftReport shift_values_exact(const StepFunction& f) {
    require_unit_box(f);
    const int n = f.steps();
    const Rational h = f.step_width();
    const std::vector<Rational>& v = f.values();

    ShiftReport report;
    report.n = n;
    report.g.resize(static_cast<std::size_t>(2 * n - 1));
    for (int j = -(n - 1); j <= n - 1; ++j) {
        Rational sum = 0;
        const int lo = std::max(0, -j);
        const int hi = std::min(n, n - j);
        for (int i = lo; i < hi; ++i) {
            sum += v[static_cast<std::size_t>(i)] *
                   (1 - v[static_cast<std::size_t>(i + j)]);
        }
        report.g[static_cast<std::size_t>(report.index(j))] = h * sum;
    }

    report.max_value = *std::max_element(report.g.begin(), report.g.end());
    for (int j = -(n - 1); j <= n - 1; ++j) {
        if (report.at(j) == report.max_value) report.argmax.push_back(j);
    }
    return report;
}

void shift_values_raw(std::span<const double> v, std::vector<double>& g) {
    const int n = static_cast<int>(v.size());
    const double h = 2.0 / n;
    g.assign(static_cast<std::size_t>(2 * n - 1), 0.0);
    for (int j = -(n - 1); j <= n - 1; ++j) {
        double sum = 0.0;
        const int lo = std::max(0, -j);
        const int hi = std::min(n, n - j);
        for (int i = lo; i < hi; ++i) {
            sum += v[static_cast<std::size_t>(i)] *
                   (1.0 - v[static_cast<std::size_t>(i + j)]);
        }
        g[static_cast<std::size_t>(j + n - 1)] = h * sum;
    }
}

double max_shift_value_raw(std::span<const double> v, std::vector<double>& scratch,
                           int* argmax_low) {
    shift_values_raw(v, scratch);
    const int n = static_cast<int>(v.size());
    double best = scratch[0];
    int best_j = -(n - 1);
    for (int j = -(n - 1); j <= n - 1; ++j) {
        const double gj = scratch[static_cast<std::size_t>(j + n - 1)];
        if (gj > best) {
            best = gj;
            best_j = j;
        }
    }
    if (argmax_low) *argmax_low = best_j;
    return best;
}

ShiftReportF shift_values_float(const StepFunction& f) {
    require_unit_box(f);
    const std::vector<double> v = f.float_values();

    ShiftReportF report;
    report.n = f.steps();
    shift_values_raw(v, report.g);
    report.max_value = *std::max_element(report.g.begin(), report.g.end());
    for (int j = report.min_shift(); j <= report.max_shift(); ++j) {
        if (report.at(j) >= report.max_value - kTieTolerance) report.argmax.push_back(j);
    }
    return report;
}

WindowValue continuous_at(const StepFunction& f, double k) {
    require_unit_box(f);
    if (std::abs(k) > 2.0) return {0.0, true};

    const int n = f.steps();
    const double h = 2.0 / n;
    const std::vector<double> v = f.float_values();

    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x0 = i * h;
        const double x1 = (i + 1) * h;
        // x in step i, x+k in step l: nonempty only for l near (x+k)/h
        int l_lo = static_cast<int>(std::floor((x0 + k) / h)) - 1;
        int l_hi = static_cast<int>(std::floor((x1 + k) / h)) + 1;
        l_lo = std::max(l_lo, 0);
        l_hi = std::min(l_hi, n - 1);
        for (int l = l_lo; l <= l_hi; ++l) {
            const double lo = std::max(x0, l * h - k);
            const double hi = std::min(x1, (l + 1) * h - k);
            if (hi > lo) {
                sum += (hi - lo) * v[static_cast<std::size_t>(i)] *
                       (1.0 - v[static_cast<std::size_t>(l)]);
            }
        }
    }
    return {sum, false};
}

void subgradient_raw(std::span<const double> v, int j, std::span<double> out) {
    const int n = static_cast<int>(v.size());
    const double h = 2.0 / n;
    for (int m = 0; m < n; ++m) {
        double d = 0.0;
        if (m + j >= 0 && m + j < n) d += h * (1.0 - v[static_cast<std::size_t>(m + j)]);
        if (m - j >= 0 && m - j < n) d -= h * v[static_cast<std::size_t>(m - j)];
        out[static_cast<std::size_t>(m)] = d;
    }
}

std::vector<double> subgradient(const StepFunction& f, int j) {
    const int n = f.steps();
    if (j <= -n || j >= n) {
        throw std::invalid_argument("shift index " + std::to_string(j) +
                                    " outside [-(n-1), n-1] for n=" + std::to_string(n));
    }
    const std::vector<double> v = f.float_values();
    std::vector<double> out(static_cast<std::size_t>(n));
    subgradient_raw(v, j, out);
    return out;
}

std::pair<Rational, std::vector<int>> max_overlap_exact(const StepFunction& f) {
    ShiftReport report = shift_values_exact(f);
    return {std::move(report.max_value), std::move(report.argmax)};
}

std::pair<double, std::vector<int>> max_overlap_float(const StepFunction& f) {
    ShiftReportF report = shift_values_float(f);
    return {report.max_value, std::move(report.argmax)};
}

std::string to_csv(const ShiftReport& report) {
    std::ostringstream out;
    out << "j,k,g\n";
    for (int j = report.min_shift(); j <= report.max_shift(); ++j) {
        out << j << ',' << decimal_string(Rational(2 * j, report.n), 40, true) << ','
            << decimal_string(report.at(j), 40, true) << '\n';
    }
    out << "# max=" << decimal_string(report.max_value, 40, true)
        << " argmax=" << join_shifts(report.argmax) << '\n';
    return out.str();
}

std::string to_csv(const ShiftReportF& report) {
    char buf[64];
    std::ostringstream out;
    out << "j,k,g\n";
    for (int j = report.min_shift(); j <= report.max_shift(); ++j) {
        out << j << ',' << decimal_string(Rational(2 * j, report.n), 40, true) << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", report.at(j));
        out << buf << '\n';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", report.max_value);
    out << "# max=" << buf << " argmax=" << join_shifts(report.argmax) << '\n';
    return out.str();
}

}  // namespace overlap
