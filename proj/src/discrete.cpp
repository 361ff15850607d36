#include "overlap/discrete.hpp"

#include <bit>
#include <sstream>

namespace overlap {

namespace {

// Next mask with the same popcount (Gosper's hack). Undefined for v == 0.
std::uint64_t next_perm(std::uint64_t v) {
    const std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

// max_k |A & (B + k)| over k != 0; M_0 = 0 since the parts are disjoint.
int max_count_of_mask(int n, std::uint64_t a_mask) {
    const std::uint64_t full = (1ULL << (2 * n)) - 1;
    const std::uint64_t b_mask = full & ~a_mask;
    int best = 0;
    for (int k = 1; k <= 2 * n - 1; ++k) {
        best = std::max(best, std::popcount(a_mask & (b_mask << k)));
        best = std::max(best, std::popcount(a_mask & (b_mask >> k)));
    }
    return best;
}

}  // namespace

Partition Partition::from_elements(int n, const std::vector<int>& a_elements) {
    Partition p;
    p.n = n;
    for (int e : a_elements) {
        if (e < 1 || e > 2 * n) {
            throw std::invalid_argument("element " + std::to_string(e) +
                                        " outside {1,...," + std::to_string(2 * n) + "}");
        }
        p.a_mask |= 1ULL << (e - 1);
    }
    p.validate();
    return p;
}

void Partition::validate() const {
    if (n < 1 || n > kMaxPartitionSteps) {
        throw std::invalid_argument("partition size n must lie in [1, " +
                                    std::to_string(kMaxPartitionSteps) + "]");
    }
    if (a_mask >> (2 * n)) {
        throw std::invalid_argument("a_mask has bits outside {1,...,2n}");
    }
    if (std::popcount(a_mask) != n) {
        throw std::invalid_argument("a_mask has " + std::to_string(std::popcount(a_mask)) +
                                    " elements, expected n=" + std::to_string(n));
    }
}

std::vector<int> Partition::a_elements() const {
    std::vector<int> out;
    for (int e = 1; e <= 2 * n; ++e) {
        if (a_mask & (1ULL << (e - 1))) out.push_back(e);
    }
    return out;
}

std::vector<int> Partition::b_elements() const {
    std::vector<int> out;
    for (int e = 1; e <= 2 * n; ++e) {
        if (!(a_mask & (1ULL << (e - 1)))) out.push_back(e);
    }
    return out;
}

DifferenceCounts difference_counts(const Partition& p) {
    p.validate();
    const int n = p.n;
    const std::uint64_t full = (1ULL << (2 * n)) - 1;
    const std::uint64_t b_mask = full & ~p.a_mask;

    DifferenceCounts dc;
    dc.n = n;
    dc.counts.assign(static_cast<std::size_t>(4 * n - 1), 0);
    for (int k = -(2 * n - 1); k <= 2 * n - 1; ++k) {
        if (k == 0) continue;
        const std::uint64_t shifted = k > 0 ? (b_mask << k) : (b_mask >> -k);
        const int c = std::popcount(p.a_mask & shifted);
        dc.counts[static_cast<std::size_t>(k + 2 * n - 1)] = c;
        dc.max_count = std::max(dc.max_count, c);
    }
    return dc;
}

MinOverlapResult min_over_partitions(int n, int cap, bool prune) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (n > cap) throw CapacityError(n, cap);
    if (n > kMaxPartitionSteps) throw CapacityError(n, kMaxPartitionSteps);

    MinOverlapResult result;
    result.n = n;
    result.value = 2 * n;  // above any possible max_k M_k

    auto consider = [&](std::uint64_t mask) {
        ++result.examined;
        const int m = max_count_of_mask(n, mask);
        if (m < result.value) {
            result.value = m;
            result.witness = Partition{n, mask};
        }
    };

    if (prune) {
        // Masks containing element 1: enumerate n-1 bits over {2,...,2n}.
        if (n == 1) {
            consider(1ULL);
        } else {
            const std::uint64_t limit = 1ULL << (2 * n - 1);
            for (std::uint64_t rest = (1ULL << (n - 1)) - 1; rest < limit;
                 rest = next_perm(rest)) {
                consider((rest << 1) | 1ULL);
            }
        }
    } else {
        const std::uint64_t limit = 1ULL << (2 * n);
        for (std::uint64_t mask = (1ULL << n) - 1; mask < limit; mask = next_perm(mask)) {
            consider(mask);
        }
    }
    return result;
}

StepFunction partition_to_stepfn(const Partition& p) {
    p.validate();
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(2 * p.n));
    for (int i = 0; i < 2 * p.n; ++i) {
        values.emplace_back((p.a_mask >> i) & 1ULL ? 1 : 0);
    }
    return StepFunction::normalized(std::move(values));
}

std::string min_overlap_csv(const std::vector<MinOverlapResult>& rows) {
    std::ostringstream out;
    out << "n,M,M_over_n,witness_hex\n";
    for (const MinOverlapResult& row : rows) {
        out << row.n << ',' << row.value << ','
            << decimal_string(Rational(row.value, row.n), 6) << ",0x" << std::hex
            << row.witness.a_mask << std::dec << '\n';
    }
    return out.str();
}

}  // namespace overlap
