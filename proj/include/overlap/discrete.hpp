#pragma once

#include "overlap/stepfn.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace overlap {

// Default enumeration cap: C(24,12) ~ 2.7e6 partitions stays interactive.
inline constexpr int kDefaultPartitionCap = 12;

// Hard width limit: differences live in a 64-bit mask.
inline constexpr int kMaxPartitionSteps = 30;

class CapacityError : public std::runtime_error {
public:
    CapacityError(int n, int cap)
        : std::runtime_error("n=" + std::to_string(n) + " exceeds the enumeration cap " +
                             std::to_string(cap) +
                             " (raise it with --cap or the OVERLAP_CAP env var)"),
          n_(n), cap_(cap) {}

    int n() const noexcept { return n_; }
    int cap() const noexcept { return cap_; }

private:
    int n_;
    int cap_;
};

// Balanced 2-coloring of {1, ..., 2n}: bit e-1 of a_mask set iff element e
// belongs to the first part. popcount(a_mask) == n; the second part is the
// complement.
struct Partition {
    int n = 0;
    std::uint64_t a_mask = 0;

    static Partition from_elements(int n, const std::vector<int>& a_elements);
    void validate() const;  // throws std::invalid_argument

    std::vector<int> a_elements() const;
    std::vector<int> b_elements() const;
};

// M_k tabulated over k in [-(2n-1), 2n-1].
struct DifferenceCounts {
    int n = 0;
    std::vector<int> counts;  // index k + 2n - 1
    int max_count = 0;

    int count(int k) const { return counts.at(static_cast<std::size_t>(k + 2 * n - 1)); }
    int min_k() const { return -(2 * n - 1); }
    int max_k() const { return 2 * n - 1; }
};

// M_k = #{(a,b) : a in A, b in complement, a - b = k}.
DifferenceCounts difference_counts(const Partition& p);

struct MinOverlapResult {
    int n = 0;
    int value = 0;  // M(n)
    Partition witness;
    std::uint64_t examined = 0;  // partitions enumerated
};

// Exhaustive M(n) = min over partitions of max_k M_k. With prune=true only
// masks containing element 1 are enumerated (complement swap negates k and
// keeps the max, so this halves the work); the witness is the numerically
// smallest optimal mask among those enumerated.
MinOverlapResult min_over_partitions(int n, int cap = kDefaultPartitionCap,
                                     bool prune = true);

// The 2n-step indicator function of the first part; integral is exactly 1.
// Ties the two sides together: M_k = n * g[-k] for every k.
StepFunction partition_to_stepfn(const Partition& p);

// CSV rows (n, M, M/n, witness mask) for a span of solved instances.
std::string min_overlap_csv(const std::vector<MinOverlapResult>& rows);

}  // namespace overlap
