#pragma once

// Extremal set A = { d k^2 : d in D, k <= sqrt(X/2Z) } built from
// discriminants with small L(1, chi_{-4d}), and the representation-count
// moments that bound how many primes it reaches.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lacuna {

struct ConstructionParams {
    std::uint64_t x = 0;
    std::uint64_t z = 0;  // 0 selects the default exp((log X)^{1/10})
    std::uint64_t d_count = 1;
    unsigned threads = 1;
};

// exp((log X)^{1/10}), rounded to the nearest integer.
std::uint64_t default_z(std::uint64_t x);

struct DChoice {
    std::uint64_t d = 0;
    double l_value = 0;  // L(1, chi_{-4d})
    bool fundamental = false;  // -4d itself fundamental (d = 1 mod 4)
};

// L(1, chi_{-4d}) for odd squarefree d.
double l_one_minus_4d(std::uint64_t d);

// The d_count odd squarefree d in [Z, 2Z] with the smallest L(1, chi_{-4d}),
// ascending by L-value (ties by d).
std::vector<DChoice> choose_D(std::uint64_t z, std::uint64_t d_count);

std::uint64_t max_k(std::uint64_t x, std::uint64_t z);

// Sorted, deduplicated { d k^2 : d in D, 1 <= k <= floor(sqrt(X/2Z)) }.
std::vector<std::uint64_t> build_A(std::span<const std::uint64_t> d_set, std::uint64_t x, std::uint64_t z);

// r_A(p) = #{(a, b) : a in A, b >= 1, a + b^2 = p} for primes p <= X/2.
class RepCounts {
public:
    RepCounts() = default;
    explicit RepCounts(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    // r(p); zero for composites and for p beyond the limit.
    std::uint32_t at(std::uint64_t p) const noexcept { return p <= limit_ ? counts_[p] : 0; }
    std::span<const std::uint32_t> raw() const noexcept { return counts_; }
    std::vector<std::uint32_t>& raw_mut() noexcept { return counts_; }

    friend bool operator==(const RepCounts&, const RepCounts&) = default;

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> counts_;
};

// Loop over (a, b) pairs, incrementing prime slots.
RepCounts rep_counts(std::span<const std::uint64_t> a_set, std::uint64_t x, unsigned threads = 1);
// Transposed loop over (p, b), testing p - b^2 for membership in A.
RepCounts rep_counts_by_prime(std::span<const std::uint64_t> a_set, std::uint64_t x);

struct MomentReport {
    std::uint64_t sum_r = 0;
    std::uint64_t sum_r2 = 0;
    std::uint64_t represented = 0;
    std::uint64_t cs_bound = 0;  // ceil(sum_r^2 / sum_r2)
};

// Throws std::logic_error if represented < cs_bound.
MomentReport moments(const RepCounts& r);
MomentReport moments(std::span<const std::uint32_t> r_values);

struct ConstructionReport {
    ConstructionParams params;
    std::uint64_t z = 0;
    std::vector<std::string> warnings;
    std::vector<DChoice> chosen;
    std::uint64_t k_max = 0;
    std::vector<std::uint64_t> a_set;
    double normalized_size = 0;  // |A| loglog X / sqrt(X)
    std::uint64_t pi_half_x = 0;
    double represented_fraction = 0;  // represented / pi(X/2)
    double sum_r_normalized = 0;      // sum_r log X / X
    double sum_r2_normalized = 0;     // sum_r2 log X / X
    MomentReport moments;
};

ConstructionReport run_construction(const ConstructionParams& params);

}  // namespace lacuna
