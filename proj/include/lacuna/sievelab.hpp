#pragma once

// Direct counts of primes p with up = a + m^2, per a and aggregated over a
// set A, alongside the upper bounds they are compared with.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lacuna {

struct RepReport {
    std::uint64_t a = 0;
    std::uint64_t u = 1;
    std::uint64_t x = 0;
    std::uint64_t count = 0;  // distinct primes p, up <= X, up = a + m^2, m >= 1
    double euler = 0;         // prod_{p <= X^{1/4}} (1 - chi_{-4a}(p)/p)
    double bound = 0;         // sqrt(X)/log(X) * euler
    double ratio = 0;         // count / bound
};

RepReport count_prime_reps(std::uint64_t a, std::uint64_t u, std::uint64_t x);

struct AggregateReport {
    std::uint64_t a_size = 0;
    std::uint64_t u = 1;
    std::uint64_t x = 0;
    unsigned min_m = 0;
    std::uint64_t represented = 0;
    double theorem_rhs = 0;  // |A| sqrt(X) loglog X / log X + |A|^{1/2} X^{3/4} / log X
    double ratio = 0;
};

// Default ceiling on X for the marking table (one bit per integer).
inline constexpr std::uint64_t kDefaultMarkLimit = 1'000'000'000;

// Distinct primes p with up <= X and up = a + m^2 for some a in A, m >= min_m.
AggregateReport represented_primes(std::span<const std::uint64_t> a_set, std::uint64_t u, std::uint64_t x,
                                   unsigned min_m = 0, std::uint64_t mark_limit = kDefaultMarkLimit);

double theorem2_rhs(std::uint64_t a_size, std::uint64_t x);

// How the set A of an aggregate experiment is produced.
struct ASpec {
    enum class Kind { explicit_list, random_subset, construction };
    Kind kind = Kind::explicit_list;
    std::vector<std::uint64_t> values;  // explicit_list and construction
    std::uint64_t random_size = 0;      // random_subset: K distinct values in [1, X]
};

struct Theorem2Result {
    std::vector<std::uint64_t> a_set;
    std::vector<RepReport> per_a;
    AggregateReport aggregate;
    AggregateReport aggregate_m1;  // same count restricted to m >= 1
    std::uint64_t per_a_total = 0;
    std::uint64_t m0_extra = 0;    // #{a in A : u | a, a/u prime}
};

// K distinct integers in [1, X] drawn from mt19937_64(seed), sorted.
std::vector<std::uint64_t> random_subset(std::uint64_t k, std::uint64_t x, std::uint64_t seed);

Theorem2Result theorem2_experiment(const ASpec& spec, std::uint64_t u, std::uint64_t x, std::uint64_t seed,
                                   unsigned threads = 1, std::uint64_t mark_limit = kDefaultMarkLimit);

}  // namespace lacuna
