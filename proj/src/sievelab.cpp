#include "lacuna/sievelab.hpp"

#include "lacuna/arith.hpp"
#include "detail/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace lacuna {

namespace {

void check_a_set(std::span<const std::uint64_t> a_set, std::uint64_t x) {
    for (auto a : a_set) {
        if (a < 1 || a > x) throw std::invalid_argument("A must be a subset of [1, X]; got " + std::to_string(a));
    }
}

}  // namespace

RepReport count_prime_reps(std::uint64_t a, std::uint64_t u, std::uint64_t x) {
    if (a < 1 || u < 1) throw std::invalid_argument("count_prime_reps: a and u must be positive");
    if (a > x) throw std::invalid_argument("count_prime_reps: need a <= X");
    if (x < 2) throw std::invalid_argument("count_prime_reps: need X >= 2");
    RepReport r;
    r.a = a;
    r.u = u;
    r.x = x;
    // m -> a + m^2 is injective on m >= 1, so every hit is a distinct prime.
    for (std::uint64_t m = 1; m * m <= x - a; ++m) {
        const std::uint64_t v = a + m * m;
        if (v % u == 0 && is_prime(v / u)) ++r.count;
    }
    const double dx = static_cast<double>(x);
    r.euler = euler_product(-4 * static_cast<std::int64_t>(a), std::pow(dx, 0.25));
    r.bound = std::sqrt(dx) / std::log(dx) * r.euler;
    r.ratio = static_cast<double>(r.count) / r.bound;
    return r;
}

double theorem2_rhs(std::uint64_t a_size, std::uint64_t x) {
    const double dx = static_cast<double>(x);
    const double n = static_cast<double>(a_size);
    const double lx = std::log(dx);
    return n * std::sqrt(dx) * std::log(lx) / lx + std::sqrt(n) * std::pow(dx, 0.75) / lx;
}

AggregateReport represented_primes(std::span<const std::uint64_t> a_set, std::uint64_t u, std::uint64_t x,
                                   unsigned min_m, std::uint64_t mark_limit) {
    if (u < 1) throw std::invalid_argument("represented_primes: u must be positive");
    if (x < 2) throw std::invalid_argument("represented_primes: need X >= 2");
    if (x > mark_limit) {
        throw std::length_error("represented_primes: X = " + std::to_string(x) + " exceeds the marking-table limit " +
                                std::to_string(mark_limit));
    }
    check_a_set(a_set, x);

    const std::uint64_t slots = x / u + 1;
    std::vector<std::uint64_t> marks((slots + 63) / 64, 0);
    for (std::uint64_t a : a_set) {
        for (std::uint64_t m = min_m; m * m <= x - a; ++m) {
            const std::uint64_t v = a + m * m;
            if (v % u == 0) marks[(v / u) >> 6] |= std::uint64_t{1} << ((v / u) & 63);
        }
    }

    AggregateReport r;
    r.a_size = a_set.size();
    r.u = u;
    r.x = x;
    r.min_m = min_m;
    for (std::size_t w = 0; w < marks.size(); ++w) {
        std::uint64_t word = marks[w];
        while (word != 0) {
            const std::uint64_t p = w * 64 + static_cast<std::uint64_t>(std::countr_zero(word));
            word &= word - 1;
            if (is_prime(p)) ++r.represented;
        }
    }
    r.theorem_rhs = theorem2_rhs(r.a_size, x);
    r.ratio = static_cast<double>(r.represented) / r.theorem_rhs;
    return r;
}

std::vector<std::uint64_t> random_subset(std::uint64_t k, std::uint64_t x, std::uint64_t seed) {
    if (k > x) throw std::invalid_argument("random_subset: K exceeds X");
    std::mt19937_64 rng(seed);
    // Rejection keeps the draw uniform without relying on distribution
    // classes, whose output is implementation-defined.
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % x;
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> out;
    out.reserve(k);
    while (out.size() < k) {
        const std::uint64_t r = rng();
        if (r >= limit) continue;
        const std::uint64_t v = 1 + r % x;
        if (seen.insert(v).second) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Theorem2Result theorem2_experiment(const ASpec& spec, std::uint64_t u, std::uint64_t x, std::uint64_t seed,
                                   unsigned threads, std::uint64_t mark_limit) {
    Theorem2Result res;
    switch (spec.kind) {
        case ASpec::Kind::explicit_list:
        case ASpec::Kind::construction:
            res.a_set = spec.values;
            std::sort(res.a_set.begin(), res.a_set.end());
            res.a_set.erase(std::unique(res.a_set.begin(), res.a_set.end()), res.a_set.end());
            break;
        case ASpec::Kind::random_subset:
            res.a_set = random_subset(spec.random_size, x, seed);
            break;
    }
    check_a_set(res.a_set, x);

    res.per_a.resize(res.a_set.size());
    detail::parallel_for(res.a_set.size(), threads,
                         [&](std::size_t i) { res.per_a[i] = count_prime_reps(res.a_set[i], u, x); });
    for (const auto& r : res.per_a) res.per_a_total += r.count;
    for (auto a : res.a_set) {
        if (a % u == 0 && is_prime(a / u)) ++res.m0_extra;
    }
    res.aggregate = represented_primes(res.a_set, u, x, 0, mark_limit);
    res.aggregate_m1 = represented_primes(res.a_set, u, x, 1, mark_limit);
    return res;
}

}  // namespace lacuna
