#pragma once

// Primes, Kronecker characters, discriminants, class numbers and L-values.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lacuna {

// ------------------------------------------------------------------ primes

// All primes <= y, ascending (segmented sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t y);
std::uint64_t prime_count(std::uint64_t y);
// Calls fn(p) for each prime p <= y in ascending order.
void for_each_prime(std::uint64_t y, const std::function<void(std::uint64_t)>& fn);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

bool is_squarefree(std::uint64_t n);
// p-adic valuation; p >= 2, n != 0.
unsigned valuation(std::uint64_t n, std::uint64_t p);

// -------------------------------------------------------------- characters

// Kronecker symbol (d | n), with the usual completion at 2 and at -1.
int kronecker(std::int64_t d, std::int64_t n);

class KroneckerChar {
public:
    // d must be = 0 or 1 mod 4 and nonzero.
    explicit KroneckerChar(std::int64_t d);

    std::int64_t discriminant() const noexcept { return d_; }
    int operator()(std::int64_t n) const { return kronecker(d_, n); }

private:
    std::int64_t d_;
};

bool is_fundamental_discriminant(std::int64_t d);

// -4a = fund * sq^2 with fund a (negative) fundamental discriminant.
struct DiscDecomp {
    std::uint64_t a = 0;
    std::int64_t fund = 0;
    std::uint64_t sq = 0;
};

DiscDecomp fundamental_decomposition(std::uint64_t a);

// h(D) by enumeration of reduced forms; D < 0 fundamental, |D| <= 1e7.
std::uint64_t class_number(std::int64_t d);

// Number of roots of unity in Q(sqrt(D)), D < 0.
unsigned unit_count(std::int64_t d);

// L(1, chi_D) from the finite sum -pi |D|^{-3/2} sum_{r<|D|} chi_D(r) r.
double l_one(std::int64_t d);
// L(1, chi_D) = 2 pi h(D) / (w(D) sqrt|D|).
double l_one_class_number_formula(std::int64_t d);

struct SeriesValue {
    double value = 0;
    // Partial-summation bound on the omitted tail (see l_value).
    double tail_bound = 0;
};

// sum_{n <= terms} chi_D(n) n^{-s}, compensated summation in long double.
// For non-principal chi_D the tail beyond `terms` is bounded by
// 2 |D| (terms+1)^{-s}; for D = 1 the reported bound is terms^{1-s}/(s-1).
SeriesValue l_value(std::int64_t d, double s, std::uint64_t terms);

// prod_{p <= y} (1 - chi_D(p)/p).
double euler_product(std::int64_t d, double y);
double euler_product(std::int64_t d, std::span<const std::uint64_t> primes, double y);

// Comparison of the truncated Euler product for chi_{-4a} against the two
// proxies built from the fundamental character: the inverse L-value at
// s = 1 + 1/log X, and the split product with a small prime cutoff.
struct AgoodReport {
    std::uint64_t a = 0;
    std::int64_t fund = 0;
    std::uint64_t sq = 0;
    double x = 0;
    double small_cutoff = 0;
    double s = 0;
    double lhs = 0;         // prod_{p <= X^{1/4}} (1 - chi_{-4a}(p)/p)
    double m1 = 0;          // L(s, chi_fund)^{-1}
    double m1_tail = 0;
    double m2 = 0;
    double m2_small = 0;    // prod_{p <= cutoff, p !| sq} (1 - chi_fund(p)/p)
    double m2_large = 0;    // prod_{cutoff <= p <= X^{1/4}, p | sq} (1 - chi_fund(p)/p)^{-1}
    double ratio_m1 = 0;
    double ratio_m2 = 0;
};

AgoodReport agood_compare(std::uint64_t a, double x, double small_cutoff, std::uint64_t terms = 1'000'000);

enum class DiscClass { good_proxy, bad_proxy };

// bad_proxy iff L(1, chi_D) < c0 / log|D|. This is a small-L(1) stand-in,
// not a zero-free-region test.
DiscClass classify_discriminant(std::int64_t d, double c0 = 0.1);

const char* to_string(DiscClass c) noexcept;

}  // namespace lacuna
