#include "lacuna/arith.hpp"

#include "detail/modarith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lacuna {

namespace {

constexpr std::uint64_t kSegmentSize = std::uint64_t{1} << 18;

std::vector<std::uint64_t> simple_sieve(std::uint64_t y) {
    std::vector<std::uint64_t> out;
    if (y < 2) return out;
    std::vector<bool> composite(y + 1, false);
    for (std::uint64_t i = 2; i <= y; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= y; j += i) composite[j] = true;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

void for_each_prime(std::uint64_t y, const std::function<void(std::uint64_t)>& fn) {
    if (y < 2) return;
    const auto base = simple_sieve(isqrt(y));
    std::vector<std::uint8_t> seg(kSegmentSize);
    for (std::uint64_t low = 0; low <= y; low += kSegmentSize) {
        const std::uint64_t high = std::min(y, low + kSegmentSize - 1);
        const std::size_t n = static_cast<std::size_t>(high - low + 1);
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(n), std::uint8_t{1});
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
            for (std::uint64_t j = start; j <= high; j += p) seg[j - low] = 0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t v = low + i;
            if (seg[i] && v >= 2) fn(v);
        }
    }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t y) {
    std::vector<std::uint64_t> out;
    if (y >= 10) {
        const double ly = std::log(static_cast<double>(y));
        out.reserve(static_cast<std::size_t>(1.26 * static_cast<double>(y) / ly) + 16);
    }
    for_each_prime(y, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

std::uint64_t prime_count(std::uint64_t y) {
    std::uint64_t c = 0;
    for_each_prime(y, [&](std::uint64_t) { ++c; });
    return c;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    if (n < 37 * 37) return true;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1u) == 0) {
        d >>= 1;
        ++s;
    }
    // Bases proven sufficient for n < 2^64 (Jim Sinclair).
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        a %= n;
        if (a == 0) continue;
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0 || p < 2) throw std::invalid_argument("valuation: need n != 0 and p >= 2");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace lacuna
