#include "lacuna/arith.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lacuna {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::uint64_t abs_u64(std::int64_t v) {
    return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

// Largest prime the Euler products consider, with a guard against
// X^{1/4} landing just below an integer.
std::uint64_t floor_cutoff(double y) {
    if (!(y >= 0)) return 0;
    return static_cast<std::uint64_t>(std::floor(y * (1 + 1e-12)));
}

void require_negative_fundamental(std::int64_t d, const char* who) {
    if (d >= 0 || !is_fundamental_discriminant(d)) {
        throw std::invalid_argument(std::string(who) + ": " + std::to_string(d) +
                                    " is not a negative fundamental discriminant");
    }
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(long double x) {
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0;
    long double comp_ = 0;
};

}  // namespace

int kronecker(std::int64_t d, std::int64_t n) {
    static constexpr int kTwo[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int k = 1;
    std::uint64_t m = abs_u64(n);
    if (n < 0 && d < 0) k = -1;
    if ((d & 1) == 0 && (m & 1u) == 0) return 0;
    const int v = std::countr_zero(m);
    m >>= v;
    if (v & 1) k *= kTwo[d & 7];

    // Jacobi symbol (d mod m | m) for odd m.
    std::uint64_t a = static_cast<std::uint64_t>(mod_floor(d, static_cast<std::int64_t>(m)));
    while (a != 0) {
        while ((a & 1u) == 0) {
            a >>= 1;
            const auto r = m & 7u;
            if (r == 3 || r == 5) k = -k;
        }
        std::swap(a, m);
        if ((a & 3u) == 3 && (m & 3u) == 3) k = -k;
        a %= m;
    }
    return m == 1 ? k : 0;
}

KroneckerChar::KroneckerChar(std::int64_t d) : d_(d) {
    const auto r = mod_floor(d, 4);
    if (d == 0 || (r != 0 && r != 1)) {
        throw std::invalid_argument("KroneckerChar: " + std::to_string(d) + " is not a discriminant");
    }
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0) return false;
    const auto r = mod_floor(d, 4);
    if (r == 1) return is_squarefree(abs_u64(d));
    if (r == 0) {
        const std::int64_t k = d / 4;
        const auto rk = mod_floor(k, 4);
        return (rk == 2 || rk == 3) && is_squarefree(abs_u64(k));
    }
    return false;
}

DiscDecomp fundamental_decomposition(std::uint64_t a) {
    if (a == 0) throw std::invalid_argument("fundamental_decomposition: a must be positive");
    // a = s^2 t with t squarefree.
    std::uint64_t t = 1;
    std::uint64_t s = 1;
    std::uint64_t rest = a;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) s *= p;
        if (e % 2 == 1) t *= p;
    }
    t *= rest;
    DiscDecomp out;
    out.a = a;
    // -4a = -4t s^2; -t is itself fundamental when t = 3 mod 4.
    if (t % 4 == 3) {
        out.fund = -static_cast<std::int64_t>(t);
        out.sq = 2 * s;
    } else {
        out.fund = -4 * static_cast<std::int64_t>(t);
        out.sq = s;
    }
    return out;
}

std::uint64_t class_number(std::int64_t d) {
    require_negative_fundamental(d, "class_number");
    const std::int64_t disc = -d;
    if (disc > 10'000'000) throw std::invalid_argument("class_number: |D| exceeds 1e7");
    std::uint64_t count = 0;
    for (std::int64_t a = 1; 3 * a * a <= disc; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b + disc;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

unsigned unit_count(std::int64_t d) {
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

double l_one(std::int64_t d) {
    require_negative_fundamental(d, "l_one");
    const std::int64_t disc = -d;
    std::int64_t sum = 0;
    for (std::int64_t r = 1; r < disc; ++r) sum += kronecker(d, r) * r;
    const long double scale = std::pow(static_cast<long double>(disc), -1.5L);
    return static_cast<double>(-kPi * static_cast<long double>(sum) * scale);
}

double l_one_class_number_formula(std::int64_t d) {
    const auto h = static_cast<long double>(class_number(d));
    const long double w = unit_count(d);
    return static_cast<double>(2 * kPi * h / (w * std::sqrt(static_cast<long double>(-d))));
}

SeriesValue l_value(std::int64_t d, double s, std::uint64_t terms) {
    if (!(s > 1)) throw std::invalid_argument("l_value: s must exceed 1");
    if (terms == 0) throw std::invalid_argument("l_value: need at least one term");
    CompensatedSum acc;
    const long double ls = s;
    for (std::uint64_t n = 1; n <= terms; ++n) {
        const int chi = kronecker(d, static_cast<std::int64_t>(n));
        if (chi == 0) continue;
        const long double t = std::pow(static_cast<long double>(n), -ls);
        acc.add(chi > 0 ? t : -t);
    }
    SeriesValue out;
    out.value = static_cast<double>(acc.value());
    const auto nt = static_cast<long double>(terms);
    if (abs_u64(d) == 1) {
        out.tail_bound = static_cast<double>(std::pow(nt, 1 - ls) / (ls - 1));
    } else {
        out.tail_bound = static_cast<double>(2 * static_cast<long double>(abs_u64(d)) * std::pow(nt + 1, -ls));
    }
    return out;
}

double euler_product(std::int64_t d, std::span<const std::uint64_t> primes, double y) {
    const std::uint64_t cutoff = floor_cutoff(y);
    long double prod = 1;
    for (std::uint64_t p : primes) {
        if (p > cutoff) break;
        const int chi = kronecker(d, static_cast<std::int64_t>(p));
        if (chi != 0) prod *= 1 - static_cast<long double>(chi) / static_cast<long double>(p);
    }
    return static_cast<double>(prod);
}

double euler_product(std::int64_t d, double y) {
    const auto primes = primes_up_to(floor_cutoff(y));
    return euler_product(d, primes, y);
}

AgoodReport agood_compare(std::uint64_t a, double x, double small_cutoff, std::uint64_t terms) {
    if (a < 1 || static_cast<double>(a) > x) throw std::invalid_argument("agood_compare: need 1 <= a <= X");
    if (!(x > std::numbers::e)) throw std::invalid_argument("agood_compare: X must exceed e");
    if (!(small_cutoff >= 0)) throw std::invalid_argument("agood_compare: small_cutoff must be nonnegative");

    AgoodReport r;
    const auto dec = fundamental_decomposition(a);
    r.a = a;
    r.fund = dec.fund;
    r.sq = dec.sq;
    r.x = x;
    r.small_cutoff = small_cutoff;
    r.s = 1 + 1 / std::log(x);

    const double y = std::pow(x, 0.25);
    const auto primes = primes_up_to(std::max(floor_cutoff(y), floor_cutoff(small_cutoff)));
    r.lhs = euler_product(-4 * static_cast<std::int64_t>(a), primes, y);

    const auto lv = l_value(dec.fund, r.s, terms);
    r.m1 = 1 / lv.value;
    r.m1_tail = lv.tail_bound;

    const std::uint64_t small = floor_cutoff(small_cutoff);
    const std::uint64_t large = floor_cutoff(y);
    long double first = 1;
    long double second = 1;
    for (std::uint64_t p : primes) {
        const long double f = 1 - static_cast<long double>(kronecker(dec.fund, static_cast<std::int64_t>(p))) /
                                      static_cast<long double>(p);
        const bool divides = dec.sq % p == 0;
        if (p <= small && !divides) first *= f;
        if (static_cast<double>(p) >= small_cutoff && p <= large && divides) second /= f;
    }
    r.m2_small = static_cast<double>(first);
    r.m2_large = static_cast<double>(second);
    r.m2 = static_cast<double>(first * second);
    r.ratio_m1 = r.lhs / r.m1;
    r.ratio_m2 = r.lhs / r.m2;
    return r;
}

DiscClass classify_discriminant(std::int64_t d, double c0) {
    const double l1 = l_one(d);
    const double threshold = c0 / std::log(static_cast<double>(-d));
    return l1 < threshold ? DiscClass::bad_proxy : DiscClass::good_proxy;
}

const char* to_string(DiscClass c) noexcept {
    return c == DiscClass::bad_proxy ? "bad-proxy" : "good-proxy";
}

}  // namespace lacuna
