#pragma once

// Named q-expansions mod l, Hecke operators on q-expansions, and the
// constructions that turn a weakly holomorphic form into a cusp form.

#include "lacuna/fpseries.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lacuna {

// Weight is stored doubled so half-integral weights stay exact.
struct FormMeta {
    int twice_weight = 0;
    std::uint64_t level = 1;
    std::uint32_t modulus = 2;

    bool half_integral() const noexcept { return twice_weight % 2 != 0; }
    friend bool operator==(const FormMeta&, const FormMeta&) = default;
};

struct TaggedForm {
    QSeries series;
    FormMeta meta;

    TaggedForm() = default;
    TaggedForm(QSeries s, FormMeta m);
};

// eta(24z) = sum_n (-1)^n q^{(6n+1)^2}, window [1, prec).
TaggedForm eta1(std::uint32_t ell, std::int64_t prec);
// The same series built as q prod_{n>=1} (1 - q^{24n}).
TaggedForm eta1_product(std::uint32_t ell, std::int64_t prec);

// p(0), ..., p(count-1) mod l by Euler's pentagonal recurrence.
std::vector<std::uint32_t> partition_numbers_mod(std::uint32_t ell, std::size_t count);

// sum_n p(n) q^{24n-1}, window [-1, prec).
TaggedForm partition_series(std::uint32_t ell, std::int64_t prec);
// Same series computed as inv(eta1).
TaggedForm partition_series_via_inverse(std::uint32_t ell, std::int64_t prec);

// 1 + 2 sum q^{n^2}, window [0, prec).
TaggedForm theta0(std::uint32_t ell, std::int64_t prec);

// prod_{n>=1} (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}, window [0, prec).
QSeries euler_function_series(std::uint32_t ell, std::int64_t prec);

// q prod (1 - q^n)^24, window [1, prec).
TaggedForm delta(std::uint32_t ell, std::int64_t prec);

// j = sum c(n) q^n mod 2 on [-1, prec), computed as 1/Delta (E4 = 1 mod 2).
TaggedForm j_mod2(std::int64_t prec);

// Form by CLI name: eta1, partition, theta0, delta, j2.
TaggedForm make_form(std::string_view name, std::uint32_t ell, std::int64_t prec);

// h = f * eta1^{l^m}; requires l^m > pole order of f.
TaggedForm holomorphize(const TaggedForm& f, unsigned m);

// f * theta0 (l = 2 only): weight goes up by 1/2, series unchanged mod 2.
TaggedForm multiply_theta0(const TaggedForm& f);

// a_m(T_p h) = a_{mp}(h) + p^{k-1} a_{m/p}(h), diamond operator trivial.
TaggedForm hecke_tp(const TaggedForm& h, std::uint64_t p);

// True unless T_p h is constant mod l while some a_n(h), n <= x with
// ord_p(n) odd, is nonzero.
bool odd_ord_vanishing_check(const TaggedForm& h, std::uint64_t p, std::int64_t x);

struct UpScanRow {
    std::uint64_t u = 0;
    std::vector<std::uint64_t> primes;  // p <= p_max with a_{up}(h) != 0
};

std::vector<UpScanRow> scan_up_nonzero(const TaggedForm& h, std::uint64_t u_max, std::uint64_t p_max);

struct Pow2SquareSolution {
    unsigned m = 0;
    std::uint64_t u = 0;
    std::string y;  // decimal; y can exceed 64 bits for large m

    friend bool operator==(const Pow2SquareSolution&, const Pow2SquareSolution&) = default;
};

// All (m, u, y) with 1 <= m <= m_max, u a squarefree divisor of 2N and
// 2^m + n0 = u y^2, ordered by (m, u).
std::vector<Pow2SquareSolution> pow2_square_search(std::int64_t n0, std::uint64_t level, unsigned m_max);

std::vector<std::uint64_t> squarefree_divisors(std::uint64_t n);

}  // namespace lacuna
