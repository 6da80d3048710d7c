#include "lacuna/qforms.hpp"

#include "lacuna/arith.hpp"
#include "detail/modarith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace lacuna {

namespace {

constexpr std::uint64_t kEtaLevel = 576;

void require_prec(std::int64_t prec, std::int64_t min, const char* who) {
    if (prec < min) {
        throw std::invalid_argument(std::string(who) + ": precision must be at least " + std::to_string(min));
    }
}

std::int64_t pow_checked(std::uint32_t ell, unsigned m) {
    std::int64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (q > std::numeric_limits<std::int32_t>::max() / static_cast<std::int64_t>(ell)) {
            throw std::overflow_error("l^m is too large");
        }
        q *= ell;
    }
    return q;
}

}  // namespace

TaggedForm::TaggedForm(QSeries s, FormMeta m) : series(std::move(s)), meta(m) {
    if (series.modulus() != meta.modulus) throw std::invalid_argument("TaggedForm: series and meta moduli differ");
    if (meta.level < 1) throw std::invalid_argument("TaggedForm: level must be positive");
}

TaggedForm eta1(std::uint32_t ell, std::int64_t prec) {
    require_prec(prec, 2, "eta1");
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    const auto bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(prec))) + 2;
    for (std::int64_t n = -bound / 6 - 1; 6 * n + 1 <= bound; ++n) {
        const std::int64_t r = 6 * n + 1;
        if (r * r < prec) terms.emplace_back(r * r, (n % 2 == 0) ? 1 : -1);
    }
    std::sort(terms.begin(), terms.end());
    return {QSeries::from_terms(ell, 1, prec, terms), {1, kEtaLevel, ell}};
}

TaggedForm eta1_product(std::uint32_t ell, std::int64_t prec) {
    require_prec(prec, 2, "eta1_product");
    const auto len = static_cast<std::size_t>(prec - 1);
    // Relative window: coefficient i stands for q^{1+i}.
    std::vector<std::uint32_t> c(len, 0);
    c[0] = 1;
    for (std::size_t k = 24; k < len; k += 24) {
        for (std::size_t i = len - 1; i >= k; --i) {
            const std::uint32_t t = c[i - k];
            if (t != 0) c[i] = c[i] >= t ? c[i] - t : c[i] + ell - t;
        }
    }
    return {QSeries(ell, 1, c), {1, kEtaLevel, ell}};
}

std::vector<std::uint32_t> partition_numbers_mod(std::uint32_t ell, std::size_t count) {
    std::vector<std::uint32_t> p(count, 0);
    if (count == 0) return p;
    p[0] = 1 % ell;
    // Generalized pentagonal numbers in increasing order; signs repeat +,+,-,-.
    std::vector<std::size_t> gpent;
    for (std::size_t k = 1; k * (3 * k - 1) / 2 < count; ++k) {
        gpent.push_back(k * (3 * k - 1) / 2);
        gpent.push_back(k * (3 * k + 1) / 2);
    }
    for (std::size_t n = 1; n < count; ++n) {
        std::uint64_t plus = 0;
        std::uint64_t minus = 0;
        std::size_t i = 0;
        for (; i + 3 < gpent.size() && gpent[i + 3] <= n; i += 4) {
            plus += std::uint64_t{p[n - gpent[i]]} + p[n - gpent[i + 1]];
            minus += std::uint64_t{p[n - gpent[i + 2]]} + p[n - gpent[i + 3]];
        }
        for (; i < gpent.size() && gpent[i] <= n; ++i) {
            ((i & 2u) ? minus : plus) += p[n - gpent[i]];
        }
        p[n] = static_cast<std::uint32_t>((plus % ell + ell - minus % ell) % ell);
    }
    return p;
}

TaggedForm partition_series(std::uint32_t ell, std::int64_t prec) {
    require_prec(prec, 1, "partition_series");
    const auto len = static_cast<std::size_t>(prec + 1);
    const auto p = partition_numbers_mod(ell, static_cast<std::size_t>(prec / 24) + 1);
    SeriesBuilder b(ell, -1, len);
    for (std::size_t n = 0; n < p.size(); ++n) b.set(24 * n, p[n]);
    return {std::move(b).freeze(), {-1, kEtaLevel, ell}};
}

TaggedForm partition_series_via_inverse(std::uint32_t ell, std::int64_t prec) {
    require_prec(prec, 1, "partition_series_via_inverse");
    return {inv(eta1(ell, prec + 2).series), {-1, kEtaLevel, ell}};
}

TaggedForm theta0(std::uint32_t ell, std::int64_t prec) {
    require_prec(prec, 1, "theta0");
    SeriesBuilder b(ell, 0, static_cast<std::size_t>(prec));
    b.set(0, 1 % ell);
    for (std::int64_t n = 1; n * n < prec; ++n) b.set(static_cast<std::size_t>(n * n), 2 % ell);
    return {std::move(b).freeze(), {1, 4, ell}};
}

QSeries euler_function_series(std::uint32_t ell, std::int64_t prec) {
    require_prec(prec, 1, "euler_function_series");
    SeriesBuilder b(ell, 0, static_cast<std::size_t>(prec));
    const std::uint32_t minus_one = ell - 1 == 0 ? 1 : ell - 1;
    b.set(0, 1 % ell);
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t g1 = k * (3 * k - 1) / 2;
        if (g1 >= prec) break;
        const std::uint32_t sign = (k & 1) ? minus_one : 1 % ell;
        b.set(static_cast<std::size_t>(g1), sign);
        if (g1 + k < prec) b.set(static_cast<std::size_t>(g1 + k), sign);
    }
    return std::move(b).freeze();
}

TaggedForm delta(std::uint32_t ell, std::int64_t prec) {
    require_prec(prec, 2, "delta");
    return {pow(euler_function_series(ell, prec - 1), 24).shifted(1), {24, 1, ell}};
}

TaggedForm j_mod2(std::int64_t prec) {
    require_prec(prec, 1, "j_mod2");
    return {inv(delta(2, prec + 2).series), {0, 1, 2}};
}

TaggedForm make_form(std::string_view name, std::uint32_t ell, std::int64_t prec) {
    if (name == "eta1") return eta1(ell, prec);
    if (name == "partition") return partition_series(ell, prec);
    if (name == "theta0") return theta0(ell, prec);
    if (name == "delta") return delta(ell, prec);
    if (name == "j2") {
        if (ell != 2) throw std::invalid_argument("form j2 is only available mod 2");
        return j_mod2(prec);
    }
    throw std::invalid_argument("unknown form '" + std::string(name) + "'");
}

TaggedForm holomorphize(const TaggedForm& f, unsigned m) {
    const QSeries lead = normalize(f.series);
    if (lead.empty()) throw std::invalid_argument("holomorphize: form is zero on its window");
    const std::uint32_t ell = f.meta.modulus;
    const std::int64_t q = pow_checked(ell, m);
    const std::int64_t pole = std::max<std::int64_t>(0, -lead.offset());
    if (q <= pole) {
        throw std::invalid_argument("holomorphize: l^m = " + std::to_string(q) + " does not exceed pole order " +
                                    std::to_string(pole));
    }
    const auto len = static_cast<std::int64_t>(f.series.length());
    const std::int64_t eta_prec = (len + q - 1) / q + 2;
    const QSeries twist = frobenius_pow(eta1(ell, eta_prec).series, m);
    FormMeta meta = f.meta;
    meta.twice_weight += static_cast<int>(q);
    meta.level = std::lcm(meta.level, kEtaLevel);
    return {mul(f.series, twist), meta};
}

TaggedForm multiply_theta0(const TaggedForm& f) {
    if (f.meta.modulus != 2) throw std::invalid_argument("multiply_theta0: only defined for l = 2");
    const auto th = theta0(2, static_cast<std::int64_t>(std::max<std::size_t>(f.series.length(), 1)));
    FormMeta meta = f.meta;
    meta.twice_weight += 1;
    meta.level = std::lcm(meta.level, std::uint64_t{4});
    return {mul(f.series, th.series), meta};
}

TaggedForm hecke_tp(const TaggedForm& h, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("hecke_tp: p = " + std::to_string(p) + " is not prime");
    if (h.meta.level % p == 0) throw std::invalid_argument("hecke_tp: p divides the level");
    if (h.meta.half_integral()) throw std::invalid_argument("hecke_tp: half-integral weight");
    if (h.meta.twice_weight < 0) throw std::invalid_argument("hecke_tp: negative weight");
    const QSeries& s = h.series;
    for (std::int64_t n = s.offset(); n < std::min<std::int64_t>(0, s.end()); ++n) {
        if (s.coeff(n) != 0) throw std::invalid_argument("hecke_tp: form is not holomorphic at infinity");
    }
    if (s.end() < 1) throw std::invalid_argument("hecke_tp: no coefficients at nonnegative exponents");

    const std::uint32_t ell = h.meta.modulus;
    const int k = h.meta.twice_weight / 2;
    std::uint64_t factor = 0;
    if (k >= 1) {
        factor = detail::pow_mod(p, static_cast<std::uint64_t>(k - 1), ell);
    } else {
        if (p % ell == 0) throw std::invalid_argument("hecke_tp: p^{-1} undefined mod l for weight 0");
        factor = detail::mod_inverse(p % ell, ell);
    }

    const auto sp = static_cast<std::int64_t>(p);
    const std::int64_t out_end = (s.end() - 1) / sp + 1;
    SeriesBuilder b(ell, 0, static_cast<std::size_t>(out_end));
    for (std::int64_t m = 0; m < out_end; ++m) {
        std::uint64_t v = s.coeff_or_zero(m * sp);
        if (m % sp == 0) v += factor * s.coeff_or_zero(m / sp) % ell;
        b.set(static_cast<std::size_t>(m), static_cast<std::uint32_t>(v % ell));
    }
    return {std::move(b).freeze(), h.meta};
}

bool odd_ord_vanishing_check(const TaggedForm& h, std::uint64_t p, std::int64_t x) {
    if (x >= h.series.end()) throw std::out_of_range("odd_ord_vanishing_check: X beyond precision");
    const TaggedForm t = hecke_tp(h, p);
    for (std::int64_t n = 1; n < t.series.end(); ++n) {
        if (t.series.coeff_or_zero(n) != 0) return true;  // T_p h is not constant
    }
    const auto sp = static_cast<std::int64_t>(p);
    for (std::int64_t n = sp; n <= x; n += sp) {
        if (valuation(static_cast<std::uint64_t>(n), p) % 2 == 1 && h.series.coeff_or_zero(n) != 0) return false;
    }
    return true;
}

std::vector<UpScanRow> scan_up_nonzero(const TaggedForm& h, std::uint64_t u_max, std::uint64_t p_max) {
    if (u_max == 0) return {};
    if (p_max > 0 && u_max > static_cast<std::uint64_t>(h.series.end()) / p_max) {
        throw std::out_of_range("scan_up_nonzero: u_max * p_max exceeds the precision window");
    }
    if (h.series.end() < 0 || u_max * p_max >= static_cast<std::uint64_t>(h.series.end())) {
        throw std::out_of_range("scan_up_nonzero: u_max * p_max exceeds the precision window");
    }
    const auto primes = primes_up_to(p_max);
    std::vector<UpScanRow> rows;
    rows.reserve(u_max);
    for (std::uint64_t u = 1; u <= u_max; ++u) {
        UpScanRow row{u, {}};
        for (std::uint64_t p : primes) {
            if (h.series.coeff_or_zero(static_cast<std::int64_t>(u * p)) != 0) row.primes.push_back(p);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::uint64_t> squarefree_divisors(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("squarefree_divisors: n must be positive");
    std::vector<std::uint64_t> divisors{1};
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        const std::size_t k = divisors.size();
        for (std::size_t i = 0; i < k; ++i) divisors.push_back(divisors[i] * p);
    }
    if (n > 1) {
        const std::size_t k = divisors.size();
        for (std::size_t i = 0; i < k; ++i) divisors.push_back(divisors[i] * n);
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

std::vector<Pow2SquareSolution> pow2_square_search(std::int64_t n0, std::uint64_t level, unsigned m_max) {
    using boost::multiprecision::cpp_int;
    if (n0 == 0) throw std::invalid_argument("pow2_square_search: n0 must be nonzero");
    if (level == 0) throw std::invalid_argument("pow2_square_search: level must be positive");
    if (m_max < 1) throw std::invalid_argument("pow2_square_search: m_max must be at least 1");
    const auto divisors = squarefree_divisors(2 * level);
    std::vector<Pow2SquareSolution> out;
    for (unsigned m = 1; m <= m_max; ++m) {
        const cpp_int v = (cpp_int(1) << m) + n0;
        if (v < 0) continue;
        for (std::uint64_t u : divisors) {
            if (v % u != 0) continue;
            const cpp_int w = v / u;
            const cpp_int y = boost::multiprecision::sqrt(w);
            if (y * y == w) out.push_back({m, u, y.str()});
        }
    }
    return out;
}

}  // namespace lacuna
