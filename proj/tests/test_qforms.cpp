#include "lacuna/arith.hpp"
#include "lacuna/qforms.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

using namespace lacuna;
using oracle::cpp_int;

namespace {

bool is_one_on_window(const QSeries& s) {
    for (std::int64_t n = s.offset(); n < s.end(); ++n) {
        if (s.coeff(n) != (n == 0 ? 1u : 0u)) return false;
    }
    return true;
}

bool is_odd_square(std::int64_t n) {
    if (n <= 0 || n % 2 == 0) return false;
    const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n;
}

}  // namespace

TEST_CASE("eta1") {
    const auto e5 = eta1(5, 60);
    CHECK(e5.meta == FormMeta{1, 576, 5});
    CHECK(e5.series.support() == std::vector<std::int64_t>{1, 25, 49});
    CHECK(e5.series.coeff(1) == 1);
    CHECK(e5.series.coeff(25) == 4);
    CHECK(e5.series.coeff(49) == 4);
    CHECK(eta1(2, 60).series.support() == std::vector<std::int64_t>{1, 25, 49});
    CHECK(eta1(3, 100000).series == eta1_product(3, 100000).series);
    for (std::uint32_t ell : {2u, 7u}) {
        for (std::int64_t prec : {2, 3, 26, 1000, 20000}) {
            CHECK(eta1(ell, prec).series == eta1_product(ell, prec).series);
        }
    }
    CHECK_THROWS(eta1(2, 1));
    CHECK_THROWS(eta1(4, 10));
}

TEST_CASE("partition series") {
    const auto p2 = partition_numbers_mod(2, 11);
    CHECK(p2 == std::vector<std::uint32_t>{1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0});
    for (int n = 0; n <= 10; ++n) CHECK(p2[static_cast<std::size_t>(n)] == oracle::count_partitions(n, n) % 2);
    const auto p1000 = partition_numbers_mod(1000003, 60);
    for (int n = 0; n < 60; ++n) CHECK(p1000[static_cast<std::size_t>(n)] == oracle::count_partitions(n, n) % 1000003);

    const auto f = partition_series(7, 500);
    CHECK(f.series.offset() == -1);
    CHECK(f.meta == FormMeta{-1, 576, 7});
    CHECK(f.series.coeff(23) == 1);
    CHECK(f.series.coeff(0) == 0);

    for (std::uint32_t ell : {2u, 3u, 5u, 7u, 11u, 13u}) {
        const std::int64_t prec = 5000;
        CHECK(is_one_on_window(mul(eta1(ell, prec).series, partition_series(ell, prec).series)));
        CHECK(partition_series(ell, prec).series == partition_series_via_inverse(ell, prec).series);
    }
}

TEST_CASE("Ramanujan congruences up to exponent 1e5") {
    const std::int64_t prec = 100000;
    const std::vector<std::pair<std::uint32_t, std::int64_t>> cong = {{5, 4}, {7, 5}, {11, 6}};
    for (auto [ell, r] : cong) {
        const auto f = partition_series(ell, prec).series;
        std::size_t checked = 0;
        for (std::int64_t n = r; 24 * n - 1 < prec; n += ell) {
            CHECK(f.coeff(24 * n - 1) == 0);
            ++checked;
        }
        CHECK(checked > 300);
    }
}

TEST_CASE("theta0") {
    CHECK(theta0(2, 50).series == QSeries::one(2, 50));
    const auto t3 = theta0(3, 20).series;
    CHECK(t3.support() == std::vector<std::int64_t>{0, 1, 4, 9, 16});
    CHECK(t3.coeff(0) == 1);
    for (std::int64_t n : {1, 4, 9, 16}) CHECK(t3.coeff(n) == 2);
    const auto t5 = theta0(5, 1000).series;
    for (std::int64_t n = 1; n < 1000; ++n) {
        const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
        CHECK(t5.coeff(n) == (r * r == n ? 2u : 0u));
    }
    CHECK(theta0(3, 20).meta == FormMeta{1, 4, 3});
}

TEST_CASE("delta") {
    const auto tau = oracle::ramanujan_tau(10001);
    for (std::uint32_t ell : {3u, 5u, 7u, 691u}) {
        const auto d = delta(ell, 300).series;
        CHECK(d.coeff(1) == 1);
        CHECK(d.coeff(2) == oracle::mod(cpp_int(-24), ell));
        for (std::int64_t n = 1; n < 300; ++n) CHECK(d.coeff(n) == oracle::mod(tau[static_cast<std::size_t>(n)], ell));
    }
    CHECK(delta(5, 100).series.coeff(5) == 0);
    CHECK(tau[5] == 4830);
    const auto d2 = delta(2, 10000).series;
    for (std::int64_t n = 1; n < 10000; ++n) {
        CHECK(d2.coeff(n) == oracle::mod(tau[static_cast<std::size_t>(n)], 2));
        CHECK((d2.coeff(n) != 0) == is_odd_square(n));
    }
    CHECK(delta(3, 10).meta == FormMeta{24, 1, 3});
}

TEST_CASE("j mod 2 against the exact integer expansion") {
    const auto c = oracle::j_coefficients(202);
    CHECK(c[0] == 1);
    CHECK(c[1] == 744);
    CHECK(c[2] == 196884);
    const auto j = j_mod2(201).series;
    CHECK(j.offset() == -1);
    for (std::int64_t n = -1; n <= 200; ++n) CHECK(j.coeff(n) == oracle::mod(c[static_cast<std::size_t>(n + 1)], 2));
}

TEST_CASE("holomorphize") {
    const auto h = holomorphize(partition_series(2, 1000), 2);
    CHECK(normalize(h.series).offset() == 3);
    CHECK(h.meta.twice_weight == -1 + 4);
    CHECK(h.meta.level == 576);
    const auto g = holomorphize(delta(3, 500), 1);
    CHECK(normalize(g.series).offset() >= 1);
    CHECK(g.meta.level == 576);
    CHECK(g.meta.twice_weight == 27);
    CHECK_THROWS(holomorphize(partition_series(3, 100), 0));
    for (std::uint32_t ell : {2u, 3u, 5u, 7u}) {
        for (unsigned m = 1; m <= 2; ++m) {
            CHECK(normalize(holomorphize(partition_series(ell, 2000), m).series).offset() >= 1);
            CHECK(normalize(holomorphize(j_mod2(2000), m).series).offset() >= 1);
        }
    }
}

TEST_CASE("multiply_theta0") {
    const auto d = delta(2, 400);
    const auto t = multiply_theta0(d);
    CHECK(t.series == d.series);
    CHECK(t.meta.twice_weight == 25);
    CHECK(t.meta.level == 4);
    const auto h = holomorphize(partition_series(2, 400), 2);
    CHECK(multiply_theta0(h).series == h.series);
    CHECK(multiply_theta0(h).meta.twice_weight == h.meta.twice_weight + 1);
    CHECK_THROWS(multiply_theta0(delta(3, 40)));
}

TEST_CASE("hecke_tp") {
    SUBCASE("a_1 of T_p h is a_p of h") {
        const auto d = delta(7, 1000);
        for (std::uint64_t p : {2u, 3u, 5u, 11u, 13u}) {
            const auto t = hecke_tp(d, p);
            CHECK(t.series.coeff(1) == d.series.coeff(static_cast<std::int64_t>(p)));
            CHECK(t.series.end() == (d.series.end() - 1) / static_cast<std::int64_t>(p) + 1);
            CHECK(t.meta == d.meta);
        }
    }
    SUBCASE("tau(2) and tau(3) kill Delta mod 3 and mod 2") {
        const auto t2 = hecke_tp(delta(3, 400), 2).series;
        CHECK(t2.nonzero_terms() == 0);
        const auto t3 = hecke_tp(delta(2, 400), 3).series;
        CHECK(t3.nonzero_terms() == 0);
    }
    SUBCASE("Delta is an eigenform with eigenvalue tau(p)") {
        const auto tau = oracle::ramanujan_tau(60);
        for (std::uint32_t ell : {2u, 3u, 5u}) {
            const auto d = delta(ell, 3000);
            for (std::uint64_t p : primes_up_to(50)) {
                const auto t = hecke_tp(d, p).series;
                const auto expect = d.series.scaled(oracle::mod(tau[p], ell));
                CHECK(agree_on_common_window(t, expect));
                CHECK(common_window(t, expect).end - common_window(t, expect).begin >= 50);
            }
        }
    }
    SUBCASE("Hecke operators commute") {
        const auto h = holomorphize(partition_series(5, 20000), 2);
        const auto d = delta(5, 20000);
        const std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs = {{5, 7}, {7, 11}, {5, 13}};
        for (auto [p, r] : pairs) {
            CHECK(agree_on_common_window(hecke_tp(hecke_tp(d, p), r).series, hecke_tp(hecke_tp(d, r), p).series));
        }
        CHECK(h.meta.twice_weight == 24);
        CHECK(agree_on_common_window(hecke_tp(hecke_tp(h, 7), 11).series, hecke_tp(hecke_tp(h, 11), 7).series));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS(hecke_tp(delta(5, 100), 4));
        CHECK_THROWS(hecke_tp(eta1(5, 100), 7));
        CHECK_THROWS(hecke_tp(holomorphize(partition_series(5, 1000), 2), 2));
        CHECK_THROWS(hecke_tp(partition_series(5, 100), 7));
    }
}

TEST_CASE("odd_ord_vanishing_check") {
    CHECK(odd_ord_vanishing_check(delta(2, 10001), 3, 10000));
    CHECK(odd_ord_vanishing_check(delta(7, 2000), 5, 1000));
    const TaggedForm one(QSeries::one(3, 500), FormMeta{0, 1, 3});
    CHECK(odd_ord_vanishing_check(one, 2, 400));
    // T_2 Delta = -24 Delta vanishes mod 3, so the implication has content here.
    const auto d3 = delta(3, 4001);
    CHECK(hecke_tp(d3, 2).series.nonzero_terms() == 0);
    CHECK(odd_ord_vanishing_check(d3, 2, 4000));
    for (std::int64_t n = 2; n <= 4000; n += 2) {
        if (valuation(static_cast<std::uint64_t>(n), 2) % 2 == 1) CHECK(d3.series.coeff(n) == 0);
    }
    CHECK_THROWS(odd_ord_vanishing_check(delta(2, 100), 3, 100));
}

TEST_CASE("scan_up_nonzero") {
    const auto d = delta(2, 10000);
    const auto rows = scan_up_nonzero(d, 30, 99);
    REQUIRE(rows.size() == 30);
    CHECK(rows[0].u == 1);
    CHECK(rows[0].primes.empty());
    CHECK(rows[24].primes.empty());
    for (const auto& row : rows) {
        for (auto p : row.primes) CHECK(d.series.coeff(static_cast<std::int64_t>(row.u * p)) != 0);
    }
    const auto d3 = delta(3, 5000);
    for (const auto& row : scan_up_nonzero(d3, 10, 400)) {
        for (std::uint64_t p : primes_up_to(400)) {
            const bool listed = std::find(row.primes.begin(), row.primes.end(), p) != row.primes.end();
            CHECK(listed == (d3.series.coeff(static_cast<std::int64_t>(row.u * p)) != 0));
        }
    }
    CHECK_THROWS(scan_up_nonzero(d, 200, 99));
}

TEST_CASE("pow2_square_search") {
    using S = Pow2SquareSolution;
    CHECK(pow2_square_search(7, 1, 40) == std::vector<S>{{1, 1, "3"}});
    CHECK(pow2_square_search(-1, 1, 40) == std::vector<S>{{1, 1, "1"}});
    CHECK(pow2_square_search(1, 1, 40) == std::vector<S>{{3, 1, "3"}});
    CHECK_THROWS(pow2_square_search(0, 1, 40));
    CHECK(squarefree_divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 6});

    for (std::int64_t n0 : {-7, -3, 1, 5, 17, 23}) {
        for (std::uint64_t level : {1u, 3u, 15u}) {
            for (const auto& s : pow2_square_search(n0, level, 120)) {
                const cpp_int lhs = (cpp_int(1) << s.m) + n0;
                const cpp_int y(s.y);
                CHECK(lhs == cpp_int(s.u) * y * y);
                CHECK((2 * level) % s.u == 0);
                CHECK(is_squarefree(s.u));
            }
        }
    }
    // Brute force for small m over all squarefree u | 2N.
    for (std::int64_t n0 : {-7, 1, 2, 9}) {
        std::vector<S> brute;
        for (unsigned m = 1; m <= 30; ++m) {
            const std::int64_t v = (std::int64_t{1} << m) + n0;
            for (std::uint64_t u : squarefree_divisors(30)) {
                if (v < 0 || v % static_cast<std::int64_t>(u) != 0) continue;
                const std::int64_t w = v / static_cast<std::int64_t>(u);
                const auto y = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(w))));
                if (y * y == w) brute.push_back({m, u, std::to_string(y)});
            }
        }
        CHECK(pow2_square_search(n0, 15, 30) == brute);
    }
}
