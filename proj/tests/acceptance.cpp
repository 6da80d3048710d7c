// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Each criterion also fails if it exceeds its wall-clock limit.

#include "lacuna/arith.hpp"
#include "lacuna/cli.hpp"
#include "lacuna/fpseries.hpp"
#include "lacuna/optimality.hpp"
#include "lacuna/qforms.hpp"
#include "lacuna/sievelab.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lacuna;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool is_one_on_window(const QSeries& s) {
    for (std::int64_t n = s.offset(); n < s.end(); ++n) {
        if (s.coeff(n) != (n == 0 ? 1u : 0u)) return false;
    }
    return true;
}

double sqrt_over_loglog(double x) { return std::sqrt(x) / std::log(std::log(x)); }

std::string cli_output(std::vector<std::string> args) {
    args.insert(args.begin(), "lacuna");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return std::to_string(code) + "\n" + out.str();
}

Outcome c1() {
    for (std::uint32_t ell : {2u, 3u, 5u}) {
        if (!(eta1(ell, 100000).series == eta1_product(ell, 100000).series)) {
            return {false, fmt("mismatch at l=%u", ell)};
        }
    }
    return {true, "l in {2,3,5}, prec 1e5"};
}

Outcome c2() {
    for (std::uint32_t ell : {2u, 3u, 5u, 7u, 11u}) {
        const auto prod = mul(eta1(ell, 100000).series, partition_series(ell, 100000).series);
        if (!is_one_on_window(prod)) return {false, fmt("product is not 1 at l=%u", ell)};
    }
    return {true, "l in {2,3,5,7,11}, prec 1e5"};
}

Outcome c3() {
    const std::vector<std::pair<std::uint32_t, std::int64_t>> cong = {{5, 4}, {7, 5}, {11, 6}};
    std::size_t checked = 0;
    for (auto [ell, r] : cong) {
        const auto f = partition_series(ell, 100000).series;
        for (std::int64_t n = r; 24 * n - 1 < 100000; n += ell) {
            if (f.coeff(24 * n - 1) != 0) return {false, fmt("p(%lld) != 0 mod %u", static_cast<long long>(n), ell)};
            ++checked;
        }
    }
    return {true, fmt("%zu coefficients checked", checked)};
}

Outcome c4() {
    std::string detail;
    bool pass = true;
    for (std::uint32_t ell : {2u, 3u, 5u, 7u, 13u}) {
        const auto p = partition_numbers_mod(ell, 1000001);
        std::uint64_t count = 0;
        std::size_t next = 0;
        const std::vector<std::uint64_t> xs{10000, 100000, 1000000};
        for (std::uint64_t n = 1; n <= 1000000; ++n) {
            count += p[n] != 0;
            if (n == xs[next]) {
                const double bound = sqrt_over_loglog(static_cast<double>(n));
                pass = pass && static_cast<double>(count) >= bound;
                if (n == 1000000) detail += fmt(" l=%u:N=%llu", ell, static_cast<unsigned long long>(count));
                ++next;
                if (next == xs.size()) break;
            }
        }
    }
    return {pass, fmt("bound at 1e6 is %.1f;", sqrt_over_loglog(1e6)) + detail};
}

Outcome c5() {
    const auto c = oracle::j_coefficients(202);
    const auto small = j_mod2(201).series;
    for (std::int64_t n = -1; n <= 200; ++n) {
        if (small.coeff(n) != oracle::mod(c[static_cast<std::size_t>(n + 1)], 2)) {
            return {false, fmt("j mod 2 disagrees with the integer oracle at n=%lld", static_cast<long long>(n))};
        }
    }
    const auto j = j_mod2(1000001).series;
    const auto count = nonzero_count(j, 1000000) - nonzero_count(j, 0);
    const double bound = sqrt_over_loglog(1e6);
    return {static_cast<double>(count) >= bound,
            fmt("#{1<=n<=1e6 : c(n) odd} = %llu, bound %.1f", static_cast<unsigned long long>(count), bound)};
}

Outcome c6() {
    const auto e = eta1(2, 1000001).series;
    if (nonzero_count(e, 10000) != 33) return {false, "count at 1e4 is not 33"};
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10; ++i) {
        const std::int64_t x = 1 + static_cast<std::int64_t>(rng() % 1000000);
        std::uint64_t direct = 0;
        for (std::int64_t n = -1000; n <= 1000; ++n) {
            if ((6 * n + 1) * (6 * n + 1) <= x) ++direct;
        }
        if (nonzero_count(e, x) != direct) return {false, fmt("mismatch at X=%lld", static_cast<long long>(x))};
    }
    return {true, "33 at 1e4; ten random X agree"};
}

Outcome c7() {
    const auto tau = oracle::ramanujan_tau(60);
    for (std::uint32_t ell : {2u, 3u, 5u}) {
        const auto d = delta(ell, 3000);
        for (std::uint64_t p : primes_up_to(50)) {
            const auto t = hecke_tp(d, p).series;
            if (t.coeff(1) != oracle::mod(tau[p], ell)) return {false, fmt("a_1(T_%llu Delta) mod %u", static_cast<unsigned long long>(p), ell)};
            if (!agree_on_common_window(t, d.series.scaled(oracle::mod(tau[p], ell)))) {
                return {false, fmt("eigenform check p=%llu l=%u", static_cast<unsigned long long>(p), ell)};
            }
        }
    }
    if (!odd_ord_vanishing_check(delta(2, 10001), 3, 10000)) return {false, "odd_ord check failed"};
    return {true, "p <= 50, l in {2,3,5}; odd_ord check true"};
}

Outcome c8() {
    if (class_number(-4) != 1 || class_number(-20) != 2 || class_number(-23) != 3) return {false, "class numbers"};
    if (std::abs(l_one(-4) - std::numbers::pi / 4) >= 1e-9) return {false, "L(1, chi_-4)"};
    if (std::abs(l_one(-3) - std::numbers::pi / (3 * std::sqrt(3.0))) >= 1e-9) return {false, "L(1, chi_-3)"};
    double worst = 0;
    std::size_t n = 0;
    for (std::int64_t d = -3; d > -10000; --d) {
        if (!is_fundamental_discriminant(d)) continue;
        const double formula = l_one_class_number_formula(d);
        worst = std::max(worst, std::abs(l_one(d) - formula) / formula);
        ++n;
    }
    return {worst < 1e-9, fmt("%zu discriminants, max relative gap %.2e", n, worst)};
}

Outcome c9() {
    if (count_prime_reps(1, 1, 100).count != 4 || count_prime_reps(2, 1, 50).count != 2 ||
        count_prime_reps(1, 2, 20).count != 1) {
        return {false, "worked examples"};
    }
    for (std::uint64_t u = 1; u <= 3; ++u) {
        for (std::uint64_t a = 1; a <= 200; ++a) {
            std::uint64_t naive = 0;
            std::vector<bool> seen(10001, false);
            for (std::uint64_t m = 1; a + m * m <= 10000; ++m) {
                const std::uint64_t v = a + m * m;
                if (v % u == 0 && oracle::trial_prime(v / u) && !seen[v / u]) {
                    seen[v / u] = true;
                    ++naive;
                }
            }
            if (count_prime_reps(a, u, 10000).count != naive) {
                return {false, fmt("naive mismatch a=%llu u=%llu", static_cast<unsigned long long>(a),
                                   static_cast<unsigned long long>(u))};
            }
        }
    }
    std::mt19937_64 rng(9);
    double max_ratio = 0;
    for (int i = 0; i < 100; ++i) {
        const auto r = count_prime_reps(1 + rng() % 10000, 1, 1000000);
        if (!std::isfinite(r.ratio)) return {false, "non-finite ratio"};
        max_ratio = std::max(max_ratio, r.ratio);
    }
    return {true, fmt("max count/bound over 100 random a at X=1e6: %.4f", max_ratio)};
}

Outcome c10() {
    ASpec spec;
    spec.kind = ASpec::Kind::random_subset;
    spec.random_size = 100;
    const auto r = theorem2_experiment(spec, 1, 1000000, 20170417, 4);
    const bool bound_m1 = r.aggregate_m1.represented <= r.per_a_total;
    const bool bound_m0 = r.aggregate.represented <= r.per_a_total + r.m0_extra;
    const std::vector<std::string> cmd{"sieve-agg", "--random", "100", "--u", "1", "--x", "1000000", "--seed", "20170417"};
    auto threaded = cmd;
    threaded.insert(threaded.end(), {"--threads", "4"});
    const auto first = cli_output(cmd);
    const bool repro = first == cli_output(cmd) && first == cli_output(threaded) && first.rfind("0\n", 0) == 0;
    return {bound_m1 && bound_m0 && repro,
            fmt("represented %llu (m>=1: %llu) <= sum %llu; represented/rhs %.4f; reproducible %s",
                static_cast<unsigned long long>(r.aggregate.represented),
                static_cast<unsigned long long>(r.aggregate_m1.represented),
                static_cast<unsigned long long>(r.per_a_total), r.aggregate.ratio, repro ? "yes" : "no")};
}

Outcome c11() {
    ConstructionParams p;
    p.x = 1000000;
    p.z = 100;
    p.d_count = 5;
    p.threads = 4;
    const auto rep = run_construction(p);
    const auto& m = rep.moments;
    const unsigned __int128 num = static_cast<unsigned __int128>(m.sum_r) * m.sum_r;
    const bool cs = m.sum_r2 == 0 || static_cast<unsigned __int128>(m.represented) * m.sum_r2 >= num;
    const bool paths = rep_counts(rep.a_set, p.x, 4) == rep_counts_by_prime(rep.a_set, p.x);
    return {cs && paths, fmt("|A|=%zu, represented %llu >= cs_bound %llu, fraction %.4f, two paths %s", rep.a_set.size(),
                             static_cast<unsigned long long>(m.represented),
                             static_cast<unsigned long long>(m.cs_bound), rep.represented_fraction,
                             paths ? "equal" : "differ")};
}

Outcome c12() {
    using S = Pow2SquareSolution;
    const bool ok = pow2_square_search(7, 1, 40) == std::vector<S>{{1, 1, "3"}} &&
                    pow2_square_search(-1, 1, 40) == std::vector<S>{{1, 1, "1"}} &&
                    pow2_square_search(1, 1, 40) == std::vector<S>{{3, 1, "3"}};
    return {ok, "n0 in {7,-1,1}, m_max 40"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "eta1 theta form equals product form", 5, c1},
        {2, "eta1 times partition series is 1", 10, c2},
        {3, "Ramanujan congruences", 10, c3},
        {4, "partition nonvanishing count bound", 120, c4},
        {5, "j coefficient parity count bound", 120, c5},
        {6, "eta1 mod 2 nonzero count", 1, c6},
        {7, "Hecke eigenvalues of Delta", 30, c7},
        {8, "class numbers and L(1)", 60, c8},
        {9, "per-a prime representation counts", 30, c9},
        {10, "aggregate represented primes", 120, c10},
        {11, "optimality construction", 120, c11},
        {12, "2^m + n0 = u y^2 search", 1, c12},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("criterion %2d %s: %s (%.2fs, limit %.0fs) %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs,
                    c.limit_s, o.detail.c_str(), in_time ? "" : " [time limit exceeded]");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
