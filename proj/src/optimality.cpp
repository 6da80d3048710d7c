#include "lacuna/optimality.hpp"

#include "lacuna/arith.hpp"
#include "detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lacuna {

namespace {

std::vector<std::uint8_t> prime_flags(std::uint64_t limit) {
    std::vector<std::uint8_t> flags(limit + 1, 0);
    for_each_prime(limit, [&](std::uint64_t p) { flags[p] = 1; });
    return flags;
}

void check_a_set(std::span<const std::uint64_t> a_set, std::uint64_t x) {
    for (auto a : a_set) {
        if (a < 1 || a > x) throw std::invalid_argument("A must be a subset of [1, X]");
    }
}

}  // namespace

std::uint64_t default_z(std::uint64_t x) {
    if (x < 2) return 1;
    return static_cast<std::uint64_t>(std::llround(std::exp(std::pow(std::log(static_cast<double>(x)), 0.1))));
}

double l_one_minus_4d(std::uint64_t d) {
    const auto dec = fundamental_decomposition(d);
    double l = l_one(dec.fund);
    // L(1, chi_{-4d}) = L(1, chi_fund) * prod_{p | sq} (1 - chi_fund(p)/p).
    std::uint64_t rest = dec.sq;
    for (std::uint64_t p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        l *= 1 - static_cast<double>(kronecker(dec.fund, static_cast<std::int64_t>(p))) / static_cast<double>(p);
    }
    return l;
}

std::vector<DChoice> choose_D(std::uint64_t z, std::uint64_t d_count) {
    if (z < 3) throw std::invalid_argument("choose_D: Z must be at least 3");
    if (d_count < 1) throw std::invalid_argument("choose_D: d_count must be positive");
    std::vector<DChoice> all;
    for (std::uint64_t d = z | 1u; d <= 2 * z; d += 2) {
        if (!is_squarefree(d)) continue;
        all.push_back({d, l_one_minus_4d(d), d % 4 == 1});
    }
    if (all.size() < d_count) {
        throw std::invalid_argument("choose_D: only " + std::to_string(all.size()) +
                                    " odd squarefree d in [Z, 2Z], fewer than d_count");
    }
    std::sort(all.begin(), all.end(), [](const DChoice& a, const DChoice& b) {
        return a.l_value != b.l_value ? a.l_value < b.l_value : a.d < b.d;
    });
    all.resize(d_count);
    return all;
}

std::uint64_t max_k(std::uint64_t x, std::uint64_t z) {
    if (z == 0) throw std::invalid_argument("max_k: Z must be positive");
    const std::uint64_t q = x / (2 * z);
    auto k = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(q)));
    while (k * k > q) --k;
    while ((k + 1) * (k + 1) <= q) ++k;
    return k;
}

std::vector<std::uint64_t> build_A(std::span<const std::uint64_t> d_set, std::uint64_t x, std::uint64_t z) {
    if (d_set.empty()) throw std::invalid_argument("build_A: D is empty");
    if (x < 2 * z) throw std::invalid_argument("build_A: need X >= 2Z");
    const std::uint64_t kmax = max_k(x, z);
    std::vector<std::uint64_t> a;
    a.reserve(d_set.size() * kmax);
    for (auto d : d_set) {
        for (std::uint64_t k = 1; k <= kmax; ++k) a.push_back(d * k * k);
    }
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

RepCounts::RepCounts(std::uint64_t limit) : limit_(limit), counts_(limit + 1, 0) {}

RepCounts rep_counts(std::span<const std::uint64_t> a_set, std::uint64_t x, unsigned threads) {
    check_a_set(a_set, x);
    const std::uint64_t limit = x / 2;
    const auto is_p = prime_flags(limit);
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(a_set.size(), 1));
    std::vector<RepCounts> partial(workers, RepCounts(limit));
    detail::parallel_for(workers, static_cast<unsigned>(workers), [&](std::size_t w) {
        auto& table = partial[w].raw_mut();
        for (std::size_t i = w; i < a_set.size(); i += workers) {
            const std::uint64_t a = a_set[i];
            for (std::uint64_t b = 1; a + b * b <= limit; ++b) {
                const std::uint64_t p = a + b * b;
                if (is_p[p]) ++table[p];
            }
        }
    });
    RepCounts out = std::move(partial[0]);
    for (std::size_t w = 1; w < workers; ++w) {
        auto src = partial[w].raw();
        auto& dst = out.raw_mut();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
    return out;
}

RepCounts rep_counts_by_prime(std::span<const std::uint64_t> a_set, std::uint64_t x) {
    check_a_set(a_set, x);
    const std::uint64_t limit = x / 2;
    std::vector<std::uint8_t> member(x + 1, 0);
    for (auto a : a_set) member[a] = 1;
    RepCounts out(limit);
    auto& table = out.raw_mut();
    for_each_prime(limit, [&](std::uint64_t p) {
        std::uint32_t r = 0;
        for (std::uint64_t b = 1; b * b < p; ++b) r += member[p - b * b];
        table[p] = r;
    });
    return out;
}

MomentReport moments(std::span<const std::uint32_t> r_values) {
    MomentReport m;
    for (std::uint32_t r : r_values) {
        if (r == 0) continue;
        m.sum_r += r;
        m.sum_r2 += std::uint64_t{r} * r;
        ++m.represented;
    }
    if (m.sum_r2 > 0) {
        const unsigned __int128 num = static_cast<unsigned __int128>(m.sum_r) * m.sum_r;
        m.cs_bound = static_cast<std::uint64_t>((num + m.sum_r2 - 1) / m.sum_r2);
    }
    if (m.represented < m.cs_bound) {
        throw std::logic_error("Cauchy-Schwarz violated: represented " + std::to_string(m.represented) + " < " +
                               std::to_string(m.cs_bound));
    }
    return m;
}

MomentReport moments(const RepCounts& r) { return moments(r.raw()); }

ConstructionReport run_construction(const ConstructionParams& params) {
    ConstructionReport rep;
    rep.params = params;
    rep.z = params.z != 0 ? params.z : default_z(params.x);
    if (rep.z < 10) {
        rep.warnings.push_back("Z = " + std::to_string(rep.z) +
                               " is below 10; the default Z formula is degenerate at this X");
    }
    if (rep.z < 3) throw std::invalid_argument("run_construction: Z must be at least 3");
    if (params.x < 2 * rep.z) throw std::invalid_argument("run_construction: need X >= 2Z");

    rep.chosen = choose_D(rep.z, params.d_count);
    std::vector<std::uint64_t> ds;
    for (const auto& c : rep.chosen) ds.push_back(c.d);
    rep.k_max = max_k(params.x, rep.z);
    rep.a_set = build_A(ds, params.x, rep.z);

    const RepCounts r = rep_counts(rep.a_set, params.x, params.threads);
    rep.moments = moments(r);

    const double dx = static_cast<double>(params.x);
    const double lx = std::log(dx);
    rep.normalized_size = static_cast<double>(rep.a_set.size()) * std::log(lx) / std::sqrt(dx);
    rep.pi_half_x = prime_count(params.x / 2);
    rep.represented_fraction =
        rep.pi_half_x == 0 ? 0.0 : static_cast<double>(rep.moments.represented) / static_cast<double>(rep.pi_half_x);
    rep.sum_r_normalized = static_cast<double>(rep.moments.sum_r) * lx / dx;
    rep.sum_r2_normalized = static_cast<double>(rep.moments.sum_r2) * lx / dx;
    return rep;
}

}  // namespace lacuna
