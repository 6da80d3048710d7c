#pragma once

#include <cstdint>

namespace lacuna::detail {

inline std::uint32_t reduce(std::int64_t v, std::uint32_t m) {
    const std::int64_t r = v % static_cast<std::int64_t>(m);
    return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (e != 0) {
        if (e & 1u) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return r;
}

// m prime, a not divisible by m.
inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) { return pow_mod(a, m - 2, m); }

}  // namespace lacuna::detail
