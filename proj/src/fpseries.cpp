#include "lacuna/fpseries.hpp"

#include "detail/modarith.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define LACUNA_HAVE_X86 1
#endif

namespace lacuna {

namespace {

using detail::mod_inverse;

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

void mask_tail(std::vector<std::uint64_t>& words, std::size_t length) {
    if (length % 64 != 0 && !words.empty()) {
        words.back() &= (std::uint64_t{1} << (length % 64)) - 1;
    }
}

void check_modulus(std::uint32_t ell) {
    thread_local std::uint32_t last_ok = 0;
    if (ell == last_ok) return;
    if (!is_prime_modulus(ell)) {
        throw std::invalid_argument("modulus " + std::to_string(ell) + " is not a prime below 2^31");
    }
    last_ok = ell;
}

void check_same_modulus(const QSeries& f, const QSeries& g) {
    if (f.modulus() != g.modulus()) {
        throw std::invalid_argument("modulus mismatch: " + std::to_string(f.modulus()) + " vs " +
                                    std::to_string(g.modulus()));
    }
}

// dst ^= (src << shift), truncated to dst_bits.
void xor_shifted_into(std::span<std::uint64_t> dst, std::size_t dst_bits,
                      std::span<const std::uint64_t> src, std::size_t shift) {
    const std::size_t dst_words = words_for(dst_bits);
    const std::size_t w = shift >> 6;
    const unsigned b = shift & 63;
    if (w >= dst_words) return;
    const std::size_t n = std::min(src.size(), dst_words - w);
    if (b == 0) {
        for (std::size_t k = 0; k < n; ++k) dst[k + w] ^= src[k];
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            dst[k + w] ^= src[k] << b;
            if (k + w + 1 < dst_words) dst[k + w + 1] ^= src[k] >> (64 - b);
        }
    }
}

struct Clmul128 {
    std::uint64_t lo;
    std::uint64_t hi;
};

Clmul128 clmul_soft(std::uint64_t a, std::uint64_t b) {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    while (b != 0) {
        const int i = std::countr_zero(b);
        b &= b - 1;
        lo ^= a << i;
        if (i != 0) hi ^= a >> (64 - i);
    }
    return {lo, hi};
}

void clmul_convolve_soft(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                         std::span<std::uint64_t> out) {
    const std::size_t words = out.size();
    for (std::size_t i = 0; i < a.size() && i < words; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < words; ++j) {
            if (b[j] == 0) continue;
            const auto p = clmul_soft(a[i], b[j]);
            out[i + j] ^= p.lo;
            if (i + j + 1 < words) out[i + j + 1] ^= p.hi;
        }
    }
}

#ifdef LACUNA_HAVE_X86
__attribute__((target("pclmul,sse4.1"))) void clmul_convolve_hw(std::span<const std::uint64_t> a,
                                                                 std::span<const std::uint64_t> b,
                                                                 std::span<std::uint64_t> out) {
    const std::size_t words = out.size();
    for (std::size_t i = 0; i < a.size() && i < words; ++i) {
        if (a[i] == 0) continue;
        const __m128i av = _mm_set_epi64x(0, static_cast<long long>(a[i]));
        const std::size_t jmax = std::min(b.size(), words - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            const __m128i bv = _mm_set_epi64x(0, static_cast<long long>(b[j]));
            const __m128i p = _mm_clmulepi64_si128(av, bv, 0x00);
            out[i + j] ^= static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
            if (i + j + 1 < words) out[i + j + 1] ^= static_cast<std::uint64_t>(_mm_extract_epi64(p, 1));
        }
    }
}
#endif

void clmul_convolve(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                    std::span<std::uint64_t> out) {
#ifdef LACUNA_HAVE_X86
    static const bool hw = __builtin_cpu_supports("pclmul");
    if (hw) {
        clmul_convolve_hw(a, b, out);
        return;
    }
#endif
    clmul_convolve_soft(a, b, out);
}

// First `length` packed bits of a series' window.
std::vector<std::uint64_t> packed_prefix(const QSeries& f, std::size_t length) {
    auto bits = f.packed_bits();
    std::vector<std::uint64_t> out(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(words_for(length)));
    mask_tail(out, length);
    return out;
}

std::size_t popcount_words(std::span<const std::uint64_t> w) {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
}

QSeries mul_gf2(const QSeries& f, const QSeries& g, std::size_t len, std::int64_t offset, MulPath path) {
    auto a = packed_prefix(f, len);
    auto b = packed_prefix(g, len);
    const std::size_t words = words_for(len);
    std::vector<std::uint64_t> r(words, 0);

    if (path == MulPath::automatic) {
        const std::size_t pop = std::min(popcount_words(a), popcount_words(b));
        path = (pop <= words || words < 4) ? MulPath::sparse : MulPath::clmul;
    }

    switch (path) {
        case MulPath::schoolbook:
            for (std::size_t i = 0; i < len; ++i) {
                if (((a[i >> 6] >> (i & 63)) & 1u) == 0) continue;
                for (std::size_t j = 0; i + j < len; ++j) {
                    if ((b[j >> 6] >> (j & 63)) & 1u) r[(i + j) >> 6] ^= std::uint64_t{1} << ((i + j) & 63);
                }
            }
            break;
        case MulPath::sparse: {
            if (popcount_words(a) > popcount_words(b)) std::swap(a, b);
            for (std::size_t wi = 0; wi < a.size(); ++wi) {
                std::uint64_t word = a[wi];
                while (word != 0) {
                    const auto bit = static_cast<std::size_t>(std::countr_zero(word));
                    word &= word - 1;
                    xor_shifted_into(r, len, b, wi * 64 + bit);
                }
            }
            break;
        }
        case MulPath::clmul:
            clmul_convolve(a, b, r);
            break;
        case MulPath::automatic:
            break;
    }
    mask_tail(r, len);
    return QSeries::from_packed(offset, len, std::move(r));
}

QSeries mul_modp(const QSeries& f, const QSeries& g, std::size_t len, std::int64_t offset, MulPath path) {
    const std::uint64_t ell = f.modulus();
    std::vector<std::uint32_t> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
        a[i] = f.at(i);
        b[i] = g.at(i);
    }
    SeriesBuilder out(f.modulus(), offset, len);

    if (path == MulPath::schoolbook) {
        std::vector<std::uint64_t> r(len, 0);
        for (std::size_t i = 0; i < len; ++i) {
            for (std::size_t j = 0; i + j < len; ++j) {
                r[i + j] = (r[i + j] + std::uint64_t{a[i]} * b[j]) % ell;
            }
        }
        for (std::size_t i = 0; i < len; ++i) out.set(i, static_cast<std::uint32_t>(r[i]));
        return std::move(out).freeze();
    }
    if (path == MulPath::clmul) {
        throw std::invalid_argument("clmul multiplication path requires modulus 2");
    }

    auto count_nz = [](const std::vector<std::uint32_t>& v) {
        return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto x) { return x != 0; }));
    };
    if (count_nz(a) > count_nz(b)) std::swap(a, b);

    // Each accumulator absorbs at most `budget` products before it must be reduced.
    const std::uint64_t max_product = (ell - 1) * (ell - 1);
    const std::uint64_t budget = std::numeric_limits<std::uint64_t>::max() / std::max<std::uint64_t>(max_product, 1) - 1;
    std::vector<std::uint64_t> acc(len, 0);
    std::uint64_t pending = 0;
    for (std::size_t i = 0; i < len; ++i) {
        const std::uint64_t c = a[i];
        if (c == 0) continue;
        if (++pending > budget) {
            for (auto& x : acc) x %= ell;
            pending = 1;
        }
        const std::size_t n = len - i;
        std::uint64_t* dst = acc.data() + i;
        const std::uint32_t* src = b.data();
        for (std::size_t j = 0; j < n; ++j) dst[j] += c * src[j];
    }
    for (std::size_t i = 0; i < len; ++i) out.set(i, static_cast<std::uint32_t>(acc[i] % ell));
    return std::move(out).freeze();
}

}  // namespace

bool is_prime_modulus(std::uint32_t ell) {
    if (ell < 2 || ell >= (std::uint32_t{1} << 31)) return false;
    if (ell % 2 == 0) return ell == 2;
    for (std::uint32_t d = 3; d <= ell / d; d += 2) {
        if (ell % d == 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------- QSeries

QSeries::QSeries(std::uint32_t modulus, std::int64_t offset, std::span<const std::uint32_t> residues) {
    SeriesBuilder b(modulus, offset, residues.size());
    for (std::size_t i = 0; i < residues.size(); ++i) {
        if (residues[i] >= modulus) {
            throw std::invalid_argument("coefficient " + std::to_string(residues[i]) + " not reduced mod " +
                                        std::to_string(modulus));
        }
        b.set(i, residues[i]);
    }
    *this = std::move(b).freeze();
}

QSeries QSeries::from_integers(std::uint32_t modulus, std::int64_t offset, std::span<const std::int64_t> values) {
    SeriesBuilder b(modulus, offset, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) b.set(i, detail::reduce(values[i], modulus));
    return std::move(b).freeze();
}

QSeries QSeries::zero(std::uint32_t modulus, std::int64_t offset, std::size_t length) {
    return SeriesBuilder(modulus, offset, length).freeze();
}

QSeries QSeries::one(std::uint32_t modulus, std::size_t length) {
    SeriesBuilder b(modulus, 0, length);
    if (length > 0) b.set(0, 1);
    return std::move(b).freeze();
}

QSeries QSeries::from_terms(std::uint32_t modulus, std::int64_t offset, std::int64_t end,
                            std::span<const std::pair<std::int64_t, std::int64_t>> terms) {
    if (end < offset) throw std::invalid_argument("window end precedes offset");
    SeriesBuilder b(modulus, offset, static_cast<std::size_t>(end - offset));
    for (const auto& [e, v] : terms) {
        if (e < offset || e >= end) throw std::out_of_range("term exponent outside window");
        const auto i = static_cast<std::size_t>(e - offset);
        b.set(i, static_cast<std::uint32_t>((b.get(i) + std::uint64_t{detail::reduce(v, modulus)}) % modulus));
    }
    return std::move(b).freeze();
}

QSeries QSeries::from_packed(std::int64_t offset, std::size_t length, std::vector<std::uint64_t> words) {
    if (words.size() != words_for(length)) throw std::invalid_argument("packed word count does not match length");
    mask_tail(words, length);
    QSeries s;
    s.modulus_ = 2;
    s.offset_ = offset;
    s.length_ = length;
    s.bits_ = std::move(words);
    return s;
}

std::uint32_t QSeries::coeff(std::int64_t n) const {
    if (n < offset_ || n >= end()) {
        throw std::out_of_range("exponent " + std::to_string(n) + " outside window [" + std::to_string(offset_) +
                                ", " + std::to_string(end()) + ")");
    }
    return at(static_cast<std::size_t>(n - offset_));
}

std::uint32_t QSeries::coeff_or_zero(std::int64_t n) const {
    if (n < offset_) return 0;
    return coeff(n);
}

std::vector<std::uint32_t> QSeries::coefficients() const {
    std::vector<std::uint32_t> out(length_);
    for (std::size_t i = 0; i < length_; ++i) out[i] = at(i);
    return out;
}

std::size_t QSeries::nonzero_terms() const {
    if (modulus_ == 2) return popcount_words(bits_);
    return static_cast<std::size_t>(std::count_if(residues_.begin(), residues_.end(), [](auto x) { return x != 0; }));
}

std::vector<std::int64_t> QSeries::support() const {
    std::vector<std::int64_t> out;
    if (modulus_ == 2) {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word != 0) {
                out.push_back(offset_ + static_cast<std::int64_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
                word &= word - 1;
            }
        }
        return out;
    }
    for (std::size_t i = 0; i < length_; ++i) {
        if (residues_[i] != 0) out.push_back(offset_ + static_cast<std::int64_t>(i));
    }
    return out;
}

QSeries QSeries::shifted(std::int64_t k) const {
    QSeries s = *this;
    s.offset_ += k;
    return s;
}

QSeries QSeries::truncated(std::int64_t new_end) const {
    if (new_end >= end()) return *this;
    const auto len = static_cast<std::size_t>(std::max<std::int64_t>(new_end - offset_, 0));
    SeriesBuilder b(modulus_, offset_, len);
    for (std::size_t i = 0; i < len; ++i) b.set(i, at(i));
    return std::move(b).freeze();
}

QSeries QSeries::scaled(std::uint32_t c) const {
    c %= modulus_;
    SeriesBuilder b(modulus_, offset_, length_);
    for (std::size_t i = 0; i < length_; ++i) {
        b.set(i, static_cast<std::uint32_t>(std::uint64_t{at(i)} * c % modulus_));
    }
    return std::move(b).freeze();
}

QSeries QSeries::negated() const {
    if (modulus_ == 2) return *this;
    return scaled(modulus_ - 1);
}

bool operator==(const QSeries& a, const QSeries& b) {
    return a.modulus_ == b.modulus_ && a.offset_ == b.offset_ && a.length_ == b.length_ &&
           a.residues_ == b.residues_ && a.bits_ == b.bits_;
}

// ---------------------------------------------------------- SeriesBuilder

SeriesBuilder::SeriesBuilder(std::uint32_t modulus, std::int64_t offset, std::size_t length)
    : modulus_(modulus), offset_(offset), length_(length) {
    check_modulus(modulus);
    if (modulus == 2) {
        bits_.assign(words_for(length), 0);
    } else {
        residues_.assign(length, 0);
    }
}

void SeriesBuilder::set(std::size_t i, std::uint32_t residue) noexcept {
    if (modulus_ == 2) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (residue & 1u) {
            bits_[i >> 6] |= mask;
        } else {
            bits_[i >> 6] &= ~mask;
        }
    } else {
        residues_[i] = residue;
    }
}

std::uint32_t SeriesBuilder::get(std::size_t i) const noexcept {
    if (modulus_ == 2) return static_cast<std::uint32_t>((bits_[i >> 6] >> (i & 63)) & 1u);
    return residues_[i];
}

QSeries SeriesBuilder::freeze() && {
    QSeries s;
    s.modulus_ = modulus_;
    s.offset_ = offset_;
    s.length_ = length_;
    s.residues_ = std::move(residues_);
    s.bits_ = std::move(bits_);
    return s;
}

// ------------------------------------------------------------- operations

QSeries add(const QSeries& f, const QSeries& g) {
    check_same_modulus(f, g);
    const std::int64_t begin = std::min(f.offset(), g.offset());
    const std::int64_t end = std::min(f.end(), g.end());
    if (end <= begin) throw std::invalid_argument("add: result window is empty");
    const auto len = static_cast<std::size_t>(end - begin);

    if (f.modulus() == 2) {
        std::vector<std::uint64_t> r(words_for(len), 0);
        xor_shifted_into(r, len, f.packed_bits(), static_cast<std::size_t>(f.offset() - begin));
        xor_shifted_into(r, len, g.packed_bits(), static_cast<std::size_t>(g.offset() - begin));
        mask_tail(r, len);
        return QSeries::from_packed(begin, len, std::move(r));
    }
    const std::uint32_t ell = f.modulus();
    SeriesBuilder b(ell, begin, len);
    for (std::size_t i = 0; i < len; ++i) {
        const std::int64_t n = begin + static_cast<std::int64_t>(i);
        const std::uint32_t s = f.coeff_or_zero(n) + g.coeff_or_zero(n);
        b.set(i, s >= ell ? s - ell : s);
    }
    return std::move(b).freeze();
}

QSeries sub(const QSeries& f, const QSeries& g) { return add(f, g.negated()); }

QSeries mul(const QSeries& f, const QSeries& g, MulPath path) {
    check_same_modulus(f, g);
    if (f.empty() || g.empty()) throw std::invalid_argument("mul: empty operand");
    const std::size_t len = std::min(f.length(), g.length());
    const std::int64_t offset = f.offset() + g.offset();
    if (f.modulus() == 2) return mul_gf2(f, g, len, offset, path);
    return mul_modp(f, g, len, offset, path);
}

QSeries inv(const QSeries& f) {
    const QSeries n = normalize(f);
    if (n.empty()) throw std::domain_error("inv: series is zero on its window");
    const std::uint32_t ell = n.modulus();
    const std::size_t len = n.length();

    if (ell == 2) {
        std::vector<std::size_t> taps;
        for (auto e : n.support()) {
            if (e > n.offset()) taps.push_back(static_cast<std::size_t>(e - n.offset()));
        }
        std::vector<std::uint8_t> g(len, 0);
        g[0] = 1;
        for (std::size_t i = 1; i < len; ++i) {
            std::uint8_t x = 0;
            for (auto k : taps) {
                if (k > i) break;
                x ^= g[i - k];
            }
            g[i] = x;
        }
        SeriesBuilder b(2, -n.offset(), len);
        for (std::size_t i = 0; i < len; ++i) b.set(i, g[i]);
        return std::move(b).freeze();
    }

    std::vector<std::pair<std::size_t, std::uint64_t>> taps;
    for (std::size_t i = 1; i < len; ++i) {
        if (n.at(i) != 0) taps.emplace_back(i, n.at(i));
    }
    const std::uint64_t lead_inv = mod_inverse(n.at(0), ell);
    const std::uint64_t max_product = std::uint64_t{ell - 1} * (ell - 1);
    const std::uint64_t budget = std::numeric_limits<std::uint64_t>::max() / max_product - 1;

    std::vector<std::uint32_t> g(len, 0);
    g[0] = static_cast<std::uint32_t>(lead_inv);
    for (std::size_t i = 1; i < len; ++i) {
        std::uint64_t acc = 0;
        std::uint64_t pending = 0;
        for (const auto& [k, c] : taps) {
            if (k > i) break;
            acc += c * g[i - k];
            if (++pending == budget) {
                acc %= ell;
                pending = 1;
            }
        }
        acc %= ell;
        g[i] = static_cast<std::uint32_t>((ell - acc) % ell * lead_inv % ell);
    }
    return QSeries(ell, -n.offset(), g);
}

QSeries frobenius_pow(const QSeries& f, unsigned m) {
    if (f.empty()) throw std::invalid_argument("frobenius_pow: empty series");
    const std::uint32_t ell = f.modulus();
    std::int64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (q > std::numeric_limits<std::int64_t>::max() / ell) throw std::overflow_error("frobenius_pow: l^m overflows");
        q *= ell;
    }
    const auto len = static_cast<std::int64_t>(f.length());
    if (len > std::numeric_limits<std::int64_t>::max() / q ||
        std::abs(f.offset()) > std::numeric_limits<std::int64_t>::max() / q) {
        throw std::overflow_error("frobenius_pow: dilated window overflows");
    }
    SeriesBuilder b(ell, f.offset() * q, static_cast<std::size_t>(len * q));
    for (std::size_t i = 0; i < f.length(); ++i) {
        if (const auto c = f.at(i); c != 0) b.set(i * static_cast<std::size_t>(q), c);
    }
    return std::move(b).freeze();
}

QSeries pow(const QSeries& f, std::uint64_t e) {
    if (f.empty()) throw std::invalid_argument("pow: empty series");
    if (e == 0) return QSeries::one(f.modulus(), f.length());
    QSeries base = f;
    QSeries result;
    bool have = false;
    while (e != 0) {
        if (e & 1u) {
            result = have ? mul(result, base) : base;
            have = true;
        }
        e >>= 1;
        if (e != 0) base = mul(base, base);
    }
    return result;
}

std::uint64_t nonzero_count(const QSeries& f, std::int64_t x) {
    if (x >= f.end()) {
        throw std::out_of_range("nonzero_count: X = " + std::to_string(x) + " beyond precision end " +
                                std::to_string(f.end()));
    }
    if (x < f.offset()) return 0;
    const auto upto = static_cast<std::size_t>(x - f.offset()) + 1;
    if (f.modulus() == 2) {
        auto bits = f.packed_bits();
        std::uint64_t c = 0;
        const std::size_t full = upto / 64;
        for (std::size_t w = 0; w < full; ++w) c += static_cast<std::uint64_t>(std::popcount(bits[w]));
        if (upto % 64 != 0) {
            c += static_cast<std::uint64_t>(std::popcount(bits[full] & ((std::uint64_t{1} << (upto % 64)) - 1)));
        }
        return c;
    }
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < upto; ++i) c += f.at(i) != 0;
    return c;
}

QSeries normalize(const QSeries& f) {
    std::size_t first = 0;
    while (first < f.length() && f.at(first) == 0) ++first;
    if (first == 0) return f;
    const std::size_t len = f.length() - first;
    SeriesBuilder b(f.modulus(), f.offset() + static_cast<std::int64_t>(first), len);
    for (std::size_t i = 0; i < len; ++i) b.set(i, f.at(first + i));
    return std::move(b).freeze();
}

Window common_window(const QSeries& f, const QSeries& g) {
    return {std::max(f.offset(), g.offset()), std::min(f.end(), g.end())};
}

bool agree_on_common_window(const QSeries& f, const QSeries& g) {
    if (f.modulus() != g.modulus()) return false;
    const Window w = common_window(f, g);
    for (std::int64_t n = w.begin; n < w.end; ++n) {
        if (f.coeff(n) != g.coeff(n)) return false;
    }
    return true;
}

}  // namespace lacuna
