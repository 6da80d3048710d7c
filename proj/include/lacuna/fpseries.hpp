#pragma once

// Truncated Laurent q-series with coefficients in F_l for a small prime l.
//
// A QSeries stores the coefficients of q^offset, ..., q^(end-1); everything
// at or above `end` is unknown. Exponents below `offset` are treated as zero
// by the arithmetic (Laurent convention). Values are immutable once built.
//
// Storage is one 32-bit residue per coefficient for l > 2 and packed 64-bit
// words for l = 2.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lacuna {

class QSeries {
public:
    QSeries() = default;

    // Residues must already lie in [0, modulus).
    QSeries(std::uint32_t modulus, std::int64_t offset, std::span<const std::uint32_t> residues);

    // Arbitrary integers, reduced mod `modulus`.
    static QSeries from_integers(std::uint32_t modulus, std::int64_t offset,
                                 std::span<const std::int64_t> values);
    static QSeries zero(std::uint32_t modulus, std::int64_t offset, std::size_t length);
    // The constant 1 on the window [0, length).
    static QSeries one(std::uint32_t modulus, std::size_t length);
    // Series with the given (exponent, value) terms on window [offset, end).
    static QSeries from_terms(std::uint32_t modulus, std::int64_t offset, std::int64_t end,
                              std::span<const std::pair<std::int64_t, std::int64_t>> terms);

    std::uint32_t modulus() const noexcept { return modulus_; }
    std::int64_t offset() const noexcept { return offset_; }
    std::size_t length() const noexcept { return length_; }
    std::int64_t end() const noexcept { return offset_ + static_cast<std::int64_t>(length_); }
    bool empty() const noexcept { return length_ == 0; }

    // Coefficient of q^n; throws std::out_of_range outside [offset, end).
    std::uint32_t coeff(std::int64_t n) const;
    // As coeff(), but exponents below the window read as zero.
    std::uint32_t coeff_or_zero(std::int64_t n) const;
    // Coefficient by position in the window, no bounds check.
    std::uint32_t at(std::size_t i) const noexcept {
        if (modulus_ == 2) return static_cast<std::uint32_t>((bits_[i >> 6] >> (i & 63)) & 1u);
        return residues_[i];
    }

    std::vector<std::uint32_t> coefficients() const;
    std::size_t nonzero_terms() const;
    // Exponents carrying a nonzero coefficient, ascending.
    std::vector<std::int64_t> support() const;

    // Multiply by q^k (window moves with it).
    QSeries shifted(std::int64_t k) const;
    // Restrict the window to [offset, min(end, new_end)).
    QSeries truncated(std::int64_t new_end) const;
    QSeries scaled(std::uint32_t c) const;
    QSeries negated() const;

    // Exact equality: modulus, window and every coefficient.
    friend bool operator==(const QSeries& a, const QSeries& b);

    // Raw packed words for l = 2 (bit i = coefficient of q^(offset+i)).
    std::span<const std::uint64_t> packed_bits() const noexcept { return bits_; }
    static QSeries from_packed(std::int64_t offset, std::size_t length, std::vector<std::uint64_t> words);

private:
    std::uint32_t modulus_ = 2;
    std::int64_t offset_ = 0;
    std::size_t length_ = 0;
    std::vector<std::uint32_t> residues_;
    std::vector<std::uint64_t> bits_;

    friend class SeriesBuilder;
};

// Mutable staging buffer used to assemble a QSeries coefficient by
// coefficient; freeze() hands over the storage.
class SeriesBuilder {
public:
    SeriesBuilder(std::uint32_t modulus, std::int64_t offset, std::size_t length);

    std::size_t length() const noexcept { return length_; }
    void set(std::size_t i, std::uint32_t residue) noexcept;
    std::uint32_t get(std::size_t i) const noexcept;
    QSeries freeze() &&;

private:
    std::uint32_t modulus_;
    std::int64_t offset_;
    std::size_t length_;
    std::vector<std::uint32_t> residues_;
    std::vector<std::uint64_t> bits_;
};

enum class MulPath {
    automatic,
    schoolbook,  // plain O(n^2) coefficient loop, the reference
    sparse,      // iterate over nonzero terms of the sparser operand
    clmul        // l = 2 only: carry-less word products
};

// Coefficientwise sum on [min(offsets), min(ends)).
QSeries add(const QSeries& f, const QSeries& g);
QSeries sub(const QSeries& f, const QSeries& g);

// Product with offset v_f + v_g and end min(end_f + v_g, end_g + v_f).
QSeries mul(const QSeries& f, const QSeries& g, MulPath path = MulPath::automatic);

// Multiplicative inverse on a window of the same length as normalize(f).
QSeries inv(const QSeries& f);

// f^(l^m) by exponent dilation (Frobenius); the output window is exact.
QSeries frobenius_pow(const QSeries& f, unsigned m);

// f^e by repeated squaring under the mul truncation rule; pow(f, 0) = 1.
QSeries pow(const QSeries& f, std::uint64_t e);

// #{ offset <= n <= x : a_n != 0 }; requires x < end.
std::uint64_t nonzero_count(const QSeries& f, std::int64_t x);

// Strips leading zeros. An all-zero window yields an empty series.
QSeries normalize(const QSeries& f);

struct Window {
    std::int64_t begin = 0;
    std::int64_t end = 0;
    bool empty() const noexcept { return end <= begin; }
};

Window common_window(const QSeries& f, const QSeries& g);
// Same modulus and identical coefficients on the intersection of the windows.
bool agree_on_common_window(const QSeries& f, const QSeries& g);

bool is_prime_modulus(std::uint32_t ell);

}  // namespace lacuna
