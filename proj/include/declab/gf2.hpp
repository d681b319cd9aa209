#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "declab/error.hpp"
#include "declab/rng.hpp"

namespace declab {

/// Fixed-length vector over GF(2). Word-packed internally; all operations
/// are defined on logical bit positions, bit 0 is the leftmost character of
/// the text form ("1011" has bit 0 == 1).
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t length)
        : len_(length), words_((length + 63) / 64, 0) {}

    static BitVector from_string(std::string_view s) {
        BitVector v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                v.set(i, 1);
            } else if (s[i] != '0') {
                throw DomainError("BitVector::from_string: bad character in \"" +
                                  std::string(s) + "\"");
            }
        }
        return v;
    }

    static BitVector random(std::size_t length, RandomStream& rng) {
        BitVector v(length);
        for (auto& w : v.words_) w = rng.next_u64();
        v.mask_tail();
        return v;
    }

    std::size_t size() const { return len_; }

    int get(std::size_t i) const {
        return static_cast<int>((words_[i >> 6] >> (i & 63)) & 1u);
    }

    void set(std::size_t i, int value) {
        std::uint64_t m = 1ull << (i & 63);
        if (value)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= 1ull << (i & 63); }

    BitVector operator^(const BitVector& other) const {
        check_same_length(other, "xor");
        BitVector r(*this);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] ^= other.words_[i];
        return r;
    }

    BitVector& operator^=(const BitVector& other) {
        check_same_length(other, "xor");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
        return *this;
    }

    std::size_t weight() const {
        std::size_t w = 0;
        for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
        return w;
    }

    bool is_zero() const {
        for (auto word : words_) {
            if (word) return false;
        }
        return true;
    }

    /// Parity of the AND of two vectors (GF(2) inner product).
    int dot(const BitVector& other) const {
        check_same_length(other, "dot");
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
        return std::popcount(acc) & 1;
    }

    bool operator==(const BitVector& other) const {
        return len_ == other.len_ && words_ == other.words_;
    }
    bool operator!=(const BitVector& other) const { return !(*this == other); }

    /// Left-to-right bit string, the external text form.
    std::string to_string() const {
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i) s[i] = get(i) ? '1' : '0';
        return s;
    }

    /// Low 64 bits as an integer key (bit i -> 2^i); only valid for n <= 64.
    std::uint64_t as_key() const { return words_.empty() ? 0 : words_[0]; }

    std::span<const std::uint64_t> words() const { return words_; }

private:
    void check_same_length(const BitVector& other, const char* op) const {
        if (len_ != other.len_)
            throw DimensionError(std::string("BitVector ") + op + ": length " +
                                 std::to_string(len_) + " vs " + std::to_string(other.len_));
    }

    void mask_tail() {
        if (len_ & 63) words_.back() &= (1ull << (len_ & 63)) - 1;
    }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

inline BitVector xor_add(const BitVector& a, const BitVector& b) { return a ^ b; }

inline std::size_t hamming_weight(const BitVector& v) { return v.weight(); }

inline std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
    return (a ^ b).weight();
}

/// Binary matrix, stored as one packed BitVector per row.
class BitMatrix {
public:
    BitMatrix() = default;

    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), row_data_(rows, BitVector(cols)) {}

    static BitMatrix from_rows(const std::vector<std::string>& rows) {
        if (rows.empty()) return {};
        BitMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            BitVector r = BitVector::from_string(rows[i]);
            if (r.size() != m.cols_)
                throw DimensionError("BitMatrix::from_rows: ragged rows");
            m.row_data_[i] = std::move(r);
        }
        return m;
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.row_data_[i].set(i, 1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const BitVector& row(std::size_t i) const { return row_data_[i]; }
    BitVector& row(std::size_t i) { return row_data_[i]; }

    int get(std::size_t r, std::size_t c) const { return row_data_[r].get(c); }
    void set(std::size_t r, std::size_t c, int v) { row_data_[r].set(c, v); }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (row_data_[r].get(c)) t.row_data_[c].set(r, 1);
        return t;
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && row_data_ == o.row_data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVector> row_data_;
};

/// Row-vector times matrix: XOR of the rows of m selected by the set bits
/// of v. Realizes c = m·G and, with a transposed parity-check, s = H·rᵀ.
inline BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v) {
    if (v.size() != m.rows())
        throw DimensionError("mat_vec_mul: vector length " + std::to_string(v.size()) +
                             " vs matrix rows " + std::to_string(m.rows()));
    BitVector out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (v.get(i)) out ^= m.row(i);
    return out;
}

struct Rref {
    BitMatrix mat;
    std::vector<std::size_t> pivot_cols;  // one per nonzero row, ascending
};

/// Reduced row echelon form over GF(2).
inline Rref rref(BitMatrix m) {
    Rref out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && !m.get(piv, c)) ++piv;
        if (piv == m.rows()) continue;
        std::swap(m.row(r), m.row(piv));
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.row(i) ^= m.row(r);
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.mat = std::move(m);
    return out;
}

inline std::size_t gf2_rank(const BitMatrix& m) { return rref(m).pivot_cols.size(); }

}  // namespace declab
