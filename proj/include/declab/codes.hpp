#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "declab/error.hpp"
#include "declab/gf2.hpp"
#include "declab/ldpc_small_data.hpp"
#include "declab/rng.hpp"

namespace declab {

/// A binary linear block code: generator and parity-check matrices, an
/// enumerated codebook for small codes (k <= 16), and the check-node
/// adjacency used by message-passing decoders.
///
/// Immutable after build_named_code / make_code; shareable across threads.
struct LinearCode {
    std::string name;
    std::size_t n = 0;  // block length
    std::size_t k = 0;  // message length
    BitMatrix generator;     // k x n
    BitMatrix parity_check;  // (n-k) x n, full rank
    // Positions where the message bits can be read back out of a codeword.
    // For systematic G = [I|P] these are 0..k-1.
    std::vector<std::size_t> message_positions;
    // codebook[i] = encode(message with bit p set iff (i >> p) & 1)
    std::optional<std::vector<BitVector>> codebook;
    std::vector<std::vector<std::size_t>> check_neighbors;  // per check node
    // Populated alongside the codebook: minimum distance and the coset
    // leaders of weight <= t = (d_min-1)/2, keyed by syndrome bits.
    std::optional<std::size_t> min_distance;
    std::unordered_map<std::uint64_t, BitVector> coset_leaders;

    double rate() const { return static_cast<double>(k) / static_cast<double>(n); }

    BitVector message_from_index(std::uint64_t index) const {
        BitVector m(k);
        for (std::size_t p = 0; p < k; ++p)
            if ((index >> p) & 1u) m.set(p, 1);
        return m;
    }

    BitVector extract_message(const BitVector& codeword) const {
        BitVector m(k);
        for (std::size_t p = 0; p < k; ++p) m.set(p, codeword.get(message_positions[p]));
        return m;
    }
};

inline BitVector encode(const LinearCode& code, const BitVector& m) {
    if (m.size() != code.k)
        throw DimensionError("encode: message length " + std::to_string(m.size()) +
                             " vs k=" + std::to_string(code.k));
    return mat_vec_mul(code.generator, m);
}

/// Syndrome s = H·rᵀ; zero iff r is a codeword.
inline BitVector syndrome(const LinearCode& code, const BitVector& r) {
    if (r.size() != code.n)
        throw DimensionError("syndrome: vector length " + std::to_string(r.size()) +
                             " vs n=" + std::to_string(code.n));
    BitVector s(code.parity_check.rows());
    for (std::size_t i = 0; i < code.parity_check.rows(); ++i)
        s.set(i, code.parity_check.row(i).dot(r));
    return s;
}

/// Uniformly random (message, codeword) pair.
inline std::pair<BitVector, BitVector> random_codeword(const LinearCode& code,
                                                       RandomStream& rng) {
    BitVector m = BitVector::random(code.k, rng);
    return {m, encode(code, m)};
}

namespace detail {

inline void enumerate_codebook(LinearCode& code) {
    if (code.k > 16) return;
    std::vector<BitVector> book;
    book.reserve(std::size_t{1} << code.k);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << code.k); ++i)
        book.push_back(encode(code, code.message_from_index(i)));
    code.codebook = std::move(book);
}

inline void build_coset_leaders(LinearCode& code) {
    if (!code.codebook || code.parity_check.rows() > 64) return;
    std::size_t dmin = code.n + 1;
    for (std::size_t i = 1; i < code.codebook->size(); ++i)
        dmin = std::min(dmin, (*code.codebook)[i].weight());
    code.min_distance = dmin;
    std::size_t t = (dmin - 1) / 2;

    // all error patterns of weight <= t, syndrome-keyed
    BitVector pattern(code.n);
    auto emit = [&](const BitVector& e) {
        code.coset_leaders.emplace(syndrome(code, e).as_key(), e);
    };
    emit(pattern);
    std::vector<std::size_t> idx;
    auto rec = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
        if (remaining == 0) {
            emit(pattern);
            return;
        }
        for (std::size_t i = start; i + remaining <= code.n + 1 && i < code.n; ++i) {
            pattern.set(i, 1);
            self(self, i + 1, remaining - 1);
            pattern.set(i, 0);
        }
    };
    for (std::size_t w = 1; w <= t; ++w) rec(rec, 0, w);
}

inline void adjacency_from_parity(LinearCode& code) {
    code.check_neighbors.assign(code.parity_check.rows(), {});
    for (std::size_t r = 0; r < code.parity_check.rows(); ++r)
        for (std::size_t c = 0; c < code.n; ++c)
            if (code.parity_check.get(r, c)) code.check_neighbors[r].push_back(c);
}

}  // namespace detail

/// Derive a generator for a given full-rank parity-check matrix. Each free
/// (non-pivot) column of H's RREF yields one generator row with a 1 in that
/// column, so messages are read back at the free positions.
inline void derive_generator(LinearCode& code) {
    const BitMatrix& h = code.parity_check;
    Rref rr = rref(h);
    if (rr.pivot_cols.size() != h.rows())
        throw ConfigError("derive_generator: parity-check matrix of " + code.name +
                          " is rank deficient");
    std::vector<bool> is_pivot(code.n, false);
    for (auto c : rr.pivot_cols) is_pivot[c] = true;

    code.message_positions.clear();
    for (std::size_t c = 0; c < code.n; ++c)
        if (!is_pivot[c]) code.message_positions.push_back(c);
    code.k = code.message_positions.size();

    code.generator = BitMatrix(code.k, code.n);
    for (std::size_t g = 0; g < code.k; ++g) {
        std::size_t free_col = code.message_positions[g];
        BitVector& grow = code.generator.row(g);
        grow.set(free_col, 1);
        // pivot entries solve H·x = 0 given the single free bit
        for (std::size_t prow = 0; prow < rr.pivot_cols.size(); ++prow)
            if (rr.mat.get(prow, free_col)) grow.set(rr.pivot_cols[prow], 1);
    }
}

/// Parse the plain-text parity-check format: first line "n m", then one
/// line per check node listing incident variable indices (0-based).
inline BitMatrix parse_parity_check(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m) || n == 0 || m == 0)
        throw ConfigError("parse_parity_check: bad header line");
    BitMatrix h(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        std::string line;
        do {
            if (!std::getline(in >> std::ws, line))
                throw ConfigError("parse_parity_check: expected " + std::to_string(m) +
                                  " check rows");
        } while (line.empty());
        std::istringstream row(line);
        std::size_t v;
        while (row >> v) {
            if (v >= n) throw ConfigError("parse_parity_check: variable index out of range");
            h.set(r, v, 1);
        }
    }
    return h;
}

inline BitMatrix load_parity_check(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("load_parity_check: cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_parity_check(buf.str());
}

/// Build a code from a parity-check matrix alone.
inline LinearCode make_code_from_parity(std::string name, BitMatrix h) {
    LinearCode code;
    code.name = std::move(name);
    code.n = h.cols();
    code.parity_check = std::move(h);
    derive_generator(code);
    detail::enumerate_codebook(code);
    detail::build_coset_leaders(code);
    detail::adjacency_from_parity(code);
    return code;
}

/// The three code families the experiments use:
///   repetition-3  n=3,  k=1
///   hamming-7-4   n=7,  k=4, systematic G = [I|P], P rows 110,101,011,111
///   ldpc-small    n=96, k=48, fixed (3,6)-regular matrix (see data asset)
inline LinearCode build_named_code(const std::string& name) {
    if (name == "repetition-3") {
        LinearCode code;
        code.name = name;
        code.n = 3;
        code.k = 1;
        code.generator = BitMatrix::from_rows({"111"});
        code.parity_check = BitMatrix::from_rows({"110", "101"});
        code.message_positions = {0};
        detail::enumerate_codebook(code);
        detail::build_coset_leaders(code);
        detail::adjacency_from_parity(code);
        return code;
    }
    if (name == "hamming-7-4") {
        LinearCode code;
        code.name = name;
        code.n = 7;
        code.k = 4;
        code.generator = BitMatrix::from_rows({
            "1000110",
            "0100101",
            "0010011",
            "0001111",
        });
        code.parity_check = BitMatrix::from_rows({
            "1101100",
            "1011010",
            "0111001",
        });
        code.message_positions = {0, 1, 2, 3};
        detail::enumerate_codebook(code);
        detail::build_coset_leaders(code);
        detail::adjacency_from_parity(code);
        return code;
    }
    if (name == "ldpc-small") {
        return make_code_from_parity(name, parse_parity_check(kLdpcSmallText));
    }
    throw ConfigError("build_named_code: unknown code \"" + name +
                      "\" (expected repetition-3, hamming-7-4, or ldpc-small)");
}

}  // namespace declab
