#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "declab/channel.hpp"
#include "declab/codes.hpp"
#include "declab/error.hpp"
#include "declab/gf2.hpp"

namespace declab {

enum class DecodeStatus { success, failure };

/// Result of one decoding: a message when the decoder commits to one, a
/// detected failure otherwise. iterations is nonzero for BP only.
struct DecodeOutcome {
    DecodeStatus status = DecodeStatus::failure;
    BitVector message;  // meaningful iff status == success
    int iterations = 0;

    bool ok() const { return status == DecodeStatus::success; }

    static DecodeOutcome success_with(BitVector m, int iters = 0) {
        return {DecodeStatus::success, std::move(m), iters};
    }
    static DecodeOutcome failed(int iters = 0) { return {DecodeStatus::failure, {}, iters}; }

    bool operator==(const DecodeOutcome& o) const {
        if (status != o.status || iterations != o.iterations) return false;
        return status == DecodeStatus::failure || message == o.message;
    }
};

enum class DecoderKind { ml_hard, ml_soft, bounded_distance, bp_minsum };

struct DecoderSpec {
    DecoderKind kind = DecoderKind::ml_hard;
    int max_iterations = 30;  // bp only

    bool wants_soft_input() const {
        return kind == DecoderKind::ml_soft || kind == DecoderKind::bp_minsum;
    }
};

using DecoderInput = std::variant<BitVector, LlrVector>;

/// Exhaustive minimum-Hamming-distance decoding over the enumerated
/// codebook. A distance tie between codewords is reported as failure:
/// any index-based tie-break would not commute with codeword shifts.
inline DecodeOutcome decode_ml_hard(const LinearCode& code, const BitVector& r) {
    if (!code.codebook) throw ConfigError("decode_ml_hard: code has no enumerated codebook");
    if (r.size() != code.n) throw DimensionError("decode_ml_hard: wrong input length");
    std::size_t best = code.n + 1;
    std::uint64_t best_index = 0;
    bool tie = false;
    const auto& book = *code.codebook;
    for (std::uint64_t i = 0; i < book.size(); ++i) {
        std::size_t d = hamming_distance(book[i], r);
        if (d < best) {
            best = d;
            best_index = i;
            tie = false;
        } else if (d == best) {
            tie = true;
        }
    }
    if (tie) return DecodeOutcome::failed();
    return DecodeOutcome::success_with(code.message_from_index(best_index));
}

/// Exhaustive max-correlation decoding: maximizes sum_i (-1)^{c_i}·L_i.
/// Scores are exact integers, so ties are detected exactly and reported
/// as failure (an all-zero input ties every codeword).
inline DecodeOutcome decode_ml_soft(const LinearCode& code, const LlrVector& llr) {
    if (!code.codebook) throw ConfigError("decode_ml_soft: code has no enumerated codebook");
    if (llr.size() != code.n) throw DimensionError("decode_ml_soft: wrong input length");
    std::int64_t best = 0;
    std::uint64_t best_index = 0;
    bool tie = false, first = true;
    const auto& book = *code.codebook;
    for (std::uint64_t i = 0; i < book.size(); ++i) {
        std::int64_t corr = 0;
        for (std::size_t j = 0; j < code.n; ++j)
            corr += book[i].get(j) ? -llr.values[j] : llr.values[j];
        if (first || corr > best) {
            best = corr;
            best_index = i;
            tie = false;
            first = false;
        } else if (corr == best) {
            tie = true;
        }
    }
    if (tie) return DecodeOutcome::failed();
    return DecodeOutcome::success_with(code.message_from_index(best_index));
}

/// Syndrome-table decoding of up to t = (d_min-1)/2 errors. A syndrome
/// outside the table is a detected failure. (On perfect codes such as
/// hamming-7-4 every syndrome is in the table, so this decoder never fails
/// there; failure-mode experiments need a code/decoder pair that can fail.)
inline DecodeOutcome decode_bounded_distance(const LinearCode& code, const BitVector& r) {
    if (!code.min_distance)
        throw ConfigError("decode_bounded_distance: code has no coset-leader table");
    if (r.size() != code.n) throw DimensionError("decode_bounded_distance: wrong input length");
    auto it = code.coset_leaders.find(syndrome(code, r).as_key());
    if (it == code.coset_leaders.end()) return DecodeOutcome::failed();
    return DecodeOutcome::success_with(code.extract_message(r ^ it->second));
}

/// Normalized min-sum belief propagation on the parity-check adjacency.
/// Integer arithmetic throughout: check magnitudes are scaled by 3/4
/// (mag - mag>>2) on the nonnegative magnitude, which keeps the update
/// exactly symmetric under codeword sign-flips. Convergence requires every
/// posterior to be nonzero and the hard decisions to satisfy all checks;
/// an all-zero input therefore runs to max_iterations and fails.
inline DecodeOutcome decode_bp_minsum(const LinearCode& code, const LlrVector& llr,
                                      const DecoderSpec& spec = {DecoderKind::bp_minsum}) {
    if (code.check_neighbors.empty())
        throw ConfigError("decode_bp_minsum: code has no parity-check adjacency");
    if (llr.size() != code.n) throw DimensionError("decode_bp_minsum: wrong input length");

    const auto& checks = code.check_neighbors;
    std::size_t num_edges = 0;
    for (const auto& cn : checks) num_edges += cn.size();

    // edge layout: contiguous per check; per-variable edge lists
    std::vector<std::size_t> edge_var(num_edges);
    std::vector<std::vector<std::size_t>> var_edges(code.n);
    {
        std::size_t e = 0;
        for (const auto& cn : checks)
            for (std::size_t v : cn) {
                edge_var[e] = v;
                var_edges[v].push_back(e);
                ++e;
            }
    }

    std::vector<int> c2v(num_edges, 0), v2c(num_edges, 0), posterior(code.n, 0);
    auto scaled = [](int mag) { return mag - (mag >> 2); };  // 3/4, exact on ints

    for (int iter = 1; iter <= spec.max_iterations; ++iter) {
        // variable update (uses the previous iteration's check messages)
        for (std::size_t v = 0; v < code.n; ++v) {
            int total = llr.values[v];
            for (std::size_t e : var_edges[v]) total += c2v[e];
            for (std::size_t e : var_edges[v]) v2c[e] = total - c2v[e];
        }
        // check update
        std::size_t e0 = 0;
        for (const auto& cn : checks) {
            int min1 = INT32_MAX, min2 = INT32_MAX;
            std::size_t argmin = 0;
            int sign_product = 1;
            for (std::size_t j = 0; j < cn.size(); ++j) {
                int m = v2c[e0 + j];
                int mag = m < 0 ? -m : m;
                if (m < 0) sign_product = -sign_product;
                if (mag < min1) {
                    min2 = min1;
                    min1 = mag;
                    argmin = j;
                } else if (mag < min2) {
                    min2 = mag;
                }
            }
            for (std::size_t j = 0; j < cn.size(); ++j) {
                int mag = scaled(j == argmin ? min2 : min1);
                int self_sign = v2c[e0 + j] < 0 ? -1 : 1;
                c2v[e0 + j] = sign_product * self_sign * mag;
            }
            e0 += cn.size();
        }
        // posterior from this iteration's check messages
        bool decided = true;
        for (std::size_t v = 0; v < code.n && decided; ++v) {
            int total = llr.values[v];
            for (std::size_t e : var_edges[v]) total += c2v[e];
            posterior[v] = total;
            if (total == 0) decided = false;
        }
        if (!decided) continue;
        BitVector hard(code.n);
        for (std::size_t v = 0; v < code.n; ++v)
            if (posterior[v] < 0) hard.set(v, 1);
        if (syndrome(code, hard).is_zero())
            return DecodeOutcome::success_with(code.extract_message(hard), iter);
    }
    return DecodeOutcome::failed(spec.max_iterations);
}

/// Dispatch on decoder kind with input-type checking.
inline DecodeOutcome decode_any(const LinearCode& code, const DecoderSpec& spec,
                                const DecoderInput& input) {
    if (spec.wants_soft_input()) {
        const auto* llr = std::get_if<LlrVector>(&input);
        if (!llr) throw ConfigError("decode_any: soft decoder needs an LlrVector input");
        return spec.kind == DecoderKind::ml_soft ? decode_ml_soft(code, *llr)
                                                 : decode_bp_minsum(code, *llr, spec);
    }
    const auto* bits = std::get_if<BitVector>(&input);
    if (!bits) throw ConfigError("decode_any: hard decoder needs a BitVector input");
    return spec.kind == DecoderKind::ml_hard ? decode_ml_hard(code, *bits)
                                             : decode_bounded_distance(code, *bits);
}

}  // namespace declab
