#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

#include "sidkit/node_set.hpp"

namespace sidkit {

// Square boolean matrix with 64-bit packed rows. Supports the OR-AND
// product and repeated squaring; reflexive-transitive closures of
// adjacency matrices are computed by squaring (Id + A) until stable.
class BitMatrix {
public:
    BitMatrix() = default;

    explicit BitMatrix(int n) : n_(n), words_(NodeSet::word_count(n)), bits_(static_cast<size_t>(n) * words_, 0) {}

    int dim() const { return n_; }
    int words_per_row() const { return words_; }

    bool get(int r, int c) const {
        assert(r >= 0 && r < n_ && c >= 0 && c < n_);
        return (bits_[row_offset(r) + (c >> 6)] >> (c & 63)) & 1ULL;
    }

    void set(int r, int c) {
        assert(r >= 0 && r < n_ && c >= 0 && c < n_);
        bits_[row_offset(r) + (c >> 6)] |= 1ULL << (c & 63);
    }

    void reset(int r, int c) {
        assert(r >= 0 && r < n_ && c >= 0 && c < n_);
        bits_[row_offset(r) + (c >> 6)] &= ~(1ULL << (c & 63));
    }

    void clear_row(int r) {
        for (int w = 0; w < words_; ++w) bits_[row_offset(r) + w] = 0;
    }

    void set_diagonal() {
        for (int i = 0; i < n_; ++i) set(i, i);
    }

    const std::uint64_t* row(int r) const { return bits_.data() + row_offset(r); }
    std::uint64_t* row(int r) { return bits_.data() + row_offset(r); }

    bool row_intersects(int r, const NodeSet& s) const {
        assert(s.universe() == n_);
        const std::uint64_t* rw = row(r);
        for (int w = 0; w < words_; ++w)
            if (rw[w] & s.words()[w]) return true;
        return false;
    }

    NodeSet row_as_set(int r) const {
        NodeSet s(n_);
        const std::uint64_t* rw = row(r);
        for (int w = 0; w < words_; ++w) s.words()[w] = rw[w];
        return s;
    }

    void or_row_from(int r, const NodeSet& s) {
        assert(s.universe() == n_);
        std::uint64_t* rw = row(r);
        for (int w = 0; w < words_; ++w) rw[w] |= s.words()[w];
    }

    // this := this OR-AND other (boolean matrix product).
    BitMatrix multiplied_by(const BitMatrix& other) const {
        assert(n_ == other.n_);
        BitMatrix out(n_);
        for (int r = 0; r < n_; ++r) {
            std::uint64_t* dst = out.row(r);
            const std::uint64_t* src = row(r);
            for (int w = 0; w < words_; ++w) {
                std::uint64_t bits = src[w];
                while (bits) {
                    int k = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    const std::uint64_t* kr = other.row(k);
                    for (int v = 0; v < words_; ++v) dst[v] |= kr[v];
                }
            }
        }
        return out;
    }

    void square_inplace() { *this = multiplied_by(*this); }

    int count() const {
        int c = 0;
        for (auto w : bits_) c += std::popcount(w);
        return c;
    }

    bool operator==(const BitMatrix& other) const = default;

private:
    size_t row_offset(int r) const { return static_cast<size_t>(r) * words_; }

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// (Id + A)^(2^ceil(log2 n)): entry (i,j) is 1 iff i = j or a path of
// adjacency steps leads from i to j. Squaring a reflexive matrix is
// monotone, so the result is the reflexive-transitive closure.
inline BitMatrix reflexive_closure(BitMatrix a) {
    a.set_diagonal();
    int n = a.dim();
    for (int span = 1; span < n; span <<= 1) a.square_inplace();
    return a;
}

}  // namespace sidkit
