#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace sidkit {

// Set of node ids over a fixed universe 0..universe-1, packed into 64-bit
// words. A single word covers graphs with up to 64 nodes.
class NodeSet {
public:
    NodeSet() = default;

    explicit NodeSet(int universe) : universe_(universe), words_(word_count(universe), 0) {}

    static NodeSet single(int universe, int i) {
        NodeSet s(universe);
        s.set(i);
        return s;
    }

    static NodeSet full(int universe) {
        NodeSet s(universe);
        for (int w = 0; w < static_cast<int>(s.words_.size()); ++w) s.words_[w] = ~0ULL;
        s.trim();
        return s;
    }

    int universe() const { return universe_; }

    bool test(int i) const {
        assert(i >= 0 && i < universe_);
        return (words_[i >> 6] >> (i & 63)) & 1ULL;
    }

    void set(int i) {
        assert(i >= 0 && i < universe_);
        words_[i >> 6] |= 1ULL << (i & 63);
    }

    void reset(int i) {
        assert(i >= 0 && i < universe_);
        words_[i >> 6] &= ~(1ULL << (i & 63));
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool intersects(const NodeSet& other) const {
        assert(universe_ == other.universe_);
        for (size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & other.words_[w]) return true;
        return false;
    }

    // True when every member of `other` is also a member of this set.
    bool contains_all(const NodeSet& other) const {
        assert(universe_ == other.universe_);
        for (size_t w = 0; w < words_.size(); ++w)
            if (other.words_[w] & ~words_[w]) return false;
        return true;
    }

    NodeSet& operator|=(const NodeSet& other) {
        assert(universe_ == other.universe_);
        for (size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
        return *this;
    }

    NodeSet& operator&=(const NodeSet& other) {
        assert(universe_ == other.universe_);
        for (size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
        return *this;
    }

    NodeSet& subtract(const NodeSet& other) {
        assert(universe_ == other.universe_);
        for (size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
        return *this;
    }

    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }

    NodeSet complement() const {
        NodeSet s(universe_);
        for (size_t w = 0; w < words_.size(); ++w) s.words_[w] = ~words_[w];
        s.trim();
        return s;
    }

    bool operator==(const NodeSet& other) const = default;

    template <typename F>
    void for_each(F&& f) const {
        for (size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int i = static_cast<int>(w << 6) + std::countr_zero(bits);
                f(i);
                bits &= bits - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(static_cast<size_t>(count()));
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    int first() const {
        for (size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return static_cast<int>(w << 6) + std::countr_zero(words_[w]);
        return -1;
    }

    std::string str() const {
        std::string out = "{";
        bool sep = false;
        for_each([&](int i) {
            if (sep) out += ", ";
            out += std::to_string(i);
            sep = true;
        });
        out += "}";
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    static int word_count(int universe) { return (universe + 63) >> 6; }

private:
    void trim() {
        if (universe_ & 63) words_.back() &= (1ULL << (universe_ & 63)) - 1;
    }

    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace sidkit
