#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace kid {

/// Fixed-width set of indices into a canonical ordering (activities or
/// attributes). Width is set at construction; all binary operations
/// require equal widths.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

    static BitSet full(std::size_t width) {
        BitSet s(width);
        for (std::size_t i = 0; i < width; ++i) s.set(i);
        return s;
    }

    std::size_t width() const { return width_; }

    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool empty() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    bool is_subset_of(const BitSet& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if ((words_[k] & ~other.words_[k]) != 0) return false;
        return true;
    }
    bool intersects(const BitSet& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if ((words_[k] & other.words_[k]) != 0) return true;
        return false;
    }

    BitSet& operator&=(const BitSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    BitSet& operator|=(const BitSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
    friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }

    BitSet complement() const {
        BitSet c(width_);
        for (std::size_t i = 0; i < width_; ++i)
            if (!test(i)) c.set(i);
        return c;
    }

    /// Members in ascending index order.
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < width_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    friend bool operator==(const BitSet&, const BitSet&) = default;

private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

using ActivitySet = BitSet;
using AttributeSet = BitSet;

}  // namespace kid
