#ifndef AVDTC_COLOR_SET_HPP
#define AVDTC_COLOR_SET_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace avdtc {

// Set of colors drawn from the universe {1, ..., universe}. Supports the
// set algebra the coloring lemmas need: union, difference, intersection,
// complement within the universe, and ascending iteration.
class ColorSet {
public:
    ColorSet() = default;

    explicit ColorSet(int universe)
        : universe_(universe)
        , bits_(static_cast<size_t>((universe + 63) / 64), 0)
    {
        assert(universe >= 0);
    }

    static ColorSet full(int universe)
    {
        ColorSet s(universe);
        for (auto& w : s.bits_)
            w = ~UINT64_C(0);
        s.trim();
        return s;
    }

    static ColorSet of(int universe, std::initializer_list<int> colors)
    {
        ColorSet s(universe);
        for (int c : colors)
            s.insert(c);
        return s;
    }

    int universe() const { return universe_; }

    bool contains(int c) const
    {
        if (c < 1 || c > universe_)
            return false;
        return (bits_[word(c)] >> bit(c)) & 1;
    }

    void insert(int c)
    {
        assert(c >= 1 && c <= universe_);
        bits_[word(c)] |= UINT64_C(1) << bit(c);
    }

    void erase(int c)
    {
        if (c < 1 || c > universe_)
            return;
        bits_[word(c)] &= ~(UINT64_C(1) << bit(c));
    }

    int size() const
    {
        int s = 0;
        for (auto w : bits_)
            s += std::popcount(w);
        return s;
    }

    bool empty() const
    {
        for (auto w : bits_)
            if (w)
                return false;
        return true;
    }

    // Smallest member, or 0 when empty.
    int first() const
    {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i])
                return static_cast<int>(i * 64 + std::countr_zero(bits_[i]) + 1);
        return 0;
    }

    std::vector<int> values() const
    {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(size()));
        for (size_t i = 0; i < bits_.size(); ++i) {
            uint64_t w = bits_[i];
            while (w) {
                int b = std::countr_zero(w);
                out.push_back(static_cast<int>(i * 64 + b + 1));
                w &= w - 1;
            }
        }
        return out;
    }

    ColorSet& operator|=(const ColorSet& o)
    {
        assert(universe_ == o.universe_);
        for (size_t i = 0; i < bits_.size(); ++i)
            bits_[i] |= o.bits_[i];
        return *this;
    }

    ColorSet& operator&=(const ColorSet& o)
    {
        assert(universe_ == o.universe_);
        for (size_t i = 0; i < bits_.size(); ++i)
            bits_[i] &= o.bits_[i];
        return *this;
    }

    ColorSet& operator-=(const ColorSet& o)
    {
        assert(universe_ == o.universe_);
        for (size_t i = 0; i < bits_.size(); ++i)
            bits_[i] &= ~o.bits_[i];
        return *this;
    }

    friend ColorSet operator|(ColorSet a, const ColorSet& b) { return a |= b; }
    friend ColorSet operator&(ColorSet a, const ColorSet& b) { return a &= b; }
    friend ColorSet operator-(ColorSet a, const ColorSet& b) { return a -= b; }

    ColorSet complement() const
    {
        ColorSet s(universe_);
        for (size_t i = 0; i < bits_.size(); ++i)
            s.bits_[i] = ~bits_[i];
        s.trim();
        return s;
    }

    bool operator==(const ColorSet& o) const = default;

    bool is_subset_of(const ColorSet& o) const
    {
        assert(universe_ == o.universe_);
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~o.bits_[i])
                return false;
        return true;
    }

private:
    static size_t word(int c) { return static_cast<size_t>(c - 1) / 64; }
    static int bit(int c) { return (c - 1) % 64; }

    void trim()
    {
        if (universe_ % 64 != 0 && !bits_.empty())
            bits_.back() &= (UINT64_C(1) << (universe_ % 64)) - 1;
    }

    int universe_ = 0;
    std::vector<uint64_t> bits_;
};

// A vertex palette is the set of colors on the vertex (when colored) and
// its incident edges; |Palette(u)| <= deg(u)+1 with equality for a colored
// vertex in a proper total coloring.
using Palette = ColorSet;

} // namespace avdtc

#endif
