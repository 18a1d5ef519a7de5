#pragma once

#include <cstdint>
#include <vector>

namespace maxmin {

// Subset of a ground set {0,...,n-1}, stored as a bitset. Sets remember
// their universe size; operations across mismatched universes throw.
class ItemSet {
public:
    ItemSet() = default;
    explicit ItemSet(int universe);
    static ItemSet full(int universe);
    // Low 64 bits of `mask` interpreted over a universe of size n (n <= 64).
    static ItemSet from_mask(std::uint64_t mask, int universe);

    int universe() const { return n_; }
    int count() const;
    bool empty() const { return count() == 0; }

    bool test(int item) const;
    void set(int item);
    void reset(int item);

    bool is_subset_of(const ItemSet& other) const;
    bool intersects(const ItemSet& other) const;

    ItemSet& operator|=(const ItemSet& other);
    ItemSet& operator&=(const ItemSet& other);
    ItemSet& operator-=(const ItemSet& other);
    friend ItemSet operator|(ItemSet a, const ItemSet& b) { return a |= b; }
    friend ItemSet operator&(ItemSet a, const ItemSet& b) { return a &= b; }
    friend ItemSet operator-(ItemSet a, const ItemSet& b) { return a -= b; }
    ItemSet complement() const;

    ItemSet with(int item) const;
    ItemSet without(int item) const;

    // Members in [begin, end), reindexed to a universe of end - begin.
    ItemSet slice(int begin, int end) const;
    // Same membership over a universe of the given size; dropped bits
    // must be clear.
    ItemSet resized(int universe) const;

    bool operator==(const ItemSet& other) const;
    bool operator!=(const ItemSet& other) const { return !(*this == other); }
    // Canonical order: numeric order of the characteristic vector read as
    // an integer with item i contributing 2^i.
    bool operator<(const ItemSet& other) const;

    std::vector<int> items() const;
    std::uint64_t to_mask() const;  // universe <= 64 only

    template <typename F>
    void for_each(F&& f) const {
        for (size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                f(static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

private:
    void check_item(int item) const;
    void check_same_universe(const ItemSet& other) const;

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace maxmin
