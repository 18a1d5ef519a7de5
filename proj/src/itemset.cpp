#include "maxmin/itemset.hpp"

#include "maxmin/errors.hpp"

namespace maxmin {

namespace {
size_t words_for(int n) { return (static_cast<size_t>(n) + 63) / 64; }
}  // namespace

ItemSet::ItemSet(int universe) : n_(universe), words_(words_for(universe), 0) {
    if (universe < 0) throw DomainError("negative universe size");
}

ItemSet ItemSet::full(int universe) {
    ItemSet s(universe);
    for (int i = 0; i < universe; ++i) s.set(i);
    return s;
}

ItemSet ItemSet::from_mask(std::uint64_t mask, int universe) {
    if (universe > 64) throw DomainError("from_mask requires universe <= 64");
    ItemSet s(universe);
    if (universe < 64 && (mask >> universe) != 0)
        throw DomainError("mask has bits outside the universe");
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
}

int ItemSet::count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
}

void ItemSet::check_item(int item) const {
    if (item < 0 || item >= n_) throw DomainError("item index out of range");
}

void ItemSet::check_same_universe(const ItemSet& other) const {
    if (n_ != other.n_) throw DomainError("item sets over different ground sets");
}

bool ItemSet::test(int item) const {
    check_item(item);
    return (words_[item / 64] >> (item % 64)) & 1;
}

void ItemSet::set(int item) {
    check_item(item);
    words_[item / 64] |= std::uint64_t{1} << (item % 64);
}

void ItemSet::reset(int item) {
    check_item(item);
    words_[item / 64] &= ~(std::uint64_t{1} << (item % 64));
}

bool ItemSet::is_subset_of(const ItemSet& other) const {
    check_same_universe(other);
    for (size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w]) return false;
    return true;
}

bool ItemSet::intersects(const ItemSet& other) const {
    check_same_universe(other);
    for (size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & other.words_[w]) return true;
    return false;
}

ItemSet& ItemSet::operator|=(const ItemSet& other) {
    check_same_universe(other);
    for (size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
}

ItemSet& ItemSet::operator&=(const ItemSet& other) {
    check_same_universe(other);
    for (size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

ItemSet& ItemSet::operator-=(const ItemSet& other) {
    check_same_universe(other);
    for (size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    return *this;
}

ItemSet ItemSet::complement() const {
    ItemSet out(n_);
    for (size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
    int spare = static_cast<int>(words_.size() * 64) - n_;
    if (spare > 0 && !out.words_.empty()) out.words_.back() &= ~std::uint64_t{0} >> spare;
    return out;
}

ItemSet ItemSet::with(int item) const {
    ItemSet out = *this;
    out.set(item);
    return out;
}

ItemSet ItemSet::without(int item) const {
    ItemSet out = *this;
    out.reset(item);
    return out;
}

ItemSet ItemSet::slice(int begin, int end) const {
    if (begin < 0 || end < begin || end > n_) throw DomainError("bad slice range");
    ItemSet out(end - begin);
    int shift = begin % 64;
    size_t first = static_cast<size_t>(begin) / 64;
    for (size_t w = 0; w < out.words_.size(); ++w) {
        std::uint64_t lo = first + w < words_.size() ? words_[first + w] : 0;
        std::uint64_t hi = shift && first + w + 1 < words_.size() ? words_[first + w + 1] : 0;
        out.words_[w] = shift ? (lo >> shift) | (hi << (64 - shift)) : lo;
    }
    int spare = static_cast<int>(out.words_.size() * 64) - out.n_;
    if (spare > 0 && !out.words_.empty()) out.words_.back() &= ~std::uint64_t{0} >> spare;
    return out;
}

ItemSet ItemSet::resized(int universe) const {
    ItemSet out(universe);
    for (size_t w = 0; w < out.words_.size() && w < words_.size(); ++w) out.words_[w] = words_[w];
    int spare = static_cast<int>(out.words_.size() * 64) - universe;
    if (spare > 0 && !out.words_.empty()) out.words_.back() &= ~std::uint64_t{0} >> spare;
    if (universe < n_) {
        for (int i = universe; i < n_; ++i)
            if (test(i)) throw DomainError("resized would drop a member");
    }
    return out;
}

bool ItemSet::operator==(const ItemSet& other) const {
    return n_ == other.n_ && words_ == other.words_;
}

bool ItemSet::operator<(const ItemSet& other) const {
    check_same_universe(other);
    for (size_t w = words_.size(); w-- > 0;) {
        if (words_[w] != other.words_[w]) return words_[w] < other.words_[w];
    }
    return false;
}

std::vector<int> ItemSet::items() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
}

std::uint64_t ItemSet::to_mask() const {
    if (n_ > 64) throw DomainError("to_mask requires universe <= 64");
    return words_.empty() ? 0 : words_[0];
}

}  // namespace maxmin
