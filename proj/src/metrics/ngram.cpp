#include "clts/metrics/ngram.hpp"

#include <algorithm>

namespace clts::metrics {

std::uint32_t Vocabulary::id(std::string_view token) {
    const auto [it, inserted] = ids_.try_emplace(token, static_cast<std::uint32_t>(ids_.size()));
    return it->second;
}

std::vector<std::uint32_t> Vocabulary::ids(std::span<const std::string> tokens) {
    std::vector<std::uint32_t> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(id(t));
    return out;
}

NGramMultiset::NGramMultiset(std::span<const std::uint32_t> ids, int order) : order_(order) {
    const auto n = static_cast<std::size_t>(order);
    if (ids.size() < n) return;
    std::vector<NGramKey> keys;
    keys.reserve(ids.size() - n + 1);
    for (std::size_t i = 0; i + n <= ids.size(); ++i) {
        NGramKey key;
        key.fill(kPad);
        std::copy_n(ids.begin() + static_cast<std::ptrdiff_t>(i), n, key.begin());
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& key : keys) {
        if (!entries_.empty() && entries_.back().first == key) ++entries_.back().second;
        else entries_.emplace_back(key, 1);
    }
}

long NGramMultiset::total() const noexcept {
    long sum = 0;
    for (const auto& e : entries_) sum += e.second;
    return sum;
}

int NGramMultiset::count(const NGramKey& key) const noexcept {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                                     [](const Entry& e, const NGramKey& k) { return e.first < k; });
    return (it != entries_.end() && it->first == key) ? it->second : 0;
}

NGramMultiset NGramMultiset::scaled(int factor) const {
    NGramMultiset out;
    out.order_ = order_;
    if (factor <= 0) return out;
    out.entries_ = entries_;
    for (auto& e : out.entries_) e.second *= factor;
    return out;
}

namespace {

// Walks two sorted entry lists; combine(a, b) yields the merged count.
template <typename Combine>
std::vector<NGramMultiset::Entry> merge(const std::vector<NGramMultiset::Entry>& lhs,
                                        const std::vector<NGramMultiset::Entry>& rhs,
                                        Combine combine) {
    std::vector<NGramMultiset::Entry> out;
    out.reserve(lhs.size() + rhs.size());
    auto a = lhs.begin();
    auto b = rhs.begin();
    while (a != lhs.end() || b != rhs.end()) {
        NGramKey key;
        int ca = 0;
        int cb = 0;
        if (b == rhs.end() || (a != lhs.end() && a->first < b->first)) {
            key = a->first;
            ca = (a++)->second;
        } else if (a == lhs.end() || b->first < a->first) {
            key = b->first;
            cb = (b++)->second;
        } else {
            key = a->first;
            ca = (a++)->second;
            cb = (b++)->second;
        }
        const int c = combine(ca, cb);
        if (c > 0) out.emplace_back(key, c);
    }
    return out;
}

}  // namespace

NGramMultiset NGramMultiset::intersect(const NGramMultiset& other) const {
    NGramMultiset out;
    out.order_ = order_;
    out.entries_ = merge(entries_, other.entries_, [](int a, int b) { return std::min(a, b); });
    return out;
}

NGramMultiset NGramMultiset::unite(const NGramMultiset& other) const {
    NGramMultiset out;
    out.order_ = order_;
    out.entries_ = merge(entries_, other.entries_, [](int a, int b) { return std::max(a, b); });
    return out;
}

NGramMultiset NGramMultiset::add(const NGramMultiset& other) const {
    NGramMultiset out;
    out.order_ = order_;
    out.entries_ = merge(entries_, other.entries_, [](int a, int b) { return a + b; });
    return out;
}

NGramMultiset NGramMultiset::subtract(const NGramMultiset& other) const {
    NGramMultiset out;
    out.order_ = order_;
    out.entries_ = merge(entries_, other.entries_, [](int a, int b) { return a - b; });
    return out;
}

}  // namespace clts::metrics
