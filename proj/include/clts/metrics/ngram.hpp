#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace clts::metrics {

inline constexpr int kMaxOrder = 4;

/// Interns token strings to dense ids for the lifetime of one scoring call.
class Vocabulary {
public:
    std::uint32_t id(std::string_view token);
    std::vector<std::uint32_t> ids(std::span<const std::string> tokens);

private:
    std::unordered_map<std::string_view, std::uint32_t> ids_;
};

/// An n-gram over interned ids; unused trailing slots hold kPad.
using NGramKey = std::array<std::uint32_t, kMaxOrder>;
inline constexpr std::uint32_t kPad = 0xFFFFFFFFu;

/// Multiset of n-grams of a single order, stored as a sorted run-length
/// vector so that intersection and difference are linear merges.
class NGramMultiset {
public:
    using Entry = std::pair<NGramKey, int>;

    NGramMultiset() = default;
    NGramMultiset(std::span<const std::uint32_t> ids, int order);

    int order() const noexcept { return order_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    /// Number of distinct n-grams.
    std::size_t distinct() const noexcept { return entries_.size(); }
    /// Sum of counts; equals max(0, len - order + 1) for a freshly built set.
    long total() const noexcept;
    bool empty() const noexcept { return entries_.empty(); }
    int count(const NGramKey& key) const noexcept;

    NGramMultiset scaled(int factor) const;
    /// Elementwise min (multiset intersection).
    NGramMultiset intersect(const NGramMultiset& other) const;
    /// Elementwise max (multiset union).
    NGramMultiset unite(const NGramMultiset& other) const;
    /// Elementwise sum.
    NGramMultiset add(const NGramMultiset& other) const;
    /// Saturating difference; n-grams with non-positive count are dropped.
    NGramMultiset subtract(const NGramMultiset& other) const;

private:
    int order_ = 1;
    std::vector<Entry> entries_;
};

}  // namespace clts::metrics
