// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "seismic/sparse_vector.hpp"

namespace seismic {

struct ScoredId {
    DocId id = 0;
    float score = 0.0f;

    friend bool operator==(const ScoredId&, const ScoredId&) = default;
};

/// Result order: score descending, then id ascending.
constexpr bool ranks_before(const ScoredId& a, const ScoredId& b) noexcept
{
    return a.score > b.score || (a.score == b.score && a.id < b.id);
}

/// Ordered (id, score) pairs, best first.
using ResultList = std::vector<ScoredId>;

/// Bounded min-heap holding the best k entries seen so far under
/// `ranks_before`. The root is the current worst entry.
class TopKHeap {
public:
    explicit TopKHeap(std::size_t k) : k_(k) { heap_.reserve(k + 1); }

    std::size_t capacity() const noexcept { return k_; }
    std::size_t size() const noexcept { return heap_.size(); }
    bool empty() const noexcept { return heap_.empty(); }
    bool full() const noexcept { return heap_.size() >= k_; }

    /// Score of the worst retained entry; -inf while the heap is filling.
    float min_score() const noexcept
    {
        return full() && k_ > 0 ? heap_.front().score : -std::numeric_limits<float>::infinity();
    }

    bool would_enter(const ScoredId& e) const noexcept
    {
        if (k_ == 0) return false;
        return !full() || ranks_before(e, heap_.front());
    }

    /// Inserts `e` if it beats the current worst entry. Returns whether it was kept.
    bool push(const ScoredId& e)
    {
        if (!would_enter(e)) return false;
        heap_.push_back(e);
        std::push_heap(heap_.begin(), heap_.end(), ranks_before);
        if (heap_.size() > k_) {
            std::pop_heap(heap_.begin(), heap_.end(), ranks_before);
            heap_.pop_back();
        }
        return true;
    }

    /// Unordered view of the retained entries.
    const std::vector<ScoredId>& entries() const noexcept { return heap_; }

    ResultList sorted() const
    {
        ResultList out = heap_;
        std::sort(out.begin(), out.end(), ranks_before);
        return out;
    }

private:
    std::size_t k_;
    std::vector<ScoredId> heap_;
};

}  // namespace seismic
