// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "seismic/index.hpp"
#include "seismic/knn_graph.hpp"
#include "seismic/sketch.hpp"
#include "seismic/topk.hpp"

namespace seismic {

struct SearchParams {
    std::size_t k = 10;
    double alpha_q = 1.0;      // alpha-MSS applied to the query to pick lists
    double heap_factor = 1.0;  // skip a block when its summary score < heap.min / heap_factor
    bool use_graph = false;

    void validate() const
    {
        if (k == 0) throw std::invalid_argument("k must be positive");
        if (!(alpha_q > 0.0 && alpha_q <= 1.0)) throw std::invalid_argument("alpha_q must be in (0, 1]");
        if (!(heap_factor > 0.0 && heap_factor <= 1.0)) {
            throw std::invalid_argument("heap_factor must be in (0, 1]");
        }
    }
};

struct SearchStats {
    std::size_t lists = 0;
    std::size_t blocks_evaluated = 0;
    std::size_t blocks_skipped = 0;
    std::size_t forward_evals = 0;  // exact inner products against the forward index

    SearchStats& operator+=(const SearchStats& o)
    {
        lists += o.lists;
        blocks_evaluated += o.blocks_evaluated;
        blocks_skipped += o.blocks_skipped;
        forward_evals += o.forward_evals;
        return *this;
    }
};

/// Per-query scratch: the query scattered densely and a visited bitset over
/// ids. Reusable across queries on one thread; not shareable between threads.
class QueryScratch {
public:
    QueryScratch(std::size_t dim, std::size_t n) : dense_(dim, 0.0f), visited_((n + 63) / 64, 0) {}

    void load(SparseView q)
    {
        clear();
        for (std::size_t p = 0; p < q.size(); ++p) {
            if (q.dims[p] < dense_.size()) {
                dense_[q.dims[p]] = q.values[p];
                touched_.push_back(q.dims[p]);
            }
        }
    }

    void clear()
    {
        for (Dim d : touched_) dense_[d] = 0.0f;
        touched_.clear();
        std::fill(visited_.begin(), visited_.end(), 0);
    }

    /// Marks `id` visited; returns false if it already was.
    bool visit(DocId id) noexcept
    {
        auto& word = visited_[id >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (id & 63);
        if (word & bit) return false;
        word |= bit;
        return true;
    }

    bool visited(DocId id) const noexcept { return (visited_[id >> 6] >> (id & 63)) & 1; }

    /// Inner product with the loaded query. Same summation order as `dot`.
    double score(SparseView v) const noexcept
    {
        double acc = 0.0;
        for (std::size_t p = 0; p < v.size(); ++p) {
            acc += static_cast<double>(dense_[v.dims[p]]) * static_cast<double>(v.values[p]);
        }
        return acc;
    }

    double score(const QuantizedSummary& s) const noexcept
    {
        double acc = 0.0;
        for (std::size_t p = 0; p < s.size(); ++p) acc += static_cast<double>(dense_[s.dims[p]]) * s.reconstruct(p);
        return acc;
    }

    double score(const Summary& s) const noexcept
    {
        if (const auto* raw = std::get_if<SparseVector>(&s)) return score(raw->view());
        return score(std::get<QuantizedSummary>(s));
    }

private:
    std::vector<float> dense_;
    std::vector<Dim> touched_;
    std::vector<std::uint64_t> visited_;
};

/// Scores every not-yet-visited member of `ids` exactly and offers it to the heap.
inline void evaluate_block(std::span<const DocId> ids, const VectorSet& forward, QueryScratch& scratch,
                           TopKHeap& heap, SearchStats* stats = nullptr)
{
    for (DocId id : ids) {
        if (!scratch.visit(id)) continue;
        heap.push({id, static_cast<float>(scratch.score(forward[id]))});
        if (stats) ++stats->forward_evals;
    }
}

/// One-hop expansion: offers every unvisited neighbour of the current heap
/// members to the heap. Only ever replaces entries with better ones.
inline void expand_with_graph(TopKHeap& heap, const KnnGraph& graph, const VectorSet& forward,
                              QueryScratch& scratch, SearchStats* stats = nullptr)
{
    if (!graph.enabled()) return;
    if (graph.size() != forward.size()) throw std::invalid_argument("graph and index sizes differ");
    const ResultList seeds = heap.sorted();
    for (const auto& seed : seeds) evaluate_block(graph.neighbors(seed.id), forward, scratch, heap, stats);
}

/// Fills a heap that holds fewer than k entries with unvisited ids in
/// ascending order (exact scores), stopping once no further id can enter at
/// score zero. Keeps the result length at min(k, N).
inline void pad_with_unvisited(TopKHeap& heap, const VectorSet& forward, QueryScratch& scratch,
                               SearchStats* stats = nullptr)
{
    if (heap.full()) return;
    for (std::size_t id = 0; id < forward.size(); ++id) {
        if (heap.full() && !heap.would_enter({static_cast<DocId>(id), 0.0f})) break;
        const auto doc = static_cast<DocId>(id);
        if (!scratch.visit(doc)) continue;
        heap.push({doc, static_cast<float>(scratch.score(forward[doc]))});
        if (stats) ++stats->forward_evals;
    }
}

/// Query dimensions to traverse: alpha_q-MSS of q, by descending query value.
inline std::vector<Dim> traversal_order(SparseView q, double alpha_q)
{
    const SparseVector cut = alpha_mss(q, alpha_q);
    const auto order = order_by_magnitude(cut);
    std::vector<Dim> dims;
    dims.reserve(order.size());
    for (std::size_t p : order) dims.push_back(cut.dims()[p]);
    return dims;
}

/// Approximate top-k by inner product. `graph` may be null; it is used only
/// when params.use_graph is set. `scratch` must match the index shape.
inline ResultList search(const SeismicIndex& index, const KnnGraph* graph, SparseView q,
                         const SearchParams& params, QueryScratch& scratch, SearchStats* stats = nullptr)
{
    params.validate();
    if (!(l1_norm(q) > 0.0)) throw std::invalid_argument("search: zero query");

    scratch.load(q);
    TopKHeap heap(params.k);
    std::vector<std::pair<float, std::uint32_t>> ranked;

    for (Dim d : traversal_order(q, params.alpha_q)) {
        if (d >= index.lists.size()) continue;
        const auto& blocks = index.lists[d].blocks;
        if (blocks.empty()) continue;
        if (stats) ++stats->lists;

        ranked.clear();
        for (std::uint32_t b = 0; b < blocks.size(); ++b) {
            ranked.emplace_back(static_cast<float>(scratch.score(blocks[b].summary)), b);
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
            return x.first > y.first || (x.first == y.first && x.second < y.second);
        });

        for (std::size_t r = 0; r < ranked.size(); ++r) {
            const auto [summary_score, b] = ranked[r];
            // Later blocks score no higher and the heap minimum only grows,
            // so the rest of the list is skipped too.
            if (heap.full() &&
                static_cast<double>(summary_score) < static_cast<double>(heap.min_score()) / params.heap_factor) {
                if (stats) stats->blocks_skipped += ranked.size() - r;
                break;
            }
            if (stats) ++stats->blocks_evaluated;
            evaluate_block(blocks[b].ids, index.forward, scratch, heap, stats);
        }
    }

    pad_with_unvisited(heap, index.forward, scratch, stats);
    if (params.use_graph && graph != nullptr) expand_with_graph(heap, *graph, index.forward, scratch, stats);
    return heap.sorted();
}

inline ResultList search(const SeismicIndex& index, const KnnGraph* graph, SparseView q,
                         const SearchParams& params, SearchStats* stats = nullptr)
{
    QueryScratch scratch(index.dim(), index.size());
    return search(index, graph, q, params, scratch, stats);
}

}  // namespace seismic
