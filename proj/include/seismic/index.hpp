// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "seismic/parallel.hpp"
#include "seismic/quantize.hpp"
#include "seismic/sketch.hpp"
#include "seismic/sparse_vector.hpp"

namespace seismic {

struct BuildParams {
    double alpha = 0.4;   // Set alpha-MSS applied to the collection
    double beta = 0.2;    // blocks per inverted list, as a fraction of its length
    double gamma = 0.6;   // alpha-MSS applied to each block summary
    bool quantize = true;
    std::uint64_t seed = 0;

    void validate() const
    {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0, 1]");
        if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must be in (0, 1)");
        if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must be in (0, 1]");
    }

    friend bool operator==(const BuildParams&, const BuildParams&) = default;
};

using Summary = std::variant<SparseVector, QuantizedSummary>;

inline std::span<const Dim> summary_dims(const Summary& s)
{
    if (const auto* raw = std::get_if<SparseVector>(&s)) return raw->dims();
    return std::get<QuantizedSummary>(s).dims;
}

struct Block {
    std::vector<DocId> ids;  // ascending
    Summary summary;

    friend bool operator==(const Block&, const Block&) = default;
};

struct InvertedList {
    std::vector<Block> blocks;

    std::size_t posting_count() const noexcept
    {
        std::size_t n = 0;
        for (const auto& b : blocks) n += b.ids.size();
        return n;
    }

    friend bool operator==(const InvertedList&, const InvertedList&) = default;
};

/// Blocked inverted index over the sketched collection plus the forward
/// index of original vectors. Immutable once built.
struct SeismicIndex {
    BuildParams params;
    std::vector<InvertedList> lists;  // one per dimension, possibly empty
    VectorSet forward;

    std::size_t dim() const noexcept { return forward.dim(); }
    std::size_t size() const noexcept { return forward.size(); }

    friend bool operator==(const SeismicIndex&, const SeismicIndex&) = default;
};

/// Number of centroids drawn for a list of `n` members: ceil(beta * n) within [1, n].
inline std::size_t block_quota(double beta, std::size_t n)
{
    return set_mss_quota(beta, n);
}

/// Per-list generator seed; independent of the order lists are processed in.
inline std::uint64_t list_seed(std::uint64_t seed, Dim list) noexcept
{
    return mix64(mix64(seed) ^ mix64(0x5151'5151'0000'0000ULL | list));
}

/// Shallow K-Means: samples ceil(beta * |members|) members as centroids
/// (uniformly, without replacement) and assigns each member to the centroid
/// with the largest inner product, ties to the lowest centroid index.
/// Returns the nonempty clusters in centroid order; ids within a cluster
/// keep the order of `members`.
inline std::vector<std::vector<DocId>> cluster_list(std::span<const DocId> members,
                                                    const VectorSet& vectors, double beta,
                                                    std::uint64_t seed)
{
    if (members.empty()) throw std::invalid_argument("cluster_list: no members");
    const std::size_t n = members.size();
    const std::size_t c = block_quota(beta, n);

    // Partial Fisher-Yates; rng() % range keeps the draw portable across
    // standard libraries.
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pick(n);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (std::size_t i = 0; i < c; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(pick[i], pick[j]);
    }

    std::vector<std::vector<DocId>> clusters(c);
    if (c == 1) {
        clusters[0].assign(members.begin(), members.end());
        return clusters;
    }

    std::vector<float> dense(vectors.dim(), 0.0f);
    for (std::size_t m = 0; m < n; ++m) {
        const auto u = vectors[members[m]];
        for (std::size_t p = 0; p < u.size(); ++p) dense[u.dims[p]] = u.values[p];

        std::size_t best = 0;
        double best_score = -1.0;
        for (std::size_t k = 0; k < c; ++k) {
            const auto mu = vectors[members[pick[k]]];
            double s = 0.0;
            for (std::size_t p = 0; p < mu.size(); ++p) {
                s += static_cast<double>(dense[mu.dims[p]]) * static_cast<double>(mu.values[p]);
            }
            if (s > best_score) {
                best_score = s;
                best = k;
            }
        }
        clusters[best].push_back(members[m]);

        for (Dim d : u.dims) dense[d] = 0.0f;
    }

    std::erase_if(clusters, [](const auto& cl) { return cl.empty(); });
    return clusters;
}

/// Coordinatewise maximum over the given vectors; support is the union.
inline SparseVector summarize(const VectorSet& vectors, std::span<const DocId> members)
{
    if (members.empty()) throw std::invalid_argument("summarize: empty block");
    std::vector<std::pair<Dim, float>> entries;
    for (DocId id : members) {
        const auto u = vectors[id];
        for (std::size_t p = 0; p < u.size(); ++p) entries.emplace_back(u.dims[p], u.values[p]);
    }
    std::sort(entries.begin(), entries.end());
    std::vector<Dim> dims;
    std::vector<float> values;
    for (const auto& [d, v] : entries) {
        if (!dims.empty() && dims.back() == d) {
            values.back() = std::max(values.back(), v);
        } else {
            dims.push_back(d);
            values.push_back(v);
        }
    }
    return SparseVector::from_sorted(std::move(dims), std::move(values));
}

/// Column-major view of a collection: for each dimension, the ascending ids
/// of vectors with a nonzero coordinate there.
inline std::vector<std::vector<DocId>> inverted_lists(const VectorSet& set)
{
    std::vector<std::vector<DocId>> lists(set.dim());
    for (std::size_t r = 0; r < set.size(); ++r) {
        for (Dim d : set[r].dims) lists[d].push_back(static_cast<DocId>(r));
    }
    return lists;
}

/// Builds the index. Deterministic for a given seed; `workers` only changes
/// wall time (0 = hardware concurrency).
inline SeismicIndex build_index(const VectorSet& set, const BuildParams& params, unsigned workers = 0)
{
    params.validate();
    if (set.empty()) throw std::invalid_argument("build_index: empty collection");
    if (set.size() > std::size_t{UINT32_MAX}) throw std::invalid_argument("build_index: too many vectors");

    const VectorSet sketched = set_alpha_mss(set, params.alpha, workers);
    const auto postings = inverted_lists(sketched);

    SeismicIndex index;
    index.params = params;
    index.lists.resize(set.dim());

    parallel_for(set.dim(), workers, [&](std::size_t d) {
        const auto& members = postings[d];
        if (members.empty()) return;
        auto clusters = cluster_list(members, sketched, params.beta,
                                     list_seed(params.seed, static_cast<Dim>(d)));
        auto& blocks = index.lists[d].blocks;
        blocks.reserve(clusters.size());
        for (auto& ids : clusters) {
            SparseVector summary = alpha_mss(summarize(sketched, ids), params.gamma);
            Block block;
            block.ids = std::move(ids);
            if (params.quantize) {
                block.summary = quantize_summary(summary);
            } else {
                block.summary = std::move(summary);
            }
            blocks.push_back(std::move(block));
        }
    });

    index.forward = set;
    return index;
}

}  // namespace seismic
