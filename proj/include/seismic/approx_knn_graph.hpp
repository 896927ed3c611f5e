// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "seismic/knn_graph.hpp"
#include "seismic/search.hpp"

namespace seismic {

/// Approximate graph: every indexed vector is run as a query (graph
/// disabled) for its top kappa+1, self is dropped and the first
/// min(kappa, N-1) remaining ids are kept. `params.k` and
/// `params.use_graph` are ignored.
inline KnnGraph build_approx_graph(const SeismicIndex& index, std::uint32_t kappa,
                                   const SearchParams& params, unsigned workers = 0)
{
    KnnGraph graph(index.size(), kappa);
    if (!graph.enabled()) return graph;

    SearchParams p = params;
    p.use_graph = false;
    p.k = std::min<std::size_t>(std::size_t{kappa} + 1, index.size());
    p.validate();

    const std::size_t n = index.size();
    const std::size_t degree = graph.degree();
    constexpr std::size_t kBatch = 64;
    parallel_for((n + kBatch - 1) / kBatch, workers, [&](std::size_t b) {
        QueryScratch scratch(index.dim(), n);
        const std::size_t end = std::min(n, (b + 1) * kBatch);
        for (std::size_t src = b * kBatch; src < end; ++src) {
            const auto u = index.forward[src];
            auto out = graph.neighbors(static_cast<DocId>(src));
            std::size_t filled = 0;
            if (u.empty()) {
                // Everything scores zero against an empty vector.
                for (DocId id = 0; filled < degree; ++id) {
                    if (id != src) out[filled++] = id;
                }
                continue;
            }
            // search() returns min(k, N) results, so at least `degree` survive.
            for (const auto& r : search(index, nullptr, u, p, scratch)) {
                if (r.id == src) continue;
                if (filled == degree) break;
                out[filled++] = r.id;
            }
        }
    });
    return graph;
}

}  // namespace seismic
