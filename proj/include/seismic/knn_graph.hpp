// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Graph file layout (little-endian):
//   N u64 | kappa u32 | id width in bytes u8 | N * min(kappa, N-1) ids, each `width` bytes

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <vector>

#include "seismic/binary_io.hpp"
#include "seismic/parallel.hpp"
#include "seismic/sparse_vector.hpp"
#include "seismic/topk.hpp"

namespace seismic {

/// For each vector id, the ids of its min(kappa, N-1) highest inner-product
/// neighbours (self excluded), best first. kappa = 0 disables the graph.
class KnnGraph {
public:
    KnnGraph() = default;

    KnnGraph(std::size_t n, std::uint32_t kappa)
        : n_(n), kappa_(kappa), degree_(n == 0 ? 0 : std::min<std::size_t>(kappa, n - 1)),
          neighbors_(n_ * degree_)
    {}

    std::size_t size() const noexcept { return n_; }
    std::uint32_t kappa() const noexcept { return kappa_; }
    /// Uniform list length, min(kappa, N-1).
    std::size_t degree() const noexcept { return degree_; }
    bool enabled() const noexcept { return degree_ > 0; }

    std::span<const DocId> neighbors(DocId u) const noexcept
    {
        return std::span<const DocId>(neighbors_).subspan(std::size_t{u} * degree_, degree_);
    }
    std::span<DocId> neighbors(DocId u) noexcept
    {
        return std::span<DocId>(neighbors_).subspan(std::size_t{u} * degree_, degree_);
    }

    std::span<const DocId> flat() const noexcept { return neighbors_; }

    friend bool operator==(const KnnGraph&, const KnnGraph&) = default;

private:
    std::size_t n_ = 0;
    std::uint32_t kappa_ = 0;
    std::size_t degree_ = 0;
    std::vector<DocId> neighbors_;
};

/// Storage cost of a graph as (floor(log2(N-1)) + 1) * N * kappa bits.
inline std::uint64_t graph_size_bits(std::uint64_t n, std::uint64_t kappa)
{
    if (n < 2) throw std::invalid_argument("graph_size_bits: need N >= 2");
    return static_cast<std::uint64_t>(std::bit_width(n - 1)) * n * kappa;
}

/// Bytes per id in the graph file: bit width of N-1 rounded up to whole bytes.
inline std::uint8_t graph_id_width(std::uint64_t n)
{
    const auto bits = n < 2 ? 1 : std::bit_width(n - 1);
    return static_cast<std::uint8_t>((bits + 7) / 8);
}

/// Exact graph by exhaustive scoring. Each source accumulates scores over
/// the column lists of its own dimensions in ascending order, which adds the
/// same products in the same order as `dot`, so scores are bit-identical.
/// Ties are broken by ascending id.
inline KnnGraph build_exact_graph(const VectorSet& set, std::uint32_t kappa, unsigned workers = 0)
{
    KnnGraph graph(set.size(), kappa);
    if (!graph.enabled()) return graph;

    struct Posting {
        DocId id;
        float value;
    };
    std::vector<std::vector<Posting>> columns(set.dim());
    for (std::size_t r = 0; r < set.size(); ++r) {
        const auto v = set[r];
        for (std::size_t p = 0; p < v.size(); ++p) {
            columns[v.dims[p]].push_back({static_cast<DocId>(r), v.values[p]});
        }
    }

    const std::size_t n = set.size();
    const std::size_t degree = graph.degree();

    // Sources are processed in batches; each batch owns its accumulator.
    constexpr std::size_t kBatch = 64;
    const std::size_t batches = (n + kBatch - 1) / kBatch;
    parallel_for(batches, workers, [&](std::size_t b) {
        std::vector<double> acc(n, 0.0);
        std::vector<DocId> touched;
        std::vector<ScoredId> cand;
        const std::size_t end = std::min(n, (b + 1) * kBatch);
        for (std::size_t src = b * kBatch; src < end; ++src) {
            const auto u = set[src];
            for (std::size_t p = 0; p < u.size(); ++p) {
                const double uv = u.values[p];
                for (const auto& post : columns[u.dims[p]]) {
                    if (acc[post.id] == 0.0) touched.push_back(post.id);
                    acc[post.id] += uv * static_cast<double>(post.value);
                }
            }
            cand.clear();
            for (DocId id : touched) {
                const auto score = static_cast<float>(acc[id]);
                // Zero after rounding joins the untouched ids below.
                if (id != src && score > 0.0f) cand.push_back({id, score});
                acc[id] = 0.0;
            }
            touched.clear();

            const std::size_t take = std::min(degree, cand.size());
            std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take),
                              cand.end(), ranks_before);
            auto out = graph.neighbors(static_cast<DocId>(src));
            std::size_t filled = 0;
            for (; filled < take; ++filled) out[filled] = cand[filled].id;
            if (filled < degree) {
                // Remaining neighbours score 0: lowest ids not already chosen.
                std::vector<DocId> chosen(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(filled));
                std::sort(chosen.begin(), chosen.end());
                for (DocId id = 0; filled < degree && id < n; ++id) {
                    if (id == src || std::binary_search(chosen.begin(), chosen.end(), id)) continue;
                    out[filled++] = id;
                }
            }
        }
    });
    return graph;
}

inline void write_graph(std::ostream& out, const KnnGraph& graph)
{
    const std::uint8_t width = graph_id_width(graph.size());
    detail::write_pod<std::uint64_t>(out, graph.size());
    detail::write_pod<std::uint32_t>(out, graph.kappa());
    detail::write_pod<std::uint8_t>(out, width);
    std::vector<std::uint8_t> packed;
    packed.reserve(graph.flat().size() * width);
    for (DocId id : graph.flat()) {
        for (std::uint8_t b = 0; b < width; ++b) packed.push_back(static_cast<std::uint8_t>(id >> (8 * b)));
    }
    detail::write_array<std::uint8_t>(out, packed);
}

inline KnnGraph read_graph(std::istream& in)
{
    using Kind = FormatError::Kind;
    const auto n = detail::read_pod<std::uint64_t>(in, Kind::header, "graph size");
    const auto kappa = detail::read_pod<std::uint32_t>(in, Kind::header, "graph kappa");
    const auto width = detail::read_pod<std::uint8_t>(in, Kind::header, "graph id width");
    if (n > std::uint64_t{UINT32_MAX} + 1) throw FormatError(Kind::header, "implausible graph size");
    if (width != graph_id_width(n)) {
        throw FormatError(Kind::header, "graph id width " + std::to_string(width) +
                                            " does not match N = " + std::to_string(n));
    }
    KnnGraph graph(n, kappa);
    const auto packed = detail::read_array<std::uint8_t>(in, std::uint64_t{graph.degree()} * n * width,
                                                         "graph ids");
    for (std::size_t u = 0; u < n; ++u) {
        auto out = graph.neighbors(static_cast<DocId>(u));
        for (std::size_t j = 0; j < out.size(); ++j) {
            const std::size_t base = (u * out.size() + j) * width;
            DocId id = 0;
            for (std::uint8_t b = 0; b < width; ++b) id |= DocId{packed[base + b]} << (8 * b);
            if (id >= n || id == u) throw FormatError(Kind::consistency, "invalid neighbour id in graph");
            out[j] = id;
        }
    }
    return graph;
}

inline void save_graph(const KnnGraph& graph, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(FormatError::Kind::io, "cannot open " + path.string() + " for writing");
    write_graph(out, graph);
    if (!out) throw FormatError(FormatError::Kind::io, "write failed for " + path.string());
}

inline KnnGraph load_graph(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(FormatError::Kind::io, "cannot open " + path.string());
    return read_graph(in);
}

}  // namespace seismic
