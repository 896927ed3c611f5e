// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "seismic/binary_io.hpp"
#include "seismic/parallel.hpp"
#include "seismic/search.hpp"
#include "seismic/topk.hpp"

namespace seismic {

/// Exhaustive top-k: every vector is scored with `dot`, fully sorted by
/// (score desc, id asc) and truncated to k.
inline ResultList exact_topk(const VectorSet& set, SparseView q, std::size_t k)
{
    if (k == 0) throw std::invalid_argument("exact_topk: k must be positive");
    if (set.empty()) throw std::invalid_argument("exact_topk: empty collection");
    ResultList all(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        all[i] = {static_cast<DocId>(i), static_cast<float>(dot(q, set[i]))};
    }
    std::sort(all.begin(), all.end(), ranks_before);
    all.resize(std::min(k, all.size()));
    return all;
}

/// Exact top-k lists for a batch of queries.
struct GroundTruth {
    std::uint32_t k = 0;
    std::vector<ResultList> queries;  // each exactly k long

    friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

inline GroundTruth compute_ground_truth(const VectorSet& set, const VectorSet& queries, std::uint32_t k,
                                        unsigned workers = 0)
{
    if (k == 0) throw std::invalid_argument("ground truth: k must be positive");
    if (set.size() < k) throw std::invalid_argument("ground truth: collection smaller than k");
    GroundTruth gt;
    gt.k = k;
    gt.queries.resize(queries.size());
    parallel_for(queries.size(), workers,
                 [&](std::size_t i) { gt.queries[i] = exact_topk(set, queries[i], k); });
    return gt;
}

// Ground-truth file: nq u32 | k u32 | ids u32[nq*k] row-major | scores f32[nq*k]
inline void save_ground_truth(const GroundTruth& gt, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(FormatError::Kind::io, "cannot open " + path.string() + " for writing");
    detail::write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(gt.queries.size()));
    detail::write_pod<std::uint32_t>(out, gt.k);
    for (const auto& row : gt.queries) {
        if (row.size() != gt.k) throw std::invalid_argument("ground truth row length differs from k");
        for (const auto& e : row) detail::write_pod(out, e.id);
    }
    for (const auto& row : gt.queries) {
        for (const auto& e : row) detail::write_pod(out, e.score);
    }
    if (!out) throw FormatError(FormatError::Kind::io, "write failed for " + path.string());
}

inline GroundTruth load_ground_truth(const std::filesystem::path& path)
{
    using Kind = FormatError::Kind;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(Kind::io, "cannot open " + path.string());
    const auto nq = detail::read_pod<std::uint32_t>(in, Kind::header, "query count");
    const auto k = detail::read_pod<std::uint32_t>(in, Kind::header, "k");
    const std::uint64_t total = std::uint64_t{nq} * k;
    const auto ids = detail::read_array<DocId>(in, total, "ground-truth ids");
    const auto scores = detail::read_array<float>(in, total, "ground-truth scores");
    GroundTruth gt;
    gt.k = k;
    gt.queries.resize(nq);
    for (std::uint64_t q = 0; q < nq; ++q) {
        gt.queries[q].resize(k);
        for (std::uint32_t r = 0; r < k; ++r) gt.queries[q][r] = {ids[q * k + r], scores[q * k + r]};
    }
    return gt;
}

/// |S ∩ S'| / k over the first k ids of each list. A short run counts its
/// missing entries as misses.
inline double accuracy_at_k(const ResultList& truth, const ResultList& run, std::size_t k)
{
    if (k == 0) throw std::invalid_argument("accuracy_at_k: k must be positive");
    if (k > truth.size()) throw std::invalid_argument("accuracy_at_k: k exceeds ground-truth depth");
    std::unordered_set<DocId> expected;
    for (std::size_t i = 0; i < k; ++i) expected.insert(truth[i].id);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < std::min(k, run.size()); ++i) hits += expected.count(run[i].id);
    return static_cast<double>(hits) / static_cast<double>(k);
}

inline double mean_accuracy_at_k(const GroundTruth& gt, const std::vector<ResultList>& runs, std::size_t k)
{
    if (runs.size() != gt.queries.size()) throw std::invalid_argument("run and ground truth query counts differ");
    if (gt.queries.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t q = 0; q < runs.size(); ++q) sum += accuracy_at_k(gt.queries[q], runs[q], k);
    return sum / static_cast<double>(runs.size());
}

/// Runs every query; results are independent of `workers`.
inline std::vector<ResultList> search_all(const SeismicIndex& index, const KnnGraph* graph,
                                          const VectorSet& queries, const SearchParams& params,
                                          unsigned workers = 0, SearchStats* total = nullptr)
{
    std::vector<ResultList> runs(queries.size());
    std::vector<SearchStats> stats(queries.size());
    parallel_for(queries.size(), workers, [&](std::size_t i) {
        runs[i] = search(index, graph, queries[i], params, &stats[i]);
    });
    if (total) {
        for (const auto& s : stats) *total += s;
    }
    return runs;
}

// Run file: one line per result, "query_ordinal\trank\tdoc_id\tscore", rank
// starting at 1, score with 6 decimals.
inline void write_run(std::ostream& out, const std::vector<ResultList>& runs)
{
    char line[96];
    for (std::size_t q = 0; q < runs.size(); ++q) {
        for (std::size_t r = 0; r < runs[q].size(); ++r) {
            const int n = std::snprintf(line, sizeof line, "%zu\t%zu\t%u\t%.6f\n", q, r + 1, runs[q][r].id,
                                        static_cast<double>(runs[q][r].score));
            out.write(line, n);
        }
    }
}

inline void save_run(const std::vector<ResultList>& runs, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(FormatError::Kind::io, "cannot open " + path.string() + " for writing");
    write_run(out, runs);
    if (!out) throw FormatError(FormatError::Kind::io, "write failed for " + path.string());
}

/// Reads a run file. Rows are placed by query ordinal and rank; `nq` fixes
/// the number of queries (queries without rows get empty lists).
inline std::vector<ResultList> load_run(const std::filesystem::path& path, std::size_t nq)
{
    std::ifstream in(path);
    if (!in) throw FormatError(FormatError::Kind::io, "cannot open " + path.string());
    std::vector<ResultList> runs(nq);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::size_t q = 0;
        std::size_t rank = 0;
        DocId id = 0;
        float score = 0.0f;
        if (!(row >> q >> rank >> id >> score) || rank == 0) {
            throw FormatError(FormatError::Kind::header, "malformed run line " + std::to_string(lineno));
        }
        if (q >= nq) {
            throw FormatError(FormatError::Kind::consistency,
                              "run line " + std::to_string(lineno) + ": query ordinal out of range");
        }
        auto& list = runs[q];
        if (list.size() < rank) list.resize(rank);
        list[rank - 1] = {id, score};
    }
    return runs;
}

}  // namespace seismic
