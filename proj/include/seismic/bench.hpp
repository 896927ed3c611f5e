// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "seismic/search.hpp"

namespace seismic {

struct LatencyReport {
    std::vector<double> per_query_us;  // best repetition per query
    double mean_us = 0.0;
    double median_us = 0.0;
    double p95_us = 0.0;
    double mean_accuracy = 0.0;  // filled by callers holding ground truth
};

/// Single-threaded latency of `search`, timed around the call only with a
/// monotonic clock. Each query is run `repetitions` times and its fastest
/// run is reported.
inline LatencyReport bench(const SeismicIndex& index, const KnnGraph* graph, const VectorSet& queries,
                           const SearchParams& params, std::size_t repetitions,
                           std::vector<ResultList>* results = nullptr)
{
    using Clock = std::chrono::steady_clock;
    LatencyReport report;
    if (queries.empty()) return report;
    repetitions = std::max<std::size_t>(repetitions, 1);

    QueryScratch scratch(index.dim(), index.size());
    report.per_query_us.assign(queries.size(), INFINITY);
    if (results) results->assign(queries.size(), {});
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        for (std::size_t q = 0; q < queries.size(); ++q) {
            const auto start = Clock::now();
            ResultList r = search(index, graph, queries[q], params, scratch);
            const auto stop = Clock::now();
            const double us = std::chrono::duration<double, std::micro>(stop - start).count();
            report.per_query_us[q] = std::min(report.per_query_us[q], us);
            if (results && rep == 0) (*results)[q] = std::move(r);
        }
    }

    std::vector<double> sorted = report.per_query_us;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double t : sorted) sum += t;
    const std::size_t n = sorted.size();
    report.mean_us = sum / static_cast<double>(n);
    report.median_us = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    // Nearest-rank percentile.
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
    report.p95_us = sorted[std::clamp<std::size_t>(rank, 1, n) - 1];
    return report;
}

}  // namespace seismic
