// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Dataset measurements behind the sketching design: how much l1 mass the
// largest entries carry, how much inner product alpha-MSS sketches keep, and
// how the query-restricted l1 mass of near and far neighbours compares.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "seismic/eval.hpp"
#include "seismic/sketch.hpp"
#include "seismic/sparse_vector.hpp"

namespace seismic {

struct MassPoint {
    std::size_t kept = 0;
    double fraction = 0.0;
};

/// For j = 1..max_keep: mean over nonempty vectors of the l1 mass held by the
/// j largest entries divided by the total l1 mass.
inline std::vector<MassPoint> mass_curve(const VectorSet& set, std::size_t max_keep)
{
    if (set.empty()) throw std::invalid_argument("mass_curve: empty collection");
    std::vector<double> sums(max_keep, 0.0);
    std::size_t counted = 0;
    std::vector<float> sorted;
    for (std::size_t r = 0; r < set.size(); ++r) {
        const auto u = set[r];
        const double mass = l1_norm(u);
        if (!(mass > 0.0)) continue;
        ++counted;
        sorted.assign(u.values.begin(), u.values.end());
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double prefix = 0.0;
        for (std::size_t j = 0; j < max_keep; ++j) {
            if (j < sorted.size()) prefix += sorted[j];
            sums[j] += std::min(1.0, prefix / mass);
        }
    }
    std::vector<MassPoint> curve(max_keep);
    for (std::size_t j = 0; j < max_keep; ++j) {
        curve[j] = {j + 1, counted ? sums[j] / static_cast<double>(counted) : 0.0};
    }
    return curve;
}

struct IpPreservation {
    double mean = 0.0;
    double ci_low = 0.0;   // 95% normal-approximation interval
    double ci_high = 0.0;
    std::size_t pairs = 0;
};

/// Mean of <q~, u~> / <q, u> over sampled (query, vector) pairs with a
/// positive inner product, where q~ and u~ are alpha-MSS sketches. Pairs are
/// drawn uniformly (seeded) from all positive pairs; `sample` caps the count.
inline IpPreservation ip_preservation(const VectorSet& set, const VectorSet& queries, double alpha_doc,
                                      double alpha_query, std::size_t sample, std::uint64_t seed = 0)
{
    struct Pair {
        std::uint32_t q;
        DocId u;
    };
    std::vector<Pair> positive;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        for (std::size_t ui = 0; ui < set.size(); ++ui) {
            if (dot(queries[qi], set[ui]) > 0.0) {
                positive.push_back({static_cast<std::uint32_t>(qi), static_cast<DocId>(ui)});
            }
        }
    }
    if (positive.empty()) throw std::invalid_argument("ip_preservation: no pair with a positive inner product");

    std::mt19937_64 rng(seed);
    const std::size_t n = std::min(sample, positive.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (positive.size() - i));
        std::swap(positive[i], positive[j]);
    }

    std::vector<SparseVector> q_sketch(queries.size());
    std::vector<double> ratios;
    ratios.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [qi, ui] = positive[i];
        if (q_sketch[qi].empty()) q_sketch[qi] = alpha_mss(queries[qi], alpha_query);
        const SparseVector u_sketch = alpha_mss(set[ui], alpha_doc);
        ratios.push_back(dot(q_sketch[qi], u_sketch) / dot(queries[qi], set[ui]));
    }

    IpPreservation out;
    out.pairs = ratios.size();
    double sum = 0.0;
    for (double r : ratios) sum += r;
    out.mean = sum / static_cast<double>(ratios.size());
    double var = 0.0;
    for (double r : ratios) var += (r - out.mean) * (r - out.mean);
    const double sd = ratios.size() > 1 ? std::sqrt(var / static_cast<double>(ratios.size() - 1)) : 0.0;
    const double half = 1.96 * sd / std::sqrt(static_cast<double>(ratios.size()));
    out.ci_low = out.mean - half;
    out.ci_high = out.mean + half;
    return out;
}

struct CdfPoint {
    double ratio = 0.0;
    double cumulative = 0.0;
};

/// Per query: u = exact nearest neighbour, v = k_far-th nearest, I = query
/// support; ratio = ||v_I||_1 / ||u_I||_1. Returns the empirical CDF of the
/// ratios (queries whose nearest neighbour has no mass on I are dropped).
inline std::vector<CdfPoint> norm_ratio_cdf(const VectorSet& set, const VectorSet& queries, std::size_t k_far,
                                            unsigned workers = 0)
{
    if (k_far == 0) throw std::invalid_argument("norm_ratio_cdf: k_far must be positive");
    if (set.size() < k_far) throw std::invalid_argument("norm_ratio_cdf: collection smaller than k_far");
    std::vector<double> ratios(queries.size(), -1.0);
    parallel_for(queries.size(), workers, [&](std::size_t qi) {
        const auto q = queries[qi];
        if (q.empty()) return;
        const auto top = exact_topk(set, q, k_far);
        const double near = l1_norm(restrict_to(set[top.front().id], q.dims));
        const double far = l1_norm(restrict_to(set[top.back().id], q.dims));
        if (near > 0.0) ratios[qi] = far / near;
    });
    std::erase_if(ratios, [](double r) { return r < 0.0; });
    std::sort(ratios.begin(), ratios.end());
    std::vector<CdfPoint> cdf(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        cdf[i] = {ratios[i], static_cast<double>(i + 1) / static_cast<double>(ratios.size())};
    }
    return cdf;
}

}  // namespace seismic
