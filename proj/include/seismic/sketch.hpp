// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "seismic/parallel.hpp"
#include "seismic/sparse_vector.hpp"

namespace seismic {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seeded hash of a dimension index into [0, 1).
///
/// h(i) = (mix64(mix64(seed) ^ i) >> 11) * 2^-53, i.e. the top 53 bits of a
/// 64-bit splitmix64 output divided by 2^64, truncated to a double. The
/// algorithm is fixed so sketches are reproducible on every platform.
constexpr double unit_hash(std::uint64_t seed, Dim i) noexcept
{
    const std::uint64_t x = mix64(mix64(seed) ^ static_cast<std::uint64_t>(i));
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Output of l1 threshold sampling.
struct TsSketch {
    SparseVector entries;  // retained keys and their original values
    double tau = 0.0;      // d_target / ||u||_1
    double d_target = 0.0;
    std::uint64_t seed = 0;
};

/// l1 threshold sampling: entry i survives iff h(i) <= min(1, d_target * u_i / ||u||_1).
inline TsSketch l1_threshold_sample(SparseView u, double d_target, std::uint64_t seed)
{
    if (!(d_target > 0.0)) throw std::invalid_argument("l1_threshold_sample: d_target must be > 0");
    const double mass = l1_norm(u);
    if (!(mass > 0.0)) throw std::invalid_argument("l1_threshold_sample: zero vector");

    std::vector<Dim> dims;
    std::vector<float> values;
    for (std::size_t p = 0; p < u.size(); ++p) {
        const double threshold = d_target * static_cast<double>(u.values[p]) / mass;
        if (unit_hash(seed, u.dims[p]) <= threshold) {
            dims.push_back(u.dims[p]);
            values.push_back(u.values[p]);
        }
    }
    return {SparseVector::from_sorted(std::move(dims), std::move(values)), d_target / mass,
            d_target, seed};
}

/// Unbiased inner-product estimate from two sketches built with the same seed.
/// Sketches with different d_target values are accepted; the estimate then
/// uses each sketch's own tau.
inline double ts_estimate(const TsSketch& su, const TsSketch& sv) noexcept
{
    const auto u = su.entries.view();
    const auto v = sv.entries.view();
    double acc = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < u.size() && j < v.size()) {
        if (u.dims[i] < v.dims[j]) {
            ++i;
        } else if (u.dims[i] > v.dims[j]) {
            ++j;
        } else {
            const double ui = u.values[i];
            const double vj = v.values[j];
            const double p = std::min({1.0, ui * su.tau, vj * sv.tau});
            acc += ui * vj / p;
            ++i;
            ++j;
        }
    }
    return acc;
}

/// Relative slack when comparing a prefix sum with alpha * ||u||_1. Inputs
/// are 32-bit floats, so "0.5 of {0.5, 0.3, 0.2}" must not fail on the last
/// bit of 0.3f + 0.2f.
inline constexpr double kMassTolerance = 1e-6;

/// Entry positions of `u` ordered by (value descending, dim ascending).
inline std::vector<std::size_t> order_by_magnitude(SparseView u)
{
    std::vector<std::size_t> order(u.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return u.values[a] > u.values[b];
    });
    return order;
}

/// alpha-mass subvector sketch: the fewest largest entries whose l1 mass
/// reaches alpha * ||u||_1. Returned sorted by dimension.
inline SparseVector alpha_mss(SparseView u, double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha_mss: alpha must be in (0, 1]");
    const double mass = l1_norm(u);
    if (!(mass > 0.0)) throw std::invalid_argument("alpha_mss: zero vector");
    if (alpha == 1.0) return SparseVector(u);

    const auto order = order_by_magnitude(u);
    const double target = alpha * mass * (1.0 - kMassTolerance);
    std::size_t keep = order.size();
    double prefix = 0.0;
    for (std::size_t j = 0; j < order.size(); ++j) {
        prefix += u.values[order[j]];
        if (prefix >= target) {
            keep = j + 1;
            break;
        }
    }

    std::vector<std::size_t> kept(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
    std::sort(kept.begin(), kept.end());
    std::vector<Dim> dims;
    std::vector<float> values;
    dims.reserve(keep);
    values.reserve(keep);
    for (std::size_t p : kept) {
        dims.push_back(u.dims[p]);
        values.push_back(u.values[p]);
    }
    return SparseVector::from_sorted(std::move(dims), std::move(values));
}

/// Number of column entries kept by the set sketch: ceil(alpha * n), within [1, n].
inline std::size_t set_mss_quota(double alpha, std::size_t n)
{
    if (n == 0) return 0;
    // The epsilon keeps e.g. 0.7 * 10 = 7.000000000000001 from rounding up to 8.
    const double raw = std::ceil(alpha * static_cast<double>(n) - 1e-9);
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, n);
}

/// Set alpha-MSS: for each dimension keep the ceil(alpha * |L_i|) largest
/// values of that column (ties by ascending row id) and zero the rest.
/// Output is independent of `workers`.
inline VectorSet set_alpha_mss(const VectorSet& set, double alpha, unsigned workers = 1)
{
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("set_alpha_mss: alpha must be in (0, 1]");

    const auto indptr = set.indptr();
    const auto indices = set.indices();
    const auto values = set.values();

    // Transpose to column-major positions; rows are visited in order so each
    // column lists its rows ascending.
    std::vector<std::uint64_t> col_start(set.dim() + 1, 0);
    for (Dim d : indices) ++col_start[d + 1];
    std::partial_sum(col_start.begin(), col_start.end(), col_start.begin());
    std::vector<std::uint64_t> col_pos(indices.size());
    {
        std::vector<std::uint64_t> fill(col_start.begin(), col_start.end() - 1);
        for (std::uint64_t p = 0; p < indices.size(); ++p) col_pos[fill[indices[p]]++] = p;
    }

    std::vector<std::uint8_t> keep(indices.size(), 0);
    parallel_for(set.dim(), workers, [&](std::size_t d) {
        const auto begin = col_pos.begin() + static_cast<std::ptrdiff_t>(col_start[d]);
        const auto end = col_pos.begin() + static_cast<std::ptrdiff_t>(col_start[d + 1]);
        const std::size_t n = static_cast<std::size_t>(end - begin);
        if (n == 0) return;
        std::vector<std::uint64_t> column(begin, end);
        const std::size_t quota = set_mss_quota(alpha, n);
        // Positions grow with row id, so a stable sort on value alone gives
        // (value desc, row asc).
        std::stable_sort(column.begin(), column.end(),
                         [&](std::uint64_t a, std::uint64_t b) { return values[a] > values[b]; });
        for (std::size_t j = 0; j < quota; ++j) keep[column[j]] = 1;
    });

    std::vector<std::uint64_t> out_indptr{0};
    out_indptr.reserve(set.size() + 1);
    std::vector<Dim> out_indices;
    std::vector<float> out_values;
    for (std::size_t r = 0; r < set.size(); ++r) {
        for (std::uint64_t p = indptr[r]; p < indptr[r + 1]; ++p) {
            if (keep[p]) {
                out_indices.push_back(indices[p]);
                out_values.push_back(values[p]);
            }
        }
        out_indptr.push_back(out_indices.size());
    }
    return VectorSet(set.dim(), std::move(out_indptr), std::move(out_indices), std::move(out_values));
}

}  // namespace seismic
