// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "seismic/sparse_vector.hpp"

namespace seismic {

/// 8-bit scalar-quantized summary. Value at position p is approximately
/// m + codes[p] * delta, with [m, max] split into 256 equal bins.
struct QuantizedSummary {
    std::vector<Dim> dims;
    std::vector<std::uint8_t> codes;
    float m = 0.0f;
    float delta = 0.0f;

    std::size_t size() const noexcept { return dims.size(); }

    double reconstruct(std::size_t p) const noexcept
    {
        return static_cast<double>(m) + static_cast<double>(codes[p]) * static_cast<double>(delta);
    }

    friend bool operator==(const QuantizedSummary&, const QuantizedSummary&) = default;
};

inline QuantizedSummary quantize_summary(SparseView s)
{
    if (s.empty()) throw std::invalid_argument("quantize_summary: empty summary");
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    const double m = *lo;
    const double range = static_cast<double>(*hi) - m;

    QuantizedSummary q;
    q.dims.assign(s.dims.begin(), s.dims.end());
    q.codes.resize(s.size(), 0);
    q.m = *lo;
    q.delta = static_cast<float>(range / 256.0);
    // The stored bin width must cover the range, otherwise the top bin's
    // reconstruction error could exceed delta by an ulp.
    while (256.0 * static_cast<double>(q.delta) < range) {
        q.delta = std::nextafter(q.delta, INFINITY);
    }
    if (q.delta == 0.0f) return q;

    const double delta = q.delta;
    for (std::size_t p = 0; p < s.size(); ++p) {
        const double bin = std::floor((static_cast<double>(s.values[p]) - m) / delta);
        q.codes[p] = static_cast<std::uint8_t>(std::clamp(bin, 0.0, 255.0));
    }
    return q;
}

inline SparseVector dequantize(const QuantizedSummary& q)
{
    std::vector<float> values(q.size());
    for (std::size_t p = 0; p < q.size(); ++p) values[p] = static_cast<float>(q.reconstruct(p));
    return SparseVector::from_sorted(q.dims, std::move(values));
}

}  // namespace seismic
