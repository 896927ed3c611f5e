// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seismic {

using Dim = std::uint32_t;
using DocId = std::uint32_t;

/// Non-owning view over a sparse vector: parallel arrays of strictly
/// increasing dimensions and their (positive) values.
struct SparseView {
    std::span<const Dim> dims;
    std::span<const float> values;

    std::size_t size() const noexcept { return dims.size(); }
    bool empty() const noexcept { return dims.empty(); }
};

/// Owning sparse vector. Entries are kept sorted by dimension and every
/// stored value is strictly positive.
class SparseVector {
public:
    SparseVector() = default;

    /// Validating constructor. Throws std::invalid_argument when dims are not
    /// strictly increasing, sizes differ, or a value is not > 0.
    SparseVector(std::vector<Dim> dims, std::vector<float> values)
        : dims_(std::move(dims)), values_(std::move(values))
    {
        validate();
    }

    SparseVector(std::initializer_list<std::pair<Dim, float>> entries)
    {
        dims_.reserve(entries.size());
        values_.reserve(entries.size());
        for (const auto& [d, v] : entries) {
            dims_.push_back(d);
            values_.push_back(v);
        }
        validate();
    }

    explicit SparseVector(SparseView view)
        : dims_(view.dims.begin(), view.dims.end()),
          values_(view.values.begin(), view.values.end())
    {}

    /// Builds from already-sorted, already-positive entries without checks.
    static SparseVector from_sorted(std::vector<Dim> dims, std::vector<float> values)
    {
        SparseVector out;
        out.dims_ = std::move(dims);
        out.values_ = std::move(values);
        return out;
    }

    std::span<const Dim> dims() const noexcept { return dims_; }
    std::span<const float> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return dims_.size(); }
    bool empty() const noexcept { return dims_.empty(); }

    SparseView view() const noexcept { return {dims_, values_}; }
    operator SparseView() const noexcept { return view(); }

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    void validate() const
    {
        if (dims_.size() != values_.size()) {
            throw std::invalid_argument("sparse vector: dims and values differ in length");
        }
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (i > 0 && dims_[i] <= dims_[i - 1]) {
                throw std::invalid_argument("sparse vector: dims must be strictly increasing");
            }
            if (!(values_[i] > 0.0f) || !std::isfinite(values_[i])) {
                throw std::invalid_argument("sparse vector: values must be finite and > 0");
            }
        }
    }

    std::vector<Dim> dims_;
    std::vector<float> values_;
};

/// Inner product accumulated in double precision over common dimensions,
/// visited in ascending dimension order.
inline double dot(SparseView u, SparseView v) noexcept
{
    double acc = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < u.dims.size() && j < v.dims.size()) {
        if (u.dims[i] < v.dims[j]) {
            ++i;
        } else if (u.dims[i] > v.dims[j]) {
            ++j;
        } else {
            acc += static_cast<double>(u.values[i]) * static_cast<double>(v.values[j]);
            ++i;
            ++j;
        }
    }
    return acc;
}

inline double l1_norm(SparseView u) noexcept
{
    double acc = 0.0;
    for (float x : u.values) acc += x;
    return acc;
}

inline double l2_norm(SparseView u) noexcept
{
    double acc = 0.0;
    for (float x : u.values) acc += static_cast<double>(x) * x;
    return std::sqrt(acc);
}

/// l_p norm for p in {1, 2}.
inline double lp_norm(SparseView u, int p)
{
    switch (p) {
    case 1: return l1_norm(u);
    case 2: return l2_norm(u);
    default: throw std::invalid_argument("lp_norm: p must be 1 or 2");
    }
}

/// Keeps the entries of `u` whose dimension appears in `dims`.
/// `dims` must be sorted ascending (duplicates are tolerated).
inline SparseVector restrict_to(SparseView u, std::span<const Dim> dims)
{
    std::vector<Dim> out_dims;
    std::vector<float> out_values;
    std::size_t j = 0;
    for (std::size_t i = 0; i < u.dims.size(); ++i) {
        while (j < dims.size() && dims[j] < u.dims[i]) ++j;
        if (j == dims.size()) break;
        if (dims[j] == u.dims[i]) {
            out_dims.push_back(u.dims[i]);
            out_values.push_back(u.values[i]);
        }
    }
    return SparseVector::from_sorted(std::move(out_dims), std::move(out_values));
}

/// An ordered collection of sparse vectors sharing an ambient dimensionality,
/// stored in CSR layout. Vector ids are 0-based positions.
class VectorSet {
public:
    VectorSet() = default;
    explicit VectorSet(std::size_t dim) : dim_(dim) {}

    /// Adopts CSR arrays. Throws std::invalid_argument on any structural
    /// inconsistency; callers that parse files validate earlier with their
    /// own diagnostics.
    VectorSet(std::size_t dim, std::vector<std::uint64_t> indptr,
              std::vector<Dim> indices, std::vector<float> values)
        : dim_(dim), indptr_(std::move(indptr)), indices_(std::move(indices)),
          values_(std::move(values))
    {
        if (indptr_.empty() || indptr_.front() != 0 || indptr_.back() != indices_.size() ||
            indices_.size() != values_.size()) {
            throw std::invalid_argument("vector set: inconsistent CSR arrays");
        }
        for (std::size_t r = 0; r + 1 < indptr_.size(); ++r) {
            if (indptr_[r + 1] < indptr_[r]) {
                throw std::invalid_argument("vector set: indptr is not cumulative");
            }
            for (std::uint64_t p = indptr_[r]; p < indptr_[r + 1]; ++p) {
                if (indices_[p] >= dim_ || (p > indptr_[r] && indices_[p] <= indices_[p - 1]) ||
                    !(values_[p] > 0.0f)) {
                    throw std::invalid_argument("vector set: row " + std::to_string(r) +
                                                " violates sparse vector invariants");
                }
            }
        }
    }

    void push_back(SparseView v)
    {
        for (Dim d : v.dims) {
            if (d >= dim_) {
                throw std::invalid_argument("vector set: dimension " + std::to_string(d) +
                                            " out of range " + std::to_string(dim_));
            }
        }
        indices_.insert(indices_.end(), v.dims.begin(), v.dims.end());
        values_.insert(values_.end(), v.values.begin(), v.values.end());
        indptr_.push_back(indices_.size());
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return indptr_.size() - 1; }
    bool empty() const noexcept { return size() == 0; }
    std::size_t nnz() const noexcept { return indices_.size(); }

    SparseView operator[](std::size_t i) const noexcept
    {
        const auto b = indptr_[i];
        const auto n = indptr_[i + 1] - b;
        return {std::span<const Dim>(indices_).subspan(b, n),
                std::span<const float>(values_).subspan(b, n)};
    }

    std::span<const std::uint64_t> indptr() const noexcept { return indptr_; }
    std::span<const Dim> indices() const noexcept { return indices_; }
    std::span<const float> values() const noexcept { return values_; }

    friend bool operator==(const VectorSet&, const VectorSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> indptr_{0};
    std::vector<Dim> indices_;
    std::vector<float> values_;
};

/// Fraction of vectors in `set` with a nonzero coordinate `i`.
inline double density(const VectorSet& set, Dim i)
{
    if (i >= set.dim()) {
        throw std::out_of_range("density: dimension " + std::to_string(i) + " >= " +
                                std::to_string(set.dim()));
    }
    if (set.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t r = 0; r < set.size(); ++r) {
        const auto dims = set[r].dims;
        if (std::binary_search(dims.begin(), dims.end(), i)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(set.size());
}

}  // namespace seismic
