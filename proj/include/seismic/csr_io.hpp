// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Binary CSR collection format (little-endian):
//   nrows u64 | ncols u64 | nnz u64 | indptr (nrows+1) u64 | indices nnz u32 | values nnz f32
// Queries and sketched collections use the same layout.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "seismic/binary_io.hpp"
#include "seismic/sparse_vector.hpp"

namespace seismic {

inline void write_collection(std::ostream& out, const VectorSet& set)
{
    detail::write_pod<std::uint64_t>(out, set.size());
    detail::write_pod<std::uint64_t>(out, set.dim());
    detail::write_pod<std::uint64_t>(out, set.nnz());
    detail::write_array(out, set.indptr());
    detail::write_array(out, set.indices());
    detail::write_array(out, set.values());
}

inline VectorSet read_collection(std::istream& in)
{
    using Kind = FormatError::Kind;
    const auto nrows = detail::read_pod<std::uint64_t>(in, Kind::header, "header (nrows)");
    const auto ncols = detail::read_pod<std::uint64_t>(in, Kind::header, "header (ncols)");
    const auto nnz = detail::read_pod<std::uint64_t>(in, Kind::header, "header (nnz)");
    if (ncols > std::uint64_t{UINT32_MAX} + 1) {
        throw FormatError(Kind::header, "ncols exceeds the 32-bit index range");
    }

    auto indptr = detail::read_array<std::uint64_t>(in, nrows + 1, "indptr");
    if (indptr.front() != 0) {
        throw FormatError(Kind::consistency, "indptr[0] must be 0");
    }
    if (indptr.back() != nnz) {
        throw FormatError(Kind::consistency, "indptr[nrows] = " + std::to_string(indptr.back()) +
                                                 " disagrees with nnz = " + std::to_string(nnz));
    }
    for (std::uint64_t r = 0; r < nrows; ++r) {
        if (indptr[r + 1] < indptr[r]) {
            throw FormatError(Kind::consistency,
                              "indptr decreases at row " + std::to_string(r));
        }
    }

    auto indices = detail::read_array<Dim>(in, nnz, "indices");
    auto values = detail::read_array<float>(in, nnz, "values");

    for (std::uint64_t r = 0; r < nrows; ++r) {
        for (std::uint64_t p = indptr[r]; p < indptr[r + 1]; ++p) {
            if (indices[p] >= ncols) {
                throw FormatError(Kind::index_order, "row " + std::to_string(r) + ": index " +
                                                         std::to_string(indices[p]) +
                                                         " out of range");
            }
            if (p > indptr[r] && indices[p] <= indices[p - 1]) {
                throw FormatError(Kind::index_order,
                                  "row " + std::to_string(r) + ": indices not strictly increasing");
            }
            if (!std::isfinite(values[p]) || values[p] < 0.0f) {
                throw FormatError(Kind::value,
                                  "row " + std::to_string(r) + ": negative or non-finite value");
            }
            if (values[p] == 0.0f) {
                throw FormatError(Kind::value,
                                  "row " + std::to_string(r) + ": explicit zero value");
            }
        }
    }
    return VectorSet(ncols, std::move(indptr), std::move(indices), std::move(values));
}

inline void save_collection(const VectorSet& set, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(FormatError::Kind::io, "cannot open " + path.string() + " for writing");
    write_collection(out, set);
    if (!out) throw FormatError(FormatError::Kind::io, "write failed for " + path.string());
}

inline VectorSet load_collection(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(FormatError::Kind::io, "cannot open " + path.string());
    return read_collection(in);
}

}  // namespace seismic
