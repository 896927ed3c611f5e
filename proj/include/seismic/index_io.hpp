// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Index file layout (little-endian), version 1:
//
//   magic "SEISMIDX" | version u32
//   alpha f64 | beta f64 | gamma f64 | quantize u8 | seed u64
//   nlists u64
//   per list:   nblocks u32
//     per block: nids u32 | ids u32[nids]
//                kind u8 (0 = raw, 1 = quantized) | nnz u32 | dims u32[nnz]
//                raw:       values f32[nnz]
//                quantized: m f32 | delta f32 | codes u8[nnz]
//   forward collection in the CSR collection format

#include <array>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "seismic/csr_io.hpp"
#include "seismic/index.hpp"

namespace seismic {

inline constexpr std::array<char, 8> kIndexMagic{'S', 'E', 'I', 'S', 'M', 'I', 'D', 'X'};
inline constexpr std::uint32_t kIndexVersion = 1;

inline void write_index(std::ostream& out, const SeismicIndex& index)
{
    using detail::write_array;
    using detail::write_pod;
    out.write(kIndexMagic.data(), kIndexMagic.size());
    write_pod(out, kIndexVersion);
    write_pod(out, index.params.alpha);
    write_pod(out, index.params.beta);
    write_pod(out, index.params.gamma);
    write_pod<std::uint8_t>(out, index.params.quantize ? 1 : 0);
    write_pod(out, index.params.seed);

    write_pod<std::uint64_t>(out, index.lists.size());
    for (const auto& list : index.lists) {
        write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(list.blocks.size()));
        for (const auto& block : list.blocks) {
            write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(block.ids.size()));
            write_array<DocId>(out, block.ids);
            if (const auto* raw = std::get_if<SparseVector>(&block.summary)) {
                write_pod<std::uint8_t>(out, 0);
                write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(raw->size()));
                write_array(out, raw->dims());
                write_array(out, raw->values());
            } else {
                const auto& q = std::get<QuantizedSummary>(block.summary);
                write_pod<std::uint8_t>(out, 1);
                write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(q.size()));
                write_array<Dim>(out, q.dims);
                write_pod(out, q.m);
                write_pod(out, q.delta);
                write_array<std::uint8_t>(out, q.codes);
            }
        }
    }
    write_collection(out, index.forward);
}

inline SeismicIndex read_index(std::istream& in)
{
    using Kind = FormatError::Kind;
    using detail::read_array;
    using detail::read_pod;

    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kIndexMagic) {
        throw FormatError(Kind::header, "not a seismic index file (bad magic)");
    }
    const auto version = read_pod<std::uint32_t>(in, Kind::header, "index version");
    if (version != kIndexVersion) {
        throw FormatError(Kind::header, "unsupported index version " + std::to_string(version));
    }

    SeismicIndex index;
    index.params.alpha = read_pod<double>(in, Kind::header, "alpha");
    index.params.beta = read_pod<double>(in, Kind::header, "beta");
    index.params.gamma = read_pod<double>(in, Kind::header, "gamma");
    index.params.quantize = read_pod<std::uint8_t>(in, Kind::header, "quantize") != 0;
    index.params.seed = read_pod<std::uint64_t>(in, Kind::header, "seed");

    const auto nlists = read_pod<std::uint64_t>(in, Kind::header, "list count");
    if (nlists > std::uint64_t{UINT32_MAX} + 1) throw FormatError(Kind::header, "implausible list count");
    index.lists.resize(nlists);
    for (auto& list : index.lists) {
        const auto nblocks = read_pod<std::uint32_t>(in, Kind::truncated, "block count");
        list.blocks.resize(nblocks);
        for (auto& block : list.blocks) {
            const auto nids = read_pod<std::uint32_t>(in, Kind::truncated, "block size");
            block.ids = read_array<DocId>(in, nids, "block ids");
            const auto kind = read_pod<std::uint8_t>(in, Kind::truncated, "summary kind");
            const auto nnz = read_pod<std::uint32_t>(in, Kind::truncated, "summary size");
            auto dims = read_array<Dim>(in, nnz, "summary dims");
            if (kind == 0) {
                auto values = read_array<float>(in, nnz, "summary values");
                block.summary = SparseVector::from_sorted(std::move(dims), std::move(values));
            } else if (kind == 1) {
                QuantizedSummary q;
                q.dims = std::move(dims);
                q.m = read_pod<float>(in, Kind::truncated, "summary minimum");
                q.delta = read_pod<float>(in, Kind::truncated, "summary bin width");
                q.codes = read_array<std::uint8_t>(in, nnz, "summary codes");
                block.summary = std::move(q);
            } else {
                throw FormatError(Kind::consistency, "unknown summary kind " + std::to_string(kind));
            }
        }
    }
    index.forward = read_collection(in);

    if (index.forward.dim() != index.lists.size()) {
        throw FormatError(Kind::consistency, "list count disagrees with forward dimensionality");
    }
    for (const auto& list : index.lists) {
        for (const auto& block : list.blocks) {
            for (DocId id : block.ids) {
                if (id >= index.forward.size()) {
                    throw FormatError(Kind::consistency, "block id out of range");
                }
            }
            const auto dims = summary_dims(block.summary);
            for (std::size_t p = 0; p < dims.size(); ++p) {
                if (dims[p] >= index.forward.dim() || (p > 0 && dims[p] <= dims[p - 1])) {
                    throw FormatError(Kind::index_order, "summary dimensions unsorted or out of range");
                }
            }
        }
    }
    return index;
}

inline void save_index(const SeismicIndex& index, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(FormatError::Kind::io, "cannot open " + path.string() + " for writing");
    write_index(out, index);
    if (!out) throw FormatError(FormatError::Kind::io, "write failed for " + path.string());
}

inline SeismicIndex load_index(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(FormatError::Kind::io, "cannot open " + path.string());
    return read_index(in);
}

}  // namespace seismic
