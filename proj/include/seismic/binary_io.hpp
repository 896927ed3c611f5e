// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace seismic {

static_assert(std::endian::native == std::endian::little,
              "on-disk formats are little-endian; big-endian hosts are not supported");

/// Raised for unreadable or structurally invalid files. `kind()` identifies
/// the error class so tools can print one diagnostic per class.
class FormatError : public std::runtime_error {
public:
    enum class Kind {
        io,           // cannot open / read / write
        header,       // missing or malformed header, bad magic/version
        truncated,    // payload shorter than the header promises
        consistency,  // arrays disagree with each other (indptr vs nnz, ...)
        index_order,  // indices not strictly increasing within a row, or out of range
        value,        // negative, zero or non-finite values
    };

    FormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

inline const char* to_string(FormatError::Kind k)
{
    switch (k) {
    case FormatError::Kind::io: return "io";
    case FormatError::Kind::header: return "header";
    case FormatError::Kind::truncated: return "truncated";
    case FormatError::Kind::consistency: return "consistency";
    case FormatError::Kind::index_order: return "index-order";
    case FormatError::Kind::value: return "value";
    }
    return "unknown";
}

namespace detail {

template <typename T>
    requires std::is_trivially_copyable_v<T>
void write_pod(std::ostream& out, const T& value)
{
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
    requires std::is_trivially_copyable_v<T>
void write_array(std::ostream& out, std::span<const T> values)
{
    if (!values.empty()) {
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size_bytes()));
    }
}

template <typename T>
    requires std::is_trivially_copyable_v<T>
T read_pod(std::istream& in, FormatError::Kind on_short, const char* what)
{
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(T))) {
        throw FormatError(on_short, std::string("unexpected end of file reading ") + what);
    }
    return value;
}

template <typename T>
    requires std::is_trivially_copyable_v<T>
std::vector<T> read_array(std::istream& in, std::uint64_t count, const char* what)
{
    // Guard against absurd counts before allocating.
    constexpr std::uint64_t kMaxBytes = std::uint64_t{1} << 40;
    if (count > kMaxBytes / sizeof(T)) {
        throw FormatError(FormatError::Kind::header, std::string("implausible length for ") + what);
    }
    std::vector<T> values(count);
    if (count > 0) {
        const auto bytes = static_cast<std::streamsize>(count * sizeof(T));
        in.read(reinterpret_cast<char*>(values.data()), bytes);
        if (in.gcount() != bytes) {
            throw FormatError(FormatError::Kind::truncated,
                              std::string("truncated payload reading ") + what);
        }
    }
    return values;
}

}  // namespace detail
}  // namespace seismic
