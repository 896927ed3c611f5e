// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "test_support.hpp"

namespace seismic {
namespace {

using Kind = FormatError::Kind;

// Serialises raw CSR fields without any validation.
std::string raw_csr(std::uint64_t nrows, std::uint64_t ncols, std::uint64_t nnz,
                    const std::vector<std::uint64_t>& indptr, const std::vector<std::uint32_t>& indices,
                    const std::vector<float>& values)
{
    std::string out;
    auto put = [&](const void* p, std::size_t n) { out.append(static_cast<const char*>(p), n); };
    put(&nrows, 8);
    put(&ncols, 8);
    put(&nnz, 8);
    put(indptr.data(), indptr.size() * 8);
    put(indices.data(), indices.size() * 4);
    put(values.data(), values.size() * 4);
    return out;
}

Kind read_error(const std::string& bytes)
{
    std::istringstream in(bytes);
    try {
        read_collection(in);
    } catch (const FormatError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return Kind::io;
}

TEST(CsrIo, RoundTripThreeVectors)
{
    VectorSet set(10);
    set.push_back(SparseVector{{0, 0.5f}, {9, 1.5f}});
    set.push_back(SparseVector{});
    set.push_back(SparseVector{{3, 0.25f}});
    testing::TempDir dir;
    save_collection(set, dir / "c.csr");
    EXPECT_EQ(load_collection(dir / "c.csr"), set);
}

TEST(CsrIo, ByteLayout)
{
    VectorSet set(5);
    set.push_back(SparseVector{{1, 0.5f}, {4, 2.0f}});
    std::ostringstream out;
    write_collection(out, set);
    EXPECT_EQ(out.str(), raw_csr(1, 5, 2, {0, 2}, {1, 4}, {0.5f, 2.0f}));
}

TEST(CsrIo, EmptyFileIsHeaderError)
{
    EXPECT_EQ(read_error(""), Kind::header);
}

TEST(CsrIo, NnzDisagreeingWithIndptrIsConsistencyError)
{
    EXPECT_EQ(read_error(raw_csr(1, 5, 2, {0, 1}, {1, 4}, {0.5f, 2.0f})), Kind::consistency);
}

TEST(CsrIo, DecreasingIndptrIsConsistencyError)
{
    EXPECT_EQ(read_error(raw_csr(2, 5, 2, {0, 2, 1}, {1, 4}, {0.5f, 2.0f})), Kind::consistency);
}

TEST(CsrIo, ShortPayloadIsTruncated)
{
    std::string bytes = raw_csr(1, 5, 2, {0, 2}, {1, 4}, {0.5f, 2.0f});
    bytes.resize(bytes.size() - 3);
    EXPECT_EQ(read_error(bytes), Kind::truncated);
}

TEST(CsrIo, UnsortedOrOutOfRangeIndicesAreIndexOrderErrors)
{
    EXPECT_EQ(read_error(raw_csr(1, 5, 2, {0, 2}, {4, 1}, {0.5f, 2.0f})), Kind::index_order);
    EXPECT_EQ(read_error(raw_csr(1, 5, 2, {0, 2}, {1, 1}, {0.5f, 2.0f})), Kind::index_order);
    EXPECT_EQ(read_error(raw_csr(1, 5, 2, {0, 2}, {1, 5}, {0.5f, 2.0f})), Kind::index_order);
}

TEST(CsrIo, BadValuesAreValueErrors)
{
    EXPECT_EQ(read_error(raw_csr(1, 5, 1, {0, 1}, {1}, {-0.5f})), Kind::value);
    EXPECT_EQ(read_error(raw_csr(1, 5, 1, {0, 1}, {1}, {0.0f})), Kind::value);
    EXPECT_EQ(read_error(raw_csr(1, 5, 1, {0, 1}, {1}, {std::numeric_limits<float>::quiet_NaN()})), Kind::value);
    EXPECT_EQ(read_error(raw_csr(1, 5, 1, {0, 1}, {1}, {std::numeric_limits<float>::infinity()})), Kind::value);
}

TEST(CsrIo, MissingFileIsIoError)
{
    try {
        load_collection("/nonexistent/dir/file.csr");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.kind(), Kind::io);
    }
}

}  // namespace
}  // namespace seismic
