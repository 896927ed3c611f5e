// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <stdexcept>

#include "test_support.hpp"

namespace seismic {
namespace {

TEST(SparseVector, RejectsUnsortedDuplicateAndNonPositive)
{
    EXPECT_THROW((SparseVector{{3, 0.1f}, {1, 0.2f}}), std::invalid_argument);
    EXPECT_THROW((SparseVector{{1, 0.1f}, {1, 0.2f}}), std::invalid_argument);
    EXPECT_THROW((SparseVector{{1, 0.0f}}), std::invalid_argument);
    EXPECT_THROW((SparseVector{{1, -0.5f}}), std::invalid_argument);
    EXPECT_NO_THROW((SparseVector{{1, 0.1f}, {3, 0.2f}}));
}

TEST(Dot, DisjointSupportsGiveZero)
{
    const SparseVector u{{1, 0.5f}, {3, 0.5f}};
    const SparseVector v{{2, 1.0f}};
    EXPECT_EQ(dot(u, v), 0.0);
}

TEST(Dot, SelfProductIsSquaredL2)
{
    const SparseVector u{{1, 0.5f}, {3, 0.5f}};
    EXPECT_DOUBLE_EQ(dot(u, u), 0.5);
}

TEST(Dot, TwoTermSum)
{
    const SparseVector u{{0, 0.2f}, {4, 0.3f}};
    const SparseVector v{{0, 0.5f}, {4, 0.1f}, {7, 0.9f}};
    EXPECT_NEAR(dot(u, v), 0.13, 1e-7);
}

TEST(Dot, SymmetricAndMatchesDenseOracle)
{
    const VectorSet set = testing::random_set(20, 64, 12, 5);
    for (std::size_t a = 0; a < set.size(); ++a) {
        for (std::size_t b = 0; b < set.size(); ++b) {
            std::vector<double> dense(64, 0.0);
            for (std::size_t p = 0; p < set[a].size(); ++p) dense[set[a].dims[p]] = set[a].values[p];
            double expected = 0.0;
            for (std::size_t p = 0; p < set[b].size(); ++p) expected += dense[set[b].dims[p]] * set[b].values[p];
            EXPECT_NEAR(dot(set[a], set[b]), expected, 1e-12);
            EXPECT_EQ(dot(set[a], set[b]), dot(set[b], set[a]));
        }
    }
}

TEST(Norm, Examples)
{
    const SparseVector u{{0, 0.3f}, {5, 0.4f}};
    EXPECT_NEAR(lp_norm(u, 1), 0.7, 1e-7);
    EXPECT_NEAR(lp_norm(u, 2), 0.5, 1e-7);
    EXPECT_EQ(lp_norm(SparseVector{}, 1), 0.0);
    EXPECT_EQ(lp_norm(SparseVector{}, 2), 0.0);
    EXPECT_THROW(lp_norm(u, 3), std::invalid_argument);
}

TEST(Restrict, Examples)
{
    const SparseVector u{{0, 0.2f}, {4, 0.3f}};
    const std::vector<Dim> four{4};
    EXPECT_EQ(restrict_to(u, four), (SparseVector{{4, 0.3f}}));
    EXPECT_TRUE(restrict_to(SparseVector{{0, 0.2f}}, std::vector<Dim>{}).empty());
    const std::vector<Dim> superset{0, 4, 9};
    EXPECT_EQ(restrict_to(u, superset), u);
}

TEST(Density, WorkedExampleColumnZero)
{
    const VectorSet set = testing::worked_example_set();
    EXPECT_DOUBLE_EQ(density(set, 0), 0.5);
}

TEST(Density, FullAndEmptyDimensions)
{
    VectorSet set(3);
    set.push_back(SparseVector{{0, 1.0f}, {1, 0.5f}});
    set.push_back(SparseVector{{0, 0.2f}});
    EXPECT_DOUBLE_EQ(density(set, 0), 1.0);
    EXPECT_DOUBLE_EQ(density(set, 2), 0.0);
    EXPECT_THROW(density(set, 3), std::out_of_range);
}

TEST(VectorSet, PushBackRejectsOutOfRangeDims)
{
    VectorSet set(4);
    EXPECT_THROW(set.push_back(SparseVector{{4, 1.0f}}), std::invalid_argument);
    set.push_back(SparseVector{{3, 1.0f}});
    EXPECT_EQ(set.size(), 1u);
    EXPECT_EQ(set.nnz(), 1u);
}

TEST(VectorSet, CsrConstructorValidates)
{
    EXPECT_NO_THROW(VectorSet(4, {0, 1, 3}, {2, 0, 3}, {0.5f, 0.1f, 0.2f}));
    EXPECT_THROW(VectorSet(4, {0, 2, 3}, {2, 0, 3}, {0.5f, 0.1f, 0.2f}), std::invalid_argument);
    EXPECT_THROW(VectorSet(4, {0, 1, 3}, {2, 3, 0}, {0.5f, 0.1f, 0.2f}), std::invalid_argument);
    EXPECT_THROW(VectorSet(4, {0, 1, 3}, {2, 0, 3}, {0.5f, 0.0f, 0.2f}), std::invalid_argument);
}

}  // namespace
}  // namespace seismic
