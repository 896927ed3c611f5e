// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <map>

#include "test_support.hpp"

namespace seismic {
namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational exact(float x) { return Rational(static_cast<double>(x)); }

TEST(ThresholdSample, SaturatedThresholdsKeepEverything)
{
    const SparseVector u{{1, 0.5f}, {2, 0.5f}};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto s = l1_threshold_sample(u, 2.0, seed);
        EXPECT_EQ(s.entries, u);
        EXPECT_DOUBLE_EQ(s.tau, 2.0);
    }
}

TEST(ThresholdSample, SingleEntry)
{
    const auto s = l1_threshold_sample(SparseVector{{1, 1.0f}}, 1.0, 42);
    EXPECT_EQ(s.entries, (SparseVector{{1, 1.0f}}));
    EXPECT_DOUBLE_EQ(s.tau, 1.0);
}

TEST(ThresholdSample, RejectsZeroVectorAndBadTarget)
{
    EXPECT_THROW(l1_threshold_sample(SparseVector{}, 1.0, 0), std::invalid_argument);
    EXPECT_THROW(l1_threshold_sample(SparseVector{{0, 1.0f}}, 0.0, 0), std::invalid_argument);
}

TEST(ThresholdSample, RetainedCountMeanOverSeeds)
{
    std::vector<Dim> dims(100);
    std::vector<float> values(100, 0.01f);
    for (Dim i = 0; i < 100; ++i) dims[i] = i;
    const SparseVector u(dims, values);
    constexpr std::uint64_t kSeeds = 100'000;
    std::uint64_t total = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) total += l1_threshold_sample(u, 10.0, seed).entries.size();
    EXPECT_NEAR(static_cast<double>(total) / kSeeds, 10.0, 0.3);
}

TEST(ThresholdSample, HashIsUniformEnough)
{
    // Coarse chi-square over 16 bins; df = 15, 99.9% quantile about 37.7.
    std::array<int, 16> bins{};
    constexpr int kDraws = 160'000;
    for (int i = 0; i < kDraws; ++i) {
        const double h = unit_hash(7, static_cast<Dim>(i));
        ASSERT_GE(h, 0.0);
        ASSERT_LT(h, 1.0);
        ++bins[static_cast<std::size_t>(h * 16)];
    }
    double chi = 0.0;
    for (int b : bins) chi += (b - kDraws / 16.0) * (b - kDraws / 16.0) / (kDraws / 16.0);
    EXPECT_LT(chi, 37.7);
}

TEST(TsEstimate, DisjointSketchesGiveZero)
{
    const auto a = l1_threshold_sample(SparseVector{{1, 1.0f}}, 4.0, 3);
    const auto b = l1_threshold_sample(SparseVector{{2, 1.0f}}, 4.0, 3);
    EXPECT_EQ(ts_estimate(a, b), 0.0);
}

TEST(TsEstimate, SaturatedSketchesAreExact)
{
    const SparseVector u{{1, 0.5f}, {2, 0.5f}};
    const auto s = l1_threshold_sample(u, 2.0, 11);
    EXPECT_DOUBLE_EQ(ts_estimate(s, s), 0.5);
}

TEST(TsEstimate, MonteCarloMeanMatchesInnerProduct)
{
    std::mt19937_64 rng(123);
    const auto u = synthetic::random_normalized(1000, 100, rng);
    const auto v = synthetic::random_normalized(1000, 100, rng);
    const double truth = dot(u, v);
    ASSERT_GT(truth, 0.0);
    constexpr double kTarget = 32.0;
    constexpr std::uint64_t kTrials = 100'000;
    const double var_bound = truth * (l1_norm(u) + l1_norm(v)) / kTarget;
    double sum = 0.0;
    for (std::uint64_t t = 0; t < kTrials; ++t) {
        sum += ts_estimate(l1_threshold_sample(u, kTarget, t), l1_threshold_sample(v, kTarget, t));
    }
    EXPECT_LE(std::abs(sum / kTrials - truth), 4.0 * std::sqrt(var_bound / kTrials));
}

TEST(AlphaMss, Examples)
{
    const SparseVector u{{0, 0.5f}, {1, 0.3f}, {2, 0.2f}};
    EXPECT_EQ(alpha_mss(u, 1.0), u);
    EXPECT_EQ(alpha_mss(u, 0.5), (SparseVector{{0, 0.5f}}));
    EXPECT_EQ(alpha_mss(u, 0.6), (SparseVector{{0, 0.5f}, {1, 0.3f}}));
}

TEST(AlphaMss, RejectsBadInput)
{
    const SparseVector u{{0, 0.5f}};
    EXPECT_THROW(alpha_mss(u, 0.0), std::invalid_argument);
    EXPECT_THROW(alpha_mss(u, 1.5), std::invalid_argument);
    EXPECT_THROW(alpha_mss(SparseVector{}, 0.5), std::invalid_argument);
}

TEST(AlphaMss, TiesKeepLowerDimensions)
{
    const SparseVector u{{2, 0.25f}, {5, 0.25f}, {7, 0.25f}, {9, 0.25f}};
    EXPECT_EQ(alpha_mss(u, 0.5), (SparseVector{{2, 0.25f}, {5, 0.25f}}));
}

TEST(AlphaMss, MassReachedAndMinimal)
{
    const VectorSet set = testing::random_set(200, 500, 60, 9);
    for (double alpha : {0.1, 0.3, 0.5, 0.77, 0.9}) {
        for (std::size_t r = 0; r < set.size(); ++r) {
            const auto u = set[r];
            const auto s = alpha_mss(u, alpha);
            // Subvector of u.
            for (std::size_t p = 0; p < s.size(); ++p) {
                const auto it = std::lower_bound(u.dims.begin(), u.dims.end(), s.dims()[p]);
                ASSERT_NE(it, u.dims.end());
                EXPECT_EQ(u.values[static_cast<std::size_t>(it - u.dims.begin())], s.values()[p]);
            }
            const double mass = l1_norm(u);
            EXPECT_GE(l1_norm(s), alpha * mass * (1.0 - kMassTolerance));
            const float smallest = *std::min_element(s.values().begin(), s.values().end());
            EXPECT_LT(l1_norm(s) - smallest, alpha * mass * (1.0 - kMassTolerance));
            // The retained entries are the largest ones.
            const float largest_dropped = [&] {
                float m = 0.0f;
                for (std::size_t p = 0; p < u.size(); ++p) {
                    if (!std::binary_search(s.dims().begin(), s.dims().end(), u.dims[p])) m = std::max(m, u.values[p]);
                }
                return m;
            }();
            EXPECT_LE(largest_dropped, smallest);
        }
    }
}

TEST(AlphaMss, BoundHoldsInExactArithmetic)
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const auto u = synthetic::random_normalized(200, 40, rng);
        const auto v = synthetic::random_normalized(200, 40, rng);
        const auto su = alpha_mss(u, 0.8);
        const auto sv = alpha_mss(v, 0.8);
        std::map<Dim, Rational> ur, vr, sur, svr;
        for (std::size_t p = 0; p < u.size(); ++p) ur[u.dims()[p]] = exact(u.values()[p]);
        for (std::size_t p = 0; p < v.size(); ++p) vr[v.dims()[p]] = exact(v.values()[p]);
        for (std::size_t p = 0; p < su.size(); ++p) sur[su.dims()[p]] = exact(su.values()[p]);
        for (std::size_t p = 0; p < sv.size(); ++p) svr[sv.dims()[p]] = exact(sv.values()[p]);
        Rational ip = 0, sketch_ip = 0, u1 = 0, v1 = 0, ui = 0, vi = 0;
        for (const auto& [d, x] : ur) {
            u1 += x;
            if (auto it = vr.find(d); it != vr.end()) {
                ip += x * it->second;
                ui += x;
                vi += it->second;
            }
            if (auto a = sur.find(d), b = svr.find(d); a != sur.end() && b != svr.end()) sketch_ip += a->second * b->second;
        }
        for (const auto& [d, x] : vr) v1 += x;
        const Rational a = Rational(4, 5);
        const Rational bound = (1 - a) * u1 * (1 - a) * v1 + ui * (1 - a) * v1 + vi * (1 - a) * u1;
        EXPECT_GE(ip - sketch_ip, 0);
        EXPECT_LE(ip - sketch_ip, bound);
    }
}

TEST(SetMssQuota, CeilingWithoutFloatDrift)
{
    EXPECT_EQ(set_mss_quota(0.4, 5), 2u);
    EXPECT_EQ(set_mss_quota(0.4, 6), 3u);
    EXPECT_EQ(set_mss_quota(0.7, 10), 7u);
    EXPECT_EQ(set_mss_quota(0.01, 3), 1u);
    EXPECT_EQ(set_mss_quota(1.0, 9), 9u);
    EXPECT_EQ(set_mss_quota(0.5, 0), 0u);
}

std::vector<float> column(const VectorSet& set, Dim d)
{
    std::vector<float> out;
    for (std::size_t r = 0; r < set.size(); ++r) {
        const auto u = set[r];
        const auto it = std::lower_bound(u.dims.begin(), u.dims.end(), d);
        out.push_back(it != u.dims.end() && *it == d ? u.values[static_cast<std::size_t>(it - u.dims.begin())]
                                                     : 0.0f);
    }
    return out;
}

TEST(SetAlphaMss, WorkedExampleColumnZero)
{
    const auto s = set_alpha_mss(testing::worked_example_set(), 0.4);
    EXPECT_EQ(column(s, 0), (std::vector<float>{0, 0.2f, 0, 0, 0.3f, 0, 0, 0, 0, 0}));
}

TEST(SetAlphaMss, WorkedExampleColumnTwo)
{
    const auto s = set_alpha_mss(testing::worked_example_set(), 0.4);
    EXPECT_EQ(column(s, 2), (std::vector<float>{0, 0.24f, 0, 0, 0, 0, 0, 0.2f, 0.3f, 0}));
}

TEST(SetAlphaMss, WorkedExampleColumnSeven)
{
    const auto s = set_alpha_mss(testing::worked_example_set(), 0.4);
    EXPECT_EQ(column(s, 7), (std::vector<float>{0, 0, 0, 0.3f, 0, 0, 0, 0, 0, 0}));
}

TEST(SetAlphaMss, TiesKeepLowerRows)
{
    const auto s = set_alpha_mss(testing::worked_example_set(), 0.4);
    // Column 3 holds four 0.2 entries (rows 0, 2, 6, 9) and keeps three.
    EXPECT_EQ(column(s, 3), (std::vector<float>{0.2f, 0, 0.2f, 0, 0, 0, 0.2f, 0, 0, 0}));
}

TEST(SetAlphaMss, AlphaOneIsIdentity)
{
    const VectorSet set = testing::random_set(50, 100, 10, 3);
    EXPECT_EQ(set_alpha_mss(set, 1.0), set);
}

TEST(SetAlphaMss, ColumnCardinalityAndSubvector)
{
    const VectorSet set = synthetic::bernoulli_uniform(300, 60, 0.1, 4);
    for (double alpha : {0.2, 0.5, 0.8}) {
        const auto s = set_alpha_mss(set, alpha);
        ASSERT_EQ(s.size(), set.size());
        ASSERT_EQ(s.dim(), set.dim());
        for (Dim d = 0; d < set.dim(); ++d) {
            const auto before = column(set, d);
            const auto after = column(s, d);
            const auto n = static_cast<std::size_t>(std::count_if(before.begin(), before.end(), [](float x) { return x > 0; }));
            const auto kept = static_cast<std::size_t>(std::count_if(after.begin(), after.end(), [](float x) { return x > 0; }));
            EXPECT_EQ(kept, std::min<std::size_t>(static_cast<std::size_t>(std::ceil(alpha * n - 1e-9)), n));
            float min_kept = INFINITY, max_dropped = 0;
            for (std::size_t r = 0; r < before.size(); ++r) {
                if (after[r] > 0) {
                    EXPECT_EQ(after[r], before[r]);
                    min_kept = std::min(min_kept, after[r]);
                } else {
                    max_dropped = std::max(max_dropped, before[r]);
                }
            }
            if (kept > 0) {
                EXPECT_LE(max_dropped, min_kept);
            }
        }
    }
}

TEST(SetAlphaMss, IndependentOfWorkers)
{
    const VectorSet set = testing::random_set(500, 300, 20, 8);
    EXPECT_EQ(set_alpha_mss(set, 0.3, 1), set_alpha_mss(set, 0.3, 4));
}

}  // namespace
}  // namespace seismic
