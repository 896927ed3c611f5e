// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Synthetic collections shaped like learned sparse embeddings: term
// popularity follows a Zipf law over the vocabulary and every vector leans
// on one latent topic (a small set of dimensions it draws many terms from).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "seismic/sparse_vector.hpp"

namespace seismic::synthetic {

struct Config {
    std::size_t n = 10'000;
    std::size_t dim = 30'000;
    std::size_t mean_nnz = 100;
    double zipf_exponent = 1.0;
    std::size_t topics = 500;
    std::size_t topic_dims = 40;
    double topic_share = 0.6;  // fraction of a vector's terms drawn from its topic
    double topic_boost = 2.0;  // weight multiplier for topic terms
    std::uint64_t seed = 1;
};

/// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double standard_normal(std::mt19937_64& rng)
{
    // Box-Muller; avoids implementation-defined std::normal_distribution.
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

class ZipfSampler {
public:
    ZipfSampler(std::size_t n, double exponent) : cdf_(n)
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
            cdf_[i] = acc;
        }
        for (double& c : cdf_) c /= acc;
    }

    std::size_t operator()(std::mt19937_64& rng) const
    {
        const double u = uniform01(rng);
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    }

private:
    std::vector<double> cdf_;
};

class Generator {
public:
    explicit Generator(const Config& config)
        : config_(config), rng_(config.seed), zipf_(config.dim, config.zipf_exponent)
    {
        // Popular ranks are scattered over the dimension range.
        rank_to_dim_.resize(config_.dim);
        for (std::size_t i = 0; i < config_.dim; ++i) rank_to_dim_[i] = static_cast<Dim>(i);
        for (std::size_t i = config_.dim; i > 1; --i) {
            std::swap(rank_to_dim_[i - 1], rank_to_dim_[static_cast<std::size_t>(rng_() % i)]);
        }
        // Frequent terms carry little weight, rare ones more (idf-like).
        dim_weight_.resize(config_.dim);
        const double log_dim = std::log(static_cast<double>(config_.dim) + 1.0);
        for (std::size_t r = 0; r < config_.dim; ++r) {
            dim_weight_[rank_to_dim_[r]] = 0.1 + 0.9 * std::log(static_cast<double>(r) + 1.0) / log_dim;
        }

        topics_.resize(config_.topics);
        for (auto& topic : topics_) {
            for (std::size_t j = 0; j < config_.topic_dims; ++j) {
                topic.push_back(rank_to_dim_[zipf_(rng_) % config_.dim]);
                topic.push_back(static_cast<Dim>(rng_() % config_.dim));
            }
        }
    }

    /// One vector with about `mean_nnz` nonzeros (uniform in [mean/2, 3*mean/2]).
    SparseVector vector(std::size_t mean_nnz)
    {
        const std::size_t lo = std::max<std::size_t>(1, mean_nnz / 2);
        const std::size_t nnz = std::min(config_.dim, lo + static_cast<std::size_t>(rng_() % (mean_nnz + 1)));
        static const std::vector<Dim> kNoTopic;
        const auto& topic = topics_.empty() ? kNoTopic : topics_[rng_() % topics_.size()];
        const double scale = std::exp(0.3 * standard_normal(rng_));

        std::vector<std::pair<Dim, float>> entries;
        std::vector<std::uint8_t> used(config_.dim, 0);
        std::size_t attempts = 0;
        while (entries.size() < nnz && attempts++ < 20 * nnz) {
            const bool from_topic = !topic.empty() && uniform01(rng_) < config_.topic_share;
            const Dim d = from_topic ? topic[rng_() % topic.size()] : rank_to_dim_[zipf_(rng_)];
            if (used[d]) continue;
            used[d] = 1;
            const double weight = dim_weight_[d] * (from_topic ? config_.topic_boost : 1.0);
            const double v = scale * weight * std::exp(0.6 * standard_normal(rng_));
            entries.emplace_back(d, static_cast<float>(std::max(v, 1e-4)));
        }
        std::sort(entries.begin(), entries.end());
        std::vector<Dim> dims;
        std::vector<float> values;
        for (const auto& [d, v] : entries) {
            dims.push_back(d);
            values.push_back(v);
        }
        return SparseVector::from_sorted(std::move(dims), std::move(values));
    }

    VectorSet collection(std::size_t n, std::size_t mean_nnz)
    {
        VectorSet set(config_.dim);
        for (std::size_t i = 0; i < n; ++i) set.push_back(vector(mean_nnz));
        return set;
    }

    VectorSet collection() { return collection(config_.n, config_.mean_nnz); }

private:
    Config config_;
    std::mt19937_64 rng_;
    ZipfSampler zipf_;
    std::vector<Dim> rank_to_dim_;
    std::vector<double> dim_weight_;
    std::vector<std::vector<Dim>> topics_;
};

/// Vectors whose dimensions are each nonzero independently with probability
/// `p`, values i.i.d. uniform on (0, 1].
inline VectorSet bernoulli_uniform(std::size_t n, std::size_t dim, double p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    VectorSet set(dim);
    std::vector<Dim> dims;
    std::vector<float> values;
    for (std::size_t i = 0; i < n; ++i) {
        dims.clear();
        values.clear();
        for (std::size_t d = 0; d < dim; ++d) {
            if (uniform01(rng) < p) {
                dims.push_back(static_cast<Dim>(d));
                values.push_back(static_cast<float>(1.0 - uniform01(rng)));
            }
        }
        set.push_back(SparseView{dims, values});
    }
    return set;
}

/// `nnz` distinct random dimensions out of `dim` with uniform values,
/// scaled to unit l1 norm.
inline SparseVector random_normalized(std::size_t dim, std::size_t nnz, std::mt19937_64& rng)
{
    std::vector<Dim> all(dim);
    for (std::size_t i = 0; i < dim; ++i) all[i] = static_cast<Dim>(i);
    for (std::size_t i = 0; i < nnz; ++i) {
        std::swap(all[i], all[i + static_cast<std::size_t>(rng() % (dim - i))]);
    }
    std::vector<Dim> dims(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(nnz));
    std::sort(dims.begin(), dims.end());
    std::vector<double> raw(nnz);
    double sum = 0.0;
    for (auto& x : raw) {
        x = 1.0 - uniform01(rng);
        sum += x;
    }
    std::vector<float> values(nnz);
    for (std::size_t i = 0; i < nnz; ++i) values[i] = static_cast<float>(raw[i] / sum);
    return SparseVector::from_sorted(std::move(dims), std::move(values));
}

}  // namespace seismic::synthetic
