#pragma once

#include <string>

#include "cvi/data_model.hpp"
#include "cvi/rng.hpp"

namespace cvi {

struct GenConfig {
    std::size_t n = 0;               // points
    std::size_t m = 0;               // informative features
    std::size_t k = 0;               // clusters
    double sigma = 1.0;              // cluster standard deviation
    std::size_t noise_features = 0;  // appended uniform columns
    RngSeed seed;

    // e.g. "1000x6-3 6NF s1"
    std::string id() const;
};

struct LabelledDataset {
    Dataset data;
    Partition truth;
    std::vector<double> centers;  // k * m true centers, row-major
};

// Gaussian mixture: k centers uniform in [-10, 10]^m, points split as evenly
// as possible across clusters, each drawn N(center, sigma^2 I). Noise columns
// from the config are appended afterwards.
LabelledDataset generate_blobs(const GenConfig& cfg);

// Appends q i.i.d. Uniform(-10, 10) columns tagged as noise.
LabelledDataset add_noise_features(const LabelledDataset& ds, std::size_t q,
                                   RngSeed seed);

}  // namespace cvi
