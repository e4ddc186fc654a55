#pragma once

#include <cstddef>
#include <vector>

#include "cvi/errors.hpp"

namespace cvi {

enum class FeatureKind { informative, noise, unknown };

// n x m row-major matrix of finite reals plus per-feature metadata.
struct Dataset {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> values;             // n * m, row-major
    std::vector<FeatureKind> feature_kinds; // length m

    double at(std::size_t i, std::size_t v) const { return values[i * m + v]; }
    double& at(std::size_t i, std::size_t v) { return values[i * m + v]; }
};

Dataset make_dataset(std::size_t n, std::size_t m, std::vector<double> values,
                     std::vector<FeatureKind> kinds = {});

// Length-n assignment of points to clusters 0..k-1.
struct Partition {
    std::vector<int> labels;
    int k = 0;
};

// Throws Error if labels are out of range, a cluster is empty, or k > n.
void validate_partition(const Partition& part, std::size_t n);

struct Centroids {
    std::size_t k = 0;
    std::size_t m = 0;
    std::vector<double> values;  // k * m, row-major

    double at(std::size_t l, std::size_t v) const { return values[l * m + v]; }
    double& at(std::size_t l, std::size_t v) { return values[l * m + v]; }
};

struct DispersionVector {
    std::vector<double> d;  // length m, non-negative
};

// Per-feature (x - mean) / (max - min); throws ConstantFeature when a
// feature's range is zero.
Dataset minmax_normalize(const Dataset& data);

// Row l is the component-wise mean of points labeled l.
Centroids compute_centroids(const Dataset& data, const Partition& part);

// d_v = sum over clusters and members of (x_iv - z_lv)^2.
DispersionVector feature_dispersion(const Dataset& data, const Partition& part,
                                    const Centroids& cents);

}  // namespace cvi
