#pragma once

#include <utility>

#include "cvi/data_model.hpp"

namespace cvi {

// Length-m positive weights summing to one.
struct FeatureWeights {
    std::vector<double> alpha;
};

// alpha_v = 1 / sum_j (D_v / D_j). Zero (or denormal) dispersions are
// rejected as trivial; such features must be dropped during preprocessing.
FeatureWeights fir_weights(const DispersionVector& disp);

// sum_v alpha_v^2 * D_v.
double weighted_wcss(const DispersionVector& disp, const FeatureWeights& w);

// Two-pass (by default) rescaling under a fixed partition: weights are
// derived from the input data's per-feature dispersions and applied once per
// pass, so `iters` passes scale each column by alpha_v^iters. Returns the
// rescaled dataset and the cumulative per-feature scaling.
std::pair<Dataset, FeatureWeights> fir_rescale(const Dataset& data,
                                               const Partition& part,
                                               std::size_t iters = 2);

// (weighted wcss of disp, weighted wcss of disp with `huge` appended);
// the two converge as huge grows.
std::pair<double, double> check_noise_immunity(const DispersionVector& disp,
                                               double huge);

}  // namespace cvi
