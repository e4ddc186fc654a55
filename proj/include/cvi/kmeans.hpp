#pragma once

#include "cvi/data_model.hpp"
#include "cvi/rng.hpp"

namespace cvi {

struct ClusteringResult {
    Partition partition;
    Centroids centroids;
    double wcss = 0.0;
    std::size_t iterations = 0;
    std::vector<double> wcss_trace;  // objective after each assign+update pair
};

inline constexpr std::size_t kMaxLloydIterations = 300;

// Lloyd iterations from the given initial centroids until centroids stop
// moving or the iteration cap is hit. An emptied cluster is re-seeded with
// the point farthest from its current centroid; nearest-centroid ties go to
// the lowest cluster index.
ClusteringResult kmeans_lloyd(const Dataset& data, const Centroids& init);

// k-means++ seeding: first centroid uniform over points, each next one
// sampled with probability proportional to the squared distance to the
// nearest chosen centroid. Throws DegenerateData with fewer than k distinct
// points.
Centroids kmeanspp_init(const Dataset& data, std::size_t k, RngSeed seed);

ClusteringResult run_kmeanspp(const Dataset& data, std::size_t k, RngSeed seed);

}  // namespace cvi
