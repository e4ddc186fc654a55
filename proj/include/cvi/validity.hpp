#pragma once

#include <string>

#include "cvi/data_model.hpp"

namespace cvi {

enum class Orientation { higher_better, lower_better };

struct IndexValue {
    std::string name;  // WCSS, ASW, CH, DB, ARI
    double value = 0.0;
    Orientation orientation = Orientation::higher_better;
};

// Sum over clusters of squared deviations of members from their centroid.
IndexValue wcss(const Dataset& data, const Partition& part);

// Silhouette of one point, plain Euclidean distances. Singletons score 0
// unless strict is set, in which case SingletonCluster is thrown.
double silhouette_point(const Dataset& data, const Partition& part,
                        std::size_t i, bool strict = false);

IndexValue asw(const Dataset& data, const Partition& part, bool strict = false);

IndexValue calinski_harabasz(const Dataset& data, const Partition& part);

IndexValue davies_bouldin(const Dataset& data, const Partition& part);

// Hubert-Arabie adjusted Rand index between two labelings of the same points.
IndexValue adjusted_rand_index(const Partition& a, const Partition& b);

}  // namespace cvi
