#include "cvi/kmeans.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace cvi {

namespace {

double sq_dist(const Dataset& data, std::size_t i, const Centroids& cents,
               std::size_t l) {
    double s = 0.0;
    for (std::size_t v = 0; v < data.m; ++v) {
        double diff = data.at(i, v) - cents.at(l, v);
        s += diff * diff;
    }
    return s;
}

// Assign every point to its nearest centroid; ties go to the lowest index.
void assign_points(const Dataset& data, const Centroids& cents,
                   std::vector<int>& labels) {
    std::size_t k = cents.k;
    for (std::size_t i = 0; i < data.n; ++i) {
        int best = 0;
        double best_d = sq_dist(data, i, cents, 0);
        for (std::size_t l = 1; l < k; ++l) {
            double d = sq_dist(data, i, cents, l);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(l);
            }
        }
        labels[i] = best;
    }
}

// Re-seed each empty cluster with the point currently farthest from its own
// centroid, so k survives the run.
void repair_empty_clusters(const Dataset& data, Centroids& cents,
                           std::vector<int>& labels) {
    std::size_t k = cents.k;
    std::vector<std::size_t> counts(k, 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    for (std::size_t l = 0; l < k; ++l) {
        if (counts[l] > 0) continue;
        std::size_t worst = data.n;
        double worst_d = -1.0;
        for (std::size_t i = 0; i < data.n; ++i) {
            std::size_t li = static_cast<std::size_t>(labels[i]);
            if (counts[li] <= 1) continue;  // never empty another cluster
            double d = sq_dist(data, i, cents, li);
            if (d > worst_d) {
                worst_d = d;
                worst = i;
            }
        }
        if (worst == data.n)
            throw DegenerateData("cannot repair empty cluster: no movable point");
        --counts[static_cast<std::size_t>(labels[worst])];
        labels[worst] = static_cast<int>(l);
        ++counts[l];
        for (std::size_t v = 0; v < data.m; ++v)
            cents.at(l, v) = data.at(worst, v);
    }
}

void update_centroids(const Dataset& data, const std::vector<int>& labels,
                      Centroids& cents) {
    std::vector<std::size_t> counts(cents.k, 0);
    std::fill(cents.values.begin(), cents.values.end(), 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
        std::size_t l = static_cast<std::size_t>(labels[i]);
        ++counts[l];
        for (std::size_t v = 0; v < data.m; ++v)
            cents.at(l, v) += data.at(i, v);
    }
    for (std::size_t l = 0; l < cents.k; ++l)
        for (std::size_t v = 0; v < cents.m; ++v)
            cents.at(l, v) /= static_cast<double>(counts[l]);
}

double objective(const Dataset& data, const std::vector<int>& labels,
                 const Centroids& cents) {
    double s = 0.0;
    for (std::size_t i = 0; i < data.n; ++i)
        s += sq_dist(data, i, cents, static_cast<std::size_t>(labels[i]));
    return s;
}

}  // namespace

ClusteringResult kmeans_lloyd(const Dataset& data, const Centroids& init) {
    if (init.k < 1 || init.k > data.n)
        throw Error("initial centroids need 1 <= k <= n");
    if (init.m != data.m)
        throw Error("initial centroids feature count mismatch");

    Centroids cents = init;
    std::vector<int> labels(data.n, 0);
    ClusteringResult res;

    for (std::size_t it = 1; it <= kMaxLloydIterations; ++it) {
        assign_points(data, cents, labels);
        repair_empty_clusters(data, cents, labels);
        std::vector<double> prev = cents.values;
        update_centroids(data, labels, cents);
        res.iterations = it;
        res.wcss_trace.push_back(objective(data, labels, cents));
        if (cents.values == prev) break;
    }

    res.partition = Partition{labels, static_cast<int>(cents.k)};
    res.centroids = std::move(cents);
    res.wcss = res.wcss_trace.back();
    return res;
}

Centroids kmeanspp_init(const Dataset& data, std::size_t k, RngSeed seed) {
    if (k < 1 || k > data.n)
        throw Error("kmeans++ needs 1 <= k <= n");

    std::set<std::vector<double>> distinct;
    for (std::size_t i = 0; i < data.n && distinct.size() < k; ++i)
        distinct.insert(std::vector<double>(data.values.begin() + i * data.m,
                                            data.values.begin() + (i + 1) * data.m));
    if (distinct.size() < k)
        throw DegenerateData("fewer than k distinct points");

    Rng rng(seed);
    Centroids cents{k, data.m, std::vector<double>(k * data.m, 0.0)};
    auto copy_point = [&](std::size_t l, std::size_t i) {
        for (std::size_t v = 0; v < data.m; ++v)
            cents.at(l, v) = data.at(i, v);
    };

    copy_point(0, rng.index(data.n));

    // min squared distance to the chosen centroids so far
    std::vector<double> min_d(data.n, 0.0);
    for (std::size_t l = 1; l < k; ++l) {
        double total = 0.0;
        for (std::size_t i = 0; i < data.n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < l; ++t)
                best = std::min(best, sq_dist(data, i, cents, t));
            min_d[i] = best;
            total += best;
        }
        if (total <= 0.0)
            throw DegenerateData("fewer than k distinct points");
        double u = rng.uniform01() * total;
        double acc = 0.0;
        std::size_t chosen = data.n - 1;
        for (std::size_t i = 0; i < data.n; ++i) {
            acc += min_d[i];
            if (u < acc) {
                chosen = i;
                break;
            }
        }
        copy_point(l, chosen);
    }
    return cents;
}

ClusteringResult run_kmeanspp(const Dataset& data, std::size_t k, RngSeed seed) {
    return kmeans_lloyd(data, kmeanspp_init(data, k, seed));
}

}  // namespace cvi
