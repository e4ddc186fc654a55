#include "cvi/validity.hpp"

#include <cmath>
#include <limits>

namespace cvi {

namespace {

double sq_dist_points(const Dataset& data, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t v = 0; v < data.m; ++v) {
        double diff = data.at(i, v) - data.at(j, v);
        s += diff * diff;
    }
    return s;
}

double dist_points(const Dataset& data, std::size_t i, std::size_t j) {
    return std::sqrt(sq_dist_points(data, i, j));
}

std::vector<std::size_t> cluster_sizes(const Partition& part) {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(part.k), 0);
    for (int l : part.labels) ++sizes[static_cast<std::size_t>(l)];
    return sizes;
}

}  // namespace

IndexValue wcss(const Dataset& data, const Partition& part) {
    Centroids cents = compute_centroids(data, part);
    double s = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        std::size_t l = static_cast<std::size_t>(part.labels[i]);
        for (std::size_t v = 0; v < data.m; ++v) {
            double diff = data.at(i, v) - cents.at(l, v);
            s += diff * diff;
        }
    }
    return IndexValue{"WCSS", s, Orientation::lower_better};
}

double silhouette_point(const Dataset& data, const Partition& part,
                        std::size_t i, bool strict) {
    std::size_t k = static_cast<std::size_t>(part.k);
    if (k < 2)
        throw DegenerateK("silhouette needs k >= 2");

    std::vector<std::size_t> sizes = cluster_sizes(part);
    std::size_t own = static_cast<std::size_t>(part.labels[i]);
    if (sizes[own] < 2) {
        if (strict) throw SingletonCluster(i);
        return 0.0;
    }

    // fixed summation order over points, one accumulator per cluster
    std::vector<double> sums(k, 0.0);
    for (std::size_t j = 0; j < data.n; ++j) {
        if (j == i) continue;
        sums[static_cast<std::size_t>(part.labels[j])] += dist_points(data, i, j);
    }

    double a = sums[own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < k; ++l) {
        if (l == own) continue;
        b = std::min(b, sums[l] / static_cast<double>(sizes[l]));
    }
    double denom = std::max(a, b);
    if (denom == 0.0) return 0.0;  // coincident points in both clusters
    return (b - a) / denom;
}

IndexValue asw(const Dataset& data, const Partition& part, bool strict) {
    validate_partition(part, data.n);
    double s = 0.0;
    for (std::size_t i = 0; i < data.n; ++i)
        s += silhouette_point(data, part, i, strict);
    return IndexValue{"ASW", s / static_cast<double>(data.n),
                      Orientation::higher_better};
}

IndexValue calinski_harabasz(const Dataset& data, const Partition& part) {
    validate_partition(part, data.n);
    std::size_t k = static_cast<std::size_t>(part.k);
    if (k < 2 || k > data.n - 1)
        throw DegenerateK("CH needs 2 <= k <= n-1");

    Centroids cents = compute_centroids(data, part);
    std::vector<std::size_t> sizes = cluster_sizes(part);

    std::vector<double> global_mean(data.m, 0.0);
    for (std::size_t i = 0; i < data.n; ++i)
        for (std::size_t v = 0; v < data.m; ++v)
            global_mean[v] += data.at(i, v);
    for (double& g : global_mean) g /= static_cast<double>(data.n);

    double bcss = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
        double d = 0.0;
        for (std::size_t v = 0; v < data.m; ++v) {
            double diff = cents.at(l, v) - global_mean[v];
            d += diff * diff;
        }
        bcss += static_cast<double>(sizes[l]) * d;
    }

    double w = wcss(data, part).value;
    if (w == 0.0)
        throw ZeroWcss("WCSS is zero, CH undefined");

    double ch = (bcss / static_cast<double>(k - 1)) /
                (w / static_cast<double>(data.n - k));
    return IndexValue{"CH", ch, Orientation::higher_better};
}

IndexValue davies_bouldin(const Dataset& data, const Partition& part) {
    validate_partition(part, data.n);
    std::size_t k = static_cast<std::size_t>(part.k);
    if (k < 2)
        throw DegenerateK("DB needs k >= 2");

    Centroids cents = compute_centroids(data, part);
    std::vector<std::size_t> sizes = cluster_sizes(part);

    // S_l: mean plain-Euclidean distance of members to the centroid
    std::vector<double> scatter(k, 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
        std::size_t l = static_cast<std::size_t>(part.labels[i]);
        double d = 0.0;
        for (std::size_t v = 0; v < data.m; ++v) {
            double diff = data.at(i, v) - cents.at(l, v);
            d += diff * diff;
        }
        scatter[l] += std::sqrt(d);
    }
    for (std::size_t l = 0; l < k; ++l)
        scatter[l] /= static_cast<double>(sizes[l]);

    double db = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
        double worst = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
            if (t == l) continue;
            double d = 0.0;
            for (std::size_t v = 0; v < data.m; ++v) {
                double diff = cents.at(l, v) - cents.at(t, v);
                d += diff * diff;
            }
            d = std::sqrt(d);
            if (d == 0.0)
                throw CoincidentCentroids(l, t);
            worst = std::max(worst, (scatter[l] + scatter[t]) / d);
        }
        db += worst;
    }
    return IndexValue{"DB", db / static_cast<double>(k),
                      Orientation::lower_better};
}

IndexValue adjusted_rand_index(const Partition& a, const Partition& b) {
    if (a.labels.size() != b.labels.size())
        throw LengthMismatch("partitions have different lengths");
    std::size_t n = a.labels.size();
    validate_partition(a, n);
    validate_partition(b, n);

    std::size_t ka = static_cast<std::size_t>(a.k);
    std::size_t kb = static_cast<std::size_t>(b.k);
    std::vector<std::size_t> table(ka * kb, 0), row(ka, 0), col(kb, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t la = static_cast<std::size_t>(a.labels[i]);
        std::size_t lb = static_cast<std::size_t>(b.labels[i]);
        ++table[la * kb + lb];
        ++row[la];
        ++col[lb];
    }

    auto comb2 = [](std::size_t c) {
        return 0.5 * static_cast<double>(c) * static_cast<double>(c - 1);
    };

    double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (std::size_t c : table) sum_ij += comb2(c);
    for (std::size_t c : row) sum_a += comb2(c);
    for (std::size_t c : col) sum_b += comb2(c);

    double total = comb2(n);
    double expected = sum_a * sum_b / total;
    double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected)
        return IndexValue{"ARI", 1.0, Orientation::higher_better};  // both trivial
    return IndexValue{"ARI", (sum_ij - expected) / (max_index - expected),
                      Orientation::higher_better};
}

}  // namespace cvi
