#include "cvi/data_model.hpp"

#include <cmath>
#include <string>

namespace cvi {

Dataset make_dataset(std::size_t n, std::size_t m, std::vector<double> values,
                     std::vector<FeatureKind> kinds) {
    if (n < 1 || m < 1)
        throw Error("dataset needs n >= 1 and m >= 1");
    if (values.size() != n * m)
        throw Error("dataset values size mismatch");
    for (double x : values)
        if (!std::isfinite(x))
            throw Error("dataset contains a non-finite entry");
    if (kinds.empty())
        kinds.assign(m, FeatureKind::unknown);
    if (kinds.size() != m)
        throw Error("feature_kinds length mismatch");
    return Dataset{n, m, std::move(values), std::move(kinds)};
}

void validate_partition(const Partition& part, std::size_t n) {
    if (part.labels.size() != n)
        throw Error("partition labels length != n");
    if (part.k < 1 || static_cast<std::size_t>(part.k) > n)
        throw Error("partition needs 1 <= k <= n");
    std::vector<bool> seen(static_cast<std::size_t>(part.k), false);
    for (int l : part.labels) {
        if (l < 0 || l >= part.k)
            throw Error("cluster id out of range: " + std::to_string(l));
        seen[static_cast<std::size_t>(l)] = true;
    }
    for (std::size_t l = 0; l < seen.size(); ++l)
        if (!seen[l])
            throw Error("empty cluster " + std::to_string(l));
}

Dataset minmax_normalize(const Dataset& data) {
    Dataset out = data;
    for (std::size_t v = 0; v < data.m; ++v) {
        double lo = data.at(0, v), hi = data.at(0, v), sum = 0.0;
        for (std::size_t i = 0; i < data.n; ++i) {
            double x = data.at(i, v);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            sum += x;
        }
        if (hi == lo)
            throw ConstantFeature(v);
        double mean = sum / static_cast<double>(data.n);
        double range = hi - lo;
        for (std::size_t i = 0; i < data.n; ++i)
            out.at(i, v) = (data.at(i, v) - mean) / range;
    }
    return out;
}

Centroids compute_centroids(const Dataset& data, const Partition& part) {
    validate_partition(part, data.n);
    std::size_t k = static_cast<std::size_t>(part.k);
    Centroids cents{k, data.m, std::vector<double>(k * data.m, 0.0)};
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < data.n; ++i) {
        std::size_t l = static_cast<std::size_t>(part.labels[i]);
        ++counts[l];
        for (std::size_t v = 0; v < data.m; ++v)
            cents.at(l, v) += data.at(i, v);
    }
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t v = 0; v < data.m; ++v)
            cents.at(l, v) /= static_cast<double>(counts[l]);
    return cents;
}

DispersionVector feature_dispersion(const Dataset& data, const Partition& part,
                                    const Centroids& cents) {
    validate_partition(part, data.n);
    DispersionVector disp{std::vector<double>(data.m, 0.0)};
    for (std::size_t i = 0; i < data.n; ++i) {
        std::size_t l = static_cast<std::size_t>(part.labels[i]);
        for (std::size_t v = 0; v < data.m; ++v) {
            double diff = data.at(i, v) - cents.at(l, v);
            disp.d[v] += diff * diff;
        }
    }
    return disp;
}

}  // namespace cvi
