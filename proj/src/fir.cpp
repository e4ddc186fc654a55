#include "cvi/fir.hpp"

#include <algorithm>
#include <cmath>

namespace cvi {

FeatureWeights fir_weights(const DispersionVector& disp) {
    std::size_t m = disp.d.size();
    if (m == 0)
        throw Error("empty dispersion vector");
    for (std::size_t v = 0; v < m; ++v)
        if (!(disp.d[v] > 0.0) || !std::isfinite(1.0 / disp.d[v]))
            throw TrivialFeature(v);

    FeatureWeights w{std::vector<double>(m, 0.0)};
    for (std::size_t v = 0; v < m; ++v) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            s += disp.d[v] / disp.d[j];
        w.alpha[v] = 1.0 / s;
    }
    return w;
}

double weighted_wcss(const DispersionVector& disp, const FeatureWeights& w) {
    if (disp.d.size() != w.alpha.size())
        throw LengthMismatch("dispersion/weight length mismatch");
    double s = 0.0;
    for (std::size_t v = 0; v < disp.d.size(); ++v)
        s += w.alpha[v] * w.alpha[v] * disp.d[v];
    return s;
}

std::pair<Dataset, FeatureWeights> fir_rescale(const Dataset& data,
                                               const Partition& part,
                                               std::size_t iters) {
    validate_partition(part, data.n);
    // Each pass rescales by the weights of the input data's dispersions.
    // Recomputing the weights from the already-rescaled data would cancel:
    // rescaled dispersions are alpha_v^2 D_v = 1/(D_v S^2) with
    // S = sum_j 1/D_j, so the next pass's weights come out proportional to
    // D_v and the cumulative scaling collapses to a feature-independent
    // constant. Repeated application must compound the attenuation instead.
    Dataset current = data;
    FeatureWeights cumulative{std::vector<double>(data.m, 1.0)};
    if (iters > 0) {
        Centroids cents = compute_centroids(data, part);
        DispersionVector disp = feature_dispersion(data, part, cents);
        FeatureWeights w = fir_weights(disp);
        for (std::size_t pass = 0; pass < iters; ++pass)
            for (std::size_t v = 0; v < data.m; ++v)
                cumulative.alpha[v] *= w.alpha[v];
        for (std::size_t i = 0; i < current.n; ++i)
            for (std::size_t v = 0; v < current.m; ++v)
                current.at(i, v) *= cumulative.alpha[v];
    }
    return {std::move(current), std::move(cumulative)};
}

std::pair<double, double> check_noise_immunity(const DispersionVector& disp,
                                               double huge) {
    double base = weighted_wcss(disp, fir_weights(disp));
    DispersionVector extended = disp;
    extended.d.push_back(huge);
    double with_noise = weighted_wcss(extended, fir_weights(extended));
    return {base, with_noise};
}

}  // namespace cvi
