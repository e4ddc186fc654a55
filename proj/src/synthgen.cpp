#include "cvi/synthgen.hpp"

#include <cmath>
#include <sstream>

namespace cvi {

std::string GenConfig::id() const {
    std::ostringstream os;
    os << n << "x" << m << "-" << k;
    if (noise_features > 0) os << " " << noise_features << "NF";
    os << " s" << sigma;
    return os.str();
}

LabelledDataset generate_blobs(const GenConfig& cfg) {
    if (cfg.n < cfg.k || cfg.k < 1 || cfg.m < 1 || !(cfg.sigma > 0.0))
        throw Error("invalid generator config");

    Rng rng(cfg.seed);

    std::vector<double> centers(cfg.k * cfg.m);
    for (double& c : centers) c = rng.uniform(-10.0, 10.0);

    // sizes differ by at most one: first (n mod k) clusters get the extra point
    std::vector<std::size_t> sizes(cfg.k, cfg.n / cfg.k);
    for (std::size_t l = 0; l < cfg.n % cfg.k; ++l) ++sizes[l];

    std::vector<double> values(cfg.n * cfg.m);
    std::vector<int> labels(cfg.n);
    std::size_t i = 0;
    for (std::size_t l = 0; l < cfg.k; ++l) {
        for (std::size_t p = 0; p < sizes[l]; ++p, ++i) {
            labels[i] = static_cast<int>(l);
            for (std::size_t v = 0; v < cfg.m; ++v)
                values[i * cfg.m + v] =
                    centers[l * cfg.m + v] + cfg.sigma * rng.gaussian();
        }
    }

    LabelledDataset ds{
        make_dataset(cfg.n, cfg.m, std::move(values),
                     std::vector<FeatureKind>(cfg.m, FeatureKind::informative)),
        Partition{std::move(labels), static_cast<int>(cfg.k)},
        std::move(centers)};

    if (cfg.noise_features > 0) {
        // independent stream so the blob draw is unaffected by q
        std::uint64_t s = cfg.seed.value ^ 0x6e6f697365ULL;
        RngSeed noise_seed{splitmix64(s)};
        ds = add_noise_features(ds, cfg.noise_features, noise_seed);
    }
    return ds;
}

LabelledDataset add_noise_features(const LabelledDataset& ds, std::size_t q,
                                   RngSeed seed) {
    if (q == 0) return ds;

    const Dataset& in = ds.data;
    std::size_t m_out = in.m + q;
    std::vector<double> values(in.n * m_out);
    Rng rng(seed);
    for (std::size_t i = 0; i < in.n; ++i) {
        for (std::size_t v = 0; v < in.m; ++v)
            values[i * m_out + v] = in.at(i, v);
    }
    // column-major fill keeps each noise column a contiguous stream
    for (std::size_t v = in.m; v < m_out; ++v)
        for (std::size_t i = 0; i < in.n; ++i)
            values[i * m_out + v] = rng.uniform(-10.0, 10.0);

    std::vector<FeatureKind> kinds = in.feature_kinds;
    kinds.insert(kinds.end(), q, FeatureKind::noise);

    return LabelledDataset{
        make_dataset(in.n, m_out, std::move(values), std::move(kinds)),
        ds.truth, ds.centers};
}

}  // namespace cvi
