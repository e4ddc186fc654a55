#include <doctest.h>

#include <cmath>

#include "cvi/fir.hpp"
#include "cvi/rng.hpp"
#include "cvi/synthgen.hpp"

using namespace cvi;

namespace {

DispersionVector random_dispersion(Rng& rng, std::size_t m) {
    DispersionVector d{std::vector<double>(m)};
    for (double& x : d.d) x = std::exp(rng.uniform(-3.0, 3.0));
    return d;
}

double inverse_harmonic_sum(const DispersionVector& d) {
    double s = 0.0;
    for (double x : d.d) s += 1.0 / x;
    return 1.0 / s;
}

}  // namespace

TEST_CASE("fir_weights hand examples") {
    FeatureWeights equal = fir_weights(DispersionVector{{2.0, 2.0, 2.0, 2.0}});
    for (double a : equal.alpha) CHECK(a == doctest::Approx(0.25).epsilon(1e-15));

    FeatureWeights w = fir_weights(DispersionVector{{1.0, 3.0}});
    CHECK(w.alpha[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(w.alpha[1] == doctest::Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(fir_weights(DispersionVector{{1.0, 0.0}}), TrivialFeature);
}

TEST_CASE("weighted_wcss hand examples") {
    DispersionVector d{{1.0, 3.0}};
    CHECK(weighted_wcss(d, fir_weights(d)) ==
          doctest::Approx(0.75).epsilon(1e-15));

    DispersionVector single{{4.2}};
    FeatureWeights w1 = fir_weights(single);
    CHECK(w1.alpha[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(weighted_wcss(single, w1) == doctest::Approx(4.2).epsilon(1e-15));

    DispersionVector uniform{{5.0, 5.0, 5.0}};
    FeatureWeights third{{1.0 / 3, 1.0 / 3, 1.0 / 3}};
    CHECK(weighted_wcss(uniform, third) ==
          doctest::Approx(5.0 / 3).epsilon(1e-15));
}

TEST_CASE("harmonic identity over random dispersions") {
    Rng rng(RngSeed{31});
    for (int rep = 0; rep < 200; ++rep) {
        DispersionVector d = random_dispersion(rng, 1 + rng.index(64));
        double lhs = weighted_wcss(d, fir_weights(d));
        double rhs = inverse_harmonic_sum(d);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
    }
}

TEST_CASE("weights sum to one and are positive") {
    Rng rng(RngSeed{37});
    for (int rep = 0; rep < 200; ++rep) {
        DispersionVector d = random_dispersion(rng, 1 + rng.index(32));
        FeatureWeights w = fir_weights(d);
        double sum = 0.0;
        for (double a : w.alpha) {
            CHECK(a > 0.0);
            sum += a;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("scale invariance of the weights") {
    Rng rng(RngSeed{41});
    for (double gamma : {1e-3, 1.0, 1e3}) {
        DispersionVector d = random_dispersion(rng, 8);
        DispersionVector scaled = d;
        for (double& x : scaled.d) x *= gamma * gamma;
        FeatureWeights a = fir_weights(d);
        FeatureWeights b = fir_weights(scaled);
        for (std::size_t v = 0; v < 8; ++v)
            CHECK(std::abs(a.alpha[v] - b.alpha[v]) <= 1e-12);
    }
}

TEST_CASE("two algebraic routes to the weights agree") {
    Rng rng(RngSeed{43});
    for (int rep = 0; rep < 100; ++rep) {
        DispersionVector d = random_dispersion(rng, 2 + rng.index(20));
        FeatureWeights w = fir_weights(d);
        double inv_sum = 0.0;
        for (double x : d.d) inv_sum += 1.0 / x;
        for (std::size_t v = 0; v < d.d.size(); ++v) {
            double alt = (1.0 / d.d[v]) / inv_sum;
            CHECK(std::abs(w.alpha[v] - alt) <= 1e-12);
        }
    }
}

TEST_CASE("optimality against random simplex perturbations") {
    Rng rng(RngSeed{47});
    for (int rep = 0; rep < 20; ++rep) {
        DispersionVector d = random_dispersion(rng, 2 + rng.index(10));
        std::size_t m = d.d.size();
        FeatureWeights best = fir_weights(d);
        double opt = weighted_wcss(d, best);
        for (int p = 0; p < 200; ++p) {
            FeatureWeights other{std::vector<double>(m)};
            double sum = 0.0;
            for (double& a : other.alpha) {
                a = rng.uniform(1e-6, 1.0);
                sum += a;
            }
            for (double& a : other.alpha) a /= sum;
            CHECK(weighted_wcss(d, other) >= opt - 1e-12 * opt);
        }
    }
}

TEST_CASE("sensitivity: finite difference matches the closed form") {
    Rng rng(RngSeed{53});
    for (int rep = 0; rep < 50; ++rep) {
        DispersionVector d = random_dispersion(rng, 2 + rng.index(10));
        std::size_t m = d.d.size();
        double inv_sum = 0.0;
        for (double x : d.d) inv_sum += 1.0 / x;
        for (std::size_t v = 0; v < m; ++v) {
            double h = 1e-7 * d.d[v];
            DispersionVector hi = d, lo = d;
            hi.d[v] += h;
            lo.d[v] -= h;
            double fd = (fir_weights(hi).alpha[v] - fir_weights(lo).alpha[v]) /
                        (2.0 * h);
            CHECK(fd < 0.0);
            double alpha = (1.0 / d.d[v]) / inv_sum;
            double closed =
                -(1.0 / (d.d[v] * d.d[v] * inv_sum)) * (1.0 - alpha);
            CHECK(fd == doctest::Approx(closed).epsilon(1e-6));
        }
    }
}

TEST_CASE("noise immunity values") {
    DispersionVector d{{1.0, 3.0}};
    auto [base, with_noise] = check_noise_immunity(d, 1e12);
    CHECK(base == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(std::abs(with_noise - base) / base < 1e-9);

    // appending any feature lowers the harmonic expression
    auto [b2, w2] = check_noise_immunity(d, 3.0);
    CHECK(w2 < b2);

    DispersionVector single{{2.5}};
    auto [b3, w3] = check_noise_immunity(single, 1e15);
    CHECK(b3 == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(w3 == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("fir_rescale trivial cases") {
    Dataset d = make_dataset(4, 1, {0, 1, 10, 11});
    Partition p{{0, 0, 1, 1}, 2};

    auto [same, w1] = fir_rescale(d, p, 2);
    CHECK(same.values == d.values);  // m=1 forces alpha = 1 each pass
    CHECK(w1.alpha[0] == doctest::Approx(1.0).epsilon(1e-15));

    Dataset d2 = make_dataset(4, 2, {0, 5, 1, 6, 10, 5.5, 11, 6.5});
    auto [unchanged, w0] = fir_rescale(d2, p, 0);
    CHECK(unchanged.values == d2.values);
    CHECK(w0.alpha == std::vector<double>{1.0, 1.0});
}

namespace {

// straight-line reimplementation of the rescaling procedure, used as oracle
std::vector<double> naive_cumulative_weights(const Dataset& data,
                                             const Partition& part,
                                             std::size_t iters) {
    std::vector<double> cent(static_cast<std::size_t>(part.k) * data.m, 0.0);
    std::vector<double> cnt(static_cast<std::size_t>(part.k), 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
        std::size_t l = static_cast<std::size_t>(part.labels[i]);
        cnt[l] += 1.0;
        for (std::size_t v = 0; v < data.m; ++v)
            cent[l * data.m + v] += data.at(i, v);
    }
    for (std::size_t l = 0; l < static_cast<std::size_t>(part.k); ++l)
        for (std::size_t v = 0; v < data.m; ++v) cent[l * data.m + v] /= cnt[l];

    std::vector<double> disp(data.m, 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
        std::size_t l = static_cast<std::size_t>(part.labels[i]);
        for (std::size_t v = 0; v < data.m; ++v) {
            double e = data.at(i, v) - cent[l * data.m + v];
            disp[v] += e * e;
        }
    }
    double inv_sum = 0.0;
    for (double dv : disp) inv_sum += 1.0 / dv;
    std::vector<double> cum(data.m, 1.0);
    for (std::size_t pass = 0; pass < iters; ++pass)
        for (std::size_t v = 0; v < data.m; ++v)
            cum[v] *= (1.0 / disp[v]) / inv_sum;
    return cum;
}

}  // namespace

TEST_CASE("fir_rescale attenuates a pure-noise column") {
    GenConfig cfg{200, 1, 2, 0.5, 1, RngSeed{13}};
    LabelledDataset ds = generate_blobs(cfg);

    auto [rescaled, weights] = fir_rescale(ds.data, ds.truth, 2);
    CHECK(weights.alpha[1] < weights.alpha[0]);  // noise column weighs less

    std::vector<double> expect = naive_cumulative_weights(ds.data, ds.truth, 2);
    for (std::size_t v = 0; v < 2; ++v)
        CHECK(weights.alpha[v] == doctest::Approx(expect[v]).epsilon(1e-10));

    // returned weights reproduce the rescaled matrix from the input
    for (std::size_t i = 0; i < ds.data.n; ++i)
        for (std::size_t v = 0; v < 2; ++v)
            CHECK(rescaled.at(i, v) ==
                  doctest::Approx(ds.data.at(i, v) * weights.alpha[v])
                      .epsilon(1e-12));
}

TEST_CASE("fir_rescale propagates TrivialFeature") {
    // second feature constant within each cluster
    Dataset d = make_dataset(4, 2, {0, 7, 1, 7, 10, 7, 11, 7});
    Partition p{{0, 0, 1, 1}, 2};
    CHECK_THROWS_AS(fir_rescale(d, p, 2), TrivialFeature);
}
