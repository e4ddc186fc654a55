#include <doctest.h>

#include <cmath>

#include "cvi/experiment.hpp"
#include "cvi/validity.hpp"

using namespace cvi;

TEST_CASE("pearson examples") {
    std::vector<double> x{1, 2, 3}, y{1, 2, 4};
    CHECK(*pearson(x, x) == doctest::Approx(1.0));
    std::vector<double> neg{-1, -2, -3};
    CHECK(*pearson(x, neg) == doctest::Approx(-1.0));
    CHECK(*pearson(x, y) == doctest::Approx(0.981).epsilon(0.0011));

    std::vector<double> flat{2, 2, 2};
    CHECK(!pearson(x, flat).has_value());
    CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), LengthMismatch);
}

TEST_CASE("spearman is rank based") {
    std::vector<double> x{1, 2, 3, 4};
    std::vector<double> y{1, 10, 100, 1000};  // monotone, nonlinear
    CHECK(*spearman(x, y) == doctest::Approx(1.0));
    std::vector<double> rev{4, 3, 2, 1};
    CHECK(*spearman(x, rev) == doctest::Approx(-1.0));
    std::vector<double> tied{1, 1, 2, 2};
    CHECK(spearman(tied, tied).has_value());
}

TEST_CASE("aggregate examples") {
    DatasetResult one;
    one.config_id = "c";
    for (std::size_t i = 0; i < 4; ++i) {
        one.baseline_corr[i] = -0.9;
        one.fir_corr[i] = -0.9;
    }
    ConfigSummary single = aggregate({one});
    CHECK(single.baseline[0].mean == doctest::Approx(-0.9));
    CHECK(single.baseline[0].stddev == doctest::Approx(0.0));

    DatasetResult two = one;
    for (std::size_t i = 0; i < 4; ++i) two.baseline_corr[i] = -1.0;
    ConfigSummary pair = aggregate({one, two});
    CHECK(pair.baseline[0].mean == doctest::Approx(-0.95));
    CHECK(pair.baseline[0].stddev == doctest::Approx(0.05));

    DatasetResult undef;
    undef.config_id = "u";  // every correlation missing
    CHECK_THROWS_AS(aggregate({undef}), AllUndefined);
}

TEST_CASE("aggregate counts undefined correlations") {
    DatasetResult a, b;
    a.config_id = b.config_id = "c";
    for (std::size_t i = 0; i < 4; ++i) {
        a.baseline_corr[i] = -1.0;
        a.fir_corr[i] = -1.0;
        b.fir_corr[i] = -1.0;  // baseline left undefined
    }
    ConfigSummary s = aggregate({a, b});
    CHECK(s.baseline[0].defined == 1);
    CHECK(s.baseline[0].undefined == 1);
    CHECK(s.fir[0].undefined == 0);
}

TEST_CASE("run_trials determinism and jobs independence") {
    GenConfig cfg{120, 3, 3, 1.0, 3, RngSeed{7}};
    LabelledDataset ds = generate_blobs(cfg);
    auto a = run_trials(ds, 3, 10, RngSeed{42}, 5, 1);
    auto b = run_trials(ds, 3, 10, RngSeed{42}, 5, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].seed.value == b[i].seed.value);
        CHECK(a[i].ari == b[i].ari);
        CHECK(a[i].baseline == b[i].baseline);
        CHECK(a[i].fir == b[i].fir);
    }
}

TEST_CASE("constant ARI vector leaves correlations undefined") {
    GenConfig cfg{90, 2, 3, 1e-6, 0, RngSeed{11}};  // trivially separable
    LabelledDataset ds = generate_blobs(cfg);
    auto trials = run_trials(ds, 3, 8, RngSeed{1}, 0, 1);
    for (const auto& t : trials) CHECK(t.ari == doctest::Approx(1.0));
    DatasetResult res = correlate_trials(trials);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(!res.baseline_corr[i].has_value());
}

TEST_CASE("pca on 2D data preserves pairwise distances") {
    Rng rng(RngSeed{13});
    std::vector<double> vals(60);
    for (double& x : vals) x = rng.uniform(-4.0, 4.0);
    Dataset d = make_dataset(30, 2, vals);
    Dataset proj = pca_project(d, 2);
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = i + 1; j < 30; ++j) {
            double orig = 0.0, got = 0.0;
            for (std::size_t v = 0; v < 2; ++v) {
                double a = d.at(i, v) - d.at(j, v);
                double b = proj.at(i, v) - proj.at(j, v);
                orig += a * a;
                got += b * b;
            }
            CHECK(std::sqrt(got) == doctest::Approx(std::sqrt(orig)).epsilon(1e-9));
        }
}

TEST_CASE("pca ignores an all-constant feature") {
    Rng rng(RngSeed{17});
    std::vector<double> vals(40);
    for (double& x : vals) x = rng.uniform(-4.0, 4.0);
    Dataset d = make_dataset(20, 2, vals);

    std::vector<double> padded;
    for (std::size_t i = 0; i < 20; ++i) {
        padded.push_back(d.at(i, 0));
        padded.push_back(d.at(i, 1));
        padded.push_back(3.14);
    }
    Dataset withconst = make_dataset(20, 3, padded);

    Dataset a = pca_project(d, 2);
    Dataset b = pca_project(withconst, 2);
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t v = 0; v < 2; ++v)
            CHECK(a.at(i, v) == doctest::Approx(b.at(i, v)).epsilon(1e-9));
}

TEST_CASE("pca components capture decreasing variance, checked against a "
          "brute-force eigensolve") {
    Rng rng(RngSeed{19});
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> vals(15);
        for (double& x : vals) x = rng.uniform(-2.0, 2.0);
        Dataset d = make_dataset(5, 3, vals);
        Dataset proj = pca_project(d, 3);

        // sample variances of the projected columns
        std::vector<double> var(3, 0.0);
        for (std::size_t v = 0; v < 3; ++v) {
            double mean = 0.0;
            for (std::size_t i = 0; i < 5; ++i) mean += proj.at(i, v);
            mean /= 5.0;
            for (std::size_t i = 0; i < 5; ++i) {
                double e = proj.at(i, v) - mean;
                var[v] += e * e;
            }
            var[v] /= 4.0;
        }
        CHECK(var[0] >= var[1] - 1e-12);
        CHECK(var[1] >= var[2] - 1e-12);

        // brute-force: eigenvalues of the 3x3 covariance via the
        // characteristic cubic (trigonometric solution)
        double mean[3] = {0, 0, 0};
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t v = 0; v < 3; ++v) mean[v] += d.at(i, v);
        for (double& x : mean) x /= 5.0;
        double c[3][3] = {};
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t p = 0; p < 3; ++p)
                for (std::size_t q = 0; q < 3; ++q)
                    c[p][q] += (d.at(i, p) - mean[p]) * (d.at(i, q) - mean[q]);
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t q = 0; q < 3; ++q) c[p][q] /= 4.0;

        double p1 = c[0][1] * c[0][1] + c[0][2] * c[0][2] + c[1][2] * c[1][2];
        double tr = c[0][0] + c[1][1] + c[2][2];
        double q = tr / 3.0;
        double p2 = (c[0][0] - q) * (c[0][0] - q) + (c[1][1] - q) * (c[1][1] - q) +
                    (c[2][2] - q) * (c[2][2] - q) + 2.0 * p1;
        double p = std::sqrt(p2 / 6.0);
        double det = 0.0;
        {
            double b[3][3];
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    b[i][j] = (c[i][j] - (i == j ? q : 0.0)) / p;
            det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                  b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                  b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
        }
        double r = std::clamp(det / 2.0, -1.0, 1.0);
        double phi = std::acos(r) / 3.0;
        double eig1 = q + 2.0 * p * std::cos(phi);
        double eig3 = q + 2.0 * p * std::cos(phi + 2.0 * 3.141592653589793 / 3.0);
        double eig2 = tr - eig1 - eig3;

        CHECK(var[0] == doctest::Approx(eig1).epsilon(1e-8));
        CHECK(var[1] == doctest::Approx(eig2).epsilon(1e-8));
        CHECK(var[2] == doctest::Approx(eig3).epsilon(1e-8));
    }
}

TEST_CASE("pca rejects rank-deficient requests") {
    Dataset d = make_dataset(3, 2, {1, 5, 2, 5, 3, 5});  // second feature constant
    CHECK_THROWS_AS(pca_project(d, 2), RankDeficient);
    CHECK_NOTHROW(pca_project(d, 1));
}
