#include "cvi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "cvi/fir.hpp"
#include "cvi/kmeans.hpp"
#include "cvi/validity.hpp"

namespace cvi {

namespace {

std::array<double, 4> all_indices(const Dataset& data, const Partition& part) {
    return {wcss(data, part).value, asw(data, part).value,
            calinski_harabasz(data, part).value,
            davies_bouldin(data, part).value};
}

template <typename F>
void parallel_runs(std::size_t runs, std::size_t jobs, F&& body) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t r = next.fetch_add(1); r < runs; r = next.fetch_add(1))
            body(r);
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
}

}  // namespace

std::vector<TrialRecord> run_trials(const LabelledDataset& ds, std::size_t k,
                                    std::size_t runs, RngSeed base_seed,
                                    std::size_t dataset_id, std::size_t jobs) {
    if (runs < 2)
        throw Error("run_trials needs runs >= 2");
    Dataset norm = minmax_normalize(ds.data);

    std::vector<TrialRecord> records(runs);
    std::vector<Partition> parts(runs);
    parallel_runs(runs, jobs, [&](std::size_t r) {
        TrialRecord& rec = records[r];
        rec.run_index = r;
        rec.seed = child_seed(base_seed, dataset_id, r);
        try {
            ClusteringResult res = run_kmeanspp(norm, k, rec.seed);
            rec.ari = adjusted_rand_index(ds.truth, res.partition).value;
            rec.baseline = all_indices(norm, res.partition);
            parts[r] = std::move(res.partition);
        } catch (const Error& e) {
            rec.failed = true;
            rec.fail_reason = e.what();
        }
    });

    // Shared rescaled space from the best-WCSS run (ties: lowest run index).
    std::size_t ref = runs;
    for (std::size_t r = 0; r < runs; ++r)
        if (!records[r].failed &&
            (ref == runs || records[r].baseline[0] < records[ref].baseline[0]))
            ref = r;
    if (ref == runs) return records;  // every run failed

    try {
        // One application of the weights. Compounding them (passing iters=2
        // here) over-concentrates the space on the single lowest-dispersion
        // feature and measurably weakens the DB correlation; the theory's
        // weighted objective already describes the once-rescaled space.
        auto [rescaled, weights] = fir_rescale(norm, parts[ref], 1);
        const Dataset& space = rescaled;
        parallel_runs(runs, jobs, [&](std::size_t r) {
            if (records[r].failed) return;
            try {
                records[r].fir = all_indices(space, parts[r]);
            } catch (const Error& e) {
                records[r].failed = true;
                records[r].fail_reason = e.what();
            }
        });
    } catch (const Error& e) {
        for (TrialRecord& rec : records)
            if (!rec.failed) {
                rec.failed = true;
                rec.fail_reason = e.what();
            }
    }
    return records;
}

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch("pearson: length mismatch");
    std::size_t n = x.size();
    if (n < 2) throw Error("pearson needs length >= 2");

    double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
    std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        double r = 0.5 * static_cast<double>(i + j) + 1.0;  // average rank, 1-based
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y) {
    if (x.size() != y.size())
        throw LengthMismatch("spearman: length mismatch");
    std::vector<double> rx = average_ranks(x), ry = average_ranks(y);
    return pearson(rx, ry);
}

DatasetResult correlate_trials(const std::vector<TrialRecord>& trials,
                               CorrKind kind) {
    std::vector<double> ari;
    std::array<std::vector<double>, 4> base_vals, fir_vals;
    for (const TrialRecord& t : trials) {
        if (t.failed) continue;
        ari.push_back(t.ari);
        for (std::size_t i = 0; i < 4; ++i) {
            base_vals[i].push_back(t.baseline[i]);
            fir_vals[i].push_back(t.fir[i]);
        }
    }
    DatasetResult res;
    if (ari.size() < 2) return res;  // everything undefined
    auto corr = [&](std::span<const double> v) {
        return kind == CorrKind::pearson ? pearson(v, ari) : spearman(v, ari);
    };
    for (std::size_t i = 0; i < 4; ++i) {
        res.baseline_corr[i] = corr(base_vals[i]);
        res.fir_corr[i] = corr(fir_vals[i]);
    }
    return res;
}

namespace {

IndexSummary summarize(const std::vector<DatasetResult>& results,
                       std::size_t idx, bool fir, const char* name) {
    IndexSummary s;
    std::vector<double> vals;
    for (const DatasetResult& r : results) {
        const auto& c = fir ? r.fir_corr[idx] : r.baseline_corr[idx];
        if (c)
            vals.push_back(*c);
        else
            ++s.undefined;
    }
    if (vals.empty())
        throw AllUndefined(std::string(fir ? "FIR+" : "") + name);
    s.defined = vals.size();
    s.mean = std::accumulate(vals.begin(), vals.end(), 0.0) /
             static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(vals.size()));
    return s;
}

}  // namespace

ConfigSummary aggregate(const std::vector<DatasetResult>& results) {
    if (results.empty())
        throw Error("aggregate needs at least one dataset result");
    ConfigSummary summary;
    summary.config_id = results.front().config_id;
    for (std::size_t i = 0; i < 4; ++i) {
        summary.baseline[i] = summarize(results, i, false, kIndexNames[i]);
        summary.fir[i] = summarize(results, i, true, kIndexNames[i]);
    }
    return summary;
}

namespace {

// Cyclic Jacobi on a symmetric matrix; returns eigenvalues in `a`'s diagonal
// and accumulates rotations into `vecs` (columns are eigenvectors).
void jacobi_eigen(std::vector<double>& a, std::size_t m,
                  std::vector<double>& vecs) {
    vecs.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) vecs[i * m + i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q)
                off += a[p * m + q] * a[p * m + q];
        if (off < 1e-26) break;

        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                double apq = a[p * m + q];
                if (apq == 0.0) continue;
                double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < m; ++i) {
                    double aip = a[i * m + p], aiq = a[i * m + q];
                    a[i * m + p] = c * aip - s * aiq;
                    a[i * m + q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < m; ++i) {
                    double api = a[p * m + i], aqi = a[q * m + i];
                    a[p * m + i] = c * api - s * aqi;
                    a[q * m + i] = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < m; ++i) {
                    double vip = vecs[i * m + p], viq = vecs[i * m + q];
                    vecs[i * m + p] = c * vip - s * viq;
                    vecs[i * m + q] = s * vip + c * viq;
                }
            }
        }
    }
}

}  // namespace

Dataset pca_project(const Dataset& data, std::size_t dims) {
    if (dims < 1 || dims > data.m)
        throw Error("pca needs 1 <= dims <= m");

    std::vector<double> mean(data.m, 0.0);
    for (std::size_t i = 0; i < data.n; ++i)
        for (std::size_t v = 0; v < data.m; ++v)
            mean[v] += data.at(i, v);
    for (double& x : mean) x /= static_cast<double>(data.n);

    std::size_t m = data.m;
    std::vector<double> cov(m * m, 0.0);
    for (std::size_t i = 0; i < data.n; ++i)
        for (std::size_t p = 0; p < m; ++p) {
            double dp = data.at(i, p) - mean[p];
            for (std::size_t q = p; q < m; ++q)
                cov[p * m + q] += dp * (data.at(i, q) - mean[q]);
        }
    double denom = data.n > 1 ? static_cast<double>(data.n - 1) : 1.0;
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p; q < m; ++q) {
            cov[p * m + q] /= denom;
            cov[q * m + p] = cov[p * m + q];
        }

    std::vector<double> vecs;
    jacobi_eigen(cov, m, vecs);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cov[a * m + a] > cov[b * m + b];
    });

    double max_eig = std::max(cov[order[0] * m + order[0]], 0.0);
    for (std::size_t d = 0; d < dims; ++d) {
        double eig = cov[order[d] * m + order[d]];
        if (!(eig > 1e-12 * std::max(max_eig, 1e-300)))
            throw RankDeficient("fewer nonzero eigenvalues than requested dims");
    }

    // sign convention: largest-magnitude component positive
    std::vector<double> basis(m * dims);
    for (std::size_t d = 0; d < dims; ++d) {
        std::size_t col = order[d];
        std::size_t arg = 0;
        for (std::size_t i = 1; i < m; ++i)
            if (std::abs(vecs[i * m + col]) > std::abs(vecs[arg * m + col]))
                arg = i;
        double sign = vecs[arg * m + col] >= 0.0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < m; ++i)
            basis[i * dims + d] = sign * vecs[i * m + col];
    }

    std::vector<double> proj(data.n * dims, 0.0);
    for (std::size_t i = 0; i < data.n; ++i)
        for (std::size_t v = 0; v < m; ++v) {
            double centered = data.at(i, v) - mean[v];
            for (std::size_t d = 0; d < dims; ++d)
                proj[i * dims + d] += centered * basis[v * dims + d];
        }
    return make_dataset(data.n, dims, std::move(proj));
}

namespace {

std::string sanitize(const std::string& id) {
    std::string out = id;
    for (char& c : out)
        if (c == ' ' || c == '/') c = '_';
    return out;
}

std::string cell(const IndexSummary& s) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f/%.2f", s.mean, s.stddev);
    return buf;
}

nlohmann::ordered_json summary_json(const ConfigSummary& s) {
    nlohmann::ordered_json j;
    j["config"] = s.config_id;
    for (std::size_t i = 0; i < 4; ++i) {
        nlohmann::ordered_json pair;
        pair["mean"] = s.baseline[i].mean;
        pair["stddev"] = s.baseline[i].stddev;
        pair["defined"] = s.baseline[i].defined;
        pair["undefined"] = s.baseline[i].undefined;
        j[kIndexNames[i]] = pair;
        nlohmann::ordered_json fpair;
        fpair["mean"] = s.fir[i].mean;
        fpair["stddev"] = s.fir[i].stddev;
        fpair["defined"] = s.fir[i].defined;
        fpair["undefined"] = s.fir[i].undefined;
        j[std::string("FIR+") + kIndexNames[i]] = fpair;
    }
    return j;
}

}  // namespace

std::vector<ConfigSummary> run_sweep(const std::vector<GenConfig>& configs,
                                     const SweepOptions& opts,
                                     const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::vector<ConfigSummary> summaries;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        GenConfig cfg = configs[c];
        std::ofstream jsonl(fs::path(out_dir) / (sanitize(cfg.id()) + ".jsonl"));
        std::vector<DatasetResult> results;
        for (std::size_t d = 0; d < opts.datasets; ++d) {
            std::size_t global_id = c * 1000000 + d;
            cfg.seed = child_seed(opts.master, global_id, ~std::uint64_t{0});
            LabelledDataset ds = generate_blobs(cfg);
            std::vector<TrialRecord> trials =
                run_trials(ds, cfg.k, opts.runs, opts.master, global_id, opts.jobs);
            for (const TrialRecord& t : trials) {
                nlohmann::ordered_json j;
                j["dataset_id"] = global_id;
                j["run"] = t.run_index;
                j["seed"] = t.seed.value;
                j["failed"] = t.failed;
                if (t.failed) {
                    j["reason"] = t.fail_reason;
                } else {
                    j["ari"] = t.ari;
                    for (std::size_t i = 0; i < 4; ++i) {
                        j[kIndexNames[i]] = t.baseline[i];
                        j[std::string("FIR+") + kIndexNames[i]] = t.fir[i];
                    }
                }
                jsonl << j.dump() << "\n";
            }
            DatasetResult res = correlate_trials(trials, opts.corr);
            res.config_id = configs[c].id();
            res.dataset_id = global_id;
            results.push_back(std::move(res));
        }
        summaries.push_back(aggregate(results));
    }

    std::ofstream csv(fs::path(out_dir) / "summary.csv");
    csv << "config";
    for (const char* name : kIndexNames)
        csv << "," << name << ",FIR+" << name;
    for (const char* name : kIndexNames)
        csv << ",undef_" << name << ",undef_FIR+" << name;
    csv << "\n";
    for (const ConfigSummary& s : summaries) {
        csv << s.config_id;
        for (std::size_t i = 0; i < 4; ++i)
            csv << "," << cell(s.baseline[i]) << "," << cell(s.fir[i]);
        for (std::size_t i = 0; i < 4; ++i)
            csv << "," << s.baseline[i].undefined << "," << s.fir[i].undefined;
        csv << "\n";
    }

    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    for (const ConfigSummary& s : summaries) all.push_back(summary_json(s));
    std::ofstream json_out(fs::path(out_dir) / "summary.json");
    json_out << all.dump(2) << "\n";

    return summaries;
}

}  // namespace cvi
