#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "cvi/synthgen.hpp"

namespace cvi {

inline constexpr std::array<const char*, 4> kIndexNames = {"WCSS", "ASW", "CH",
                                                           "DB"};

struct TrialRecord {
    std::size_t run_index = 0;
    RngSeed seed;
    bool failed = false;
    std::string fail_reason;
    double ari = 0.0;
    std::array<double, 4> baseline{};  // WCSS, ASW, CH, DB on normalized data
    std::array<double, 4> fir{};       // same indices in the rescaled space
};

struct DatasetResult {
    std::string config_id;
    std::size_t dataset_id = 0;
    std::array<std::optional<double>, 4> baseline_corr;
    std::array<std::optional<double>, 4> fir_corr;
};

struct IndexSummary {
    double mean = 0.0;
    double stddev = 0.0;  // population
    std::size_t defined = 0;
    std::size_t undefined = 0;
};

struct ConfigSummary {
    std::string config_id;
    std::array<IndexSummary, 4> baseline;
    std::array<IndexSummary, 4> fir;
};

enum class CorrKind { pearson, spearman };

// One dataset, `runs` seeded k-means++ executions. The data is min-max
// normalized once; per run the four indices are computed on the normalized
// data and again on its FIR rescaling. The rescaling is shared by all
// runs of the dataset: its weights come from the partition of the run
// with the lowest WCSS (lowest run index on ties). Ranking every run in one
// common space is what makes the FIR index values comparable across runs —
// weights taken from each run's own partition would let a bad local minimum
// pick the space that flatters it. Failures are recorded per run, never
// aborting the batch. Deterministic in (base_seed, dataset_id) regardless
// of `jobs`.
std::vector<TrialRecord> run_trials(const LabelledDataset& ds, std::size_t k,
                                    std::size_t runs, RngSeed base_seed,
                                    std::size_t dataset_id = 0,
                                    std::size_t jobs = 1);

// Sample Pearson correlation; nullopt when either vector is constant.
std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

// Pearson on average ranks.
std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y);

// Per-index correlation of the (index, ARI) vectors over non-failed trials.
DatasetResult correlate_trials(const std::vector<TrialRecord>& trials,
                               CorrKind kind = CorrKind::pearson);

// Mean and population std of the defined correlations per index; throws
// AllUndefined when an index has none.
ConfigSummary aggregate(const std::vector<DatasetResult>& results);

// Projection onto the top principal components of the sample covariance.
// Eigenvector signs are fixed by making each one's largest-magnitude
// component positive. Throws RankDeficient with fewer than `dims` nonzero
// eigenvalues.
Dataset pca_project(const Dataset& data, std::size_t dims = 2);

struct SweepOptions {
    std::size_t datasets = 10;
    std::size_t runs = 50;
    std::size_t jobs = 1;
    CorrKind corr = CorrKind::pearson;
    RngSeed master;
};

// Full protocol over a config list: generate datasets, run trials, write one
// JSONL file per config plus summary.csv and summary.json under out_dir.
std::vector<ConfigSummary> run_sweep(const std::vector<GenConfig>& configs,
                                     const SweepOptions& opts,
                                     const std::string& out_dir);

}  // namespace cvi
