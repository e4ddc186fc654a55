#pragma once

#include <optional>
#include <string>

#include "cvi/fir.hpp"
#include "cvi/synthgen.hpp"

namespace cvi {

struct LoadedCsv {
    Dataset data;
    std::optional<Partition> labels;  // present when the CSV has a label column
};

// CSV with header f0,...,f{m-1}[,label].
LoadedCsv read_dataset_csv(const std::string& path);

// Writes the dataset, appending the truth labels as a `label` column when
// given, with full-precision floats.
void write_dataset_csv(const std::string& path, const Dataset& data,
                       const Partition* labels = nullptr);

// JSON sidecar next to the CSV: feature kinds plus generation parameters.
void write_sidecar_json(const std::string& path, const Dataset& data,
                        const GenConfig* cfg = nullptr);

void write_weights_json(const std::string& path, const FeatureWeights& w);

// Parses a JSON array of generator configs:
// [{"n":1000,"m":6,"k":3,"sigma":1.0,"noise":6}, ...]
std::vector<GenConfig> read_config_json(const std::string& path);

// CSV of projected components plus optional true/predicted label columns.
void write_pca_csv(const std::string& path, const Dataset& proj,
                   const Partition* truth = nullptr,
                   const Partition* predicted = nullptr);

}  // namespace cvi
