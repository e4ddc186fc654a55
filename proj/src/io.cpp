#include "cvi/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cvi {

namespace {

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

LoadedCsv read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line))
        throw Error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_csv_line(line);
    bool has_label = !header.empty() && header.back() == "label";
    std::size_t m = header.size() - (has_label ? 1 : 0);
    if (m == 0)
        throw Error(path + ": no feature columns");

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw Error(path + ": row " + std::to_string(n + 1) +
                        " has wrong field count");
        for (std::size_t v = 0; v < m; ++v)
            values.push_back(std::stod(fields[v]));
        if (has_label) labels.push_back(std::stoi(fields[m]));
        ++n;
    }
    if (n == 0)
        throw Error(path + ": no data rows");

    LoadedCsv out{make_dataset(n, m, std::move(values)), std::nullopt};
    if (has_label) {
        int k = *std::max_element(labels.begin(), labels.end()) + 1;
        Partition part{std::move(labels), k};
        validate_partition(part, n);
        out.labels = std::move(part);
    }
    return out;
}

void write_dataset_csv(const std::string& path, const Dataset& data,
                       const Partition* labels) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    for (std::size_t v = 0; v < data.m; ++v)
        out << (v ? "," : "") << "f" << v;
    if (labels) out << ",label";
    out << "\n";
    for (std::size_t i = 0; i < data.n; ++i) {
        for (std::size_t v = 0; v < data.m; ++v)
            out << (v ? "," : "") << fmt_double(data.at(i, v));
        if (labels) out << "," << labels->labels[i];
        out << "\n";
    }
}

void write_sidecar_json(const std::string& path, const Dataset& data,
                        const GenConfig* cfg) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json kinds = nlohmann::ordered_json::array();
    for (FeatureKind k : data.feature_kinds) {
        switch (k) {
            case FeatureKind::informative: kinds.push_back("informative"); break;
            case FeatureKind::noise: kinds.push_back("noise"); break;
            case FeatureKind::unknown: kinds.push_back("unknown"); break;
        }
    }
    j["feature_kinds"] = kinds;
    if (cfg) {
        j["generation"] = {{"n", cfg->n},
                           {"m", cfg->m},
                           {"k", cfg->k},
                           {"sigma", cfg->sigma},
                           {"noise_features", cfg->noise_features},
                           {"seed", cfg->seed.value}};
    }
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_weights_json(const std::string& path, const FeatureWeights& w) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << nlohmann::json(w.alpha).dump() << "\n";
}

std::vector<GenConfig> read_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_array())
        throw Error(path + ": expected a JSON array of configs");
    std::vector<GenConfig> configs;
    for (const auto& e : j) {
        GenConfig cfg;
        cfg.n = e.at("n").get<std::size_t>();
        cfg.m = e.at("m").get<std::size_t>();
        cfg.k = e.at("k").get<std::size_t>();
        cfg.sigma = e.at("sigma").get<double>();
        cfg.noise_features = e.value("noise", std::size_t{0});
        cfg.seed.value = e.value("seed", std::uint64_t{0});
        configs.push_back(cfg);
    }
    return configs;
}

void write_pca_csv(const std::string& path, const Dataset& proj,
                   const Partition* truth, const Partition* predicted) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    for (std::size_t d = 0; d < proj.m; ++d)
        out << (d ? "," : "") << "component" << d + 1;
    if (truth) out << ",true_label";
    if (predicted) out << ",predicted_label";
    out << "\n";
    for (std::size_t i = 0; i < proj.n; ++i) {
        for (std::size_t d = 0; d < proj.m; ++d)
            out << (d ? "," : "") << fmt_double(proj.at(i, d));
        if (truth) out << "," << truth->labels[i];
        if (predicted) out << "," << predicted->labels[i];
        out << "\n";
    }
}

}  // namespace cvi
