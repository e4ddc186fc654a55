#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvi/experiment.hpp"
#include "cvi/fir.hpp"
#include "cvi/io.hpp"
#include "cvi/kmeans.hpp"
#include "cvi/validity.hpp"

namespace {

using nlohmann::ordered_json;

std::string sidecar_path(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".json");
    return p.string();
}

int cmd_generate(const cvi::GenConfig& cfg, const std::string& out) {
    cvi::LabelledDataset ds = cvi::generate_blobs(cfg);
    cvi::write_dataset_csv(out, ds.data, &ds.truth);
    cvi::write_sidecar_json(sidecar_path(out), ds.data, &cfg);
    return 0;
}

int cmd_cluster(const std::string& data_path, std::size_t k,
                std::uint64_t seed, bool fir) {
    cvi::LoadedCsv in = cvi::read_dataset_csv(data_path);
    cvi::ClusteringResult res =
        cvi::run_kmeanspp(in.data, k, cvi::RngSeed{seed});
    ordered_json j;
    j["k"] = k;
    j["seed"] = seed;
    j["wcss"] = res.wcss;
    j["iterations"] = res.iterations;
    j["labels"] = res.partition.labels;
    if (fir) {
        auto [rescaled, weights] = cvi::fir_rescale(in.data, res.partition, 2);
        j["fir_weights"] = weights.alpha;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_evaluate(const std::string& data_path, const std::string& labels_path,
                 const std::string& indices, bool fir) {
    cvi::LoadedCsv in = cvi::read_dataset_csv(data_path);
    cvi::LoadedCsv labelled = cvi::read_dataset_csv(labels_path);
    if (!labelled.labels)
        throw cvi::Error(labels_path + " has no label column");
    const cvi::Partition& part = *labelled.labels;

    bool all = indices == "all";
    auto wanted = [&](const std::string& name) {
        return all || indices.find(name) != std::string::npos;
    };

    auto emit = [&](ordered_json& j, const cvi::Dataset& data,
                    const std::string& prefix) {
        if (wanted("wcss")) j[prefix + "WCSS"] = cvi::wcss(data, part).value;
        if (wanted("asw")) j[prefix + "ASW"] = cvi::asw(data, part).value;
        if (wanted("ch"))
            j[prefix + "CH"] = cvi::calinski_harabasz(data, part).value;
        if (wanted("db"))
            j[prefix + "DB"] = cvi::davies_bouldin(data, part).value;
    };

    ordered_json j;
    emit(j, in.data, "");
    if (fir) {
        auto [rescaled, weights] = cvi::fir_rescale(in.data, part, 2);
        emit(j, rescaled, "FIR+");
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_experiment(const std::string& config_path, const cvi::SweepOptions& opts,
                   const std::string& out_dir) {
    std::vector<cvi::GenConfig> configs = cvi::read_config_json(config_path);
    cvi::run_sweep(configs, opts, out_dir);
    return 0;
}

int cmd_report(const std::string& in_path, const std::string& format) {
    std::ifstream in(in_path);
    if (!in)
        throw cvi::Error("cannot open " + in_path);
    nlohmann::json j = nlohmann::json::parse(in);

    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    auto cell = [](const nlohmann::json& pair) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f/%.2f",
                      pair.at("mean").get<double>(),
                      pair.at("stddev").get<double>());
        return std::string(buf);
    };

    if (format == "csv") {
        std::cout << "config";
        for (const char* name : cvi::kIndexNames)
            std::cout << "," << name << ",FIR+" << name;
        std::cout << "\n";
        for (const auto& row : j) {
            std::cout << row.at("config").get<std::string>();
            for (const char* name : cvi::kIndexNames)
                std::cout << "," << cell(row.at(name)) << ","
                          << cell(row.at(std::string("FIR+") + name));
            std::cout << "\n";
        }
        return 0;
    }

    // table
    std::printf("%-24s", "config");
    for (const char* name : cvi::kIndexNames) {
        std::printf(" %12s %12s", name, (std::string("FIR+") + name).c_str());
    }
    std::printf("\n");
    for (const auto& row : j) {
        std::printf("%-24s", row.at("config").get<std::string>().c_str());
        for (const char* name : cvi::kIndexNames)
            std::printf(" %12s %12s", cell(row.at(name)).c_str(),
                        cell(row.at(std::string("FIR+") + name)).c_str());
        std::printf("\n");
    }
    return 0;
}

int cmd_pca(const std::string& data_path, std::size_t dims,
            const std::string& out) {
    cvi::LoadedCsv in = cvi::read_dataset_csv(data_path);
    cvi::Dataset proj = cvi::pca_project(in.data, dims);
    cvi::write_pca_csv(out, proj, in.labels ? &*in.labels : nullptr);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cluster validity toolkit: feature importance rescaling, "
                 "validity indices, and a synthetic-benchmark harness"};
    app.require_subcommand(1);

    // generate
    cvi::GenConfig gen_cfg;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Generate a Gaussian-blob dataset");
    generate->add_option("--n", gen_cfg.n, "points")->required();
    generate->add_option("--m", gen_cfg.m, "informative features")->required();
    generate->add_option("--k", gen_cfg.k, "clusters")->required();
    generate->add_option("--sigma", gen_cfg.sigma, "cluster standard deviation");
    generate->add_option("--noise", gen_cfg.noise_features, "noise feature count");
    generate->add_option("--seed", gen_cfg.seed.value, "RNG seed");
    generate->add_option("--out", gen_out, "output CSV path")->required();

    // cluster
    std::string cl_data;
    std::size_t cl_k = 2;
    std::uint64_t cl_seed = 0;
    bool cl_fir = false;
    auto* cluster = app.add_subcommand("cluster", "Run seeded k-means++ on a CSV");
    cluster->add_option("--data", cl_data)->required();
    cluster->add_option("--k", cl_k)->required();
    cluster->add_option("--seed", cl_seed);
    cluster->add_flag("--fir", cl_fir, "also report two-pass FIR weights");

    // evaluate
    std::string ev_data, ev_labels, ev_indices = "all";
    bool ev_fir = false;
    auto* evaluate = app.add_subcommand("evaluate", "Compute validity indices");
    evaluate->add_option("--data", ev_data)->required();
    evaluate->add_option("--labels-from", ev_labels, "CSV with a label column")
        ->required();
    evaluate->add_option("--indices", ev_indices, "all or subset: wcss,asw,ch,db");
    evaluate->add_flag("--fir", ev_fir, "also compute FIR variants");

    // experiment
    std::string ex_config, ex_out = "results", ex_corr = "pearson";
    cvi::SweepOptions ex_opts;
    auto* experiment = app.add_subcommand("experiment", "Run the full protocol");
    experiment->add_option("--config", ex_config, "JSON array of configs")->required();
    experiment->add_option("--runs", ex_opts.runs, "k-means++ runs per dataset");
    experiment->add_option("--datasets", ex_opts.datasets, "datasets per config");
    experiment->add_option("--jobs", ex_opts.jobs, "worker threads");
    experiment->add_option("--seed", ex_opts.master.value, "master seed");
    experiment->add_option("--corr", ex_corr)
        ->check(CLI::IsMember({"pearson", "spearman"}));
    experiment->add_option("--out", ex_out, "output directory");

    // report
    std::string rp_in, rp_format = "table";
    auto* report = app.add_subcommand("report", "Format an experiment summary");
    report->add_option("--in", rp_in, "summary.json from experiment")->required();
    report->add_option("--format", rp_format)
        ->check(CLI::IsMember({"csv", "json", "table"}));

    // pca
    std::string pc_data, pc_out;
    std::size_t pc_dims = 2;
    auto* pca = app.add_subcommand("pca", "Project a dataset onto principal components");
    pca->add_option("--data", pc_data)->required();
    pca->add_option("--dims", pc_dims);
    pca->add_option("--out", pc_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*generate) return cmd_generate(gen_cfg, gen_out);
        if (*cluster) return cmd_cluster(cl_data, cl_k, cl_seed, cl_fir);
        if (*evaluate) return cmd_evaluate(ev_data, ev_labels, ev_indices, ev_fir);
        if (*experiment) {
            ex_opts.corr = ex_corr == "spearman" ? cvi::CorrKind::spearman
                                                 : cvi::CorrKind::pearson;
            return cmd_experiment(ex_config, ex_opts, ex_out);
        }
        if (*report) return cmd_report(rp_in, rp_format);
        if (*pca) return cmd_pca(pc_data, pc_dims, pc_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
