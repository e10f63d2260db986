// mlcon: candidate-list TSP heuristic pipeline driver.
// Subcommands: generate (training data), train (classifier zoo),
// solve (one instance), benchmark (gap report over an instance set).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mlc/constructive.hpp"
#include "mlc/dataset.hpp"
#include "mlc/evaluation.hpp"
#include "mlc/exact.hpp"
#include "mlc/models.hpp"
#include "mlc/rng.hpp"
#include "mlc/tsplib.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Fallback phase-1 acceptance rates when no trained baseline model is given:
// empirical per-rank positive rates of the training distribution, measured
// over 200 generated instances (n in [100, 300], pseudo oracle, k = 5).
constexpr double kDefaultRate1 = 0.84;
constexpr double kDefaultRate2 = 0.71;
constexpr double kDefaultUnderSampleRatio = 0.5;

void write_manifest(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
    out << j.dump(2) << "\n";
}

struct LoadedModels {
    std::unique_ptr<mlc::Classifier> rank1;
    std::unique_ptr<mlc::Classifier> rank2;
};

LoadedModels load_policy_models(const std::string& models_dir, const std::string& stem) {
    LoadedModels m;
    fs::path dir(models_dir);
    m.rank1 = mlc::load_model_file((dir / (stem + "_rank1.model")).string());
    m.rank2 = mlc::load_model_file((dir / (stem + "_rank2.model")).string());
    return m;
}

// Maps a policy token (without the +ls suffix) to the model file stem.
std::string policy_model_stem(const std::string& policy) {
    if (policy == "logistic") return "linear_us";
    if (policy == "svm") return "svm";
    if (policy == "ensemble") return "ensemble";
    throw CLI::ValidationError("--policy", "unknown model policy: " + policy);
}

struct PolicyBundle {
    mlc::Policy policy;
    LoadedModels models; // keeps classifier storage alive
};

PolicyBundle make_policy(const std::string& name, const std::string& models_dir,
                         double threshold1, double threshold2,
                         const std::unordered_set<mlc::Edge, mlc::EdgeHash>* opt_edges) {
    PolicyBundle b;
    if (name == "b") {
        double r1 = kDefaultRate1, r2 = kDefaultRate2;
        fs::path p1 = fs::path(models_dir) / "baseline_rank1.model";
        if (!models_dir.empty() && fs::exists(p1)) {
            auto m = load_policy_models(models_dir, "baseline");
            r1 = m.rank1->predict({});
            r2 = m.rank2->predict({});
        }
        b.policy = mlc::baseline_policy(r1, r2);
    } else if (name == "nn") {
        b.policy = mlc::nn_policy();
    } else if (name == "opt") {
        if (!opt_edges || opt_edges->empty())
            throw CLI::ValidationError("--policy", "opt policy needs a reference tour");
        b.policy = mlc::opt_policy(*opt_edges);
    } else {
        if (models_dir.empty())
            throw CLI::ValidationError("--models-dir",
                                       "model policies need --models-dir");
        b.models = load_policy_models(models_dir, policy_model_stem(name));
        b.policy = mlc::model_policy(b.models.rank1.get(), b.models.rank2.get(),
                                     threshold1, threshold2);
    }
    return b;
}

std::unique_ptr<mlc::Classifier> clone_model(const mlc::Classifier& model) {
    std::stringstream ss;
    mlc::save_model(ss, model);
    return mlc::load_model(ss);
}

int cmd_generate(const std::string& out_dir, const mlc::DatasetConfig& cfg,
                 const std::string& oracle_name) {
    mlc::Dataset data = mlc::generate_dataset(cfg);
    mlc::save_dataset(data, out_dir);

    json manifest = {
        {"command", "generate"},
        {"out", out_dir},
        {"count", cfg.count},
        {"n_min", cfg.n_min},
        {"n_max", cfg.n_max},
        {"k", cfg.k},
        {"seed", cfg.seed},
        {"oracle", oracle_name},
        {"threads", cfg.threads},
        {"examples", data.examples.size()},
        {"rank1_positive_rate", mlc::positive_rate(mlc::filter_rank(data, 1), 1)},
        {"rank2_positive_rate", mlc::positive_rate(mlc::filter_rank(data, 2), 2)},
    };
    write_manifest(fs::path(out_dir) / "manifest.json", manifest);

    std::cout << "generated " << data.examples.size() << " examples from " << cfg.count
              << " instances into " << out_dir << "\n"
              << "rank-1 positive rate: " << manifest["rank1_positive_rate"] << "\n"
              << "rank-2 positive rate: " << manifest["rank2_positive_rate"] << "\n";
    return 0;
}

int cmd_train(const std::string& dataset_dir, const std::string& models_dir,
              double ratio, std::uint64_t seed) {
    mlc::Dataset data = mlc::load_dataset(dataset_dir);
    fs::create_directories(models_dir);

    std::ostringstream csv;
    csv << "model,rank,split,accuracy,balanced_accuracy,precision,tpr,fpr\n";
    auto report = [&](const std::string& name, int rank, const std::string& split,
                      const mlc::ClassifierMetrics& m) {
        csv << name << "," << rank << "," << split << "," << m.accuracy << ","
            << m.balanced_accuracy << "," << m.precision << "," << m.tpr << ","
            << m.fpr << "\n";
    };

    json manifest = {{"command", "train"},     {"dataset", dataset_dir},
                     {"models_dir", models_dir}, {"ratio", ratio},
                     {"seed", seed},            {"k", data.k}};

    for (int rank : {1, 2}) {
        mlc::Dataset by_rank = mlc::filter_rank(data, rank);
        mlc::Dataset train = mlc::filter_split(by_rank, mlc::Split::train);
        if (train.examples.empty())
            throw std::runtime_error("no training examples for rank " +
                                     std::to_string(rank));
        mlc::Dataset train_us =
            mlc::under_sample(train, ratio, mlc::mix_seed(seed, 100 + rank));

        auto [x_raw, y_raw] = mlc::to_xy(train);
        auto [x_us, y_us] = mlc::to_xy(train_us);

        double rate = mlc::positive_rate(train, rank);
        auto baseline = mlc::make_baseline(rank, rate);
        auto linear = mlc::train_logistic(x_raw, y_raw, rank, {},
                                          mlc::mix_seed(seed, rank * 16 + 1));
        auto linear_us = mlc::train_logistic(x_us, y_us, rank, {},
                                             mlc::mix_seed(seed, rank * 16 + 2));
        auto svm = mlc::train_linear_svm(x_us, y_us, rank, {},
                                         mlc::mix_seed(seed, rank * 16 + 3));
        auto stumps = mlc::train_gb_stumps(x_us, y_us, rank, {},
                                           mlc::mix_seed(seed, rank * 16 + 4));

        std::vector<std::unique_ptr<mlc::Classifier>> members;
        members.push_back(clone_model(*linear_us));
        members.push_back(clone_model(*svm));
        members.push_back(clone_model(*stumps));
        auto ensemble = mlc::make_ensemble(std::move(members));

        struct Named {
            const char* name;
            const mlc::Classifier* model;
        };
        for (const auto& [name, model] :
             {Named{"baseline", baseline.get()}, Named{"linear", linear.get()},
              Named{"linear_us", linear_us.get()}, Named{"svm", svm.get()},
              Named{"stumps", stumps.get()}, Named{"ensemble", ensemble.get()}}) {
            for (mlc::Split split :
                 {mlc::Split::train, mlc::Split::validation, mlc::Split::test}) {
                mlc::Dataset part = mlc::filter_split(by_rank, split);
                if (part.examples.empty()) continue;
                auto [x, y] = mlc::to_xy(part);
                report(name, rank, mlc::split_name(split),
                       mlc::evaluate_metrics(*model, x, y));
            }
            std::string file = std::string(name) + "_rank" + std::to_string(rank) +
                               ".model";
            mlc::save_model_file((fs::path(models_dir) / file).string(), *model);
        }
        manifest["rank" + std::to_string(rank) + "_positive_rate"] = rate;
        manifest["rank" + std::to_string(rank) + "_train_examples"] =
            train.examples.size();
        manifest["rank" + std::to_string(rank) + "_undersampled_examples"] =
            train_us.examples.size();
    }

    std::ofstream metrics_file(fs::path(models_dir) / "metrics.csv");
    metrics_file << csv.str();
    write_manifest(fs::path(models_dir) / "manifest.json", manifest);
    std::cout << csv.str();
    return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& policy_name,
              const std::string& cl_name, int k, double threshold1, double threshold2,
              bool phase3, int max_passes, std::uint64_t seed,
              const std::string& models_dir, const std::string& opt_tour_path,
              const std::string& out_path) {
    mlc::Instance inst = mlc::load_tsplib_file(instance_path);

    std::unordered_set<mlc::Edge, mlc::EdgeHash> opt_edges;
    if (!opt_tour_path.empty()) {
        mlc::Tour ref = mlc::load_tour_file(opt_tour_path, inst.size());
        auto edges = mlc::tour_edges(ref);
        opt_edges = {edges.begin(), edges.end()};
    }

    PolicyBundle bundle =
        make_policy(policy_name, models_dir, threshold1, threshold2, &opt_edges);

    mlc::SolveConfig cfg;
    cfg.cl_kind = mlc::candidate_kind_from_name(cl_name);
    cfg.k = k;
    cfg.policy = bundle.policy;
    cfg.phase3 = phase3;
    cfg.max_passes = max_passes;
    cfg.seed = seed;

    mlc::SolveResult res = mlc::solve(inst, cfg);

    std::cout << "instance: " << inst.name() << " (n=" << inst.size() << ", "
              << mlc::metric_name(inst.metric()) << ")\n"
              << "policy: " << policy_name << (phase3 ? "+ls" : "") << "\n"
              << "length: " << std::fixed << res.length << "\n"
              << "fixed edges: " << res.fixed_edge_count << "\n"
              << "timings ms: candidates " << res.candidates_ms << ", phase1 "
              << res.phase1_ms << ", phase2 " << res.phase2_ms << ", phase3 "
              << res.phase3_ms << "\n";

    if (!out_path.empty()) {
        mlc::save_tour_file(res.tour, inst.name(), out_path);
        json manifest = {{"command", "solve"},
                         {"instance", instance_path},
                         {"policy", policy_name},
                         {"cl", cl_name},
                         {"k", k},
                         {"threshold1", threshold1},
                         {"threshold2", threshold2},
                         {"phase3", phase3},
                         {"max_passes", max_passes},
                         {"seed", seed},
                         {"models_dir", models_dir},
                         {"opt_tour", opt_tour_path},
                         {"out", out_path},
                         {"length", res.length},
                         {"fixed_edges", res.fixed_edge_count}};
        write_manifest(fs::path(out_path).string() + ".manifest.json", manifest);
    }
    return 0;
}

struct BenchmarkArgs {
    std::string instances_dir;
    std::string optima_path;
    std::string policies = "nn,nn+ls";
    std::string cl_name = "knn";
    int k = 5;
    double threshold1 = 0.30;
    double threshold2 = 0.65;
    int max_passes = 50;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string models_dir;
    std::string out_dir;
};

int cmd_benchmark(const BenchmarkArgs& args) {
    mlc::OptimaTable optima = mlc::OptimaTable::load(args.optima_path);

    std::vector<std::string> policy_tokens;
    {
        std::stringstream ss(args.policies);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) policy_tokens.push_back(tok);
    }
    if (policy_tokens.empty())
        throw CLI::ValidationError("--policies", "no policies given");

    bool needs_opt = false;
    for (const auto& tok : policy_tokens)
        if (tok.rfind("opt", 0) == 0) needs_opt = true;

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(args.instances_dir))
        if (entry.path().extension() == ".tsp") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw std::runtime_error("no .tsp files in " + args.instances_dir);

    std::vector<mlc::BenchmarkInstance> instances;
    for (const auto& file : files) {
        mlc::Instance inst = mlc::load_tsplib_file(file.string());
        auto opt = optima.lookup(inst.name());
        if (!opt) {
            std::cerr << "warning: no optimum for " << inst.name() << ", skipped\n";
            continue;
        }
        std::unordered_set<mlc::Edge, mlc::EdgeHash> reference;
        fs::path tour_path = file;
        tour_path.replace_extension(".opt.tour");
        if (fs::exists(tour_path)) {
            mlc::Tour ref = mlc::load_tour_file(tour_path.string(), inst.size());
            auto edges = mlc::tour_edges(ref);
            reference = {edges.begin(), edges.end()};
        } else if (needs_opt) {
            std::cerr << "warning: no reference tour for " << inst.name()
                      << ", skipped (opt policy requested)\n";
            continue;
        }
        instances.push_back({std::move(inst), *opt, std::move(reference)});
    }
    if (instances.empty()) throw std::runtime_error("no usable instances");

    // Keep every task's classifiers alive for the duration of the run.
    std::vector<std::unique_ptr<PolicyBundle>> bundles;
    std::vector<mlc::BenchmarkTask> tasks;
    for (const auto& tok : policy_tokens) {
        std::string base = tok;
        bool ls = false;
        if (base.size() > 3 && base.substr(base.size() - 3) == "+ls") {
            ls = true;
            base = base.substr(0, base.size() - 3);
        }
        auto bundle = std::make_unique<PolicyBundle>();
        if (base == "opt") {
            // Placeholder edge set; run_benchmark swaps in per-instance edges.
            bundle->policy = mlc::opt_policy({mlc::Edge(0, 1)});
        } else {
            *bundle = make_policy(base, args.models_dir, args.threshold1,
                                  args.threshold2, nullptr);
        }
        mlc::BenchmarkTask task;
        task.name = base + (ls ? "+ls" : "");
        task.config.cl_kind = mlc::candidate_kind_from_name(args.cl_name);
        task.config.k = args.k;
        task.config.policy = bundle->policy;
        task.config.phase3 = ls;
        task.config.max_passes = args.max_passes;
        tasks.push_back(std::move(task));
        bundles.push_back(std::move(bundle));
    }

    mlc::BenchmarkOptions opts;
    opts.seed = args.seed;
    opts.threads = args.threads;
    mlc::GapReport report = mlc::run_benchmark(instances, tasks, opts);

    std::cout << mlc::report_summary_markdown(report);

    if (!args.out_dir.empty()) {
        fs::create_directories(args.out_dir);
        fs::path dir(args.out_dir);
        std::ofstream(dir / "rows.csv") << mlc::report_rows_csv(report);
        std::ofstream(dir / "summary.csv") << mlc::report_summary_csv(report);
        std::ofstream(dir / "summary.md") << mlc::report_summary_markdown(report);
        json manifest = {{"command", "benchmark"},
                         {"instances_dir", args.instances_dir},
                         {"optima_table", args.optima_path},
                         {"policies", args.policies},
                         {"cl", args.cl_name},
                         {"k", args.k},
                         {"threshold1", args.threshold1},
                         {"threshold2", args.threshold2},
                         {"max_passes", args.max_passes},
                         {"seed", args.seed},
                         {"threads", args.threads},
                         {"models_dir", args.models_dir},
                         {"instances", instances.size()},
                         {"out", args.out_dir}};
        write_manifest(dir / "manifest.json", manifest);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"candidate-list TSP constructive heuristic pipeline"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a training dataset");
    std::string gen_out;
    mlc::DatasetConfig gen_cfg;
    std::string gen_oracle = "pseudo";
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--count", gen_cfg.count, "instance count");
    gen->add_option("--n-min", gen_cfg.n_min, "smallest instance size");
    gen->add_option("--n-max", gen_cfg.n_max, "largest instance size");
    gen->add_option("--k", gen_cfg.k, "candidate list size");
    gen->add_option("--seed", gen_cfg.seed, "master seed");
    gen->add_option("--oracle", gen_oracle, "label oracle: pseudo|exact")
        ->check(CLI::IsMember({"pseudo", "exact"}));
    gen->add_option("--threads", gen_cfg.threads, "worker threads (0 = auto)");
    gen->set_config("--config");

    // train
    auto* train = app.add_subcommand("train", "train the classifier zoo");
    std::string train_dataset, train_models;
    double train_ratio = kDefaultUnderSampleRatio;
    std::uint64_t train_seed = 1;
    train->add_option("--dataset", train_dataset, "dataset directory")->required();
    train->add_option("--models-dir", train_models, "output model directory")
        ->required();
    train->add_option("--ratio", train_ratio, "under-sampling majority:minority ratio");
    train->add_option("--seed", train_seed, "training seed");
    train->set_config("--config");

    // solve
    auto* solve = app.add_subcommand("solve", "solve one TSPLIB instance");
    std::string sol_instance, sol_policy = "nn", sol_cl = "knn";
    std::string sol_models, sol_opt_tour, sol_out;
    int sol_k = 5, sol_passes = 50;
    double sol_t1 = 0.30, sol_t2 = 0.65;
    std::string sol_phase3 = "on";
    std::uint64_t sol_seed = 1;
    solve->add_option("--instance", sol_instance, "TSPLIB .tsp file")->required();
    solve->add_option("--policy", sol_policy, "b|nn|logistic|svm|ensemble|opt")
        ->check(CLI::IsMember({"b", "nn", "logistic", "svm", "ensemble", "opt"}));
    solve->add_option("--cl", sol_cl, "candidate lists: knn|delaunay")
        ->check(CLI::IsMember({"knn", "delaunay"}));
    solve->add_option("--k", sol_k, "candidate list size");
    solve->add_option("--threshold1", sol_t1, "rank-1 acceptance threshold");
    solve->add_option("--threshold2", sol_t2, "rank-2 acceptance threshold");
    solve->add_option("--phase3", sol_phase3, "2-opt phase: on|off")
        ->check(CLI::IsMember({"on", "off"}));
    solve->add_option("--max-passes", sol_passes, "2-opt sweep cap");
    solve->add_option("--seed", sol_seed, "solve seed");
    solve->add_option("--models-dir", sol_models, "directory of trained models");
    solve->add_option("--opt-tour", sol_opt_tour, "reference tour for the opt policy");
    solve->add_option("--out", sol_out, "output .tour path");
    solve->set_config("--config");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "gap report over an instance set");
    BenchmarkArgs ba;
    bench->add_option("--instances-dir", ba.instances_dir, "directory of .tsp files")
        ->required();
    bench->add_option("--optima-table", ba.optima_path, "name,optimum table")
        ->required();
    bench->add_option("--policies", ba.policies,
                      "comma list, e.g. b,nn,nn+ls,svm+ls,opt+ls");
    bench->add_option("--cl", ba.cl_name, "candidate lists: knn|delaunay")
        ->check(CLI::IsMember({"knn", "delaunay"}));
    bench->add_option("--k", ba.k, "candidate list size");
    bench->add_option("--threshold1", ba.threshold1, "rank-1 acceptance threshold");
    bench->add_option("--threshold2", ba.threshold2, "rank-2 acceptance threshold");
    bench->add_option("--max-passes", ba.max_passes, "2-opt sweep cap");
    bench->add_option("--seed", ba.seed, "benchmark seed");
    bench->add_option("--threads", ba.threads, "worker threads (0 = auto)");
    bench->add_option("--models-dir", ba.models_dir, "directory of trained models");
    bench->add_option("--out", ba.out_dir, "report output directory");
    bench->set_config("--config");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            gen_cfg.oracle = mlc::oracle_kind_from_name(gen_oracle);
            return cmd_generate(gen_out, gen_cfg, gen_oracle);
        }
        if (train->parsed()) return cmd_train(train_dataset, train_models, train_ratio,
                                              train_seed);
        if (solve->parsed())
            return cmd_solve(sol_instance, sol_policy, sol_cl, sol_k, sol_t1, sol_t2,
                             sol_phase3 == "on", sol_passes, sol_seed, sol_models,
                             sol_opt_tour, sol_out);
        if (bench->parsed()) return cmd_benchmark(ba);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
