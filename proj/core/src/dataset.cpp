#include "mlc/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mlc/candidate_lists.hpp"
#include "mlc/errors.hpp"
#include "mlc/exact.hpp"
#include "mlc/partial_solution.hpp"
#include "mlc/rng.hpp"

namespace mlc {

std::string split_name(Split split) {
    switch (split) {
        case Split::train: return "train";
        case Split::validation: return "validation";
        case Split::test: return "test";
    }
    throw std::invalid_argument("unknown split");
}

std::string oracle_kind_name(OracleKind kind) {
    return kind == OracleKind::exact ? "exact" : "pseudo";
}

OracleKind oracle_kind_from_name(const std::string& name) {
    if (name == "exact") return OracleKind::exact;
    if (name == "pseudo") return OracleKind::pseudo;
    throw std::invalid_argument("unknown oracle kind: " + name);
}

namespace {

Split split_for_index(int idx, int count) {
    if (idx * 10 < count * 8) return Split::train;
    if (idx * 10 < count * 9) return Split::validation;
    return Split::test;
}

std::vector<TrainingExample> examples_for_instance(const Instance& inst,
                                                   const DatasetConfig& cfg,
                                                   int instance_id, Split split,
                                                   std::uint64_t oracle_seed) {
    OptimalResult opt = cfg.oracle == OracleKind::exact
                            ? held_karp(inst)
                            : pseudo_optimal(inst, oracle_seed);

    CandidateLists cl = knn_candidate_lists(inst, cfg.k);
    PromisingList lp = build_promising_list(inst, cl);

    std::vector<TrainingExample> out;
    out.reserve(lp.entries.size());
    PartialSolution partial(inst.size());
    for (const auto& entry : lp.entries) {
        if (!partial.feasible(entry.edge)) continue;
        const int label = opt.edge_set.count(entry.edge) ? 1 : 0;
        TrainingExample ex;
        ex.features = build_features(inst, cl, partial, entry.owner);
        ex.label = label;
        ex.rank = entry.rank;
        ex.instance_id = instance_id;
        ex.owner = entry.owner;
        ex.split = split;
        out.push_back(std::move(ex));
        if (label == 1) partial.insert(entry.edge, true);
    }
    return out;
}

} // namespace

Dataset generate_dataset(const DatasetConfig& cfg) {
    if (cfg.count < 1) throw std::invalid_argument("instance count must be positive");
    if (cfg.n_min < 3 || cfg.n_max < cfg.n_min)
        throw std::invalid_argument("bad instance size range");
    if (cfg.oracle == OracleKind::exact && cfg.n_max > 20)
        throw std::invalid_argument("exact oracle is limited to 20 nodes");

    std::vector<std::vector<TrainingExample>> per_instance(cfg.count);
    std::atomic<int> next{0};
    unsigned thread_count = cfg.threads > 0
                                ? static_cast<unsigned>(cfg.threads)
                                : std::max(1u, std::thread::hardware_concurrency());
    thread_count = std::min<unsigned>(thread_count, cfg.count);

    auto worker = [&]() {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= cfg.count) return;
            Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(idx)));
            int n = rng.uniform_int(cfg.n_min, cfg.n_max);
            std::uint64_t coord_seed = rng.next();
            std::uint64_t oracle_seed = rng.next();
            try {
                Instance inst = random_instance(n, coord_seed);
                per_instance[idx] = examples_for_instance(
                    inst, cfg, idx, split_for_index(idx, cfg.count), oracle_seed);
            } catch (const std::exception& e) {
                std::cerr << "warning: skipping instance " << idx << ": " << e.what()
                          << "\n";
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    Dataset data;
    data.k = cfg.k;
    for (auto& chunk : per_instance)
        for (auto& ex : chunk) data.examples.push_back(std::move(ex));
    return data;
}

Dataset under_sample(const Dataset& data, double ratio, std::uint64_t seed) {
    if (ratio <= 0.0) throw std::invalid_argument("under-sampling ratio must be positive");
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < data.examples.size(); ++i)
        (data.examples[i].label == 1 ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty())
        throw DegenerateDataError("under-sampling needs both classes");

    auto& majority = pos.size() >= neg.size() ? pos : neg;
    const std::size_t minority_count = std::min(pos.size(), neg.size());
    const auto target =
        static_cast<std::size_t>(ratio * static_cast<double>(minority_count));
    if (majority.size() <= target) return data;

    Rng rng(seed);
    rng.shuffle(majority);
    majority.resize(target);

    std::vector<std::size_t> keep;
    keep.reserve(pos.size() + neg.size());
    keep.insert(keep.end(), pos.begin(), pos.end());
    keep.insert(keep.end(), neg.begin(), neg.end());
    std::sort(keep.begin(), keep.end());

    Dataset out;
    out.k = data.k;
    out.examples.reserve(keep.size());
    for (std::size_t i : keep) out.examples.push_back(data.examples[i]);
    return out;
}

Dataset filter_split(const Dataset& data, Split split) {
    Dataset out;
    out.k = data.k;
    for (const auto& ex : data.examples)
        if (ex.split == split) out.examples.push_back(ex);
    return out;
}

Dataset filter_rank(const Dataset& data, int rank) {
    Dataset out;
    out.k = data.k;
    for (const auto& ex : data.examples)
        if (ex.rank == rank) out.examples.push_back(ex);
    return out;
}

std::pair<std::vector<FeatureVector>, std::vector<int>> to_xy(const Dataset& data) {
    std::vector<FeatureVector> x;
    std::vector<int> y;
    x.reserve(data.examples.size());
    y.reserve(data.examples.size());
    for (const auto& ex : data.examples) {
        x.push_back(ex.features);
        y.push_back(ex.label);
    }
    return {std::move(x), std::move(y)};
}

double positive_rate(const Dataset& data, int rank) {
    long long total = 0, positive = 0;
    for (const auto& ex : data.examples) {
        if (ex.rank != rank) continue;
        ++total;
        positive += ex.label;
    }
    return total > 0 ? static_cast<double>(positive) / static_cast<double>(total) : 0.0;
}

void save_dataset(const Dataset& data, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const int dim = data.examples.empty() ? feature_dim(data.k)
                                          : static_cast<int>(data.examples[0].features.size());
    for (Split split : {Split::train, Split::validation, Split::test}) {
        fs::path path = fs::path(dir) / (split_name(split) + ".csv");
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write dataset file: " + path.string());
        out << "# mlc-dataset v1 k=" << data.k << " dim=" << dim
            << " split=" << split_name(split) << "\n";
        char buf[32];
        for (const auto& ex : data.examples) {
            if (ex.split != split) continue;
            out << ex.label << "," << ex.rank;
            for (double v : ex.features) {
                std::snprintf(buf, sizeof buf, "%.9g", v);
                out << "," << buf;
            }
            out << "\n";
        }
    }
}

namespace {

void load_split_file(const std::string& path, Split split, Dataset& data) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read dataset file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty dataset file: " + path, 1);
    int k = 0, dim = 0;
    char split_buf[32] = {0};
    if (std::sscanf(header.c_str(), "# mlc-dataset v1 k=%d dim=%d split=%31s", &k, &dim,
                    split_buf) != 3)
        throw ParseError("bad dataset header: " + header, 1);
    if (data.k == 0) data.k = k;
    if (data.k != k) throw ParseError("dataset splits disagree on k", 1);

    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        TrainingExample ex;
        ex.split = split;
        std::stringstream ss(line);
        std::string cell;
        if (!std::getline(ss, cell, ',')) throw ParseError("short dataset row", line_no);
        ex.label = std::stoi(cell);
        if (!std::getline(ss, cell, ',')) throw ParseError("short dataset row", line_no);
        ex.rank = std::stoi(cell);
        ex.features.reserve(dim);
        while (std::getline(ss, cell, ',')) ex.features.push_back(std::stod(cell));
        if (static_cast<int>(ex.features.size()) != dim)
            throw ParseError("dataset row has wrong dimension", line_no);
        data.examples.push_back(std::move(ex));
    }
}

} // namespace

Dataset load_dataset(const std::string& dir) {
    namespace fs = std::filesystem;
    Dataset data;
    for (Split split : {Split::train, Split::validation, Split::test}) {
        fs::path path = fs::path(dir) / (split_name(split) + ".csv");
        if (fs::exists(path)) load_split_file(path.string(), split, data);
    }
    if (data.examples.empty())
        throw std::runtime_error("no dataset files found in: " + dir);
    return data;
}

} // namespace mlc
