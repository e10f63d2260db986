#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mlc/features.hpp"

namespace mlc {

enum class Split { train, validation, test };
enum class OracleKind { exact, pseudo };

std::string split_name(Split split);
std::string oracle_kind_name(OracleKind kind);
OracleKind oracle_kind_from_name(const std::string& name);

struct TrainingExample {
    FeatureVector features;
    int label = 0; // 1 iff the edge lies on the (pseudo-)optimal tour
    int rank = 1;
    int instance_id = -1;
    int owner = -1;
    Split split = Split::train;
};

struct Dataset {
    std::vector<TrainingExample> examples;
    int k = 0;
};

struct DatasetConfig {
    int count = 500;
    int n_min = 100;
    int n_max = 300;
    int k = 5;
    std::uint64_t seed = 1;
    OracleKind oracle = OracleKind::pseudo;
    int threads = 0; // 0 picks hardware concurrency
};

// Teacher-forced generation: walk each instance's promising list keeping a
// partial solution of optimal edges only; every feasible entry becomes one
// example, and the edge is inserted iff its label is 1. Instances split
// 80/10/10 by index. Oracle failures skip the instance with a warning.
Dataset generate_dataset(const DatasetConfig& config);

// Randomly drops majority-class examples until majority:minority <= ratio.
Dataset under_sample(const Dataset& data, double ratio, std::uint64_t seed);

Dataset filter_split(const Dataset& data, Split split);
Dataset filter_rank(const Dataset& data, int rank);

std::pair<std::vector<FeatureVector>, std::vector<int>> to_xy(const Dataset& data);

// Share of label-1 examples of the given rank (0 when none exist).
double positive_rate(const Dataset& data, int rank);

// One CSV per split (train.csv, validation.csv, test.csv): a header naming
// the layout version, k and dimension, then label,rank,features per line.
void save_dataset(const Dataset& data, const std::string& dir);
Dataset load_dataset(const std::string& dir);

} // namespace mlc
