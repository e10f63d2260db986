#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlc/constructive.hpp"
#include "mlc/instance.hpp"

namespace mlc {

// 100 * (length - optimum) / optimum; optimum must be positive.
double compute_gap(double length, double optimum);

struct BenchmarkInstance {
    Instance instance;
    double optimum = 0;
    // Edge set of the reference tour; required only by opt-policy tasks.
    std::unordered_set<Edge, EdgeHash> reference_edges;
};

struct BenchmarkTask {
    std::string name;   // row label, e.g. "NN+LS"
    SolveConfig config; // opt policies get reference_edges injected per instance
};

struct BenchmarkOptions {
    std::uint64_t seed = 1;
    int threads = 0; // 0 picks hardware concurrency
};

struct BenchmarkRow {
    std::string instance;
    std::string policy;
    double length = 0;
    double optimum = 0;
    double gap = 0;
    double seconds = 0;
    int fixed_edges = 0;
};

struct PolicyAggregate {
    std::string policy;
    double avg_gap = 0;
    double std_gap = 0; // sample standard deviation
    int best_count = 0; // ties credit every tied policy
    double total_seconds = 0;
};

struct GapReport {
    std::vector<BenchmarkRow> rows;
    std::vector<PolicyAggregate> aggregates;
};

// Runs every task on every instance (parallel over the grid, deterministic
// seeds and assembly) and aggregates per policy.
GapReport run_benchmark(const std::vector<BenchmarkInstance>& instances,
                        const std::vector<BenchmarkTask>& tasks,
                        const BenchmarkOptions& options);

std::string report_rows_csv(const GapReport& report);
std::string report_summary_csv(const GapReport& report);
std::string report_summary_markdown(const GapReport& report);

} // namespace mlc
