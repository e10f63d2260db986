#include "mlc/evaluation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mlc/rng.hpp"

namespace mlc {

double compute_gap(double length, double optimum) {
    if (optimum <= 0.0) throw std::invalid_argument("optimum must be positive");
    return 100.0 * (length - optimum) / optimum;
}

GapReport run_benchmark(const std::vector<BenchmarkInstance>& instances,
                        const std::vector<BenchmarkTask>& tasks,
                        const BenchmarkOptions& options) {
    if (instances.empty() || tasks.empty())
        throw std::invalid_argument("benchmark needs instances and tasks");
    for (const auto& task : tasks)
        if (task.config.policy.kind == PolicyKind::opt)
            for (const auto& bi : instances)
                if (bi.reference_edges.empty())
                    throw std::invalid_argument(
                        "opt policy needs reference tours for every instance (missing: " +
                        bi.instance.name() + ")");

    const std::size_t grid = instances.size() * tasks.size();
    std::vector<BenchmarkRow> rows(grid);
    std::atomic<std::size_t> next{0};
    unsigned thread_count = options.threads > 0
                                ? static_cast<unsigned>(options.threads)
                                : std::max(1u, std::thread::hardware_concurrency());
    thread_count = std::min<std::size_t>(thread_count, grid);

    auto worker = [&]() {
        for (;;) {
            std::size_t cell = next.fetch_add(1);
            if (cell >= grid) return;
            std::size_t ii = cell / tasks.size();
            std::size_t ti = cell % tasks.size();
            const auto& bi = instances[ii];
            const auto& task = tasks[ti];

            SolveConfig cfg = task.config;
            cfg.seed = mix_seed(mix_seed(options.seed, ii), ti);
            if (cfg.policy.kind == PolicyKind::opt)
                cfg.policy.optimal_edges = bi.reference_edges;

            SolveResult res = solve(bi.instance, cfg);
            BenchmarkRow& row = rows[cell];
            row.instance = bi.instance.name();
            row.policy = task.name;
            row.length = res.length;
            row.optimum = bi.optimum;
            row.gap = compute_gap(res.length, bi.optimum);
            row.seconds = (res.candidates_ms + res.phase1_ms + res.phase2_ms +
                           res.phase3_ms) /
                          1000.0;
            row.fixed_edges = res.fixed_edge_count;
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    GapReport report;
    report.rows = std::move(rows);

    // Best = minimum length on that instance among this run's tasks.
    std::vector<double> best_len(instances.size(),
                                 std::numeric_limits<double>::infinity());
    for (std::size_t ii = 0; ii < instances.size(); ++ii)
        for (std::size_t ti = 0; ti < tasks.size(); ++ti)
            best_len[ii] =
                std::min(best_len[ii], report.rows[ii * tasks.size() + ti].length);

    report.aggregates.reserve(tasks.size());
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        PolicyAggregate agg;
        agg.policy = tasks[ti].name;
        double sum = 0;
        for (std::size_t ii = 0; ii < instances.size(); ++ii) {
            const auto& row = report.rows[ii * tasks.size() + ti];
            sum += row.gap;
            agg.total_seconds += row.seconds;
            if (row.length <= best_len[ii]) ++agg.best_count;
        }
        agg.avg_gap = sum / static_cast<double>(instances.size());
        double ss = 0;
        for (std::size_t ii = 0; ii < instances.size(); ++ii) {
            double diff = report.rows[ii * tasks.size() + ti].gap - agg.avg_gap;
            ss += diff * diff;
        }
        agg.std_gap = instances.size() > 1
                          ? std::sqrt(ss / static_cast<double>(instances.size() - 1))
                          : 0.0;
        report.aggregates.push_back(std::move(agg));
    }
    return report;
}

namespace {

std::string fmt(double v, int precision = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

} // namespace

std::string report_rows_csv(const GapReport& report) {
    std::ostringstream out;
    out << "instance,policy,length,optimum,gap_percent,seconds,fixed_edges\n";
    for (const auto& r : report.rows)
        out << r.instance << "," << r.policy << "," << fmt(r.length, 2) << ","
            << fmt(r.optimum, 2) << "," << fmt(r.gap) << "," << fmt(r.seconds) << ","
            << r.fixed_edges << "\n";
    return out.str();
}

std::string report_summary_csv(const GapReport& report) {
    std::ostringstream out;
    out << "policy,avg_gap,std_gap,best_count,total_seconds\n";
    for (const auto& a : report.aggregates)
        out << a.policy << "," << fmt(a.avg_gap) << "," << fmt(a.std_gap) << ","
            << a.best_count << "," << fmt(a.total_seconds) << "\n";
    return out.str();
}

std::string report_summary_markdown(const GapReport& report) {
    std::vector<std::array<std::string, 5>> cells;
    cells.push_back({"policy", "avg gap %", "std gap", "best", "time s"});
    for (const auto& a : report.aggregates)
        cells.push_back({a.policy, fmt(a.avg_gap, 2), fmt(a.std_gap, 2),
                         std::to_string(a.best_count), fmt(a.total_seconds, 2)});

    std::array<std::size_t, 5> width{};
    for (const auto& row : cells)
        for (int c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());

    std::ostringstream out;
    auto emit = [&](const std::array<std::string, 5>& row) {
        out << "|";
        for (int c = 0; c < 5; ++c) {
            out << " " << row[c];
            out << std::string(width[c] - row[c].size(), ' ') << " |";
        }
        out << "\n";
    };
    emit(cells[0]);
    out << "|";
    for (int c = 0; c < 5; ++c) out << std::string(width[c] + 2, '-') << "|";
    out << "\n";
    for (std::size_t r = 1; r < cells.size(); ++r) emit(cells[r]);
    return out.str();
}

} // namespace mlc
