// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
// its measured numbers and wall time; the process exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "mlc/candidate_lists.hpp"
#include "mlc/constructive.hpp"
#include "mlc/dataset.hpp"
#include "mlc/delaunay.hpp"
#include "mlc/evaluation.hpp"
#include "mlc/exact.hpp"
#include "mlc/instance.hpp"
#include "mlc/models.hpp"
#include "mlc/rng.hpp"
#include "mlc/tsplib.hpp"

using namespace mlc;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const std::string& what, bool pass, const std::string& detail,
            double seconds, double budget_seconds) {
    bool in_budget = seconds <= budget_seconds;
    if (!pass || !in_budget) ++g_failures;
    std::printf("%s criterion %d: %s (%s; %.1fs of %.0fs budget)\n",
                pass && in_budget ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str(), seconds, budget_seconds);
    std::fflush(stdout);
}

template <typename F>
void run_criterion(int id, const std::string& what, double budget_seconds, F body) {
    auto t0 = Clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(id, what, pass, detail, secs, budget_seconds);
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double brute_force_optimum(const Instance& inst) {
    const int n = inst.size();
    std::vector<int> perm(n - 1);
    std::iota(perm.begin(), perm.end(), 1);
    double best = -1.0;
    std::vector<int> order(n);
    order[0] = 0;
    do {
        std::copy(perm.begin(), perm.end(), order.begin() + 1);
        double len = 0;
        for (int i = 0; i < n; ++i)
            len += inst.distance(order[i], order[(i + 1) % n]);
        if (best < 0 || len < best) best = len;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct BundledInstance {
    Instance instance;
    double optimum;
    Tour reference;
};

std::vector<BundledInstance> load_bundle() {
    std::vector<BundledInstance> out;
    fs::path dir(MLC_DATA_DIR);
    OptimaTable optima = OptimaTable::load((dir / "optima.csv").string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".tsp") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        Instance inst = load_tsplib_file(f.string());
        auto opt = optima.lookup(inst.name());
        if (!opt) continue;
        fs::path ref = f;
        ref.replace_extension(".opt.tour");
        Tour t = load_tour_file(ref.string(), inst.size());
        out.push_back({std::move(inst), *opt, std::move(t)});
    }
    return out;
}

double rel_err(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-8});
    return std::abs(a - b) / scale;
}

// ---------------------------------------------------------------------------

void criterion1() {
    run_criterion(1, "exact solver matches exhaustive search on 100 instances",
                  60.0, [](std::string& detail) {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            int n = 5 + trial % 6; // 5..10
            Instance inst = random_instance(n, 10000 + trial);
            double hk = held_karp(inst).length;
            double bf = brute_force_optimum(inst);
            worst = std::max(worst, std::abs(hk - bf));
            if (std::abs(hk - bf) > 1e-9) {
                detail = fmt("mismatch at trial %d: |%.12f - %.12f|", trial, hk, bf);
                return false;
            }
        }
        detail = fmt("100/100 matched, worst |diff| = %.2e", worst);
        return true;
    });
}

void criterion2() {
    run_criterion(2, "triangulations are Delaunay and contain all nearest-neighbor edges",
                  120.0, [](std::string& detail) {
        Rng rng(2024);
        for (int trial = 0; trial < 50; ++trial) {
            int n = 10 + rng.uniform_int(0, 490);
            Instance inst = random_instance(n, 20000 + trial);
            Triangulation tri = delaunay_triangulate(inst);

            for (const auto& t : tri.triangles) {
                const Point &a = inst.coord(t[0]), &b = inst.coord(t[1]),
                            &c = inst.coord(t[2]);
                double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) +
                                  c.x * (a.y - b.y));
                if (d == 0.0) {
                    detail = fmt("degenerate triangle in trial %d", trial);
                    return false;
                }
                double a2 = a.x * a.x + a.y * a.y, b2 = b.x * b.x + b.y * b.y,
                       c2 = c.x * c.x + c.y * c.y;
                double ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
                double uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
                double r2 = (a.x - ux) * (a.x - ux) + (a.y - uy) * (a.y - uy);
                for (int p = 0; p < n; ++p) {
                    if (p == t[0] || p == t[1] || p == t[2]) continue;
                    double dx = inst.coord(p).x - ux, dy = inst.coord(p).y - uy;
                    if (dx * dx + dy * dy < r2 * (1.0 - 1e-9)) {
                        detail = fmt("non-empty circumcircle, trial %d node %d", trial, p);
                        return false;
                    }
                }
            }
            for (int i = 0; i < n; ++i) {
                int nn = -1;
                for (int j = 0; j < n; ++j)
                    if (j != i && (nn < 0 || inst.distance(i, j) < inst.distance(i, nn)))
                        nn = j;
                const auto& adj = tri.adjacency[i];
                if (!std::binary_search(adj.begin(), adj.end(), nn)) {
                    detail = fmt("nearest neighbor edge missing, trial %d node %d", trial, i);
                    return false;
                }
            }
        }
        detail = "50/50 triangulations verified";
        return true;
    });
}

void criterion3() {
    run_criterion(3, "1000 randomized solves all yield valid tours", 300.0,
                  [](std::string& detail) {
        Rng rng(33);
        for (int trial = 0; trial < 1000; ++trial) {
            int n = 10 + rng.uniform_int(0, 190);
            Instance inst = random_instance(n, 30000 + trial);
            SolveConfig cfg;
            cfg.cl_kind = trial % 2 ? CandidateKind::delaunay : CandidateKind::knn;
            cfg.k = 2 + trial % 7;
            cfg.phase3 = trial % 3 != 0;
            cfg.seed = 77 + trial;
            switch (trial % 3) {
            case 0: cfg.policy = nn_policy(); break;
            case 1: cfg.policy = baseline_policy(0.9, 0.5); break;
            default: cfg.policy = opt_policy(pseudo_optimal(inst, trial).edge_set);
            }
            SolveResult r = solve(inst, cfg);
            if (!is_valid_tour(inst, r.tour)) {
                detail = fmt("invalid tour at trial %d (n=%d)", trial, n);
                return false;
            }
            if (std::abs(r.length - tour_length(inst, r.tour)) > 1e-6) {
                detail = fmt("length mismatch at trial %d", trial);
                return false;
            }
        }
        detail = "1000/1000 tours valid";
        return true;
    });
}

void criterion4() {
    run_criterion(4, "analytic gradients match finite differences in 100 checks",
                  60.0, [](std::string& detail) {
        Rng rng(44);
        double worst = 0.0;
        int checks = 0;
        auto record = [&](double fd, double an, const char* kind) {
            ++checks;
            // |.| floor: a derivative that is exactly zero leaves finite
            // differences with nothing but roundoff to report
            if (std::abs(fd - an) < 1e-8) return true;
            double e = rel_err(fd, an);
            worst = std::max(worst, e);
            if (e >= 1e-5) {
                detail = fmt("%s gradient off by %.2e (check %d)", kind, e, checks);
                return false;
            }
            return true;
        };

        for (int trial = 0; trial < 100; ++trial) {
            int dim = 2 + rng.uniform_int(0, 6);
            int rows = 10 + rng.uniform_int(0, 30);
            std::vector<FeatureVector> x(rows, FeatureVector(dim));
            std::vector<int> y(rows);
            for (int r = 0; r < rows; ++r) {
                y[r] = rng.bernoulli(0.5) ? 1 : 0;
                for (int j = 0; j < dim; ++j)
                    x[r][j] = rng.uniform() * 2.0 - 1.0 + (y[r] ? 0.3 : 0.0);
            }
            std::vector<double> w(dim);
            for (auto& v : w) v = rng.uniform() - 0.5;
            double b = rng.uniform() - 0.5;
            int pick = rng.uniform_int(0, dim - 1);
            const double h = 1e-6;

            if (trial % 3 == 0) {
                double l2 = rng.uniform() * 0.1;
                std::vector<double> gw;
                double gb;
                logistic_gradient(w, b, x, y, l2, gw, gb);
                auto wp = w, wm = w;
                wp[pick] += h;
                wm[pick] -= h;
                double fd = (logistic_loss(wp, b, x, y, l2) -
                             logistic_loss(wm, b, x, y, l2)) / (2 * h);
                if (!record(fd, gw[pick], "logistic")) return false;
                double fdb = (logistic_loss(w, b + h, x, y, l2) -
                              logistic_loss(w, b - h, x, y, l2)) / (2 * h);
                if (!record(fdb, gb, "logistic-bias")) return false;
            } else if (trial % 3 == 1) {
                double c = 0.5 + rng.uniform();
                std::vector<double> gw;
                double gb;
                hinge_subgradient(w, b, x, y, c, gw, gb);
                // piecewise-linear objective: a tighter step only lowers the
                // odds of straddling a hinge kink
                const double hh = 1e-7;
                auto wp = w, wm = w;
                wp[pick] += hh;
                wm[pick] -= hh;
                double fd = (hinge_loss(wp, b, x, y, c) -
                             hinge_loss(wm, b, x, y, c)) / (2 * hh);
                if (!record(fd, gw[pick], "hinge")) return false;
            } else {
                std::vector<double> s(rows);
                for (auto& v : s) v = rng.uniform() * 4.0 - 2.0;
                std::vector<double> g;
                logloss_score_gradient(s, y, g);
                int r = rng.uniform_int(0, rows - 1);
                auto sp = s, sm = s;
                sp[r] += h;
                sm[r] -= h;
                double fd = (logloss_from_scores(sp, y) -
                             logloss_from_scores(sm, y)) / (2 * h);
                if (!record(fd, g[r], "calibration")) return false;
            }
        }
        detail = fmt("%d checks, worst relative error %.2e", checks, worst);
        return true;
    });
}

void criterion5() {
    run_criterion(5, "fixing true optimal edges leaves a positive completion gap "
                     "that local search only shrinks",
                  120.0, [](std::string& detail) {
        double sum_opt = 0.0, sum_opt_ls = 0.0;
        const int trials = 200;
        for (int trial = 0; trial < trials; ++trial) {
            int n = 10 + trial % 3; // 10..12
            Instance inst = random_instance(n, 50000 + trial);
            OptimalResult exact = held_karp(inst);
            SolveConfig cfg;
            cfg.policy = opt_policy(exact.edge_set);
            cfg.phase3 = false;
            SolveResult plain = solve(inst, cfg);
            cfg.phase3 = true;
            SolveResult polished = solve(inst, cfg);
            sum_opt += compute_gap(plain.length, exact.length);
            sum_opt_ls += compute_gap(polished.length, exact.length);
        }
        double mean_opt = sum_opt / trials, mean_ls = sum_opt_ls / trials;
        detail = fmt("mean gap OPT %.3f%%, OPT+LS %.3f%%", mean_opt, mean_ls);
        return mean_opt > 0.0 && mean_ls <= mean_opt;
    });
}

void criterion6() {
    run_criterion(6, "local search never hurts on any bundled instance", 600.0,
                  [](std::string& detail) {
        auto bundle = load_bundle();
        if (bundle.empty()) {
            detail = "no bundled instances found";
            return false;
        }
        double improvement = 0.0;
        for (const auto& b : bundle) {
            for (int policy = 0; policy < 2; ++policy) {
                SolveConfig cfg;
                if (policy == 0) {
                    cfg.policy = nn_policy();
                } else {
                    std::unordered_set<Edge, EdgeHash> edges;
                    for (const Edge& e : tour_edges(b.reference)) edges.insert(e);
                    cfg.policy = opt_policy(std::move(edges));
                }
                cfg.phase3 = false;
                double plain = solve(b.instance, cfg).length;
                cfg.phase3 = true;
                double polished = solve(b.instance, cfg).length;
                if (polished > plain + 1e-9) {
                    detail = fmt("regression on %s policy %d: %.0f -> %.0f",
                                 b.instance.name().c_str(), policy, plain, polished);
                    return false;
                }
                improvement += compute_gap(plain, b.optimum) -
                               compute_gap(polished, b.optimum);
            }
        }
        detail = fmt("%zu instances, aggregate gap improvement %.2f points",
                     bundle.size(), improvement);
        return improvement > 0.0;
    });
}

void criterion7() {
    run_criterion(7, "nearest-neighbor-rule gap sits in the expected band", 600.0,
                  [](std::string& detail) {
        auto bundle = load_bundle();
        double sum = 0.0;
        int count = 0;
        for (const auto& b : bundle) {
            if (b.instance.metric() != Metric::euc2d) continue;
            if (b.instance.size() < 100 || b.instance.size() > 1748) continue;
            SolveConfig cfg;
            cfg.policy = nn_policy();
            cfg.phase3 = false;
            sum += compute_gap(solve(b.instance, cfg).length, b.optimum);
            ++count;
        }
        if (count == 0) {
            detail = "no eligible bundled instances";
            return false;
        }
        double avg = sum / count;
        detail = fmt("avg gap %.2f%% over %d instances (band [6, 12])", avg, count);
        return avg >= 6.0 && avg <= 12.0;
    });
}

void criterion8() {
    run_criterion(8, "learned pipeline: conservative rank-1 classifier and "
                     "competitive solve gap",
                  1800.0, [](std::string& detail) {
        DatasetConfig dcfg;
        dcfg.count = 500;
        dcfg.n_min = 100;
        dcfg.n_max = 300;
        dcfg.k = 5;
        dcfg.seed = 8;
        Dataset data = generate_dataset(dcfg);

        Dataset r1 = filter_rank(data, 1);
        Dataset r2 = filter_rank(data, 2);
        Dataset train1 = under_sample(filter_split(r1, Split::train), 0.5,
                                      mix_seed(8, 101));
        Dataset train2 = under_sample(filter_split(r2, Split::train), 0.5,
                                      mix_seed(8, 102));
        auto [x1, y1] = to_xy(train1);
        auto [x2, y2] = to_xy(train2);
        auto svm1 = train_linear_svm(x1, y1, 1, {}, mix_seed(8, 19));
        auto svm2 = train_linear_svm(x2, y2, 2, {}, mix_seed(8, 35));

        auto [tx, ty] = to_xy(filter_split(r1, Split::test));
        ClassifierMetrics m = evaluate_metrics(*svm1, tx, ty);
        if (m.precision < 0.85 || m.fpr > 0.20) {
            detail = fmt("rank-1 test precision %.3f (need >= 0.85), fpr %.3f "
                         "(need <= 0.20)", m.precision, m.fpr);
            return false;
        }

        auto bundle = load_bundle();
        if (bundle.empty()) {
            detail = "no bundled instances found";
            return false;
        }
        double svm_sum = 0.0, nn_sum = 0.0;
        for (const auto& b : bundle) {
            SolveConfig cfg;
            cfg.k = 5;
            cfg.phase3 = false;
            cfg.policy = model_policy(svm1.get(), svm2.get());
            svm_sum += compute_gap(solve(b.instance, cfg).length, b.optimum);
            cfg.policy = nn_policy();
            nn_sum += compute_gap(solve(b.instance, cfg).length, b.optimum);
        }
        double svm_avg = svm_sum / bundle.size(), nn_avg = nn_sum / bundle.size();
        detail = fmt("precision %.3f, fpr %.3f, avg gap svm %.2f%% vs nn %.2f%%",
                     m.precision, m.fpr, svm_avg, nn_avg);
        return svm_avg <= nn_avg + 1.0;
    });
}

void criterion9() {
    run_criterion(9, "balanced accuracy equals (TPR + 1 - FPR) / 2 exactly", 60.0,
                  [](std::string& detail) {
        Rng rng(99);
        std::vector<FeatureVector> x;
        std::vector<int> y;
        for (int i = 0; i < 500; ++i) {
            x.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
            y.push_back(rng.bernoulli(0.4) ? 1 : 0);
        }
        auto model = train_logistic(x, y, 1, {}, 3);
        int checked = 0;
        for (double thr = 0.05; thr < 1.0; thr += 0.05) {
            ClassifierMetrics m = evaluate_metrics(*model, x, y, thr);
            if (m.balanced_accuracy != (m.tpr + 1.0 - m.fpr) / 2.0) {
                detail = fmt("identity broken at threshold %.2f", thr);
                return false;
            }
            ++checked;
        }
        // degenerate single-class truth vectors follow the same identity
        std::vector<int> all_pos(y.size(), 1), all_neg(y.size(), 0);
        for (const auto* labels : {&all_pos, &all_neg}) {
            ClassifierMetrics m = evaluate_metrics(*model, x, *labels);
            if (m.balanced_accuracy != (m.tpr + 1.0 - m.fpr) / 2.0) {
                detail = "identity broken on single-class labels";
                return false;
            }
            ++checked;
        }
        detail = fmt("identity exact across %d evaluations", checked);
        return true;
    });
}

} // namespace

int main() {
    std::printf("acceptance checks (data dir: %s)\n", MLC_DATA_DIR);
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
