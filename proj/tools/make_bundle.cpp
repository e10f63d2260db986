// Regenerates the bundled benchmark instances (data/): uniform random EUC_2D
// point sets with reference tours from a long iterated local search
// (neighbor-list 2-opt + Or-opt with don't-look bits, double-bridge kicks).
// Deterministic: rerunning reproduces the committed files byte for byte.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mlc/instance.hpp"
#include "mlc/rng.hpp"
#include "mlc/tsplib.hpp"

namespace fs = std::filesystem;
using namespace mlc;

namespace {

constexpr int kNeighbors = 10;

class LocalSearch {
public:
    LocalSearch(const Instance& inst) : inst_(inst), n_(inst.size()) {
        nbr_.resize(n_);
        std::vector<std::pair<double, int>> cand(n_ - 1);
        for (int i = 0; i < n_; ++i) {
            cand.clear();
            for (int j = 0; j < n_; ++j)
                if (j != i) cand.emplace_back(inst_.distance(i, j), j);
            int k = std::min<int>(kNeighbors, n_ - 1);
            std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
            nbr_[i].reserve(k);
            for (int s = 0; s < k; ++s) nbr_[i].push_back(cand[s].second);
        }
    }

    double optimize(std::vector<int>& tour, const std::vector<int>& active_seed) {
        tour_ = &tour;
        pos_.assign(n_, 0);
        for (int p = 0; p < n_; ++p) pos_[tour[p]] = p;
        in_queue_.assign(n_, 0);
        queue_.clear();
        head_ = 0;
        for (int a : active_seed) wake(a);
        while (head_ < queue_.size()) {
            int a = queue_[head_++];
            in_queue_[a] = 0;
            if (improve_node(a)) wake(a);
        }
        double len = 0;
        for (int p = 0; p < n_; ++p)
            len += inst_.distance(tour[p], tour[(p + 1) % n_]);
        return len;
    }

private:
    void wake(int a) {
        if (in_queue_[a]) return;
        in_queue_[a] = 1;
        queue_.push_back(a);
    }

    int succ(int a) const { return (*tour_)[(pos_[a] + 1) % n_]; }
    int pred(int a) const { return (*tour_)[(pos_[a] + n_ - 1) % n_]; }

    void do_reverse(int i, int j) { // reverse tour positions i..j inclusive
        auto& t = *tour_;
        while (i < j) {
            std::swap(t[i], t[j]);
            pos_[t[i]] = i;
            pos_[t[j]] = j;
            ++i;
            --j;
        }
    }

    // 2-opt: remove (a, succ a) and (c, succ c), reconnect crossing.
    bool two_opt_from(int a) {
        for (int dir = 0; dir < 2; ++dir) {
            int b = dir == 0 ? succ(a) : pred(a);
            double d_ab = inst_.distance(a, b);
            for (int c : nbr_[a]) {
                double d_ac = inst_.distance(a, c);
                if (d_ac >= d_ab) break; // sorted neighbors: no gain possible
                int d = dir == 0 ? succ(c) : pred(c);
                if (c == b || d == a) continue;
                double delta = d_ac + inst_.distance(b, d) - d_ab -
                               inst_.distance(c, d);
                if (delta < -1e-9) {
                    // both removed edges are successor edges of e1 and e2
                    int e1 = dir == 0 ? a : b;
                    int e2 = dir == 0 ? c : d;
                    int pi = pos_[e1], pj = pos_[e2];
                    if (pi > pj) std::swap(pi, pj);
                    do_reverse(pi + 1, pj);
                    for (int x : {a, b, c, d}) wake(x);
                    return true;
                }
            }
        }
        return false;
    }

    // Or-opt: move the 1..3-node segment starting at s after a near node.
    bool or_opt_from(int s) {
        auto& t = *tour_;
        for (int len = 1; len <= 3 && len < n_ - 2; ++len) {
            int sp = pos_[s];
            int e = t[(sp + len - 1) % n_];
            int p = pred(s);
            int q = succ(e);
            if (q == p) continue;
            double removed = inst_.distance(p, s) + inst_.distance(e, q) -
                             inst_.distance(p, q);
            if (removed <= 1e-9) continue;
            for (int c : nbr_[s]) {
                // c must lie outside the segment and not be p (no-op spot)
                int cp = pos_[c];
                int off = (cp - sp + n_) % n_;
                if (off < len) continue;
                if (c == p) continue;
                int d = succ(c);
                if (d == s) continue;
                double base = inst_.distance(c, d);
                double fwd = inst_.distance(c, s) + inst_.distance(e, d) - base;
                double rev = inst_.distance(c, e) + inst_.distance(s, d) - base;
                bool reversed = rev < fwd;
                double delta = std::min(fwd, rev) - removed;
                if (delta < -1e-9) {
                    apply_or_opt(sp, len, pos_[c], reversed);
                    for (int x : {p, q, c, d, s, e}) wake(x);
                    return true;
                }
            }
        }
        return false;
    }

    void apply_or_opt(int sp, int len, int cp, bool reversed) {
        auto& t = *tour_;
        std::vector<int> seg(len);
        for (int i = 0; i < len; ++i) seg[i] = t[(sp + i) % n_];
        if (reversed) std::reverse(seg.begin(), seg.end());

        std::vector<int> rest;
        rest.reserve(n_ - len);
        int c = t[cp];
        for (int p = 0; p < n_; ++p) {
            int node = t[(sp + len + p) % n_];
            bool in_seg = false;
            for (int x : seg)
                if (x == node) in_seg = true;
            if (!in_seg) rest.push_back(node);
        }
        std::vector<int> out;
        out.reserve(n_);
        for (int node : rest) {
            out.push_back(node);
            if (node == c)
                for (int x : seg) out.push_back(x);
        }
        t = std::move(out);
        for (int p = 0; p < n_; ++p) pos_[t[p]] = p;
    }

    bool improve_node(int a) { return two_opt_from(a) || or_opt_from(a); }

    const Instance& inst_;
    int n_;
    std::vector<std::vector<int>> nbr_;
    std::vector<int>* tour_ = nullptr;
    std::vector<int> pos_;
    std::vector<char> in_queue_;
    std::vector<int> queue_;
    std::size_t head_ = 0;
};

std::vector<int> nn_tour(const Instance& inst, int start) {
    const int n = inst.size();
    std::vector<char> used(n, 0);
    std::vector<int> t{start};
    used[start] = 1;
    int cur = start;
    for (int s = 1; s < n; ++s) {
        int best = -1;
        double bd = 0;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            double d = inst.distance(cur, j);
            if (best < 0 || d < bd) {
                best = j;
                bd = d;
            }
        }
        t.push_back(best);
        used[best] = 1;
        cur = best;
    }
    return t;
}

double tour_len(const Instance& inst, const std::vector<int>& t) {
    double len = 0;
    for (std::size_t p = 0; p < t.size(); ++p)
        len += inst.distance(t[p], t[(p + 1) % t.size()]);
    return len;
}

std::vector<int> all_nodes(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

} // namespace

int main(int argc, char** argv) {
    std::string out_dir = "data";
    if (argc > 1) out_dir = argv[1];
    fs::create_directories(out_dir);

    const std::vector<int> sizes = {100, 120,  150,  175,  200, 225, 250,
                                    280, 318,  360,  400,  442, 500, 574,
                                    657, 783,  1000, 1291, 1748};

    std::ofstream optima(fs::path(out_dir) / "optima.csv");
    optima << "# reference tour lengths for the bundled instances\n";

    for (int n : sizes) {
        char name[32];
        std::snprintf(name, sizeof name, "ru%04d", n);

        Rng rng(mix_seed(0xB0B5EEDULL, static_cast<std::uint64_t>(n)));
        std::vector<Point> pts(n);
        for (auto& p : pts) {
            p.x = static_cast<double>(rng.uniform_int(0, 10000));
            p.y = static_cast<double>(rng.uniform_int(0, 10000));
        }
        Instance inst(name, Metric::euc2d, std::move(pts));
        LocalSearch ls(inst);

        std::vector<int> best;
        double best_len = 0;
        for (int s = 0; s < 10; ++s) {
            std::vector<int> t = nn_tour(inst, rng.uniform_int(0, n - 1));
            double len = ls.optimize(t, all_nodes(n));
            if (best.empty() || len < best_len) {
                best = t;
                best_len = len;
            }
        }

        const int kicks = 3000 + 8 * n;
        for (int kick = 0; kick < kicks; ++kick) {
            std::vector<int> t = best;
            // double bridge: three cuts, reorder the four blocks
            int p1 = 1 + rng.uniform_int(0, n - 4);
            int p2 = p1 + 1 + rng.uniform_int(0, n - p1 - 3);
            int p3 = p2 + 1 + rng.uniform_int(0, n - p2 - 2);
            std::vector<int> kicked;
            kicked.reserve(n);
            kicked.insert(kicked.end(), t.begin(), t.begin() + p1);
            kicked.insert(kicked.end(), t.begin() + p2, t.begin() + p3);
            kicked.insert(kicked.end(), t.begin() + p1, t.begin() + p2);
            kicked.insert(kicked.end(), t.begin() + p3, t.end());

            std::vector<int> touched = {kicked[0],      kicked[p1 - 1],
                                        kicked[p1],     kicked[p1 + p3 - p2 - 1],
                                        kicked[p1 + p3 - p2], kicked[p3 - 1],
                                        kicked[p3 % n], kicked[n - 1]};
            double len = ls.optimize(kicked, touched);
            if (len < best_len) {
                best = kicked;
                best_len = len;
            }
        }

        Tour tour{best};
        double final_len = tour_length(inst, tour);
        save_tour_file(tour, name, (fs::path(out_dir) / (std::string(name) + ".opt.tour")).string());
        std::ofstream tsp(fs::path(out_dir) / (std::string(name) + ".tsp"));
        tsp << write_tsplib(inst);
        optima << name << "," << static_cast<long long>(final_len) << "\n";
        std::cout << name << " n=" << n << " ref=" << static_cast<long long>(final_len)
                  << "\n";
    }
    std::cout << "bundle written to " << out_dir << "\n";
    return 0;
}
