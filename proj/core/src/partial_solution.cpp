#include "mlc/partial_solution.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlc {

PartialSolution::PartialSolution(int n) {
    if (n < 1) throw std::invalid_argument("partial solution needs at least one node");
    degree_.assign(n, 0);
    adj_.assign(n, {-1, -1});
    parent_.resize(n);
    for (int i = 0; i < n; ++i) parent_[i] = i;
}

bool PartialSolution::has_edge(int u, int v) const {
    return adj_[u][0] == v || adj_[u][1] == v;
}

int PartialSolution::fragment(int u) const {
    int root = u;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[u] != root) {
        int next = parent_[u];
        parent_[u] = root;
        u = next;
    }
    return root;
}

bool PartialSolution::feasible(const Edge& e) const {
    if (e.u >= size() || e.v >= size()) return false;
    if (degree_[e.u] >= 2 || degree_[e.v] >= 2) return false;
    return fragment(e.u) != fragment(e.v);
}

void PartialSolution::insert(const Edge& e, bool fixed) {
    if (!feasible(e))
        throw std::logic_error("edge insertion would violate path invariants");
    adj_[e.u][degree_[e.u]++] = e.v;
    adj_[e.v][degree_[e.v]++] = e.u;
    parent_[fragment(e.u)] = fragment(e.v);
    ++edge_count_;
    if (fixed) fixed_.insert(e);
}

std::vector<Edge> PartialSolution::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int u = 0; u < size(); ++u)
        for (int v : adj_[u])
            if (v > u) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> PartialSolution::path_order() const {
    const int n = size();
    if (edge_count_ != n - 1)
        throw std::logic_error("not a spanning path");
    int start = -1;
    for (int i = 0; i < n && start < 0; ++i)
        if (degree_[i] < 2) start = i;
    if (start < 0) throw std::logic_error("not a spanning path");

    std::vector<int> order;
    order.reserve(n);
    int prev = -1, cur = start;
    while (cur != -1) {
        order.push_back(cur);
        int next = -1;
        for (int v : adj_[cur])
            if (v != -1 && v != prev) { next = v; break; }
        prev = cur;
        cur = next;
    }
    if (static_cast<int>(order.size()) != n)
        throw std::logic_error("not a spanning path");
    return order;
}

} // namespace mlc
