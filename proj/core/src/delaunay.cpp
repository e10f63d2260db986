#include "mlc/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "mlc/errors.hpp"
#include "mlc/rng.hpp"

namespace mlc {

std::size_t Triangulation::edge_count() const {
    std::size_t deg = 0;
    for (const auto& nbrs : adjacency) deg += nbrs.size();
    return deg / 2;
}

namespace {

constexpr double kInCircleRelTol = 1e-12;

struct Tri {
    int v[3];      // CCW vertex order
    int nbr[3];    // nbr[i] is across the edge opposite v[i], -1 on the outside
    double cx, cy; // circumcenter
    double r2;     // squared circumradius; +inf for degenerate triples
    bool alive = true;
};

inline double orient(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

class Builder {
public:
    Builder(std::vector<Point> pts, int real_n) : pts_(std::move(pts)), n_(real_n) {}

    // Returns false when insertion got stuck; the caller retries with a
    // farther super-triangle.
    bool run(double super_dist) {
        tris_.clear();
        // Super-triangle vertices occupy ids n_, n_+1, n_+2.
        pts_.resize(n_);
        double cx = 0, cy = 0;
        for (int i = 0; i < n_; ++i) { cx += pts_[i].x; cy += pts_[i].y; }
        cx /= n_; cy /= n_;
        for (int s = 0; s < 3; ++s) {
            double ang = 0.5 * std::numbers::pi + s * (2.0 * std::numbers::pi / 3.0);
            pts_.push_back(Point{cx + super_dist * std::cos(ang),
                                 cy + super_dist * std::sin(ang)});
        }
        make_triangle(n_, n_ + 1, n_ + 2, -1, -1, -1);
        last_ = 0;

        std::vector<int> order(n_);
        for (int i = 0; i < n_; ++i) order[i] = i;
        Rng rng(0xd1b54a32d192ed03ULL); // fixed: output must be deterministic
        rng.shuffle(order);

        for (int p : order)
            if (!insert(p)) return false;
        return true;
    }

    // Real triangles surviving after super-vertex removal.
    std::vector<std::array<int, 3>> real_triangles() const {
        std::vector<std::array<int, 3>> out;
        for (const auto& t : tris_) {
            if (!t.alive) continue;
            if (t.v[0] >= n_ || t.v[1] >= n_ || t.v[2] >= n_) continue;
            if (orient(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]]) == 0.0) continue;
            out.push_back({t.v[0], t.v[1], t.v[2]});
        }
        return out;
    }

private:
    int make_triangle(int a, int b, int c, int na, int nb, int nc) {
        if (orient(pts_[a], pts_[b], pts_[c]) < 0) {
            std::swap(b, c);
            std::swap(nb, nc);
        }
        Tri t;
        t.v[0] = a; t.v[1] = b; t.v[2] = c;
        t.nbr[0] = na; t.nbr[1] = nb; t.nbr[2] = nc;
        circumcircle(t);
        tris_.push_back(t);
        return static_cast<int>(tris_.size()) - 1;
    }

    void circumcircle(Tri& t) const {
        const Point &a = pts_[t.v[0]], &b = pts_[t.v[1]], &c = pts_[t.v[2]];
        double d = 2.0 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
        if (d == 0.0) {
            t.cx = t.cy = 0.0;
            t.r2 = std::numeric_limits<double>::infinity();
            return;
        }
        double b2 = (b.x - a.x) * (b.x + a.x) + (b.y - a.y) * (b.y + a.y);
        double c2 = (c.x - a.x) * (c.x + a.x) + (c.y - a.y) * (c.y + a.y);
        t.cx = (b2 * (c.y - a.y) - c2 * (b.y - a.y)) / d;
        t.cy = (c2 * (b.x - a.x) - b2 * (c.x - a.x)) / d;
        double dx = a.x - t.cx, dy = a.y - t.cy;
        t.r2 = dx * dx + dy * dy;
    }

    // Strict containment with relative tolerance; a tie counts as outside.
    bool in_circle(const Tri& t, const Point& p) const {
        if (std::isinf(t.r2)) return true;
        double dx = p.x - t.cx, dy = p.y - t.cy;
        return dx * dx + dy * dy < t.r2 * (1.0 - kInCircleRelTol);
    }

    bool contains(const Tri& t, const Point& p) const {
        for (int e = 0; e < 3; ++e)
            if (orient(pts_[t.v[(e + 1) % 3]], pts_[t.v[(e + 2) % 3]], p) < 0)
                return false;
        return true;
    }

    // Walk from the last created triangle toward p; falls back to a linear
    // scan if the walk stalls (possible with near-degenerate geometry).
    int locate(const Point& p) const {
        int cur = last_;
        std::size_t steps = 0, limit = 4 * tris_.size() + 16;
        while (cur >= 0 && tris_[cur].alive && steps++ < limit) {
            const Tri& t = tris_[cur];
            int next = cur;
            for (int e = 0; e < 3; ++e) {
                if (orient(pts_[t.v[(e + 1) % 3]], pts_[t.v[(e + 2) % 3]], p) < 0) {
                    next = t.nbr[e];
                    break;
                }
            }
            if (next == cur) return cur; // no separating edge: p is in cur
            cur = next;
        }
        for (std::size_t i = 0; i < tris_.size(); ++i)
            if (tris_[i].alive && (contains(tris_[i], p) || in_circle(tris_[i], p)))
                return static_cast<int>(i);
        return -1;
    }

    bool insert(int pid) {
        const Point& p = pts_[pid];
        int seed = locate(p);
        if (seed < 0) return false;

        // Conflict region: BFS over neighbors whose circumcircle contains p.
        // The seed triangle always belongs to it.
        std::vector<int> bad;
        std::vector<char> in_bad(tris_.size(), 0);
        bad.push_back(seed);
        in_bad[seed] = 1;
        for (std::size_t h = 0; h < bad.size(); ++h) {
            const Tri& t = tris_[bad[h]];
            for (int e = 0; e < 3; ++e) {
                int nb = t.nbr[e];
                if (nb < 0 || in_bad[nb]) continue;
                if (in_circle(tris_[nb], p)) {
                    in_bad[nb] = 1;
                    bad.push_back(nb);
                }
            }
        }

        // Cavity boundary: edges of bad triangles facing surviving ones.
        struct BoundaryEdge { int a, b, outer; };
        std::vector<BoundaryEdge> boundary;
        for (int bi : bad) {
            const Tri& t = tris_[bi];
            for (int e = 0; e < 3; ++e) {
                int nb = t.nbr[e];
                if (nb >= 0 && in_bad[nb]) continue;
                boundary.push_back({t.v[(e + 1) % 3], t.v[(e + 2) % 3], nb});
            }
        }
        if (boundary.empty()) return false;

        for (int bi : bad) tris_[bi].alive = false;

        // Fan p to every boundary edge; stitch fan triangles to each other
        // through the shared (p, endpoint) edges and to survivors outside.
        auto slot_of_third = [&](int ti, int skip1, int skip2) {
            for (int s = 0; s < 3; ++s) {
                int v = tris_[ti].v[s];
                if (v != skip1 && v != skip2) return s;
            }
            return -1;
        };
        std::unordered_map<int, std::pair<int, int>> open; // endpoint -> (tri, slot)
        int created = -1;
        for (const auto& be : boundary) {
            int ti = make_triangle(pid, be.a, be.b, be.outer, -1, -1);
            // make_triangle may flip vertex order, but the outer neighbor was
            // passed in slot 0 (opposite pid) which survives the flip.
            if (be.outer >= 0) {
                Tri& out = tris_[be.outer];
                for (int e = 0; e < 3; ++e) {
                    int oa = out.v[(e + 1) % 3], ob = out.v[(e + 2) % 3];
                    if ((oa == be.a && ob == be.b) || (oa == be.b && ob == be.a)) {
                        out.nbr[e] = ti;
                        break;
                    }
                }
            }
            for (int end : {be.a, be.b}) {
                int si = slot_of_third(ti, pid, end); // slot across edge (pid, end)
                auto it = open.find(end);
                if (it == open.end()) {
                    open.emplace(end, std::make_pair(ti, si));
                } else {
                    tris_[ti].nbr[si] = it->second.first;
                    tris_[it->second.first].nbr[it->second.second] = ti;
                    open.erase(it);
                }
            }
            created = ti;
        }
        last_ = created;
        return true;
    }

    std::vector<Point> pts_;
    int n_;
    std::vector<Tri> tris_;
    int last_ = 0;
};

double hull_area(const std::vector<Point>& pts, int n) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
    });
    auto build_chain = [&](bool lower) {
        std::vector<int> chain;
        for (int idx = 0; idx < n; ++idx) {
            int i = ids[lower ? idx : n - 1 - idx];
            while (chain.size() >= 2 &&
                   orient(pts[chain[chain.size() - 2]], pts[chain.back()], pts[i]) <= 0)
                chain.pop_back();
            chain.push_back(i);
        }
        return chain;
    };
    auto lower = build_chain(true);
    auto upper = build_chain(false);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    double area2 = 0.0;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        const Point& a = pts[lower[i]];
        const Point& b = pts[lower[(i + 1) % lower.size()]];
        area2 += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(area2);
}

} // namespace

Triangulation delaunay_triangulate(const Instance& inst) {
    const int n = inst.size();
    std::vector<Point> pts = inst.coords();

    double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (const auto& p : pts) {
        minx = std::min(minx, p.x); maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y); maxy = std::max(maxy, p.y);
    }
    double diag = std::hypot(maxx - minx, maxy - miny);
    if (diag == 0.0)
        throw DegenerateGeometryError("all points coincide");

    // Exact duplicates break the incremental insertion; nudge every repeat
    // occurrence along a deterministic epsilon spiral.
    {
        std::unordered_map<std::uint64_t, int> seen;
        auto key = [](const Point& p) {
            std::uint64_t kx, ky;
            std::memcpy(&kx, &p.x, 8);
            std::memcpy(&ky, &p.y, 8);
            return kx * 0x9e3779b97f4a7c15ULL ^ ky;
        };
        double eps = 1e-9 * diag;
        for (auto& p : pts) {
            int c = seen[key(p)]++;
            if (c > 0) {
                p.x += eps * c * std::cos(2.399963229728653 * c);
                p.y += eps * c * std::sin(2.399963229728653 * c);
            }
        }
    }

    bool collinear = true;
    for (int i = 2; i < n && collinear; ++i)
        if (orient(pts[0], pts[1], pts[i]) != 0.0) collinear = false;
    if (collinear)
        throw DegenerateGeometryError("all points are collinear");

    double target_area = hull_area(pts, n);
    std::vector<std::array<int, 3>> tri_list;
    bool ok = false;
    // A too-close super-triangle can clip ears off the hull when some
    // circumcircle reaches a super vertex; detect by area and push it out.
    for (double dist = 1e3 * diag; dist <= 1e8 * diag; dist *= 256.0) {
        Builder b(pts, n);
        if (!b.run(dist)) continue;
        tri_list = b.real_triangles();
        double covered = 0.0;
        for (const auto& t : tri_list)
            covered += 0.5 * std::abs(orient(pts[t[0]], pts[t[1]], pts[t[2]]));
        if (std::abs(covered - target_area) <= 1e-9 * target_area + 1e-30) {
            ok = true;
            break;
        }
    }
    if (!ok || tri_list.empty())
        throw DegenerateGeometryError("triangulation failed to cover the hull");

    Triangulation tri;
    tri.triangles = std::move(tri_list);
    tri.adjacency.assign(n, {});
    for (const auto& t : tri.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            tri.adjacency[a].push_back(b);
            tri.adjacency[b].push_back(a);
        }
    for (auto& nbrs : tri.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return tri;
}

CandidateLists delaunay_candidate_lists(const Instance& inst, const Triangulation& tri,
                                        int k, bool truncate) {
    const int n = inst.size();
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (static_cast<int>(tri.adjacency.size()) != n)
        throw std::invalid_argument("triangulation does not match instance");

    CandidateLists cl;
    cl.k = k;
    cl.lists.resize(n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> cand;
        cand.reserve(tri.adjacency[i].size());
        for (int j : tri.adjacency[i]) cand.emplace_back(inst.distance(i, j), j);
        std::sort(cand.begin(), cand.end());

        auto& list = cl.lists[i];
        for (const auto& [d, j] : cand) list.push_back(j);

        if (static_cast<int>(list.size()) < 2) {
            // Pad with nearest non-adjacent nodes so a second rank exists.
            std::vector<std::pair<double, int>> rest;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                if (std::find(list.begin(), list.end(), j) != list.end()) continue;
                rest.emplace_back(inst.distance(i, j), j);
            }
            std::sort(rest.begin(), rest.end());
            for (const auto& [d, j] : rest) {
                if (static_cast<int>(list.size()) >= 2) break;
                list.push_back(j);
            }
        }
        if (truncate && static_cast<int>(list.size()) > k)
            list.resize(std::max(k, 2));
    }
    return cl;
}

std::string write_triangulation_edges(const Triangulation& tri) {
    std::ostringstream out;
    for (std::size_t i = 0; i < tri.adjacency.size(); ++i)
        for (int j : tri.adjacency[i])
            if (static_cast<int>(i) < j) out << i << " " << j << "\n";
    return out.str();
}

} // namespace mlc
