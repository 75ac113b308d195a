#include "gtree/triangulation.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>

#include "gtree/error.hpp"
#include "gtree/predicates.hpp"

namespace gtree {
namespace {

using predicates::incircle;
using predicates::orient2d;

constexpr std::size_t kGhost = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_distinct(std::span<const Point> points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        if (points[a].x != points[b].x) return points[a].x < points[b].x;
        if (points[a].y != points[b].y) return points[a].y < points[b].y;
        return a < b;
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<std::size_t> dups;
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (points[order[k]] == points[order[k - 1]]) {
            dups.push_back(order[k - 1]);
            dups.push_back(order[k]);
        }
    }
    if (!dups.empty()) {
        std::sort(dups.begin(), dups.end());
        dups.erase(std::unique(dups.begin(), dups.end()), dups.end());
        throw DuplicatePointsError(std::move(dups));
    }
}

// Hilbert index of (x, y) on a 2^16 x 2^16 grid.
std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y) {
    constexpr std::uint32_t n = 1u << 16;
    std::uint64_t d = 0;
    for (std::uint32_t s = n / 2; s > 0; s /= 2) {
        const std::uint32_t rx = (x & s) > 0 ? 1 : 0;
        const std::uint32_t ry = (y & s) > 0 ? 1 : 0;
        d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
        if (ry == 0) {
            if (rx == 1) {
                x = n - 1 - x;
                y = n - 1 - y;
            }
            std::swap(x, y);
        }
    }
    return d;
}

std::vector<std::size_t> insertion_order(std::span<const Point> points) {
    double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
    for (const Point& p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double span_x = max_x - min_x > 0.0 ? max_x - min_x : 1.0;
    const double span_y = max_y - min_y > 0.0 ? max_y - min_y : 1.0;
    auto quantize = [](double v) {
        return static_cast<std::uint32_t>(std::clamp(v * 65535.0, 0.0, 65535.0));
    };
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        keyed[i] = {hilbert_index(quantize((points[i].x - min_x) / span_x),
                                  quantize((points[i].y - min_y) / span_y)),
                    i};
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> order(points.size());
    std::transform(keyed.begin(), keyed.end(), order.begin(), [](const auto& k) { return k.second; });
    return order;
}

// Incremental Bowyer-Watson triangulation. The hull is closed off by ghost
// triangles (a, b, ghost) sharing one symbolic vertex at infinity, which keeps
// every hull edge without a finite bounding triangle.
class Builder {
public:
    explicit Builder(std::span<const Point> points) : points_(points) {}

    void seed(std::size_t a, std::size_t b, std::size_t c) {
        if (orient2d(points_[a], points_[b], points_[c]) < 0) std::swap(b, c);
        const std::size_t t = add({a, b, c});
        const std::size_t g_ab = add({b, a, kGhost});
        const std::size_t g_bc = add({c, b, kGhost});
        const std::size_t g_ca = add({a, c, kGhost});
        connect(t, a, b, g_ab);
        connect(t, b, c, g_bc);
        connect(t, c, a, g_ca);
        // Ghost neighbours around the hull.
        connect(g_ab, a, kGhost, g_ca);
        connect(g_bc, b, kGhost, g_ab);
        connect(g_ca, c, kGhost, g_bc);
        hint_ = t;
    }

    void insert(std::size_t p) {
        const std::size_t start = locate(p);
        carve_cavity(start, p);
        fill_cavity(p);
    }

    std::vector<Triangle> real_triangles() const {
        std::vector<Triangle> out;
        for (const Tri& t : tris_) {
            if (t.alive && !is_ghost(t)) out.push_back(Triangle{t.v});
        }
        return out;
    }

private:
    struct Tri {
        std::array<std::size_t, 3> v{};
        // nb[k] is the triangle across edge (v[k+1], v[k+2]).
        std::array<std::size_t, 3> nb{kNone, kNone, kNone};
        std::uint32_t stamp = 0;
        bool alive = true;
    };

    struct BoundaryEdge {
        std::size_t from;
        std::size_t to;
        std::size_t outer;
    };

    static bool is_ghost(const Tri& t) { return t.v[2] == kGhost; }

    std::size_t add(std::array<std::size_t, 3> v) {
        // Ghost vertex always sits in the last slot.
        if (v[0] == kGhost) v = {v[1], v[2], v[0]};
        else if (v[1] == kGhost) v = {v[2], v[0], v[1]};
        Tri t;
        t.v = v;
        if (!free_.empty()) {
            const std::size_t id = free_.back();
            free_.pop_back();
            tris_[id] = t;
            return id;
        }
        tris_.push_back(t);
        return tris_.size() - 1;
    }

    int edge_slot(std::size_t tri, std::size_t from, std::size_t to) const {
        const auto& v = tris_[tri].v;
        for (int k = 0; k < 3; ++k) {
            if (v[(k + 1) % 3] == from && v[(k + 2) % 3] == to) return k;
        }
        return -1;
    }

    // Sets the neighbour of `tri` across its directed edge from -> to.
    void link(std::size_t tri, std::size_t from, std::size_t to, std::size_t other) {
        const int k = edge_slot(tri, from, to);
        assert(k >= 0);
        tris_[tri].nb[static_cast<std::size_t>(k)] = other;
    }

    // `tri` owns from -> to, `other` owns to -> from.
    void connect(std::size_t tri, std::size_t from, std::size_t to, std::size_t other) {
        link(tri, from, to, other);
        link(other, to, from, tri);
    }

    bool in_conflict(const Tri& t, std::size_t p) const {
        const Point& q = points_[p];
        if (is_ghost(t)) {
            const Point& a = points_[t.v[0]];
            const Point& b = points_[t.v[1]];
            const int o = orient2d(a, b, q);
            if (o != 0) return o > 0;
            if (a.x != b.x) return std::min(a.x, b.x) < q.x && q.x < std::max(a.x, b.x);
            return std::min(a.y, b.y) < q.y && q.y < std::max(a.y, b.y);
        }
        return incircle(points_[t.v[0]], points_[t.v[1]], points_[t.v[2]], q) > 0;
    }

    std::size_t locate(std::size_t p) const {
        const Point& q = points_[p];
        std::size_t cur = hint_;
        if (!tris_[cur].alive) cur = first_alive();
        if (is_ghost(tris_[cur])) cur = tris_[cur].nb[2];

        const std::size_t max_steps = 4 * tris_.size() + 16;
        for (std::size_t step = 0; step < max_steps; ++step) {
            const Tri& t = tris_[cur];
            if (is_ghost(t)) {
                if (in_conflict(t, p)) return cur;
                break;
            }
            bool moved = false;
            for (int k = 0; k < 3; ++k) {
                const Point& a = points_[t.v[(k + 1) % 3]];
                const Point& b = points_[t.v[(k + 2) % 3]];
                if (orient2d(a, b, q) < 0) {
                    cur = t.nb[static_cast<std::size_t>(k)];
                    moved = true;
                    break;
                }
            }
            if (!moved) return cur;
        }
        for (std::size_t id = 0; id < tris_.size(); ++id) {
            if (tris_[id].alive && in_conflict(tris_[id], p)) return id;
        }
        return first_alive();
    }

    std::size_t first_alive() const {
        for (std::size_t id = 0; id < tris_.size(); ++id) {
            if (tris_[id].alive) return id;
        }
        return 0;
    }

    void carve_cavity(std::size_t start, std::size_t p) {
        ++stamp_;
        cavity_.clear();
        boundary_.clear();
        std::vector<std::size_t> stack{start};
        tris_[start].stamp = stamp_;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            cavity_.push_back(cur);
            for (int k = 0; k < 3; ++k) {
                const Tri& t = tris_[cur];
                const std::size_t n = t.nb[static_cast<std::size_t>(k)];
                if (tris_[n].stamp == stamp_) continue;
                if (in_conflict(tris_[n], p)) {
                    tris_[n].stamp = stamp_;
                    stack.push_back(n);
                } else {
                    boundary_.push_back({t.v[(k + 1) % 3], t.v[(k + 2) % 3], n});
                }
            }
        }
    }

    void fill_cavity(std::size_t p) {
        for (std::size_t id : cavity_) {
            tris_[id].alive = false;
            free_.push_back(id);
        }
        created_.clear();
        for (const BoundaryEdge& e : boundary_) {
            const std::size_t t = add({e.from, e.to, p});
            created_.push_back(t);
            link(t, e.from, e.to, e.outer);
            link(e.outer, e.to, e.from, t);
        }
        // The cavity boundary is a simple cycle: triangle (x, y, p) meets the
        // one built on the boundary edge leaving y along y -> p.
        by_start_.clear();
        for (std::size_t a = 0; a < boundary_.size(); ++a) by_start_.emplace_back(boundary_[a].from, a);
        std::sort(by_start_.begin(), by_start_.end());
        for (std::size_t a = 0; a < boundary_.size(); ++a) {
            const std::size_t y = boundary_[a].to;
            const auto it = std::lower_bound(by_start_.begin(), by_start_.end(), std::pair{y, std::size_t{0}});
            const std::size_t b = it->second;
            link(created_[a], y, p, created_[b]);
            link(created_[b], p, y, created_[a]);
        }
        hint_ = created_.front();
        for (std::size_t t : created_) {
            if (!is_ghost(tris_[t])) {
                hint_ = t;
                break;
            }
        }
    }

    std::span<const Point> points_;
    std::vector<Tri> tris_;
    std::vector<std::size_t> free_;
    std::vector<std::size_t> cavity_;
    std::vector<std::size_t> created_;
    std::vector<BoundaryEdge> boundary_;
    std::vector<std::pair<std::size_t, std::size_t>> by_start_;
    std::size_t hint_ = 0;
    std::uint32_t stamp_ = 0;
};

std::vector<IndexPair> edges_of(const std::vector<Triangle>& triangles) {
    std::vector<IndexPair> edges;
    edges.reserve(triangles.size() * 3);
    for (const Triangle& t : triangles) {
        for (int k = 0; k < 3; ++k) {
            edges.push_back(IndexPair::of(t.v[k], t.v[(k + 1) % 3]));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

std::vector<IndexPair> collinear_path(std::span<const Point> points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Lexicographic order is the order along any line.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].x != points[b].x) return points[a].x < points[b].x;
        return points[a].y < points[b].y;
    });
    std::vector<IndexPair> edges;
    for (std::size_t k = 1; k < order.size(); ++k) {
        edges.push_back(IndexPair::of(order[k - 1], order[k]));
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace

Triangulation triangulate(std::span<const Point> points) {
    if (points.size() < 2) throw TooFewPointsError(points.size());
    check_distinct(points);

    Triangulation result;
    result.graph.node_count = points.size();

    const std::vector<std::size_t> order = insertion_order(points);
    const Point& p0 = points[order[0]];
    const Point& p1 = points[order[1]];
    std::size_t third = order.size();
    for (std::size_t k = 2; k < order.size(); ++k) {
        if (orient2d(p0, p1, points[order[k]]) != 0) {
            third = k;
            break;
        }
    }
    if (third == order.size()) {
        result.graph.edges = collinear_path(points);
        return result;
    }

    Builder builder(points);
    builder.seed(order[0], order[1], order[third]);
    for (std::size_t k = 2; k < order.size(); ++k) {
        if (k != third) builder.insert(order[k]);
    }
    result.triangles = builder.real_triangles();
    result.graph.edges = edges_of(result.triangles);
    return result;
}

ProximityGraph delaunay(std::span<const Point> points) { return triangulate(points).graph; }

ProximityGraph augment_with_overlaps(const ProximityGraph& graph, std::span<const IndexPair> pairs) {
    ProximityGraph out = graph;
    out.augmented = true;
    if (pairs.empty()) return out;
    for (const IndexPair& raw : pairs) {
        if (raw.i >= graph.node_count) throw IndexOutOfRangeError(raw.i, graph.node_count);
        if (raw.j >= graph.node_count) throw IndexOutOfRangeError(raw.j, graph.node_count);
        if (raw.i == raw.j) throw InvalidArgumentError("self-pair " + std::to_string(raw.i) + " in augmentation");
        out.edges.push_back(IndexPair::of(raw.i, raw.j));
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

}  // namespace gtree
