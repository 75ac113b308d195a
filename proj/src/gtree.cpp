#include "gtree/gtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gtree/error.hpp"

namespace gtree {
namespace {

// A fully grown edge leaves this relative clearance instead of exact contact.
// Exactly touching pairs elsewhere in the layout can be pushed into an
// ulp-deep overlap by rounding when their subtrees are translated; the
// clearance keeps pairs resolved this way out of reach of that rounding.
constexpr double kClearance = 1e-9;

// Iterations without a new lowest overlap count before the layout is jittered.
constexpr std::size_t kStallWindow = 10;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Layout separated(const Layout& layout, const GTreeConfig& config, std::uint64_t salt) {
    Layout out = layout;
    // A zero amplitude cannot separate coincident centers.
    const double rel = config.jitter_rel > 0.0 ? config.jitter_rel : kDefaultJitter;
    for (std::uint64_t attempt = 0; has_coincident_centers(out); ++attempt) {
        out = jitter(layout, rel, mix_seed(config.rng_seed, salt + attempt));
    }
    return out;
}

std::size_t count_overlapping(const Layout& layout, const ProximityGraph& graph, double eps) {
    return static_cast<std::size_t>(std::count_if(graph.edges.begin(), graph.edges.end(), [&](const IndexPair& e) {
        return overlaps(layout.nodes[e.i], layout.nodes[e.j], eps);
    }));
}

}  // namespace

void GTreeConfig::validate() const {
    if (growth_cap && !(*growth_cap >= 1.0 && std::isfinite(*growth_cap))) {
        throw InvalidArgumentError("growth cap must be a finite value >= 1");
    }
    if (max_iterations == 0) throw InvalidArgumentError("max_iterations must be positive");
    if (!(jitter_rel >= 0.0 && std::isfinite(jitter_rel))) throw InvalidArgumentError("jitter_rel must be >= 0");
    if (!(eps_overlap >= 0.0 && std::isfinite(eps_overlap))) throw InvalidArgumentError("eps_overlap must be >= 0");
}

Layout grow(const Layout& layout, const RootedTree& tree, std::optional<double> cap, GrowCounters* counters) {
    Layout out = layout;
    if (layout.size() == 0) return out;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::size_t updates = 0;
    for (std::size_t v : tree.preorder()) {
        ++updates;
        const std::size_t p = tree.parent[v];
        if (p == kNoParent) continue;  // the root keeps its position
        const double t = tree.edge_t[v];
        double f = cap ? std::min(t, *cap) : t;
        const Point offset = layout.nodes[v].center - layout.nodes[p].center;
        Point placed = out.nodes[p].center + f * offset;
        if (f == t && t > 1.0) {
            f = t * (1.0 + kClearance);
            placed = out.nodes[p].center + f * offset;
            // Same rounding guard as touching_parameter, measured from the
            // parent's new position.
            for (int step = 0; step < 64; ++step) {
                const Rect child{placed, layout.nodes[v].half_width, layout.nodes[v].half_height};
                if (!overlaps(out.nodes[p], child)) break;
                f = std::nextafter(f, inf);
                placed = out.nodes[p].center + f * offset;
            }
        }
        out.nodes[v].center = placed;
    }
    if (counters) counters->node_updates += updates;
    return out;
}

bool has_coincident_centers(const Layout& layout) {
    std::vector<Point> c = layout.centers();
    std::sort(c.begin(), c.end(), [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    return std::adjacent_find(c.begin(), c.end()) != c.end();
}

Layout jitter(const Layout& layout, double jitter_rel, std::uint64_t seed) {
    Layout out = layout;
    const Rect box = bounding_box(layout);
    const double amplitude = jitter_rel * 2.0 * std::hypot(box.half_width, box.half_height);
    if (amplitude <= 0.0) return out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> offset(-amplitude, amplitude);
    for (Rect& r : out.nodes) {
        const double dx = offset(rng);
        const double dy = offset(rng);
        r.center = r.center + Point{dx, dy};
    }
    return out;
}

IterationResult single_iteration(const Layout& layout, const GTreeConfig& config, bool augment) {
    IterationResult result;
    if (layout.size() < 2) {
        result.layout = layout;
        result.proximity.node_count = layout.size();
        if (layout.size() == 1) {
            result.tree = minimum_spanning_tree(1, {}, 0);
        }
        return result;
    }
    const Layout current = separated(layout, config, 0);
    ProximityGraph graph = delaunay(current.centers());
    if (augment) {
        const std::vector<IndexPair> pairs = find_all_overlapping_pairs(current, config.eps_overlap);
        graph = augment_with_overlaps(graph, pairs);
    }
    result.overlap_edge_count = count_overlapping(current, graph, config.eps_overlap);
    const std::vector<CostedEdge> costed = cost_edges(current, graph);
    result.tree = minimum_spanning_tree(current.size(), costed, central_root(current));
    result.layout = grow(current, result.tree, config.growth_cap);
    result.proximity = std::move(graph);
    return result;
}

RemovalResult remove_overlaps(const Layout& layout, const GTreeConfig& config, const IterationObserver& observer) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    RemovalResult out;
    out.layout = separated(layout, config, 0);
    RunStats& stats = out.stats;

    const double rel = config.jitter_rel > 0.0 ? config.jitter_rel : kDefaultJitter;
    auto run_phase = [&](int phase, std::size_t& counter) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        std::size_t stalled = 0;
        std::size_t kicks = 0;
        while (stats.iterations() < config.max_iterations) {
            GTreeConfig step = config;
            step.rng_seed = mix_seed(config.rng_seed, stats.iterations() + 1);
            IterationResult it = single_iteration(out.layout, step, phase == 2);
            ++counter;
            if (observer) observer(IterationSnapshot{phase, stats.iterations(), out.layout, it});
            if (it.overlap_edge_count == 0) return true;
            out.layout = std::move(it.layout);
            if (it.overlap_edge_count < best) {
                best = it.overlap_edge_count;
                stalled = 0;
            } else if (++stalled == kStallWindow) {
                // Growing can cycle between equivalent configurations; a small
                // random shift, larger on each repeat, breaks the symmetry.
                const double amplitude = rel * std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(kicks, 20)));
                out.layout = jitter(out.layout, amplitude, mix_seed(~config.rng_seed, stats.iterations()));
                ++kicks;
                stalled = 0;
            }
        }
        return false;
    };

    if (layout.size() >= 2) {
        if (run_phase(1, stats.iterations_phase1)) run_phase(2, stats.iterations_phase2);
    } else {
        stats.iterations_phase1 = 1;
    }
    stats.converged = find_all_overlapping_pairs(out.layout, config.eps_overlap).empty();
    stats.wall_time = std::chrono::steady_clock::now() - started;
    return out;
}

}  // namespace gtree
