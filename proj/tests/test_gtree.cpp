#include <doctest.h>

#include <random>

#include "gtree/error.hpp"
#include "gtree/gtree.hpp"
#include "oracles.hpp"

using namespace gtree;

namespace {

Rect unit_at(double x, double y) { return Rect{{x, y}, 0.5, 0.5}; }

RootedTree chain_tree(const Layout& layout) {
    const std::vector<CostedEdge> edges = cost_edges(layout, ProximityGraph{3, {{0, 1}, {1, 2}}, false});
    return minimum_spanning_tree(3, edges, 0);
}

}  // namespace

TEST_CASE("grow leaves an overlap-free tree in place") {
    const Layout layout = make_layout({unit_at(0, 0), unit_at(2, 0), unit_at(4, 1)});
    const ProximityGraph g = delaunay(layout.centers());
    const RootedTree tree = minimum_spanning_tree(3, cost_edges(layout, g), 0);
    const Layout grown = grow(layout, tree, std::nullopt);
    CHECK(grown.nodes == layout.nodes);
}

TEST_CASE("grow along a chain") {
    const Layout layout = make_layout({unit_at(0, 0), unit_at(0.5, 0), unit_at(1.0, 0)});
    const RootedTree tree = chain_tree(layout);
    REQUIRE(tree.edge_t[1] == doctest::Approx(2.0));
    REQUIRE(tree.edge_t[2] == doctest::Approx(2.0));

    GrowCounters counters;
    const Layout grown = grow(layout, tree, std::nullopt, &counters);
    CHECK(counters.node_updates == 3);
    CHECK(grown.nodes[0].center.x == 0.0);
    CHECK(grown.nodes[1].center.x == doctest::Approx(1.0));
    CHECK(grown.nodes[2].center.x == doctest::Approx(2.0));
    CHECK_FALSE(overlaps(grown.nodes[0], grown.nodes[1]));
    CHECK_FALSE(overlaps(grown.nodes[1], grown.nodes[2]));

    const Layout capped = grow(layout, tree, 1.5);
    CHECK(capped.nodes[0].center.x == 0.0);
    CHECK(capped.nodes[1].center.x == doctest::Approx(0.75));
    CHECK(capped.nodes[2].center.x == doctest::Approx(1.5));
    CHECK(overlaps(capped.nodes[0], capped.nodes[1]));
    CHECK(overlaps(capped.nodes[1], capped.nodes[2]));
}

TEST_CASE("a fully grown edge ends just clear of contact") {
    const Layout layout = make_layout({unit_at(0, 0), unit_at(0.5, 0.1)});
    const RootedTree tree = minimum_spanning_tree(2, cost_edges(layout, ProximityGraph{2, {{0, 1}}, false}), 0);
    const Layout grown = grow(layout, tree, std::nullopt);
    const double gap = grown.nodes[1].center.x - grown.nodes[0].center.x - 1.0;
    CHECK(gap > 0.0);
    CHECK(gap < 1e-8);
}

TEST_CASE("grow keeps sizes and resolves every tree edge") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const Layout layout = oracle::random_layout(rng, 30, 8.0);
        const RootedTree tree =
            minimum_spanning_tree(layout.size(), cost_edges(layout, delaunay(layout.centers())), central_root(layout));
        GrowCounters counters;
        const Layout grown = grow(layout, tree, std::nullopt, &counters);
        CHECK(counters.node_updates == layout.size());
        for (std::size_t v = 0; v < layout.size(); ++v) {
            CHECK(grown.nodes[v].half_width == layout.nodes[v].half_width);
            CHECK(grown.nodes[v].half_height == layout.nodes[v].half_height);
        }
        for (const IndexPair& e : tree.edges()) CHECK_FALSE(overlaps(grown.nodes[e.i], grown.nodes[e.j]));
    }
}

TEST_CASE("grow result does not depend on the root beyond a translation") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 20; ++rep) {
        const Layout layout = oracle::random_layout(rng, 40, 10.0);
        const RootedTree tree = minimum_spanning_tree(layout.size(), cost_edges(layout, delaunay(layout.centers())), 0);
        const Layout a = grow(layout, tree, std::nullopt);
        const Layout b = grow(layout, reroot(tree, layout.size() - 1), std::nullopt);
        const Point shift = a.nodes[0].center - b.nodes[0].center;
        for (std::size_t v = 0; v < layout.size(); ++v) {
            CHECK(norm(a.nodes[v].center - b.nodes[v].center - shift) < 1e-9);
        }
    }
}

TEST_CASE("jitter") {
    const Layout layout = make_layout({unit_at(0, 0), unit_at(0, 0), unit_at(4, 3)});
    CHECK(has_coincident_centers(layout));
    const Layout a = jitter(layout, 1e-6, 42);
    const Layout b = jitter(layout, 1e-6, 42);
    CHECK(a.nodes == b.nodes);
    CHECK_FALSE(has_coincident_centers(a));
    const Rect box = bounding_box(layout);
    const double bound = 1e-6 * 2.0 * std::hypot(box.half_width, box.half_height);
    for (std::size_t v = 0; v < layout.size(); ++v) {
        CHECK(std::abs(a.nodes[v].center.x - layout.nodes[v].center.x) <= bound);
        CHECK(std::abs(a.nodes[v].center.y - layout.nodes[v].center.y) <= bound);
    }
    CHECK(jitter(layout, 0.0, 1).nodes == layout.nodes);
}

TEST_CASE("single_iteration trivial cases") {
    GTreeConfig config;
    const Layout one = make_layout({unit_at(3, 3)});
    const IterationResult r1 = single_iteration(one, config, false);
    CHECK(r1.layout.nodes == one.nodes);
    CHECK(r1.overlap_edge_count == 0);

    const Layout two = make_layout({unit_at(0, 0), unit_at(5, 0)});
    const IterationResult r2 = single_iteration(two, config, true);
    CHECK(r2.layout.nodes == two.nodes);
    CHECK(r2.overlap_edge_count == 0);
}

TEST_CASE("remove_overlaps on an overlap-free layout is a fixed point") {
    const Layout layout = make_layout({unit_at(0, 0), unit_at(2, 0), unit_at(1, 2), unit_at(3, 3)});
    const RemovalResult result = remove_overlaps(layout, GTreeConfig{});
    CHECK(result.layout.nodes == layout.nodes);
    CHECK(result.stats.iterations_phase1 == 1);
    CHECK(result.stats.converged);
}

TEST_CASE("remove_overlaps separates coincident squares") {
    const Layout layout = make_layout({unit_at(1, 1), unit_at(1, 1)});
    GTreeConfig config;
    config.rng_seed = 9;
    const RemovalResult result = remove_overlaps(layout, config);
    REQUIRE(result.stats.converged);
    CHECK_FALSE(overlaps(result.layout.nodes[0], result.layout.nodes[1]));
    // The squares end up touching: the center gap is at most one side along
    // the separating axis plus the tiny jitter.
    const Point gap = result.layout.nodes[1].center - result.layout.nodes[0].center;
    CHECK(std::max(std::abs(gap.x), std::abs(gap.y)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(norm(gap) < 2.0);

    const RemovalResult again = remove_overlaps(layout, config);
    CHECK(again.layout.nodes == result.layout.nodes);
}

TEST_CASE("remove_overlaps converges on dense random layouts") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 5; ++rep) {
        // 200 nodes, mean area ~4.6, domain sized for about 30% coverage.
        const Layout layout = oracle::random_layout(rng, 200, std::sqrt(200 * 4.0 * 1.125 * 1.125 / 0.3));
        GTreeConfig config;
        config.rng_seed = rep;
        const RemovalResult result = remove_overlaps(layout, config);
        CHECK(result.stats.converged);
        CHECK(result.stats.iterations() <= config.max_iterations);
        CHECK(oracle::overlapping_pairs_brute(result.layout).empty());
        for (std::size_t v = 0; v < layout.size(); ++v) {
            CHECK(result.layout.nodes[v].half_width == layout.nodes[v].half_width);
        }
    }
}

TEST_CASE("remove_overlaps escapes cycles on dense equal squares") {
    // Unit squares at three times full coverage; without a kick on stalls
    // these instances alternate between two configurations indefinitely.
    for (std::uint64_t seed : {1ULL, 7920ULL, 31677ULL, 47515ULL, 55434ULL}) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0, 1);
        const double side = std::sqrt(200 / 3.0);
        std::vector<Rect> rects(200);
        for (Rect& r : rects) r.center = {u(rng) * side, u(rng) * side};
        const RemovalResult result = remove_overlaps(make_layout(rects), GTreeConfig{});
        CHECK(result.stats.converged);
        CHECK(result.stats.iterations() < 200);
    }
}

TEST_CASE("remove_overlaps honours the iteration budget") {
    std::mt19937_64 rng(5);
    const Layout layout = oracle::random_layout(rng, 300, 10.0);
    GTreeConfig config;
    config.max_iterations = 2;
    config.growth_cap = 1.01;
    const RemovalResult result = remove_overlaps(layout, config);
    CHECK(result.stats.iterations() == 2);
    CHECK_FALSE(result.stats.converged);
}

TEST_CASE("remove_overlaps is deterministic") {
    std::mt19937_64 rng(6);
    const Layout layout = oracle::random_layout(rng, 150, 15.0);
    GTreeConfig config;
    config.rng_seed = 123;
    const RemovalResult a = remove_overlaps(layout, config);
    const RemovalResult b = remove_overlaps(layout, config);
    CHECK(a.layout.nodes == b.layout.nodes);
    CHECK(a.stats.iterations() == b.stats.iterations());
}

TEST_CASE("eps_overlap tolerates shallow overlaps") {
    const Layout layout = make_layout({unit_at(0, 0), unit_at(0.95, 0)});
    GTreeConfig config;
    config.eps_overlap = 0.1;
    const RemovalResult result = remove_overlaps(layout, config);
    CHECK(result.stats.converged);
    CHECK(result.layout.nodes == layout.nodes);
}

TEST_CASE("observer sees every iteration") {
    std::mt19937_64 rng(12);
    const Layout layout = oracle::random_layout(rng, 60, 8.0);
    std::size_t seen = 0;
    const RemovalResult result = remove_overlaps(layout, GTreeConfig{}, [&](const IterationSnapshot& snap) {
        ++seen;
        CHECK(snap.iteration == seen);
        CHECK(snap.result.tree.size() == layout.size());
    });
    CHECK(seen == result.stats.iterations());
}

TEST_CASE("config validation") {
    GTreeConfig config;
    config.growth_cap = 0.5;
    CHECK_THROWS_AS(config.validate(), InvalidArgumentError);
    config.growth_cap.reset();
    config.max_iterations = 0;
    CHECK_THROWS_AS(config.validate(), InvalidArgumentError);
    config.max_iterations = 1;
    config.eps_overlap = -1;
    CHECK_THROWS_AS(config.validate(), InvalidArgumentError);
}
