#include <doctest.h>

#include <random>

#include "gtree/error.hpp"
#include "gtree/metrics.hpp"
#include "oracles.hpp"

using namespace gtree;

namespace {

Layout from_points(const std::vector<Point>& pts, double half = 0.5) {
    std::vector<Rect> nodes;
    for (const Point& p : pts) nodes.push_back(Rect{p, half, half});
    return make_layout(nodes);
}

Layout similarity(const Layout& in, double scale, double degrees, Point shift) {
    const double a = degrees * std::acos(-1.0) / 180.0;
    Layout out = in;
    for (Rect& r : out.nodes) {
        const Point p = r.center;
        r.center = {scale * (std::cos(a) * p.x - std::sin(a) * p.y) + shift.x,
                    scale * (std::sin(a) * p.x + std::cos(a) * p.y) + shift.y};
    }
    return out;
}

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> pos(0, 20);
    std::vector<Point> pts(n);
    for (Point& p : pts) p = {pos(rng), pos(rng)};
    return pts;
}

}  // namespace

TEST_CASE("identity transform") {
    std::mt19937_64 rng(1);
    const Layout layout = from_points(random_points(rng, 40));
    CHECK(edge_length_dissimilarity(layout, layout) == doctest::Approx(0.0));
    CHECK(std::abs(procrustes_statistic(layout, layout)) < 1e-12);
    for (std::size_t k = 8; k <= 12; ++k) CHECK(knn_distortion(layout, layout, k) == 0.0);
    const AreaGrowth area = area_growth(layout, layout);
    CHECK(area.ratio == 1.0);
    CHECK(area.log_ratio == 0.0);
}

TEST_CASE("edge_length_dissimilarity") {
    std::mt19937_64 rng(2);
    const Layout before = from_points(random_points(rng, 30));
    CHECK(edge_length_dissimilarity(before, similarity(before, 3.0, 0.0, {0, 0})) < 1e-12);
    CHECK(edge_length_dissimilarity(before, similarity(before, 3.0, 0.0, {5, -2})) < 1e-12);

    // Rhombus whose Delaunay graph is the four sides plus the short diagonal.
    const Layout rhombus = from_points({{0, 0}, {4, 0}, {2, 3}, {2, -3}});
    const Layout stretched = from_points({{0, 0}, {4, 0}, {2, 6}, {2, -3}});
    // Ratios {1, 1, 1, a, a} with a = sqrt(40/13): median 1, two edges off by a - 1.
    const double expected = (std::sqrt(40.0 / 13.0) - 1.0) * std::sqrt(2.0 / 5.0);
    CHECK(edge_length_dissimilarity(rhombus, stretched) == doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(edge_length_dissimilarity(from_points({{0, 0}, {1, 0}}), from_points({{0, 0}, {1, 0}})),
                    InvalidArgumentError);
}

TEST_CASE("edge_length_dissimilarity matches brute force") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const auto p = random_points(rng, 35);
        auto q = p;
        std::normal_distribution<double> noise(0, 0.8);
        for (Point& x : q) x = {x.x * 1.7 + noise(rng), x.y * 1.7 + noise(rng)};
        const double expected = oracle::sigma_edge_brute(p, q);
        CHECK(std::abs(edge_length_dissimilarity(from_points(p), from_points(q)) - expected) < 1e-6);
    }
}

TEST_CASE("procrustes_statistic") {
    std::mt19937_64 rng(4);
    const auto pts = random_points(rng, 10);
    const Layout before = from_points(pts);

    SUBCASE("similarity transform") {
        CHECK(procrustes_statistic(before, similarity(before, 2.5, 37.0, {11, -4})) < 1e-9);
    }
    SUBCASE("one displaced point matches numerical minimisation") {
        auto moved = pts;
        moved[3] = {moved[3].x + 4.0, moved[3].y - 2.5};
        const double value = procrustes_statistic(before, from_points(moved));
        CHECK(value > 1e-3);
        CHECK(std::abs(value - oracle::procrustes_numeric(pts, moved)) < 1e-6);
    }
    SUBCASE("reflection is not a rotation") {
        auto mirrored = pts;
        for (Point& p : mirrored) p.x = -p.x;
        const double value = procrustes_statistic(before, from_points(mirrored));
        CHECK(value > 1e-3);
        CHECK(std::abs(value - oracle::procrustes_numeric(pts, mirrored)) < 1e-6);
        CHECK(oracle::procrustes_numeric(pts, mirrored, true) < 1e-9);
    }
    SUBCASE("invariant under similarity of the final layout") {
        auto moved = pts;
        std::normal_distribution<double> noise(0, 1.0);
        for (Point& p : moved) p = {p.x + noise(rng), p.y + noise(rng)};
        const Layout after = from_points(moved);
        const double base = procrustes_statistic(before, after);
        CHECK(std::abs(procrustes_statistic(before, similarity(after, 0.3, -120.0, {7, 7})) - base) < 1e-9);
    }
    CHECK_THROWS_AS(procrustes_statistic(from_points({{1, 1}, {1, 1}}), from_points({{0, 0}, {1, 0}})),
                    DegenerateInputError);
}

TEST_CASE("knn_distortion") {
    std::mt19937_64 rng(5);
    const auto pts = random_points(rng, 20);
    const Layout before = from_points(pts);
    CHECK(knn_distortion(before, similarity(before, 4.0, 0.0, {1, 2}), 5) == 0.0);

    // Two clusters; half of the nodes of each swap places with the other.
    std::vector<Point> clusters;
    for (int k = 0; k < 10; ++k) clusters.push_back({double(k % 5), double(k / 5)});
    for (int k = 0; k < 10; ++k) clusters.push_back({100.0 + k % 5, double(k / 5)});
    auto swapped = clusters;
    for (int k = 0; k < 5; ++k) std::swap(swapped[k], swapped[10 + k]);
    for (std::size_t k : {1u, 3u, 8u, 12u}) {
        CHECK(knn_distortion(from_points(clusters), from_points(swapped), k) ==
              doctest::Approx(oracle::knn_distortion_brute(clusters, swapped, k)).epsilon(1e-12));
    }
    CHECK(knn_distortion(from_points(clusters), from_points(swapped), 8) > 0.0);

    CHECK_THROWS_AS(knn_distortion(before, before, 0), InvalidArgumentError);
    CHECK_THROWS_AS(knn_distortion(before, before, 20), InvalidArgumentError);
}

TEST_CASE("area_growth") {
    const Layout pair = from_points({{0, 0}, {100, 0}});
    const Layout doubled = from_points({{-50, 0}, {150, 0}});
    const AreaGrowth g = area_growth(pair, doubled);
    // Width 101 -> 201 at fixed height 1: separation dominates.
    CHECK(g.ratio == doctest::Approx(201.0 / 101.0));
    const Layout square = from_points({{0, 0}, {100, 100}});
    const Layout square2 = from_points({{-50, -50}, {150, 150}});
    CHECK(area_growth(square, square2).ratio == doctest::Approx(4.0).epsilon(0.02));
    CHECK(area_growth(square, square2).log_ratio == doctest::Approx(std::log(area_growth(square, square2).ratio)));

    const Layout one = from_points({{3, 3}});
    CHECK(area_growth(one, from_points({{-7, 12}})).ratio == 1.0);
}

TEST_CASE("compute_metrics bundles everything") {
    std::mt19937_64 rng(6);
    const Layout layout = from_points(random_points(rng, 15));
    const std::vector<std::size_t> ks{8, 9, 10, 11, 12, 40};
    const MetricsReport report = compute_metrics(layout, layout, ks);
    CHECK(report.knn_distortion.size() == 5);
    CHECK(report.area_ratio == 1.0);
}

TEST_CASE("nearest_neighbors breaks ties by index") {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {5, 5}};
    CHECK(nearest_neighbors(pts, 0, 2) == std::vector<std::size_t>{1, 2});
    CHECK(nearest_neighbors(pts, 0, 3) == std::vector<std::size_t>{1, 2, 3});
}
