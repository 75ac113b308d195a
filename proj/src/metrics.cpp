#include "gtree/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtree/error.hpp"
#include "gtree/triangulation.hpp"

namespace gtree {
namespace {

void require_same_size(const Layout& before, const Layout& after, std::size_t minimum) {
    if (before.size() != after.size()) {
        throw InvalidArgumentError("layouts differ in node count: " + std::to_string(before.size()) + " vs " +
                                   std::to_string(after.size()));
    }
    if (before.size() < minimum) {
        throw InvalidArgumentError("need at least " + std::to_string(minimum) + " nodes, got " +
                                   std::to_string(before.size()));
    }
}

double median(std::vector<double> values) {
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lower + upper) / 2.0;
}

}  // namespace

double edge_length_dissimilarity(const Layout& before, const Layout& after) {
    require_same_size(before, after, 3);
    const std::vector<Point> p = before.centers();
    const std::vector<Point> q = after.centers();
    const ProximityGraph graph = delaunay(p);

    std::vector<double> len_before, len_after, ratio;
    for (const IndexPair& e : graph.edges) {
        const double lb = norm(p[e.j] - p[e.i]);
        if (lb == 0.0) throw DegenerateInputError("original Delaunay edge has zero length");
        const double la = norm(q[e.j] - q[e.i]);
        len_before.push_back(lb);
        len_after.push_back(la);
        ratio.push_back(la / lb);
    }
    const double r = median(ratio);
    if (r == 0.0) throw DegenerateInputError("median edge-length ratio is zero");
    double sum = 0.0;
    for (std::size_t k = 0; k < len_before.size(); ++k) {
        const double rel = (len_after[k] - r * len_before[k]) / (r * len_before[k]);
        sum += rel * rel;
    }
    return std::sqrt(sum / static_cast<double>(len_before.size()));
}

double procrustes_statistic(const Layout& before, const Layout& after) {
    require_same_size(before, after, 2);
    const std::size_t n = before.size();
    Point mean_b{}, mean_a{};
    for (std::size_t i = 0; i < n; ++i) {
        mean_b = mean_b + before.nodes[i].center;
        mean_a = mean_a + after.nodes[i].center;
    }
    mean_b = (1.0 / static_cast<double>(n)) * mean_b;
    mean_a = (1.0 / static_cast<double>(n)) * mean_a;

    // Cross-covariance of the centered sets reduced to its rotation-relevant
    // parts: dot = sum <a_i, b_i>, cross = sum a_i x b_i.
    double ss_b = 0.0, ss_a = 0.0, dot = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point b = before.nodes[i].center - mean_b;
        const Point a = after.nodes[i].center - mean_a;
        ss_b += squared_norm(b);
        ss_a += squared_norm(a);
        dot += a.x * b.x + a.y * b.y;
        cross += a.x * b.y - a.y * b.x;
    }
    if (ss_b == 0.0) throw DegenerateInputError("all original centers coincide");
    if (ss_a == 0.0) return 1.0;  // best fit collapses to the centroid
    // Optimal rotation angle atan2(cross, dot) and scale sqrt(dot^2 + cross^2) / ss_a
    // leave a residual of ss_b - (dot^2 + cross^2) / ss_a.
    const double explained = (dot * dot + cross * cross) / (ss_a * ss_b);
    return std::clamp(1.0 - explained, 0.0, 1.0);
}

std::vector<std::size_t> nearest_neighbors(std::span<const Point> centers, std::size_t i, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(centers.size());
    for (std::size_t j = 0; j < centers.size(); ++j) {
        if (j != i) keyed.emplace_back(squared_norm(centers[j] - centers[i]), j);
    }
    k = std::min(k, keyed.size());
    std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end());
    std::vector<std::size_t> out(k);
    for (std::size_t m = 0; m < k; ++m) out[m] = keyed[m].second;
    return out;
}

double knn_distortion(const Layout& before, const Layout& after, std::size_t k) {
    require_same_size(before, after, 2);
    if (k == 0 || k >= before.size()) {
        throw InvalidArgumentError("k must satisfy 0 < k < node count (k = " + std::to_string(k) +
                                   ", nodes = " + std::to_string(before.size()) + ")");
    }
    const std::vector<Point> p = before.centers();
    const std::vector<Point> q = after.centers();
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<std::size_t> nb = nearest_neighbors(p, i, k);
        std::vector<std::size_t> na = nearest_neighbors(q, i, k);
        std::sort(nb.begin(), nb.end());
        std::sort(na.begin(), na.end());
        std::vector<std::size_t> common;
        std::set_intersection(nb.begin(), nb.end(), na.begin(), na.end(), std::back_inserter(common));
        const double miss = static_cast<double>(k - common.size());
        total += miss * miss;
    }
    return total / static_cast<double>(p.size());
}

AreaGrowth area_growth(const Layout& before, const Layout& after) {
    require_same_size(before, after, 1);
    const Rect b = bounding_box(before);
    const Rect a = bounding_box(after);
    const double area_b = 4.0 * b.half_width * b.half_height;
    const double area_a = 4.0 * a.half_width * a.half_height;
    if (!(area_b > 0.0) || !(area_a > 0.0)) throw DegenerateInputError("bounding box has zero area");
    const double ratio = area_a / area_b;
    return {ratio, std::log(ratio)};
}

MetricsReport compute_metrics(const Layout& before, const Layout& after, std::span<const std::size_t> ks) {
    MetricsReport report;
    if (before.size() >= 3) report.sigma_edge = edge_length_dissimilarity(before, after);
    if (before.size() >= 2) report.sigma_disp = procrustes_statistic(before, after);
    for (std::size_t k : ks) {
        if (k > 0 && k < before.size()) report.knn_distortion[k] = knn_distortion(before, after, k);
    }
    const AreaGrowth area = area_growth(before, after);
    report.area_ratio = area.ratio;
    report.log_area_ratio = area.log_ratio;
    return report;
}

}  // namespace gtree
