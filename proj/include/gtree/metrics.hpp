#pragma once

#include <cstddef>
#include <map>
#include <span>

#include "gtree/layout.hpp"

namespace gtree {

/// How well `after` preserves `before`. Lower is better for the sigmas and
/// the neighbour distortion; area_ratio is final over initial bounding box.
struct MetricsReport {
    double sigma_edge = 0.0;
    double sigma_disp = 0.0;
    std::map<std::size_t, double> knn_distortion;
    double area_ratio = 1.0;
    double log_area_ratio = 0.0;
};

/// Relative change of the lengths of the Delaunay edges of `before`'s centers.
/// With r the median of len_after / len_before over those edges,
///   sqrt(mean(((len_after - r * len_before) / (r * len_before))^2)).
double edge_length_dissimilarity(const Layout& before, const Layout& after);

/// Procrustes statistic: `after` is aligned to `before` by the best uniform
/// scale, proper rotation (no reflection) and translation, and the residual
/// sum of squares is divided by the centered sum of squares of `before`.
/// Lies in [0, 1] and is invariant under similarity transforms of either side.
double procrustes_statistic(const Layout& before, const Layout& after);

/// Mean over nodes of (k - m)^2, where m counts the k nearest neighbours of a
/// node in `before` that remain among its k nearest in `after`. Distance ties
/// go to the lower index.
double knn_distortion(const Layout& before, const Layout& after, std::size_t k);

struct AreaGrowth {
    double ratio = 1.0;
    double log_ratio = 0.0;
};

/// Bounding-box area of `after` over that of `before`.
AreaGrowth area_growth(const Layout& before, const Layout& after);

/// All metrics at once; `ks` selects the neighbour counts, skipping any that
/// are not below the node count.
MetricsReport compute_metrics(const Layout& before, const Layout& after, std::span<const std::size_t> ks);

/// Indices of the k nearest other centers of node i, sorted by (distance, index).
std::vector<std::size_t> nearest_neighbors(std::span<const Point> centers, std::size_t i, std::size_t k);

}  // namespace gtree
