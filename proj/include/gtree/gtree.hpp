#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "gtree/layout.hpp"
#include "gtree/spanning_tree.hpp"
#include "gtree/sweep.hpp"

namespace gtree {

inline constexpr double kDefaultGrowthCap = 1.5;
inline constexpr double kDefaultJitter = 1e-6;

struct GTreeConfig {
    /// Upper bound on the per-edge stretch factor; empty means uncapped.
    std::optional<double> growth_cap;
    /// Budget shared by both phases.
    std::size_t max_iterations = 1000;
    /// Jitter amplitude as a fraction of the bounding-box diagonal. Applied
    /// when centers coincide and, doubling each time, when a phase stops
    /// making progress for 10 iterations.
    double jitter_rel = kDefaultJitter;
    std::uint64_t rng_seed = 0;
    /// Overlaps no deeper than this along either axis are tolerated.
    double eps_overlap = 0.0;

    /// Throws InvalidArgumentError when a field is out of range.
    void validate() const;
};

struct RunStats {
    std::size_t iterations_phase1 = 0;
    std::size_t iterations_phase2 = 0;
    bool converged = false;
    std::chrono::duration<double> wall_time{0.0};

    std::size_t iterations() const noexcept { return iterations_phase1 + iterations_phase2; }
};

struct GrowCounters {
    std::size_t node_updates = 0;
};

/// Grows `tree` over `layout`: the root stays put and each child is placed at
/// parent_new + f * (child_old - parent_old), with f the edge's touching
/// parameter, or min(t, cap) when capped. An edge grown by its full t is
/// stretched by a further relative 1e-9 so the pair ends strictly apart
/// rather than in exact contact. Only centers change.
Layout grow(const Layout& layout, const RootedTree& tree, std::optional<double> cap,
            GrowCounters* counters = nullptr);

bool has_coincident_centers(const Layout& layout);

/// Shifts every center by an independent uniform offset in [-j, j]^2 with
/// j = jitter_rel * (bounding-box diagonal), drawn from a PRNG seeded by `seed`.
Layout jitter(const Layout& layout, double jitter_rel, std::uint64_t seed);

struct IterationResult {
    Layout layout;                      // after growing
    std::size_t overlap_edge_count = 0; // overlapping proximity edges before growing
    ProximityGraph proximity;
    RootedTree tree;
};

/// One pass: triangulate, optionally augment with every overlapping pair,
/// cost, build the MST rooted at the central node, grow. Centers that
/// coincide are jittered first.
IterationResult single_iteration(const Layout& layout, const GTreeConfig& config, bool augment);

struct IterationSnapshot {
    int phase = 1;
    std::size_t iteration = 0;  // 1-based across both phases
    const Layout& before;
    const IterationResult& result;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

struct RemovalResult {
    Layout layout;
    RunStats stats;
};

/// Removes node overlaps. Phase 1 iterates on the Delaunay graph until none of
/// its edges overlap; phase 2 additionally feeds every overlapping pair found
/// by a sweep into the graph until no overlap remains. A phase whose overlap
/// count has not reached a new low for 10 iterations is jittered. Hitting
/// max_iterations is reported through RunStats::converged, never thrown.
RemovalResult remove_overlaps(const Layout& layout, const GTreeConfig& config,
                              const IterationObserver& observer = {});

}  // namespace gtree
