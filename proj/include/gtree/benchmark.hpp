#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtree/layout.hpp"

namespace gtree::bench {

/// Random rectangles with log-uniform side lengths in [min_size, max_size]
/// and centers uniform over a square chosen so that the total node area is
/// `overlap_density` times the square's area. Density 0 lays the nodes on a
/// grid with no overlaps.
struct InstanceSpec {
    std::size_t node_count = 100;
    double overlap_density = 0.3;
    double min_size = 1.0;
    double max_size = 10.0;
    std::uint64_t seed = 0;
};

Layout generate_instance(const InstanceSpec& spec);

/// Per-trial seed derived from the run seed and the trial coordinates.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t node_count, std::size_t trial);

struct Mode {
    std::optional<double> cap;  // empty = uncapped

    std::string name() const;
    /// Accepts "uncapped", "off", "capped" (cap 1.5), "capped(c)" or a bare number c.
    static Mode parse(std::string_view text);
};

struct BenchmarkSpec {
    std::vector<std::size_t> node_counts{50, 100};
    double overlap_density = 0.3;
    std::size_t trials = 3;
    std::uint64_t seed = 0;
    std::vector<Mode> modes{Mode{}, Mode{1.5}};
    double min_size = 1.0;
    double max_size = 10.0;
    std::size_t max_iterations = 1000;

    void validate() const;
};

struct Row {
    std::size_t n = 0;
    std::string mode;
    double mean_iterations = 0.0;
    double mean_wall_time = 0.0;       // seconds per run
    double mean_iteration_time = 0.0;  // seconds per iteration
    double mean_area_ratio = 0.0;
    double converged_fraction = 0.0;
};

/// Runs every (n, mode) cell over `trials` instances. Instances depend only on
/// (seed, n, trial), so modes are compared on identical inputs.
std::vector<Row> run_benchmark(const BenchmarkSpec& spec);

std::string to_csv(const std::vector<Row>& rows);

/// Reads a spec from JSON: {"node_counts": [...], "overlap_density": d,
/// "trials": t, "seed": s, "modes": ["uncapped", "capped(1.5)"], ...}.
BenchmarkSpec parse_spec(std::string_view json_text);

}  // namespace gtree::bench
