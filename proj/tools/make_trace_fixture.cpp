// Searches seeds for a small clustered layout whose overlapping-edge count
// strictly decreases to zero, and writes the first match as a fixture.
//
// Usage: make_trace_fixture <output.json> [growing_iterations=4]

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "gtree/gtree.hpp"
#include "gtree/io.hpp"

namespace {

constexpr std::size_t kNodes = 8;

double round2(double v) { return std::round(v * 100.0) / 100.0; }

gtree::Layout cluster(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, 4.0);
    std::uniform_real_distribution<double> width(1.5, 4.0);
    std::vector<gtree::Rect> rects;
    for (std::size_t i = 0; i < kNodes; ++i) {
        const double x = round2(pos(rng));
        const double y = round2(pos(rng));
        rects.push_back({{x, y}, round2(width(rng)) / 2.0, 0.5});
    }
    return gtree::make_layout(std::move(rects));
}

// Overlapping-edge counts per iteration; empty unless the run converged.
std::vector<std::size_t> trace(const gtree::Layout& layout) {
    std::vector<std::size_t> counts;
    const auto result = gtree::remove_overlaps(layout, {}, [&](const gtree::IterationSnapshot& s) {
        counts.push_back(s.result.overlap_edge_count);
    });
    if (!result.stats.converged) counts.clear();
    return counts;
}

bool wanted(const std::vector<std::size_t>& counts, std::size_t growing) {
    // `growing` iterations with a positive, strictly decreasing count, then the
    // phase-1 check and the phase-2 check both at zero.
    if (counts.size() != growing + 2) return false;
    for (std::size_t i = 0; i < growing; ++i) {
        if (counts[i] == 0 || (i > 0 && counts[i] >= counts[i - 1])) return false;
    }
    return counts[growing] == 0 && counts[growing + 1] == 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: make_trace_fixture <output.json> [growing_iterations]\n";
        return 1;
    }
    const std::size_t growing = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 4;
    for (std::uint64_t seed = 1; seed < 1000000; ++seed) {
        const gtree::Layout layout = cluster(seed);
        const auto counts = trace(layout);
        if (!wanted(counts, growing)) continue;
        std::ofstream(argv[1]) << gtree::io::emit_layout(gtree::io::to_document(layout));
        std::cout << "seed " << seed << " counts";
        for (std::size_t c : counts) std::cout << ' ' << c;
        std::cout << "\n";
        return 0;
    }
    std::cerr << "no matching seed\n";
    return 1;
}
