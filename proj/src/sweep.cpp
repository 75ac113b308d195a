#include "gtree/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace gtree {
namespace {

// Closed intervals are widened by this relative margin so the sweep reports a
// superset of the pairs; every candidate is then confirmed with overlaps().
constexpr double kMargin = 1e-10;

struct Interval {
    double lo;
    double hi;
};

Interval widened(double center, double half) {
    const double pad = kMargin * (std::abs(center) + half) + std::numeric_limits<double>::min();
    return {center - half - pad, center + half + pad};
}

// Segment tree over compressed y coordinates answering "which active
// intervals contain coordinate index q" in O(log m + k).
class StabbingTree {
public:
    StabbingTree(std::size_t coordinate_count, std::size_t interval_count)
        : size_(std::max<std::size_t>(coordinate_count, 1)), lists_(4 * size_), slots_(interval_count) {}

    void insert(std::size_t id, std::size_t lo, std::size_t hi) { insert(1, 0, size_ - 1, id, lo, hi); }

    void erase(std::size_t id) {
        for (const auto& [node, pos] : slots_[id]) {
            auto& list = lists_[node];
            const std::size_t moved = list.back();
            list[pos] = moved;
            list.pop_back();
            if (moved != id) {
                for (auto& slot : slots_[moved]) {
                    if (slot.first == node) {
                        slot.second = pos;
                        break;
                    }
                }
            }
        }
        slots_[id].clear();
    }

    template <typename Visit>
    void stab(std::size_t q, Visit&& visit) const {
        std::size_t node = 1, lo = 0, hi = size_ - 1;
        while (true) {
            for (std::size_t id : lists_[node]) visit(id);
            if (lo == hi) break;
            const std::size_t mid = lo + (hi - lo) / 2;
            if (q <= mid) {
                node = 2 * node;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
    }

private:
    void insert(std::size_t node, std::size_t lo, std::size_t hi, std::size_t id, std::size_t from,
                std::size_t to) {
        if (to < lo || hi < from) return;
        if (from <= lo && hi <= to) {
            slots_[id].emplace_back(node, lists_[node].size());
            lists_[node].push_back(id);
            return;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        insert(2 * node, lo, mid, id, from, to);
        insert(2 * node + 1, mid + 1, hi, id, from, to);
    }

    std::size_t size_;
    std::vector<std::vector<std::size_t>> lists_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> slots_;
};

}  // namespace

std::vector<IndexPair> find_all_overlapping_pairs(const Layout& layout, double eps) {
    const std::size_t n = layout.size();
    std::vector<IndexPair> pairs;
    if (n < 2) return pairs;

    std::vector<Interval> xs(n), ys(n);
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rect& r = layout.nodes[i];
        xs[i] = widened(r.center.x, r.half_width);
        ys[i] = widened(r.center.y, r.half_height);
        coords.push_back(ys[i].lo);
        coords.push_back(ys[i].hi);
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    auto rank = [&](double v) {
        return static_cast<std::size_t>(std::lower_bound(coords.begin(), coords.end(), v) - coords.begin());
    };
    std::vector<std::size_t> lo_rank(n), hi_rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo_rank[i] = rank(ys[i].lo);
        hi_rank[i] = rank(ys[i].hi);
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return xs[a].lo != xs[b].lo ? xs[a].lo < xs[b].lo : a < b;
    });

    StabbingTree stabbing(coords.size(), n);
    std::set<std::pair<double, std::size_t>> by_lower;
    using Exit = std::pair<double, std::size_t>;
    std::priority_queue<Exit, std::vector<Exit>, std::greater<>> exits;

    auto report = [&](std::size_t a, std::size_t b) {
        if (overlaps(layout.nodes[a], layout.nodes[b], eps)) pairs.push_back(IndexPair::of(a, b));
    };

    for (std::size_t i : order) {
        while (!exits.empty() && exits.top().first < xs[i].lo) {
            const std::size_t gone = exits.top().second;
            exits.pop();
            stabbing.erase(gone);
            by_lower.erase({ys[gone].lo, gone});
        }
        // Active intervals starting inside [lo, hi] ...
        for (auto it = by_lower.lower_bound({ys[i].lo, 0}); it != by_lower.end() && it->first <= ys[i].hi; ++it) {
            report(i, it->second);
        }
        // ... and those starting below lo that still contain it.
        stabbing.stab(lo_rank[i], [&](std::size_t other) {
            if (ys[other].lo < ys[i].lo) report(i, other);
        });
        stabbing.insert(i, lo_rank[i], hi_rank[i]);
        by_lower.emplace(ys[i].lo, i);
        exits.emplace(xs[i].hi, i);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace gtree
