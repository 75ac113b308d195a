#include "gtree/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "gtree/error.hpp"
#include "gtree/gtree.hpp"
#include "gtree/metrics.hpp"

namespace gtree::bench {
namespace {

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

Layout generate_instance(const InstanceSpec& spec) {
    if (!(spec.min_size > 0.0 && spec.max_size >= spec.min_size)) {
        throw InvalidArgumentError("node sizes need 0 < min_size <= max_size");
    }
    if (!(spec.overlap_density >= 0.0 && spec.overlap_density <= 1.0)) {
        throw InvalidArgumentError("overlap density must lie in [0, 1]");
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> log_size(std::log(spec.min_size), std::log(spec.max_size));
    std::vector<Rect> nodes(spec.node_count);
    double total_area = 0.0;
    for (Rect& r : nodes) {
        r.half_width = std::exp(log_size(rng)) / 2.0;
        r.half_height = std::exp(log_size(rng)) / 2.0;
        total_area += 4.0 * r.half_width * r.half_height;
    }

    if (spec.overlap_density == 0.0) {
        const auto columns = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(spec.node_count))));
        const double pitch = 1.01 * spec.max_size;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            nodes[i].center = {pitch * static_cast<double>(i % std::max<std::size_t>(columns, 1)),
                               pitch * static_cast<double>(i / std::max<std::size_t>(columns, 1))};
        }
        return make_layout(std::move(nodes));
    }

    const double side = std::sqrt(total_area / spec.overlap_density);
    std::uniform_real_distribution<double> coord(0.0, side);
    for (Rect& r : nodes) {
        const double x = coord(rng);
        r.center = {x, coord(rng)};
    }
    return make_layout(std::move(nodes));
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t node_count, std::size_t trial) {
    return splitmix(splitmix(splitmix(seed) ^ node_count) ^ trial);
}

std::string Mode::name() const { return cap ? "capped(" + format_number(*cap) + ")" : "uncapped"; }

Mode Mode::parse(std::string_view text) {
    const std::string s(text);
    if (s == "uncapped" || s == "off") return Mode{};
    if (s == "capped") return Mode{kDefaultGrowthCap};
    std::string number = s;
    if (s.rfind("capped(", 0) == 0 && s.back() == ')') number = s.substr(7, s.size() - 8);
    try {
        std::size_t used = 0;
        const double c = std::stod(number, &used);
        if (used != number.size() || !(c >= 1.0)) throw std::invalid_argument("cap");
        return Mode{c};
    } catch (const std::logic_error&) {
        throw InvalidArgumentError("unrecognized mode '" + s + "'");
    }
}

void BenchmarkSpec::validate() const {
    if (trials < 1) throw InvalidArgumentError("trials must be at least 1");
    if (node_counts.empty()) throw InvalidArgumentError("no node counts given");
    if (modes.empty()) throw InvalidArgumentError("no modes given");
    if (!(overlap_density >= 0.0 && overlap_density <= 1.0)) {
        throw InvalidArgumentError("overlap density must lie in [0, 1]");
    }
}

std::vector<Row> run_benchmark(const BenchmarkSpec& spec) {
    spec.validate();
    std::vector<Row> rows;
    for (std::size_t n : spec.node_counts) {
        std::vector<Layout> instances;
        for (std::size_t trial = 0; trial < spec.trials; ++trial) {
            instances.push_back(generate_instance(
                {n, spec.overlap_density, spec.min_size, spec.max_size, trial_seed(spec.seed, n, trial)}));
        }
        for (const Mode& mode : spec.modes) {
            Row row;
            row.n = n;
            row.mode = mode.name();
            for (std::size_t trial = 0; trial < spec.trials; ++trial) {
                GTreeConfig config;
                config.growth_cap = mode.cap;
                config.max_iterations = spec.max_iterations;
                config.rng_seed = trial_seed(spec.seed, n, trial);
                const RemovalResult result = remove_overlaps(instances[trial], config);
                const double seconds = result.stats.wall_time.count();
                const auto iterations = static_cast<double>(result.stats.iterations());
                row.mean_iterations += iterations;
                row.mean_wall_time += seconds;
                row.mean_iteration_time += iterations > 0 ? seconds / iterations : 0.0;
                row.mean_area_ratio += n > 0 ? area_growth(instances[trial], result.layout).ratio : 1.0;
                row.converged_fraction += result.stats.converged ? 1.0 : 0.0;
            }
            const auto trials = static_cast<double>(spec.trials);
            row.mean_iterations /= trials;
            row.mean_wall_time /= trials;
            row.mean_iteration_time /= trials;
            row.mean_area_ratio /= trials;
            row.converged_fraction /= trials;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string to_csv(const std::vector<Row>& rows) {
    std::string out = "n,mode,mean_iterations,mean_wall_time_s,mean_iteration_time_s,mean_area_ratio,converged_fraction\n";
    char buf[256];
    for (const Row& r : rows) {
        std::snprintf(buf, sizeof buf, "%zu,%s,%.6g,%.6g,%.6g,%.6g,%.6g\n", r.n, r.mode.c_str(), r.mean_iterations,
                      r.mean_wall_time, r.mean_iteration_time, r.mean_area_ratio, r.converged_fraction);
        out += buf;
    }
    return out;
}

BenchmarkSpec parse_spec(std::string_view json_text) {
    using nlohmann::json;
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw InvalidArgumentError(std::string("benchmark spec: ") + e.what());
    }
    if (!root.is_object()) throw InvalidArgumentError("benchmark spec must be a JSON object");
    BenchmarkSpec spec;
    try {
        if (root.contains("node_counts")) spec.node_counts = root.at("node_counts").get<std::vector<std::size_t>>();
        if (root.contains("overlap_density")) spec.overlap_density = root.at("overlap_density").get<double>();
        if (root.contains("trials")) spec.trials = root.at("trials").get<std::size_t>();
        if (root.contains("seed")) spec.seed = root.at("seed").get<std::uint64_t>();
        if (root.contains("min_size")) spec.min_size = root.at("min_size").get<double>();
        if (root.contains("max_size")) spec.max_size = root.at("max_size").get<double>();
        if (root.contains("max_iterations")) spec.max_iterations = root.at("max_iterations").get<std::size_t>();
        if (root.contains("modes")) {
            spec.modes.clear();
            for (const json& m : root.at("modes")) spec.modes.push_back(Mode::parse(m.get<std::string>()));
        }
    } catch (const json::exception& e) {
        throw InvalidArgumentError(std::string("benchmark spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace gtree::bench
