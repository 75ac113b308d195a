// Command-line front end: remove, metrics, bench, gen.
//
// Exit codes: 0 success (all inputs converged), 1 validation error,
// 2 non-convergence, 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "gtree/benchmark.hpp"
#include "gtree/gtree.hpp"
#include "gtree/io.hpp"
#include "gtree/metrics.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kNotConverged = 2, kIo = 3 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("error while writing '" + path + "'");
}

std::optional<double> parse_cap(const std::string& text) {
    if (text == "off" || text == "none" || text == "uncapped") return std::nullopt;
    const gtree::bench::Mode mode = gtree::bench::Mode::parse(text);
    return mode.cap;
}

gtree::io::LayoutDocument load_document(const std::string& path, bool lenient) {
    std::vector<std::string> warnings;
    auto doc = gtree::io::parse_layout(read_file(path),
                                       lenient ? gtree::io::ParseMode::lenient : gtree::io::ParseMode::strict,
                                       &warnings);
    for (const std::string& w : warnings) std::cerr << path << ": warning: " << w << "\n";
    return doc;
}

std::vector<gtree::io::SvgTreeEdge> tree_overlay(const gtree::Layout& layout, const gtree::RootedTree& tree) {
    std::vector<gtree::io::SvgTreeEdge> out;
    for (std::size_t v = 0; v < tree.size(); ++v) {
        const std::size_t p = tree.parent[v];
        if (p == gtree::kNoParent) continue;
        out.push_back({p, v, gtree::overlaps(layout.nodes[p], layout.nodes[v])});
    }
    return out;
}

struct RemoveOptions {
    std::vector<std::string> inputs;
    std::string output;
    std::string output_dir;
    std::string svg_before;
    std::string svg_after;
    std::string svg_every;
    std::string cap = "off";
    std::size_t max_iterations = 1000;
    std::uint64_t seed = 0;
    double eps = 0.0;
    double jitter = gtree::kDefaultJitter;
    bool lenient = false;
    bool quiet = false;
};

int run_remove(const RemoveOptions& opt) {
    if (opt.inputs.size() > 1 && opt.output_dir.empty()) {
        throw gtree::InvalidArgumentError("several inputs need --output-dir");
    }
    if (opt.inputs.size() > 1 && (!opt.svg_before.empty() || !opt.svg_after.empty() || !opt.svg_every.empty())) {
        throw gtree::InvalidArgumentError("SVG output supports a single input");
    }
    gtree::GTreeConfig config;
    config.growth_cap = parse_cap(opt.cap);
    config.max_iterations = opt.max_iterations;
    config.rng_seed = opt.seed;
    config.eps_overlap = opt.eps;
    config.jitter_rel = opt.jitter;
    config.validate();

    int status = kOk;
    for (const std::string& input : opt.inputs) {
        int file_status = kOk;
        try {
            const gtree::io::LayoutDocument doc = load_document(input, opt.lenient);
            const gtree::Layout layout = gtree::io::to_layout(doc);
            if (!opt.svg_before.empty()) write_file(opt.svg_before, gtree::io::render_svg(doc));

            gtree::IterationObserver observer;
            if (!opt.svg_every.empty()) {
                fs::create_directories(opt.svg_every);
                observer = [&](const gtree::IterationSnapshot& snap) {
                    gtree::io::SvgOptions svg;
                    svg.show_edges = false;
                    svg.show_tree = true;
                    svg.tree = tree_overlay(snap.before, snap.result.tree);
                    char name[32];
                    std::snprintf(name, sizeof name, "iteration_%04zu.svg", snap.iteration);
                    write_file((fs::path(opt.svg_every) / name).string(),
                               gtree::io::render_svg(gtree::io::to_document(snap.before), svg));
                };
            }

            const gtree::RemovalResult result = gtree::remove_overlaps(layout, config, observer);
            const gtree::io::LayoutDocument out_doc = gtree::io::to_document(result.layout);
            std::string target = opt.output;
            if (!opt.output_dir.empty()) {
                fs::create_directories(opt.output_dir);
                target = (fs::path(opt.output_dir) / fs::path(input).filename()).string();
            }
            write_file(target, gtree::io::emit_layout(out_doc));
            if (!opt.svg_after.empty()) write_file(opt.svg_after, gtree::io::render_svg(out_doc));

            const auto& s = result.stats;
            if (!opt.quiet) {
                std::cerr << input << ": " << (s.converged ? "converged" : "NOT converged") << " after "
                          << s.iterations() << " iterations (" << s.iterations_phase1 << " + "
                          << s.iterations_phase2 << "), " << s.wall_time.count() << " s\n";
            }
            if (!s.converged) file_status = kNotConverged;
        } catch (const IoError& e) {
            std::cerr << input << ": " << e.what() << "\n";
            file_status = kIo;
        } catch (const fs::filesystem_error& e) {
            std::cerr << input << ": " << e.what() << "\n";
            file_status = kIo;
        } catch (const gtree::Error& e) {
            std::cerr << input << ": " << e.what() << "\n";
            file_status = kValidation;
        }
        status = std::max(status, file_status);
    }
    return status;
}

struct MetricsOptions {
    std::string before;
    std::string after;
    std::vector<std::size_t> ks{8, 9, 10, 11, 12};
    std::string output;
    bool lenient = false;
};

int run_metrics(const MetricsOptions& opt) {
    const gtree::Layout before = gtree::io::to_layout(load_document(opt.before, opt.lenient));
    const gtree::Layout raw_after = gtree::io::to_layout(load_document(opt.after, opt.lenient));
    if (before.size() != raw_after.size()) {
        throw gtree::InvalidArgumentError("layouts have different node counts");
    }
    // Match nodes by id; the files may list them in different orders.
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < raw_after.size(); ++i) index.emplace(raw_after.ids[i], i);
    gtree::Layout after = before;
    for (std::size_t i = 0; i < before.size(); ++i) {
        const auto it = index.find(before.ids[i]);
        if (it == index.end()) throw gtree::InvalidArgumentError("node '" + before.ids[i] + "' missing in --after");
        after.nodes[i] = raw_after.nodes[it->second];
    }
    const gtree::MetricsReport report = gtree::compute_metrics(before, after, opt.ks);
    nlohmann::json j = gtree::io::metrics_json(report);
    j["node_count"] = before.size();
    write_file(opt.output, j.dump(2) + "\n");
    return kOk;
}

struct BenchOptions {
    std::string spec_file;
    std::vector<std::size_t> sizes{50, 100};
    double density = 0.3;
    std::size_t trials = 3;
    std::uint64_t seed = 0;
    std::vector<std::string> modes{"uncapped", "capped(1.5)"};
    std::size_t max_iterations = 1000;
    std::string output;
};

int run_bench(const BenchOptions& opt) {
    gtree::bench::BenchmarkSpec spec;
    if (!opt.spec_file.empty()) {
        spec = gtree::bench::parse_spec(read_file(opt.spec_file));
    } else {
        spec.node_counts = opt.sizes;
        spec.overlap_density = opt.density;
        spec.trials = opt.trials;
        spec.seed = opt.seed;
        spec.max_iterations = opt.max_iterations;
        spec.modes.clear();
        for (const std::string& m : opt.modes) spec.modes.push_back(gtree::bench::Mode::parse(m));
    }
    const auto rows = gtree::bench::run_benchmark(spec);
    write_file(opt.output, gtree::bench::to_csv(rows));
    const bool all_converged =
        std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.converged_fraction == 1.0; });
    return all_converged ? kOk : kNotConverged;
}

int run_gen(const gtree::bench::InstanceSpec& spec, const std::string& output) {
    write_file(output, gtree::io::emit_layout(gtree::io::to_document(gtree::bench::generate_instance(spec))));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Node overlap removal by growing minimum spanning trees"};
    app.require_subcommand(1);

    RemoveOptions remove;
    auto* cmd_remove = app.add_subcommand("remove", "Remove node overlaps from layout files");
    cmd_remove->add_option("-i,--input", remove.inputs, "Input layout JSON (repeatable)")->required();
    cmd_remove->add_option("-o,--output", remove.output, "Output layout JSON (default: stdout)");
    cmd_remove->add_option("--output-dir", remove.output_dir, "Directory for results when given several inputs");
    cmd_remove->add_option("--svg-before", remove.svg_before, "Render the input layout to this SVG file");
    cmd_remove->add_option("--svg-after", remove.svg_after, "Render the result to this SVG file");
    cmd_remove->add_option("--svg-every-iteration", remove.svg_every,
                           "Directory receiving one SVG per iteration, with the spanning tree drawn");
    cmd_remove->add_option("--cap", remove.cap, "Growth cap: a number >= 1, or 'off'")->capture_default_str();
    cmd_remove->add_option("--max-iters", remove.max_iterations, "Iteration budget")->capture_default_str();
    cmd_remove->add_option("--seed", remove.seed, "PRNG seed for jitter")->capture_default_str();
    cmd_remove->add_option("--eps", remove.eps, "Tolerated overlap depth")->capture_default_str();
    cmd_remove->add_option("--jitter", remove.jitter, "Jitter amplitude relative to the bounding-box diagonal")
        ->capture_default_str();
    cmd_remove->add_flag("--lenient", remove.lenient, "Ignore unknown JSON fields instead of rejecting them");
    cmd_remove->add_flag("-q,--quiet", remove.quiet, "Do not print per-file statistics");

    MetricsOptions metrics;
    auto* cmd_metrics = app.add_subcommand("metrics", "Compare an adjusted layout with the original");
    cmd_metrics->add_option("--before", metrics.before, "Original layout JSON")->required();
    cmd_metrics->add_option("--after", metrics.after, "Adjusted layout JSON")->required();
    cmd_metrics->add_option("-k,--k", metrics.ks, "Neighbour counts for the k-closest-neighbours measure")
        ->capture_default_str();
    cmd_metrics->add_option("-o,--output", metrics.output, "Output JSON (default: stdout)");
    cmd_metrics->add_flag("--lenient", metrics.lenient, "Ignore unknown JSON fields");

    BenchOptions bench;
    auto* cmd_bench = app.add_subcommand("bench", "Run the benchmark harness and print CSV");
    cmd_bench->add_option("--spec", bench.spec_file, "Benchmark spec JSON; overrides the inline flags");
    cmd_bench->add_option("--sizes", bench.sizes, "Node counts")->capture_default_str();
    cmd_bench->add_option("--density", bench.density, "Node area over domain area")->capture_default_str();
    cmd_bench->add_option("--trials", bench.trials, "Trials per cell")->capture_default_str();
    cmd_bench->add_option("--seed", bench.seed, "Run seed")->capture_default_str();
    cmd_bench->add_option("--modes", bench.modes, "Modes: uncapped, capped, capped(c)")->capture_default_str();
    cmd_bench->add_option("--max-iters", bench.max_iterations, "Iteration budget per run")->capture_default_str();
    cmd_bench->add_option("-o,--output", bench.output, "Output CSV (default: stdout)");

    gtree::bench::InstanceSpec gen;
    std::string gen_output;
    auto* cmd_gen = app.add_subcommand("gen", "Generate a random layout instance");
    cmd_gen->add_option("-n,--nodes", gen.node_count, "Number of nodes")->capture_default_str();
    cmd_gen->add_option("--density", gen.overlap_density, "Node area over domain area, 0 for a grid")
        ->capture_default_str();
    cmd_gen->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
    cmd_gen->add_option("--min-size", gen.min_size, "Smallest side length")->capture_default_str();
    cmd_gen->add_option("--max-size", gen.max_size, "Largest side length")->capture_default_str();
    cmd_gen->add_option("-o,--output", gen_output, "Output JSON (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*cmd_remove) return run_remove(remove);
        if (*cmd_metrics) return run_metrics(metrics);
        if (*cmd_bench) return run_bench(bench);
        if (*cmd_gen) return run_gen(gen, gen_output);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const gtree::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}
