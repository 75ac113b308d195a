#include "gtree/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <unordered_map>

namespace gtree::io {
namespace {

using nlohmann::json;

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < byte; ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

class Reader {
public:
    Reader(ParseMode mode, std::vector<std::string>* warnings) : mode_(mode), warnings_(warnings) {}

    void check_fields(const json& object, const std::string& path, std::initializer_list<std::string_view> known) {
        for (const auto& [key, value] : object.items()) {
            if (std::find(known.begin(), known.end(), key) != known.end()) continue;
            const std::string where = path.empty() ? key : path + "." + key;
            if (mode_ == ParseMode::strict) throw ValidationError(where, "unknown field");
            if (warnings_) warnings_->push_back("ignoring unknown field '" + where + "'");
        }
    }

    static const json& member(const json& object, const std::string& path, const char* key) {
        const std::string where = path.empty() ? key : path + "." + key;
        if (!object.contains(key)) throw ValidationError(where, "missing required field");
        return object.at(key);
    }

    static double number(const json& object, const std::string& path, const char* key) {
        const json& v = member(object, path, key);
        const std::string where = path + "." + key;
        if (!v.is_number()) throw ValidationError(where, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ValidationError(where, "expected a finite number");
        return d;
    }

private:
    ParseMode mode_;
    std::vector<std::string>* warnings_;
};

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

ValidationError::ValidationError(std::string path, const std::string& what)
    : Error(path + ": " + what), path_(std::move(path)) {}

LayoutDocument parse_layout(std::string_view text, ParseMode mode, std::vector<std::string>* warnings) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(line, column, e.what());
    }

    Reader reader(mode, warnings);
    if (!root.is_object()) throw ValidationError("$", "expected a JSON object");
    reader.check_fields(root, "", {"version", "nodes", "edges"});

    LayoutDocument doc;
    const json& version = Reader::member(root, "", "version");
    if (!version.is_string()) throw ValidationError("version", "expected a string");
    doc.version = version.get<std::string>();
    if (doc.version != kFormatVersion) {
        throw ValidationError("version", "unsupported format version '" + doc.version + "'");
    }

    const json& nodes = Reader::member(root, "", "nodes");
    if (!nodes.is_array()) throw ValidationError("nodes", "expected an array");
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::string path = "nodes[" + std::to_string(k) + "]";
        const json& node = nodes[k];
        if (!node.is_object()) throw ValidationError(path, "expected an object");
        reader.check_fields(node, path, {"id", "x", "y", "w", "h"});
        const json& id = Reader::member(node, path, "id");
        if (!id.is_string()) throw ValidationError(path + ".id", "expected a string");
        DocumentNode n;
        n.id = id.get<std::string>();
        n.x = Reader::number(node, path, "x");
        n.y = Reader::number(node, path, "y");
        n.w = Reader::number(node, path, "w");
        n.h = Reader::number(node, path, "h");
        if (!(n.w > 0.0)) throw ValidationError(path + ".w", "width must be positive");
        if (!(n.h > 0.0)) throw ValidationError(path + ".h", "height must be positive");
        if (!index.emplace(n.id, k).second) throw ValidationError(path + ".id", "duplicate node id '" + n.id + "'");
        doc.nodes.push_back(std::move(n));
    }

    if (root.contains("edges")) {
        const json& edges = root.at("edges");
        if (!edges.is_array()) throw ValidationError("edges", "expected an array");
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const std::string path = "edges[" + std::to_string(k) + "]";
            const json& e = edges[k];
            if (!e.is_array() || e.size() != 2) throw ValidationError(path, "expected a pair of node ids");
            for (std::size_t side = 0; side < 2; ++side) {
                const std::string where = path + "[" + std::to_string(side) + "]";
                if (!e[side].is_string()) throw ValidationError(where, "expected a node id string");
                if (!index.contains(e[side].get<std::string>())) {
                    throw ValidationError(where, "unknown node id '" + e[side].get<std::string>() + "'");
                }
            }
            doc.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    }
    return doc;
}

std::string emit_layout(const LayoutDocument& doc) {
    std::string out = "{\n  \"version\": " + quoted(doc.version) + ",\n  \"nodes\": [";
    for (std::size_t k = 0; k < doc.nodes.size(); ++k) {
        const DocumentNode& n = doc.nodes[k];
        out += k == 0 ? "\n" : ",\n";
        out += "    {\"id\": " + quoted(n.id) + ", \"x\": " + format_number(n.x) + ", \"y\": " + format_number(n.y) +
               ", \"w\": " + format_number(n.w) + ", \"h\": " + format_number(n.h) + "}";
    }
    out += doc.nodes.empty() ? "]" : "\n  ]";
    if (!doc.edges.empty()) {
        out += ",\n  \"edges\": [";
        for (std::size_t k = 0; k < doc.edges.size(); ++k) {
            out += k == 0 ? "\n" : ",\n";
            out += "    [" + quoted(doc.edges[k].first) + ", " + quoted(doc.edges[k].second) + "]";
        }
        out += "\n  ]";
    }
    out += "\n}\n";
    return out;
}

Layout to_layout(const LayoutDocument& doc) {
    Layout layout;
    std::unordered_map<std::string, std::size_t> index;
    for (const DocumentNode& n : doc.nodes) {
        index.emplace(n.id, layout.size());
        layout.nodes.push_back(Rect{{n.x, n.y}, n.w / 2.0, n.h / 2.0});
        layout.ids.push_back(n.id);
    }
    for (const auto& [a, b] : doc.edges) {
        const auto ia = index.find(a);
        const auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) {
            throw ValidationError("edges", "edge refers to an unknown node id");
        }
        layout.graph_edges.push_back(IndexPair{ia->second, ib->second});
    }
    return layout;
}

LayoutDocument to_document(const Layout& layout) {
    LayoutDocument doc;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const Rect& r = layout.nodes[i];
        const std::string id = i < layout.ids.size() ? layout.ids[i] : std::to_string(i);
        doc.nodes.push_back({id, r.center.x, r.center.y, 2.0 * r.half_width, 2.0 * r.half_height});
    }
    for (const IndexPair& e : layout.graph_edges) {
        doc.edges.emplace_back(doc.nodes[e.i].id, doc.nodes[e.j].id);
    }
    return doc;
}

nlohmann::json metrics_json(const MetricsReport& report) {
    json knn = json::object();
    for (const auto& [k, v] : report.knn_distortion) knn[std::to_string(k)] = v;
    return json{
        {"sigma_edge", report.sigma_edge},
        {"sigma_disp", report.sigma_disp},
        {"knn_distortion", knn},
        {"area_ratio", report.area_ratio},
        {"log_area_ratio", report.log_area_ratio},
        {"formulas",
         {
             {"sigma_edge",
              "sqrt(mean_e(((L'_e - r L_e) / (r L_e))^2)) over Delaunay edges e of the original centers, "
              "r = median_e(L'_e / L_e)"},
             {"sigma_disp",
              "Procrustes residual after aligning final to original by scale, proper rotation (det = +1) and "
              "translation, divided by the centered sum of squares of the original"},
             {"knn_distortion", "mean over nodes of (k - m)^2, m = |N_k(original) intersect N_k(final)|, ties by index"},
             {"area_ratio", "bounding-box area of final rectangles / bounding-box area of original rectangles"},
             {"log_area_ratio", "natural log of area_ratio"},
         }},
    };
}

std::string render_svg(const LayoutDocument& doc, const SvgOptions& options) {
    const double s = options.scale;
    constexpr double inf = std::numeric_limits<double>::infinity();
    double min_x = inf, min_y = inf, max_x = -inf, max_y = -inf;
    for (const DocumentNode& n : doc.nodes) {
        // SVG's y axis points down; layouts use y up.
        min_x = std::min(min_x, (n.x - n.w / 2.0) * s);
        max_x = std::max(max_x, (n.x + n.w / 2.0) * s);
        min_y = std::min(min_y, (-n.y - n.h / 2.0) * s);
        max_y = std::max(max_y, (-n.y + n.h / 2.0) * s);
    }
    if (doc.nodes.empty()) min_x = min_y = 0.0, max_x = max_y = 1.0;
    const double pad = 0.05 * std::max(max_x - min_x, max_y - min_y) + 1.0;
    const double stroke = std::max(max_x - min_x, max_y - min_y) / 800.0 + 1e-3;

    auto attr = [](const char* name, double v) { return std::string(" ") + name + "=\"" + format_number(v) + "\""; };
    auto escape = [](const std::string& text) {
        std::string out;
        for (char c : text) {
            switch (c) {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '"': out += "&quot;"; break;
                default: out += c;
            }
        }
        return out;
    };
    auto line = [&](std::size_t a, std::size_t b, const std::string& style) {
        const DocumentNode& p = doc.nodes[a];
        const DocumentNode& q = doc.nodes[b];
        return "<line" + attr("x1", p.x * s) + attr("y1", -p.y * s) + attr("x2", q.x * s) + attr("y2", -q.y * s) +
               " " + style + "/>\n";
    };

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + format_number(min_x - pad) + " " +
           format_number(min_y - pad) + " " + format_number(max_x - min_x + 2 * pad) + " " +
           format_number(max_y - min_y + 2 * pad) + "\">\n";

    out += "<g fill=\"#f4f4f8\" fill-opacity=\"0.7\" stroke=\"#333333\" stroke-width=\"" + format_number(stroke) +
           "\">\n";
    for (const DocumentNode& n : doc.nodes) {
        out += "<rect" + attr("x", (n.x - n.w / 2.0) * s) + attr("y", (-n.y - n.h / 2.0) * s) + attr("width", n.w * s) +
               attr("height", n.h * s) + "><title>" + escape(n.id) + "</title></rect>\n";
    }
    out += "</g>\n";

    if (options.show_edges && !doc.edges.empty()) {
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t k = 0; k < doc.nodes.size(); ++k) index.emplace(doc.nodes[k].id, k);
        out += "<g stroke=\"#999999\" stroke-width=\"" + format_number(stroke) + "\">\n";
        for (const auto& [a, b] : doc.edges) {
            const auto ia = index.find(a);
            const auto ib = index.find(b);
            if (ia != index.end() && ib != index.end()) out += line(ia->second, ib->second, "");
        }
        out += "</g>\n";
    }

    if (options.show_tree && !options.tree.empty()) {
        out += "<g stroke=\"#1f5fd6\">\n";
        for (const SvgTreeEdge& e : options.tree) {
            if (e.i >= doc.nodes.size() || e.j >= doc.nodes.size()) continue;
            const std::string style =
                e.overlapping ? "stroke-width=\"" + format_number(3 * stroke) + "\""
                              : "stroke-width=\"" + format_number(stroke) + "\" stroke-dasharray=\"" +
                                    format_number(4 * stroke) + " " + format_number(3 * stroke) + "\"";
            out += line(e.i, e.j, style);
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace gtree::io
