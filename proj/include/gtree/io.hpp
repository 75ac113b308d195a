#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gtree/error.hpp"
#include "gtree/layout.hpp"
#include "gtree/metrics.hpp"

namespace gtree::io {

inline constexpr std::string_view kFormatVersion = "1";

struct DocumentNode {
    std::string id;
    double x = 0.0;
    double y = 0.0;
    double w = 1.0;  // full width
    double h = 1.0;  // full height

    friend bool operator==(const DocumentNode&, const DocumentNode&) = default;
};

/// On-disk layout: nodes with full extents and optional id-based edges.
struct LayoutDocument {
    std::string version{kFormatVersion};
    std::vector<DocumentNode> nodes;
    std::vector<std::pair<std::string, std::string>> edges;

    friend bool operator==(const LayoutDocument&, const LayoutDocument&) = default;
};

/// Malformed JSON. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed JSON that violates the schema; path looks like "nodes[2].w".
class ValidationError : public Error {
public:
    ValidationError(std::string path, const std::string& what);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

enum class ParseMode { strict, lenient };

/// Parses and validates a layout document. In lenient mode unknown fields are
/// skipped and reported through `warnings` instead of failing.
LayoutDocument parse_layout(std::string_view text, ParseMode mode = ParseMode::strict,
                            std::vector<std::string>* warnings = nullptr);

/// Canonical serialization: fixed key order, numbers with 17 significant
/// digits, "edges" omitted when empty.
std::string emit_layout(const LayoutDocument& doc);

Layout to_layout(const LayoutDocument& doc);
LayoutDocument to_document(const Layout& layout);

/// Metrics as JSON, with the formula used for each measure spelled out.
nlohmann::json metrics_json(const MetricsReport& report);

struct SvgTreeEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    bool overlapping = false;
};

struct SvgOptions {
    bool show_edges = true;
    bool show_tree = false;
    double scale = 1.0;
    std::vector<SvgTreeEdge> tree;  // drawn when show_tree is set
};

/// SVG 1.1 drawing: one rect per node, graph edges in grey, tree edges in blue
/// (thick and solid where the endpoints overlap, dashed otherwise).
std::string render_svg(const LayoutDocument& doc, const SvgOptions& options = {});

}  // namespace gtree::io
