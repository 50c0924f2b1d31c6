#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "causalstore/graph.hpp"

namespace causalstore {

struct RenderOptions {
    // Directory to write into; nothing is written when unset.
    std::optional<std::filesystem::path> destination;
    // Defaults to `graph.dot` / `graph.html`.
    std::string filename;
    // Edge labels and tooltips.
    bool include_metadata = true;
    // Interactive viewer embedded by the HTML output. The built-in static
    // renderer is used when unset.
    std::optional<std::string> viewer_script;
};

// One `digraph` with a node per causal node and an arrow per causal edge, in
// lexicographic order. Edge labels read `c=<confidence>, lag=<lag>s`.
std::string render_dot(const Graph& graph, bool include_metadata = true);

// Self-contained page: the property-graph JSON in
// <script type="application/json" id="cg-data"> plus the viewer script.
std::string render_html(const Graph& graph, const RenderOptions& options = {});

// Renders and, when a destination is set, writes the file. Returns the text.
std::string emit_dot(const Graph& graph, const RenderOptions& options = {});
// Writes the page and returns its path. Requires a destination.
std::filesystem::path emit_html(const Graph& graph, const RenderOptions& options);

// The viewer used when no script is supplied.
const std::string& fallback_viewer_script();

}  // namespace causalstore
