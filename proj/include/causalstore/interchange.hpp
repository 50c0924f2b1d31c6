#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "causalstore/documents.hpp"
#include "causalstore/graph.hpp"

namespace causalstore {

// --- property graph (lossless) ------------------------------------------------

// Nodes are every store individual that is not a well-formed causal edge, in
// creation order. Statements the structured fields cannot carry end up in
// ontology_extras, so loading the document reproduces the store exactly.
PropertyGraphDoc export_property_graph(const Graph& graph);

// Materializes `doc` into `graph`, which must be empty, as one commit. The
// document is checked (unique names, known endpoints, metadata bounds, a clean
// validate()) before anything is written.
void fill_graph(Graph& graph, const PropertyGraphDoc& doc);

// Creates a new graph from `doc`. `config.store_path`, when set, must not exist
// unless `overwrite` is set; a failed load removes the file again.
Graph load_property_graph(const PropertyGraphDoc& doc, GraphConfig config = {}, bool overwrite = false);

// --- link tuple (lossy) --------------------------------------------------------

struct LinkTupleExport {
    LinkTupleDoc doc;
    // Skipped individuals and inexact lag conversions.
    std::vector<std::string> warnings;
};

// Variables are the causal node names in lexicographic order; links are
// sorted. Missing confidence becomes 1.0 and missing lag 0 steps. Lags are
// rounded half away from zero to whole steps.
LinkTupleExport export_link_tuple(const Graph& graph, double step_s = 1.0);

// Edges are named `<cause>-><effect>_<k>` with the smallest free k and carry
// confidence plus time_lag_s = lag_steps * step_s.
void fill_graph(Graph& graph, const LinkTupleDoc& doc);
Graph load_link_tuple(const LinkTupleDoc& doc, GraphConfig config = {}, bool overwrite = false);

// --- JSON ------------------------------------------------------------------------

// Compact UTF-8 JSON with alphabetical keys. '<', '>' and '&' are written as
// \u escapes so the text can sit verbatim inside an HTML script element.
std::string to_json(const PropertyGraphDoc& doc);
std::string to_json(const LinkTupleDoc& doc);
// Throw ParseError on malformed JSON, ValidationError on a wrong shape.
PropertyGraphDoc property_graph_from_json(std::string_view text);
LinkTupleDoc link_tuple_from_json(std::string_view text);

// --- graph exchange formats -------------------------------------------------------

// Directed multigraphs over the causal nodes. Nodes carry `label` (name) and
// an optional first comment; edges carry name, confidence, time_lag_s and the
// first comment when present.
std::string to_gml(const Graph& graph);
std::string to_graphml(const Graph& graph);
void export_gml(const Graph& graph, const std::filesystem::path& path);
void export_graphml(const Graph& graph, const std::filesystem::path& path);

// Writes `text` to `path`, replacing it. Throws StorageError.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace causalstore
