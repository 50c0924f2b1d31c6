#include "causalstore/viz.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "causalstore/error.hpp"
#include "causalstore/interchange.hpp"
#include "causalstore/vocabulary.hpp"

namespace causalstore {

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else if (c == '\r') {
            continue;
        } else {
            out += c;
        }
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

const char* kFallbackViewer = R"JS((function () {
  var island = document.getElementById("cg-data");
  var root = document.getElementById("cg-view");
  var doc;
  try {
    doc = JSON.parse(island.textContent);
  } catch (e) {
    root.textContent = "Could not read the graph data: " + e.message;
    return;
  }
  var SVG = "http://www.w3.org/2000/svg";
  function el(ns, tag, attrs, text) {
    var n = ns ? document.createElementNS(ns, tag) : document.createElement(tag);
    for (var k in attrs) n.setAttribute(k, attrs[k]);
    if (text !== undefined) n.textContent = text;
    return n;
  }
  function local(iri) { return iri.replace(/^.*[#\/]/, ""); }
  function num(x) { return Number.isInteger(x) ? x.toFixed(1) : String(x); }

  var endpoints = {};
  doc.edges.forEach(function (e) { endpoints[e.cause] = true; endpoints[e.effect] = true; });
  var nodes = doc.nodes.filter(function (n) {
    return endpoints[n.name] || n.types.some(function (t) { return /causalgraph#(CausalNode|State|Event|Variable)$/.test(t); });
  });
  if (nodes.length === 0) {
    root.appendChild(el(null, "p", {}, "empty graph"));
    return;
  }

  var size = 520, r = 200, cx = size / 2, cy = size / 2, pos = {};
  nodes.forEach(function (n, i) {
    var a = 2 * Math.PI * i / nodes.length - Math.PI / 2;
    pos[n.name] = [cx + r * Math.cos(a), cy + r * Math.sin(a)];
  });
  var svg = el(SVG, "svg", {width: size, height: size, viewBox: "0 0 " + size + " " + size});
  var defs = el(SVG, "defs", {});
  var marker = el(SVG, "marker", {id: "arrow", viewBox: "0 0 10 10", refX: 10, refY: 5, markerWidth: 8, markerHeight: 8, orient: "auto"});
  marker.appendChild(el(SVG, "path", {d: "M0,0 L10,5 L0,10 z", fill: "#555"}));
  defs.appendChild(marker);
  svg.appendChild(defs);

  doc.edges.forEach(function (e) {
    var p = pos[e.cause], q = pos[e.effect];
    if (!p || !q) return;
    var dx = q[0] - p[0], dy = q[1] - p[1], len = Math.sqrt(dx * dx + dy * dy) || 1, k = 22 / len;
    var g = el(SVG, "g", {"class": "cg-edge", "data-name": e.name});
    var meta = [e.name];
    if (e.confidence !== undefined) meta.push("confidence: " + num(e.confidence));
    if (e.time_lag_s !== undefined) meta.push("time lag: " + num(e.time_lag_s) + " s");
    e.comments.forEach(function (c) { meta.push(c); });
    g.appendChild(el(SVG, "title", {}, meta.join("\n")));
    g.appendChild(el(SVG, "line", {x1: p[0] + dx * k, y1: p[1] + dy * k, x2: q[0] - dx * k, y2: q[1] - dy * k,
      stroke: "#555", "stroke-width": 1.5, "marker-end": "url(#arrow)"}));
    svg.appendChild(g);
  });
  nodes.forEach(function (n) {
    var g = el(SVG, "g", {"class": "cg-node", "data-name": n.name});
    g.appendChild(el(SVG, "title", {}, ["types: " + n.types.map(local).join(", ")].concat(n.comments).join("\n")));
    g.appendChild(el(SVG, "circle", {cx: pos[n.name][0], cy: pos[n.name][1], r: 20, fill: "#dde8f5", stroke: "#335"}));
    g.appendChild(el(SVG, "text", {x: pos[n.name][0], y: pos[n.name][1] + 34, "text-anchor": "middle"}, n.name));
    svg.appendChild(g);
  });
  root.appendChild(svg);

  var table = el(null, "table", {});
  var head = el(null, "tr", {});
  ["edge", "cause", "effect", "confidence", "time lag (s)", "comments"].forEach(function (h) {
    head.appendChild(el(null, "th", {}, h));
  });
  table.appendChild(head);
  doc.edges.forEach(function (e) {
    var row = el(null, "tr", {});
    [e.name, e.cause, e.effect,
     e.confidence === undefined ? "" : num(e.confidence),
     e.time_lag_s === undefined ? "" : num(e.time_lag_s),
     e.comments.join("; ")].forEach(function (v) { row.appendChild(el(null, "td", {}, v)); });
    table.appendChild(row);
  });
  root.appendChild(table);
})();
)JS";

std::filesystem::path target(const RenderOptions& options, const char* default_name) {
    return *options.destination / (options.filename.empty() ? std::string(default_name) : options.filename);
}

}  // namespace

const std::string& fallback_viewer_script() {
    static const std::string script = kFallbackViewer;
    return script;
}

std::string render_dot(const Graph& graph, bool include_metadata) {
    auto nodes = graph.causal_node_names();
    std::sort(nodes.begin(), nodes.end());

    std::vector<CausalEdgeRecord> edges;
    for (const auto& name : graph.causal_edge_names()) {
        auto rec = graph.get_edge_record(name);
        if (!std::binary_search(nodes.begin(), nodes.end(), rec.cause) ||
            !std::binary_search(nodes.begin(), nodes.end(), rec.effect))
            continue;
        edges.push_back(std::move(rec));
    }
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.cause, a.effect, a.name) < std::tie(b.cause, b.effect, b.name);
    });

    std::ostringstream out;
    out << "digraph causalgraph {\n  rankdir=LR;\n  node [shape=ellipse];\n";
    for (const auto& n : nodes) {
        out << "  " << dot_quote(n) << " [label=" << dot_quote(n);
        if (include_metadata) {
            auto ind = graph.get_entity_by_name(n);
            std::vector<std::string> types;
            for (const auto& t : ind->types) types.push_back(display_name(t));
            std::string tip = "types: " + join(types, ", ");
            for (const auto& t : graph.store().match(individual_term(n), Term::iri(std::string(vocab::kRdfsComment))))
                if (t.object.is_literal()) tip += "\n" + t.object.text();
            out << ", tooltip=" << dot_quote(tip);
        }
        out << "];\n";
    }
    for (const auto& e : edges) {
        out << "  " << dot_quote(e.cause) << " -> " << dot_quote(e.effect) << " [id=" << dot_quote(e.name);
        if (include_metadata) {
            std::vector<std::string> label;
            if (e.confidence) label.push_back("c=" + format_decimal(*e.confidence));
            if (e.time_lag_s) label.push_back("lag=" + format_decimal(*e.time_lag_s) + "s");
            if (!label.empty()) out << ", label=" << dot_quote(join(label, ", "));
            std::string tip = e.name;
            if (e.confidence) tip += "\nconfidence: " + format_decimal(*e.confidence);
            if (e.time_lag_s) tip += "\ntime lag: " + format_decimal(*e.time_lag_s) + " s";
            if (e.creator) tip += "\ncreator: " + *e.creator;
            for (const auto& c : e.comments) tip += "\n" + c;
            out << ", tooltip=" << dot_quote(tip);
        }
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string render_html(const Graph& graph, const RenderOptions& options) {
    std::string data = to_json(export_property_graph(graph));
    std::string script = options.viewer_script ? *options.viewer_script : fallback_viewer_script();
    // keep the script element closed only where we close it
    for (std::size_t at = script.find("</"); at != std::string::npos; at = script.find("</", at + 3))
        script.replace(at, 2, "<\\/");
    std::string out;
    out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>causal graph</title>\n";
    out += "<style>body{font-family:sans-serif;margin:1em}table{border-collapse:collapse;margin-top:1em}"
           "td,th{border:1px solid #bbb;padding:2px 8px;text-align:left}</style>\n</head>\n<body>\n";
    out += "<div id=\"cg-view\"></div>\n";
    out += "<script type=\"application/json\" id=\"cg-data\">" + data + "</script>\n";
    out += "<script>\n" + script + "\n</script>\n</body>\n</html>\n";
    return out;
}

std::string emit_dot(const Graph& graph, const RenderOptions& options) {
    std::string text = render_dot(graph, options.include_metadata);
    if (options.destination) write_text_file(target(options, "graph.dot"), text);
    return text;
}

std::filesystem::path emit_html(const Graph& graph, const RenderOptions& options) {
    if (!options.destination) throw ValidationError("emit_html needs a destination directory");
    auto path = target(options, "graph.html");
    write_text_file(path, render_html(graph, options));
    return path;
}

}  // namespace causalstore
