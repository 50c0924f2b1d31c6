#include "causalstore/interchange.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "causalstore/error.hpp"
#include "causalstore/ntriples.hpp"
#include "causalstore/vocabulary.hpp"

namespace causalstore {

using nlohmann::json;

namespace {

Term iri(std::string_view s) { return Term::iri(std::string(s)); }

struct Vocab {
    Term type = iri(vocab::kRdfType);
    Term comment = iri(vocab::kRdfsComment);
    Term has_cause = iri(vocab::kHasCause);
    Term has_effect = iri(vocab::kHasEffect);
    Term is_causing = iri(vocab::kIsCausing);
    Term is_affected_by = iri(vocab::kIsAffectedBy);
    Term has_creator = iri(vocab::kHasCreator);
    Term created = iri(vocab::kCreated);
    Term confidence = iri(vocab::kHasConfidence);
    Term time_lag = iri(vocab::kHasTimeLag);
    Term causal_edge = iri(vocab::kCausalEdge);
    Term causal_node = iri(vocab::kCausalNode);
};

const Vocab& v() {
    static const Vocab vocab;
    return vocab;
}

std::vector<Term> objects(const TripleStore& store, const Term& s, const Term& p) {
    std::vector<Term> out;
    for (auto& t : store.match_in_insertion_order(s, p, std::nullopt)) out.push_back(std::move(t.object));
    return out;
}

// Comments are the plain string literals; anything else stays an extra.
std::vector<std::string> comments_of(const TripleStore& store, const Term& s) {
    std::vector<std::string> out;
    for (const auto& o : objects(store, s, v().comment))
        if (o.is_literal() && o.datatype() == Datatype::String) out.push_back(o.text());
    return out;
}

std::optional<std::string> creator_of(const TripleStore& store, const Term& s) {
    auto creators = objects(store, s, v().has_creator);
    if (creators.size() != 1 || !creators[0].is_iri()) return std::nullopt;
    auto name = individual_name(creators[0].text());
    if (!name || !store.contains(Triple(creators[0], v().created, s))) return std::nullopt;
    return name;
}

// A decimal literal only maps to a double field when writing the double back
// gives the same lexical form.
std::optional<double> exact_decimal(const TripleStore& store, const Term& s, const Term& p) {
    auto values = objects(store, s, p);
    if (values.size() != 1 || !values[0].is_literal() || values[0].datatype() != Datatype::Decimal) return std::nullopt;
    auto x = values[0].numeric_value();
    if (!x || !std::isfinite(*x) || format_decimal(*x) != values[0].text()) return std::nullopt;
    return x;
}

std::optional<std::string> endpoint(const TripleStore& store, const Term& edge, const Term& p) {
    auto values = objects(store, edge, p);
    if (values.size() != 1 || !values[0].is_iri()) return std::nullopt;
    return individual_name(values[0].text());
}

void add_creator(std::vector<Triple>& out, const Term& owner, const std::optional<std::string>& creator) {
    if (!creator) return;
    Term c = individual_term(*creator);
    out.emplace_back(owner, v().has_creator, c);
    out.emplace_back(c, v().created, owner);
}

void add_comments(std::vector<Triple>& out, const Term& owner, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out.emplace_back(owner, v().comment, Term::string(c));
}

std::vector<Triple> node_triples(const PropertyGraphDoc::Node& n) {
    std::vector<Triple> out;
    Term s = individual_term(n.name);
    for (const auto& t : n.types) out.emplace_back(s, v().type, Term::iri(t));
    add_comments(out, s, n.comments);
    add_creator(out, s, n.creator);
    return out;
}

std::vector<Triple> edge_triples(const PropertyGraphDoc::Edge& e) {
    std::vector<Triple> out;
    Term s = individual_term(e.name);
    Term c = individual_term(e.cause);
    Term f = individual_term(e.effect);
    out.emplace_back(s, v().type, v().causal_edge);
    out.emplace_back(s, v().has_cause, c);
    out.emplace_back(s, v().has_effect, f);
    out.emplace_back(c, v().is_causing, s);
    out.emplace_back(f, v().is_affected_by, s);
    if (e.confidence) out.emplace_back(s, v().confidence, Term::decimal(*e.confidence));
    if (e.time_lag_s) out.emplace_back(s, v().time_lag, Term::decimal(*e.time_lag_s));
    add_comments(out, s, e.comments);
    add_creator(out, s, e.creator);
    return out;
}

bool all_present(const TripleStore& store, const std::vector<Triple>& triples) {
    return std::all_of(triples.begin(), triples.end(), [&](const Triple& t) { return store.contains(t); });
}

// Well-formed causal edges: asserted CausalEdge type, one named cause and
// effect (distinct), both mirrors present.
std::optional<PropertyGraphDoc::Edge> structured_edge(const TripleStore& store, const Individual& ind) {
    if (!ind.has_type(vocab::kCausalEdge)) return std::nullopt;
    Term s = Term::iri(ind.iri);
    auto cause = endpoint(store, s, v().has_cause);
    auto effect = endpoint(store, s, v().has_effect);
    if (!cause || !effect || *cause == *effect) return std::nullopt;
    PropertyGraphDoc::Edge e;
    e.name = ind.name;
    e.cause = *cause;
    e.effect = *effect;
    e.confidence = exact_decimal(store, s, v().confidence);
    e.time_lag_s = exact_decimal(store, s, v().time_lag);
    e.comments = comments_of(store, s);
    e.creator = creator_of(store, s);
    if (!all_present(store, edge_triples(e))) return std::nullopt;
    return e;
}

void check_unique(std::set<std::string>& seen, const std::string& name, const char* what) {
    if (!is_valid_individual_name(name)) throw ValidationError(std::string("invalid ") + what + " name '" + name + "'");
    if (!seen.insert(name).second) throw ValidationError("duplicate individual name '" + name + "' in document");
}

std::string escape_html_specials(std::string text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '<') out += "\\u003c";
        else if (c == '>') out += "\\u003e";
        else if (c == '&') out += "\\u0026";
        else out += c;
    }
    return out;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 1, e.byte);
    }
}

template <typename T>
T field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(std::string("missing field '") + key + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("field '") + key + "' has the wrong type");
    }
}

template <typename T>
std::optional<T> optional_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return field<T>(obj, key);
}

void require_object(const json& j, const char* what) {
    if (!j.is_object()) throw ValidationError(std::string(what) + " must be a JSON object");
}

std::int64_t round_half_away(double x) {
    double r = std::round(x);  // std::round already rounds halves away from zero
    if (!(std::fabs(r) < 9007199254740992.0)) throw ValidationError("lag does not fit in whole steps");
    return static_cast<std::int64_t>(r);
}

template <typename Doc>
Graph load_into_new(const Doc& doc, GraphConfig config, bool overwrite) {
    config.external_graph.reset();
    std::optional<std::filesystem::path> path = config.store_path;
    if (path && std::filesystem::exists(*path)) {
        if (!overwrite) throw StorageError("refusing to overwrite existing store " + path->string());
        std::filesystem::remove(*path);
    }
    try {
        Graph g(std::move(config));
        fill_graph(g, doc);
        return g;
    } catch (...) {
        std::error_code ec;
        if (path) std::filesystem::remove(*path, ec);
        throw;
    }
}

// --- GML / GraphML helpers ---------------------------------------------------

std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
    auto b = static_cast<unsigned char>(s[i]);
    int extra = b >= 0xF0 ? 3 : b >= 0xE0 ? 2 : b >= 0xC0 ? 1 : 0;
    std::uint32_t cp = extra == 0 ? b : b & (0x3F >> extra);
    for (int k = 0; k < extra && i + 1 < s.size(); ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[++i]) & 0x3F);
    return cp;
}

// GML strings are ASCII; quotes, ampersands and everything outside printable
// ASCII become character references.
std::string gml_string(std::string_view s) {
    std::string out = "\"";
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '"') out += "&quot;";
        else if (c == '&') out += "&amp;";
        else if (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7F) out += c;
        else out += "&#" + std::to_string(decode_utf8(s, i)) + ";";
    }
    return out + "\"";
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            case '\r': out += "&#13;"; break;
            case '\t': out += "&#9;"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) out += "\xEF\xBF\xBD";  // not representable in XML 1.0
                else out += c;
        }
    }
    return out;
}

struct ExchangeGraph {
    std::vector<std::string> nodes;  // sorted
    std::map<std::string, std::size_t> index;
    std::map<std::string, std::string> node_comment;
    std::vector<PropertyGraphDoc::Edge> edges;  // sorted by (cause, effect, name)
};

ExchangeGraph exchange_view(const Graph& graph) {
    ExchangeGraph x;
    x.nodes = graph.causal_node_names();
    std::sort(x.nodes.begin(), x.nodes.end());
    for (std::size_t i = 0; i < x.nodes.size(); ++i) {
        x.index[x.nodes[i]] = i;
        auto comments = comments_of(graph.store(), individual_term(x.nodes[i]));
        if (!comments.empty()) x.node_comment[x.nodes[i]] = comments.front();
    }
    for (const auto& ind : graph.individuals()) {
        auto e = structured_edge(graph.store(), ind);
        if (!e || !x.index.count(e->cause) || !x.index.count(e->effect)) continue;
        // Exchange formats want the value even when its lexical form is not canonical.
        Term s = Term::iri(ind.iri);
        if (!e->confidence)
            if (auto c = objects(graph.store(), s, v().confidence); c.size() == 1) e->confidence = c[0].numeric_value();
        if (!e->time_lag_s)
            if (auto l = objects(graph.store(), s, v().time_lag); l.size() == 1) e->time_lag_s = l[0].numeric_value();
        x.edges.push_back(std::move(*e));
    }
    std::sort(x.edges.begin(), x.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.cause, a.effect, a.name) < std::tie(b.cause, b.effect, b.name);
    });
    return x;
}

}  // namespace

// --- property graph ----------------------------------------------------------------

PropertyGraphDoc export_property_graph(const Graph& graph) {
    const TripleStore& store = graph.store();
    PropertyGraphDoc doc;
    TripleStore covered;
    for (const auto& ind : graph.individuals()) {
        if (auto e = structured_edge(store, ind)) {
            for (const auto& t : edge_triples(*e)) covered.insert(t);
            doc.edges.push_back(std::move(*e));
            continue;
        }
        PropertyGraphDoc::Node n;
        n.name = ind.name;
        n.types = ind.types;
        Term s = Term::iri(ind.iri);
        n.comments = comments_of(store, s);
        n.creator = creator_of(store, s);
        for (const auto& t : node_triples(n)) covered.insert(t);
        doc.nodes.push_back(std::move(n));
    }
    // Edges carry their own CausalEdge type; extra edge types fall to extras.
    for (const auto& t : store.match())
        if (!covered.contains(t)) doc.ontology_extras.push_back(t.to_ntriples());
    return doc;
}

void fill_graph(Graph& graph, const PropertyGraphDoc& doc) {
    if (!graph.store().empty()) throw ValidationError("an external graph can only fill an empty store");

    std::set<std::string> names;
    for (const auto& n : doc.nodes) {
        check_unique(names, n.name, "node");
        if (n.types.empty()) throw ValidationError("node '" + n.name + "' has no types");
        for (const auto& t : n.types)
            if (!is_valid_iri(t)) throw ValidationError("node '" + n.name + "' has invalid type IRI <" + t + ">");
    }
    for (const auto& e : doc.edges) check_unique(names, e.name, "edge");
    for (const auto& e : doc.edges) {
        for (const auto* end : {&e.cause, &e.effect})
            if (!std::any_of(doc.nodes.begin(), doc.nodes.end(), [&](const auto& n) { return n.name == *end; }))
                throw ValidationError("edge '" + e.name + "' references unknown node '" + *end + "'");
        if (e.cause == e.effect) throw ValidationError("edge '" + e.name + "' is a self-loop");
        if (e.confidence && !(*e.confidence > 0.0 && *e.confidence <= 1.0))
            throw ValidationError("edge '" + e.name + "': confidence must be in the range (0,1]");
        if (e.time_lag_s && !(*e.time_lag_s >= 0.0 && std::isfinite(*e.time_lag_s)))
            throw ValidationError("edge '" + e.name + "': time_lag_s must be a finite value >= 0");
    }
    for (const auto& n : doc.nodes)
        if (n.creator && !names.count(*n.creator))
            throw ValidationError("node '" + n.name + "' references unknown creator '" + *n.creator + "'");
    for (const auto& e : doc.edges)
        if (e.creator && !names.count(*e.creator))
            throw ValidationError("edge '" + e.name + "' references unknown creator '" + *e.creator + "'");

    std::vector<Triple> triples;
    // Ontology statements first so the model knows imported classes.
    for (std::size_t i = 0; i < doc.ontology_extras.size(); ++i)
        triples.push_back(parse_ntriples_line(doc.ontology_extras[i], i + 1));
    for (const auto& n : doc.nodes)
        for (auto& t : node_triples(n)) triples.push_back(std::move(t));
    for (const auto& e : doc.edges)
        for (auto& t : edge_triples(e)) triples.push_back(std::move(t));

    Graph scratch;
    scratch.assert_triples(triples);
    auto report = scratch.validate();
    if (!report.violations.empty())
        throw ValidationError("document does not form a valid graph: " + report.violations.front() +
                              (report.violations.size() > 1
                                   ? " (and " + std::to_string(report.violations.size() - 1) + " more)"
                                   : std::string()));
    graph.assert_triples(triples);
}

Graph load_property_graph(const PropertyGraphDoc& doc, GraphConfig config, bool overwrite) {
    return load_into_new(doc, std::move(config), overwrite);
}

// --- link tuple --------------------------------------------------------------------

LinkTupleExport export_link_tuple(const Graph& graph, double step_s) {
    if (!(step_s > 0.0) || !std::isfinite(step_s)) throw ValidationError("step_s must be a finite value > 0");
    LinkTupleExport out;
    out.doc.step_s = step_s;
    const TripleStore& store = graph.store();

    auto nodes = graph.causal_node_names();
    std::sort(nodes.begin(), nodes.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    out.doc.variables = nodes;

    for (const auto& ind : graph.individuals()) {
        Term s = Term::iri(ind.iri);
        bool is_edge = false;
        for (const auto& t : ind.types)
            if (graph.model().is_subclass_of(t, vocab::kCausalEdge)) is_edge = true;
        if (!is_edge) {
            bool creator_only = std::all_of(ind.types.begin(), ind.types.end(), [&](const std::string& t) {
                return graph.model().is_subclass_of(t, vocab::kCreator);
            });
            if (!index.count(ind.name) && !creator_only)
                out.warnings.push_back("skipped individual '" + ind.name + "': not a causal node");
            continue;
        }
        auto cause = endpoint(store, s, v().has_cause);
        auto effect = endpoint(store, s, v().has_effect);
        if (!cause || !effect || !index.count(*cause) || !index.count(*effect)) {
            out.warnings.push_back("skipped edge '" + ind.name + "': endpoints are not causal nodes");
            continue;
        }
        LinkTupleDoc::Link link;
        link.cause = index[*cause];
        link.effect = index[*effect];
        if (auto c = objects(store, s, v().confidence); !c.empty() && c[0].numeric_value())
            link.confidence = *c[0].numeric_value();
        if (auto l = objects(store, s, v().time_lag); !l.empty() && l[0].numeric_value()) {
            double lag = *l[0].numeric_value();
            link.lag_steps = round_half_away(lag / step_s);
            double residual = std::fabs(static_cast<double>(link.lag_steps) * step_s - lag);
            if (residual > 1e-9 * std::max(1.0, std::fabs(lag)))
                out.warnings.push_back("edge '" + ind.name + "': lag " + format_decimal(lag) + " s rounded to " +
                                       std::to_string(link.lag_steps) + " step(s) of " + format_decimal(step_s) +
                                       " s");
        }
        out.doc.links.push_back(link);
    }
    std::sort(out.doc.links.begin(), out.doc.links.end(), [](const auto& a, const auto& b) {
        return std::tie(a.cause, a.effect, a.lag_steps, a.confidence) <
               std::tie(b.cause, b.effect, b.lag_steps, b.confidence);
    });
    return out;
}

void fill_graph(Graph& graph, const LinkTupleDoc& doc) {
    if (!(doc.step_s > 0.0) || !std::isfinite(doc.step_s)) throw ValidationError("step_s must be a finite value > 0");
    PropertyGraphDoc pg;
    std::set<std::string> taken;
    for (const auto& name : doc.variables) {
        pg.nodes.push_back({name, {std::string(vocab::kCausalNode)}, {}, std::nullopt});
        taken.insert(name);
    }
    for (std::size_t i = 0; i < doc.links.size(); ++i) {
        const auto& l = doc.links[i];
        if (l.cause >= doc.variables.size() || l.effect >= doc.variables.size())
            throw ValidationError("link " + std::to_string(i) + " has a variable index out of range");
        if (l.lag_steps < 0) throw ValidationError("link " + std::to_string(i) + " has a negative lag");
        const std::string stem = doc.variables[l.cause] + "->" + doc.variables[l.effect] + "_";
        std::string name;
        for (std::size_t k = 1;; ++k) {
            name = stem + std::to_string(k);
            if (!taken.count(name)) break;
        }
        taken.insert(name);
        PropertyGraphDoc::Edge e;
        e.name = name;
        e.cause = doc.variables[l.cause];
        e.effect = doc.variables[l.effect];
        e.confidence = l.confidence;
        e.time_lag_s = static_cast<double>(l.lag_steps) * doc.step_s;
        pg.edges.push_back(std::move(e));
    }
    fill_graph(graph, pg);
}

Graph load_link_tuple(const LinkTupleDoc& doc, GraphConfig config, bool overwrite) {
    return load_into_new(doc, std::move(config), overwrite);
}

// --- JSON --------------------------------------------------------------------------

std::string to_json(const PropertyGraphDoc& doc) {
    json nodes = json::array();
    for (const auto& n : doc.nodes) {
        json j = {{"name", n.name}, {"types", n.types}, {"comments", n.comments}};
        if (n.creator) j["creator"] = *n.creator;
        nodes.push_back(std::move(j));
    }
    json edges = json::array();
    for (const auto& e : doc.edges) {
        json j = {{"name", e.name}, {"cause", e.cause}, {"effect", e.effect}, {"comments", e.comments}};
        if (e.confidence) j["confidence"] = *e.confidence;
        if (e.time_lag_s) j["time_lag_s"] = *e.time_lag_s;
        if (e.creator) j["creator"] = *e.creator;
        edges.push_back(std::move(j));
    }
    json root = {{"nodes", nodes}, {"edges", edges}, {"ontology_extras", doc.ontology_extras}};
    return escape_html_specials(root.dump());
}

std::string to_json(const LinkTupleDoc& doc) {
    json links = json::array();
    for (const auto& l : doc.links) links.push_back(json::array({l.cause, l.effect, l.lag_steps, l.confidence}));
    json root = {{"variables", doc.variables},
                 {"links", links},
                 {"step_s", doc.step_s},
                 {"defaults", {{"confidence", 1.0}, {"lag_steps", 0}}}};
    return escape_html_specials(root.dump());
}

PropertyGraphDoc property_graph_from_json(std::string_view text) {
    json root = parse_json(text);
    require_object(root, "property graph document");
    PropertyGraphDoc doc;
    for (const auto& j : field<json>(root, "nodes")) {
        require_object(j, "node");
        PropertyGraphDoc::Node n;
        n.name = field<std::string>(j, "name");
        n.types = field<std::vector<std::string>>(j, "types");
        n.comments = optional_field<std::vector<std::string>>(j, "comments").value_or(std::vector<std::string>{});
        n.creator = optional_field<std::string>(j, "creator");
        doc.nodes.push_back(std::move(n));
    }
    for (const auto& j : field<json>(root, "edges")) {
        require_object(j, "edge");
        PropertyGraphDoc::Edge e;
        e.name = field<std::string>(j, "name");
        e.cause = field<std::string>(j, "cause");
        e.effect = field<std::string>(j, "effect");
        e.confidence = optional_field<double>(j, "confidence");
        e.time_lag_s = optional_field<double>(j, "time_lag_s");
        e.comments = optional_field<std::vector<std::string>>(j, "comments").value_or(std::vector<std::string>{});
        e.creator = optional_field<std::string>(j, "creator");
        doc.edges.push_back(std::move(e));
    }
    doc.ontology_extras =
        optional_field<std::vector<std::string>>(root, "ontology_extras").value_or(std::vector<std::string>{});
    return doc;
}

LinkTupleDoc link_tuple_from_json(std::string_view text) {
    json root = parse_json(text);
    require_object(root, "link tuple document");
    LinkTupleDoc doc;
    doc.variables = field<std::vector<std::string>>(root, "variables");
    doc.step_s = optional_field<double>(root, "step_s").value_or(1.0);
    for (const auto& j : field<json>(root, "links")) {
        if (!j.is_array() || j.size() != 4 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned() ||
            !j[2].is_number_integer() || !j[3].is_number())
            throw ValidationError("each link must be [cause_index, effect_index, lag_steps, confidence]");
        doc.links.push_back({j[0].get<std::size_t>(), j[1].get<std::size_t>(), j[2].get<std::int64_t>(),
                             j[3].get<double>()});
    }
    return doc;
}

// --- GML / GraphML -------------------------------------------------------------------

std::string to_gml(const Graph& graph) {
    auto x = exchange_view(graph);
    std::ostringstream out;
    out << "graph [\n  directed 1\n  multigraph 1\n";
    for (std::size_t i = 0; i < x.nodes.size(); ++i) {
        out << "  node [\n    id " << i << "\n    label " << gml_string(x.nodes[i]) << "\n";
        if (auto it = x.node_comment.find(x.nodes[i]); it != x.node_comment.end())
            out << "    comment " << gml_string(it->second) << "\n";
        out << "  ]\n";
    }
    for (const auto& e : x.edges) {
        out << "  edge [\n    source " << x.index[e.cause] << "\n    target " << x.index[e.effect] << "\n    name "
            << gml_string(e.name) << "\n";
        if (e.confidence) out << "    confidence " << format_decimal(*e.confidence) << "\n";
        if (e.time_lag_s) out << "    time_lag_s " << format_decimal(*e.time_lag_s) << "\n";
        if (!e.comments.empty()) out << "    comment " << gml_string(e.comments.front()) << "\n";
        out << "  ]\n";
    }
    out << "]\n";
    return out.str();
}

std::string to_graphml(const Graph& graph) {
    auto x = exchange_view(graph);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
           "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
           "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
           "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
           "  <key id=\"d0\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
           "  <key id=\"d1\" for=\"node\" attr.name=\"comment\" attr.type=\"string\"/>\n"
           "  <key id=\"d2\" for=\"edge\" attr.name=\"name\" attr.type=\"string\"/>\n"
           "  <key id=\"d3\" for=\"edge\" attr.name=\"confidence\" attr.type=\"double\"/>\n"
           "  <key id=\"d4\" for=\"edge\" attr.name=\"time_lag_s\" attr.type=\"double\"/>\n"
           "  <key id=\"d5\" for=\"edge\" attr.name=\"comment\" attr.type=\"string\"/>\n"
           "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (std::size_t i = 0; i < x.nodes.size(); ++i) {
        out << "    <node id=\"n" << i << "\">\n      <data key=\"d0\">" << xml_escape(x.nodes[i]) << "</data>\n";
        if (auto it = x.node_comment.find(x.nodes[i]); it != x.node_comment.end())
            out << "      <data key=\"d1\">" << xml_escape(it->second) << "</data>\n";
        out << "    </node>\n";
    }
    for (std::size_t i = 0; i < x.edges.size(); ++i) {
        const auto& e = x.edges[i];
        out << "    <edge id=\"e" << i << "\" source=\"n" << x.index[e.cause] << "\" target=\"n" << x.index[e.effect]
            << "\">\n      <data key=\"d2\">" << xml_escape(e.name) << "</data>\n";
        if (e.confidence) out << "      <data key=\"d3\">" << format_decimal(*e.confidence) << "</data>\n";
        if (e.time_lag_s) out << "      <data key=\"d4\">" << format_decimal(*e.time_lag_s) << "</data>\n";
        if (!e.comments.empty()) out << "      <data key=\"d5\">" << xml_escape(e.comments.front()) << "</data>\n";
        out << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw StorageError("failed writing " + path.string());
}

void export_gml(const Graph& graph, const std::filesystem::path& path) { write_text_file(path, to_gml(graph)); }

void export_graphml(const Graph& graph, const std::filesystem::path& path) {
    write_text_file(path, to_graphml(graph));
}

}  // namespace causalstore
