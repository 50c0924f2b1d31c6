#include "causalstore/graph.hpp"

#include <spdlog/sinks/basic_file_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "causalstore/error.hpp"
#include "causalstore/interchange.hpp"
#include "causalstore/turtle.hpp"
#include "causalstore/vocabulary.hpp"

namespace causalstore {

namespace {

Term iri(std::string_view s) { return Term::iri(std::string(s)); }

const Term& rdf_type() {
    static const Term t = iri(vocab::kRdfType);
    return t;
}

spdlog::level::level_enum level_from_int(int level) {
    if (level <= 0) return spdlog::level::trace;
    if (level <= 10) return spdlog::level::debug;
    if (level <= 20) return spdlog::level::info;
    if (level <= 30) return spdlog::level::warn;
    if (level <= 40) return spdlog::level::err;
    return spdlog::level::critical;
}

std::shared_ptr<spdlog::logger> make_logger(const GraphConfig& config) {
    std::vector<spdlog::sink_ptr> sinks;
    if (config.log_file_dir) {
        std::filesystem::create_directories(*config.log_file_dir);
        sinks.push_back(std::make_shared<spdlog::sinks::basic_file_sink_mt>(
            (*config.log_file_dir / "causalstore.log").string()));
    }
    auto logger = std::make_shared<spdlog::logger>("causalstore", sinks.begin(), sinks.end());
    logger->set_level(level_from_int(config.logger_level));
    logger->flush_on(spdlog::level::trace);
    return logger;
}

std::string name_of(const Term& t) {
    if (t.is_iri())
        if (auto n = individual_name(t.text())) return *n;
    return t.to_ntriples();
}

void check_name(std::string_view name, const char* what) {
    if (!is_valid_individual_name(name))
        throw ValidationError(std::string("invalid ") + what + " name '" + std::string(name) +
                              "': names must be non-empty UTF-8 without control characters");
}

std::string number_text(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string squote(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

bool Individual::has_type(std::string_view class_iri) const {
    return std::find(types.begin(), types.end(), class_iri) != types.end();
}

// Collects the net changes of one logical operation. Uncommitted changes are
// undone on destruction.
class Graph::Transaction {
public:
    explicit Transaction(Graph& g) : g_(g) {}
    Transaction(const Transaction&) = delete;
    Transaction& operator=(const Transaction&) = delete;
    ~Transaction() {
        if (!done_) rollback();
    }

    void insert(const Triple& t) {
        if (g_.store_.insert(t)) records_.push_back({LogRecord::Op::Assert, t});
    }
    void erase(const Triple& t) {
        if (g_.store_.erase(t)) records_.push_back({LogRecord::Op::Retract, t});
    }
    std::size_t asserted() const {
        return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(), [](const LogRecord& r) {
            return r.op == LogRecord::Op::Assert;
        }));
    }

    void commit() {
        if (g_.file_) {
            try {
                g_.file_->commit(records_);
            } catch (...) {
                rollback();
                throw;
            }
        }
        done_ = true;
        g_.logger_->debug("committed {} record(s)", records_.size());
    }

    void rollback() {
        for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
            if (it->op == LogRecord::Op::Assert) g_.store_.erase(it->triple);
            else g_.store_.insert(it->triple);
        }
        records_.clear();
        done_ = true;
    }

private:
    Graph& g_;
    std::vector<LogRecord> records_;
    bool done_ = false;
};

Graph::Graph(GraphConfig config) : config_(std::move(config)), model_(OntologyModel::builtin()) {
    logger_ = make_logger(config_);
    if (config_.store_path) {
        auto opened = StoreFile::open(*config_.store_path,
                                      config_.exclusive ? OpenMode::Exclusive : OpenMode::Shared);
        file_.emplace(std::move(opened.file));
        store_ = std::move(opened.store);
        recovery_ = opened.recovery;
        logger_->info("opened {} ({} triples, {} log records replayed)", config_.store_path->string(),
                      store_.size(), recovery_.records_replayed);
        if (recovery_.records_dropped > 0)
            logger_->warn("dropped {} damaged log record(s) ({} bytes) from {}", recovery_.records_dropped,
                          recovery_.bytes_dropped, config_.store_path->string());
    }
    rebuild_model();
    for (const auto& onto : config_.external_ontos) import_ontology(onto);
    if (config_.external_graph) {
        std::visit([this](const auto& doc) { fill_graph(*this, doc); }, *config_.external_graph);
    }
}

Graph::Graph(Graph&&) noexcept = default;
Graph& Graph::operator=(Graph&&) noexcept = default;
Graph::~Graph() = default;

// --- helpers ---------------------------------------------------------------

std::vector<Term> Graph::objects(const Term& s, std::string_view p) const {
    std::vector<Term> out;
    for (auto& t : store_.match_in_insertion_order(s, iri(p), std::nullopt)) out.push_back(std::move(t.object));
    return out;
}

std::vector<Term> Graph::subjects(std::string_view p, const Term& o) const {
    std::vector<Term> out;
    for (auto& t : store_.match(std::nullopt, iri(p), o)) out.push_back(std::move(t.subject));
    return out;
}

std::vector<std::string> Graph::types_of(const Term& subject) const {
    std::vector<std::string> out;
    for (const auto& o : objects(subject, vocab::kRdfType))
        if (o.is_iri()) out.push_back(o.text());
    return out;
}

bool Graph::exists(const Term& subject) const {
    return !store_.match(subject, rdf_type(), std::nullopt).empty();
}

bool Graph::has_type_closure(const Term& subject, std::string_view class_iri) const {
    for (const auto& t : types_of(subject))
        if (model_.is_subclass_of(t, class_iri)) return true;
    return false;
}

std::string Graph::fresh_name(std::string_view stem) const {
    for (std::size_t k = 1;; ++k) {
        std::string candidate = std::string(stem) + std::to_string(k);
        if (!exists(individual_term(candidate))) return candidate;
    }
}

void Graph::require_writable() const {
    if (file_ && !file_->writable())
        throw StorageError("graph is read-only: store " + file_->path().string() + " was opened in shared mode");
}

void Graph::rebuild_model() {
    std::vector<Triple> ontology;
    for (auto& t : store_.match())
        if (!(t.subject.is_iri() && t.subject.text().starts_with(vocab::kStore))) ontology.push_back(std::move(t));
    model_ = OntologyModel::builtin().merged_with(ontology);
}

void Graph::check_creator(std::string_view creator, std::string_view owner) const {
    check_name(creator, "creator");
    if (creator == owner) throw ValidationError("creator " + squote(creator) + " cannot be the entity it created");
    Term c = individual_term(creator);
    if (exists(c) && !has_type_closure(c, vocab::kCreator))
        throw ValidationError(squote(creator) + " exists and is not a Creator");
}

void Graph::attach_creator(Transaction& tx, const Term& owner, std::string_view creator) {
    Term c = individual_term(creator);
    if (!exists(c)) tx.insert(Triple(c, rdf_type(), iri(vocab::kCreator)));
    tx.insert(Triple(owner, iri(vocab::kHasCreator), c));
    tx.insert(Triple(c, iri(vocab::kCreated), owner));
}

void Graph::remove_individual_triples(Transaction& tx, const Term& subject) {
    for (const auto& t : store_.match(subject, std::nullopt, std::nullopt)) tx.erase(t);
    for (const auto& t : store_.match(std::nullopt, std::nullopt, subject)) tx.erase(t);
}

void Graph::remove_edge(Transaction& tx, const Term& edge) { remove_individual_triples(tx, edge); }

// --- causal nodes and edges ---------------------------------------------------

std::string Graph::add_causal_node(std::optional<std::string> name, const std::vector<std::string>& comments,
                                   std::optional<std::string> creator) {
    require_writable();
    std::string node_name = name ? std::move(*name) : fresh_name("CausalNode_");
    check_name(node_name, "node");
    Term node = individual_term(node_name);
    if (exists(node)) {
        if (has_type_closure(node, vocab::kCausalNode)) return node_name;
        throw ValidationError(squote(node_name) + " already exists and is not a causal node");
    }
    if (creator) check_creator(*creator, node_name);

    Transaction tx(*this);
    tx.insert(Triple(node, rdf_type(), iri(vocab::kCausalNode)));
    for (const auto& c : comments) tx.insert(Triple(node, iri(vocab::kRdfsComment), Term::string(c)));
    if (creator) attach_creator(tx, node, *creator);
    tx.commit();
    logger_->info("added causal node {}", node_name);
    return node_name;
}

std::string Graph::add_causal_edge(std::string_view cause, std::string_view effect, const EdgeOptions& options) {
    require_writable();
    check_name(cause, "cause node");
    check_name(effect, "effect node");
    if (cause == effect) throw ValidationError("self-loop rejected: cause and effect are both " + squote(cause));
    if (options.confidence) {
        double c = *options.confidence;
        if (!(c > 0.0 && c <= 1.0))
            throw ValidationError("confidence must be in the range (0,1], got " + number_text(c));
    }
    if (options.time_lag_s) {
        double lag = *options.time_lag_s;
        if (!(lag >= 0.0) || !std::isfinite(lag))
            throw ValidationError("time_lag_s must be a finite value >= 0, got " + number_text(lag));
    }

    std::string edge_name = options.name ? *options.name : fresh_name("CausalEdge_");
    check_name(edge_name, "edge");
    if (edge_name == cause || edge_name == effect)
        throw ValidationError("edge name " + squote(edge_name) + " collides with one of its endpoints");

    Term c = individual_term(cause);
    Term f = individual_term(effect);
    Term e = individual_term(edge_name);
    for (const auto& [term, label] : {std::pair{&c, cause}, std::pair{&f, effect}}) {
        if (exists(*term)) {
            if (has_type_closure(*term, vocab::kCausalEdge))
                throw ValidationError(squote(label) + " is a causal edge and cannot be an endpoint");
        } else if (!options.force_create) {
            throw NotFoundError("unknown node " + squote(label) + " (set force_create to create it)");
        }
    }

    bool upsert = false;
    if (exists(e)) {
        if (!has_type_closure(e, vocab::kCausalEdge))
            throw ValidationError("edge name " + squote(edge_name) + " is already used by a non-edge individual");
        auto causes = objects(e, vocab::kHasCause);
        auto effects = objects(e, vocab::kHasEffect);
        if (causes != std::vector<Term>{c} || effects != std::vector<Term>{f})
            throw ValidationError("edge " + squote(edge_name) + " already exists with different endpoints");
        upsert = true;
    }
    if (options.creator) {
        check_creator(*options.creator, edge_name);
        if (*options.creator == cause || *options.creator == effect)
            throw ValidationError("creator " + squote(*options.creator) + " cannot be an endpoint of the edge");
    }

    Transaction tx(*this);
    for (const Term* node : {&c, &f}) {
        if (!exists(*node) || !has_type_closure(*node, vocab::kCausalNode))
            tx.insert(Triple(*node, rdf_type(), iri(vocab::kCausalNode)));
    }
    tx.insert(Triple(e, rdf_type(), iri(vocab::kCausalEdge)));
    tx.insert(Triple(e, iri(vocab::kHasCause), c));
    tx.insert(Triple(e, iri(vocab::kHasEffect), f));
    tx.insert(Triple(c, iri(vocab::kIsCausing), e));
    tx.insert(Triple(f, iri(vocab::kIsAffectedBy), e));

    auto replace_value = [&](std::string_view property, const std::optional<double>& value) {
        if (!value) return;
        for (const auto& t : store_.match(e, iri(property), std::nullopt)) tx.erase(t);
        tx.insert(Triple(e, iri(property), Term::decimal(*value)));
    };
    replace_value(vocab::kHasConfidence, options.confidence);
    replace_value(vocab::kHasTimeLag, options.time_lag_s);

    if (!options.comments.empty()) {
        if (upsert)
            for (const auto& t : store_.match(e, iri(vocab::kRdfsComment), std::nullopt)) tx.erase(t);
        for (const auto& text : options.comments) tx.insert(Triple(e, iri(vocab::kRdfsComment), Term::string(text)));
    }
    if (options.creator) {
        for (const auto& old : objects(e, vocab::kHasCreator)) {
            tx.erase(Triple(e, iri(vocab::kHasCreator), old));
            tx.erase(Triple(old, iri(vocab::kCreated), e));
        }
        attach_creator(tx, e, *options.creator);
    }
    tx.commit();
    logger_->info("{} causal edge {} ({} -> {})", upsert ? "updated" : "added", edge_name, cause, effect);
    return edge_name;
}

bool Graph::remove_causal_node(std::string_view name) {
    if (!is_valid_individual_name(name)) return false;
    Term node = individual_term(name);
    if (!exists(node) || !has_type_closure(node, vocab::kCausalNode)) return false;
    require_writable();

    std::set<std::string> seen;
    Transaction tx(*this);
    for (auto p : {vocab::kHasCause, vocab::kHasEffect}) {
        for (const auto& edge : subjects(p, node))
            if (seen.insert(edge.text()).second) remove_edge(tx, edge);
    }
    remove_individual_triples(tx, node);
    tx.commit();
    logger_->info("removed causal node {} and {} edge(s)", name, seen.size());
    return true;
}

bool Graph::remove_causal_edge_by_name(std::string_view name) {
    if (!is_valid_individual_name(name)) return false;
    Term edge = individual_term(name);
    if (!exists(edge) || !has_type_closure(edge, vocab::kCausalEdge)) return false;
    require_writable();
    Transaction tx(*this);
    remove_edge(tx, edge);
    tx.commit();
    logger_->info("removed causal edge {}", name);
    return true;
}

std::vector<std::string> Graph::edges_between(std::optional<std::string_view> cause,
                                              std::optional<std::string_view> effect) const {
    std::vector<Term> candidates;
    if (cause) {
        if (!is_valid_individual_name(*cause)) return {};
        candidates = subjects(vocab::kHasCause, individual_term(*cause));
    } else if (effect) {
        if (!is_valid_individual_name(*effect)) return {};
        candidates = subjects(vocab::kHasEffect, individual_term(*effect));
    } else {
        candidates = subjects(vocab::kRdfType, iri(vocab::kCausalEdge));
    }
    std::optional<Term> want_effect;
    if (effect) {
        if (!is_valid_individual_name(*effect)) return {};
        want_effect = individual_term(*effect);
    }
    std::vector<std::string> out;
    for (const auto& e : candidates) {
        if (!has_type_closure(e, vocab::kCausalEdge)) continue;
        if (want_effect && !store_.contains(Triple(e, iri(vocab::kHasEffect), *want_effect))) continue;
        if (auto n = individual_name(e.text())) out.push_back(*n);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t Graph::remove_causal_edges_between(std::string_view cause, std::string_view effect) {
    auto edges = edges_between(cause, effect);
    if (edges.empty()) return 0;
    require_writable();
    Transaction tx(*this);
    for (const auto& e : edges) remove_edge(tx, individual_term(e));
    tx.commit();
    logger_->info("removed {} edge(s) {} -> {}", edges.size(), cause, effect);
    return edges.size();
}

std::size_t Graph::remove_causal_edges_of_node(std::string_view name) {
    auto edges = edges_between(name, std::nullopt);
    auto incoming = edges_between(std::nullopt, name);
    edges.insert(edges.end(), incoming.begin(), incoming.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.empty()) return 0;
    require_writable();
    Transaction tx(*this);
    for (const auto& e : edges) remove_edge(tx, individual_term(e));
    tx.commit();
    logger_->info("removed {} edge(s) of node {}", edges.size(), name);
    return edges.size();
}

CausalEdgeRecord Graph::get_edge_record(std::string_view name) const {
    if (!is_valid_individual_name(name)) throw NotFoundError("unknown edge " + squote(name));
    Term e = individual_term(name);
    if (!exists(e) || !has_type_closure(e, vocab::kCausalEdge)) throw NotFoundError("unknown edge " + squote(name));

    CausalEdgeRecord rec;
    rec.name = std::string(name);
    if (auto causes = objects(e, vocab::kHasCause); !causes.empty()) rec.cause = name_of(causes.front());
    if (auto effects = objects(e, vocab::kHasEffect); !effects.empty()) rec.effect = name_of(effects.front());
    if (auto v = objects(e, vocab::kHasConfidence); !v.empty()) rec.confidence = v.front().numeric_value();
    if (auto v = objects(e, vocab::kHasTimeLag); !v.empty()) rec.time_lag_s = v.front().numeric_value();
    if (auto v = objects(e, vocab::kHasCreator); !v.empty()) rec.creator = name_of(v.front());
    for (const auto& c : objects(e, vocab::kRdfsComment))
        if (c.is_literal()) rec.comments.push_back(c.text());
    return rec;
}

ValidationReport Graph::validate() const {
    ValidationReport report;
    auto& v = report.violations;
    const Term has_cause = iri(vocab::kHasCause);
    const Term has_effect = iri(vocab::kHasEffect);

    auto is_node = [&](const Term& t) { return t.is_iri() && exists(t) && has_type_closure(t, vocab::kCausalNode); };

    // Reification: exactly one cause and effect per edge, mirrored on nodes.
    for (const auto& ind : individuals()) {
        Term e = Term::iri(ind.iri);
        bool edge = has_type_closure(e, vocab::kCausalEdge);
        bool node = has_type_closure(e, vocab::kCausalNode);
        if (edge && node) v.push_back(ind.name + ": typed both CausalEdge and CausalNode");
        for (const auto& t : ind.types)
            if (!model_.find_class(t)) v.push_back(ind.name + ": type <" + t + "> is not a known class");
        if (!edge) continue;
        auto causes = objects(e, vocab::kHasCause);
        auto effects = objects(e, vocab::kHasEffect);
        if (causes.size() != 1) v.push_back(ind.name + ": has " + std::to_string(causes.size()) + " hasCause values");
        if (effects.size() != 1) v.push_back(ind.name + ": has " + std::to_string(effects.size()) + " hasEffect values");
        if (causes.size() == 1 && effects.size() == 1 && causes[0] == effects[0])
            v.push_back(ind.name + ": self-loop");
        for (const auto& c : causes) {
            if (!is_node(c)) v.push_back(ind.name + ": hasCause " + name_of(c) + " is not a causal node");
            if (!store_.contains(Triple(c, iri(vocab::kIsCausing), e)))
                v.push_back(ind.name + ": cause " + name_of(c) + " lacks isCausing mirror");
        }
        for (const auto& f : effects) {
            if (!is_node(f)) v.push_back(ind.name + ": hasEffect " + name_of(f) + " is not a causal node");
            if (!store_.contains(Triple(f, iri(vocab::kIsAffectedBy), e)))
                v.push_back(ind.name + ": effect " + name_of(f) + " lacks isAffectedBy mirror");
        }
        for (const auto& lit : objects(e, vocab::kHasConfidence)) {
            auto x = lit.numeric_value();
            if (!x || !(*x > 0.0 && *x <= 1.0)) v.push_back(ind.name + ": confidence " + lit.text() + " outside (0,1]");
        }
        for (const auto& lit : objects(e, vocab::kHasTimeLag)) {
            auto x = lit.numeric_value();
            if (!x || !(*x >= 0.0)) v.push_back(ind.name + ": time lag " + lit.text() + " is negative");
        }
    }
    for (const auto& t : store_.match(std::nullopt, iri(vocab::kIsCausing), std::nullopt))
        if (!store_.contains(Triple(t.object, has_cause, t.subject)))
            v.push_back(name_of(t.subject) + ": isCausing " + name_of(t.object) + " without matching hasCause");
    for (const auto& t : store_.match(std::nullopt, iri(vocab::kIsAffectedBy), std::nullopt))
        if (!store_.contains(Triple(t.object, has_effect, t.subject)))
            v.push_back(name_of(t.subject) + ": isAffectedBy " + name_of(t.object) + " without matching hasEffect");
    for (const auto& t : store_.match(std::nullopt, iri(vocab::kHasCreator), std::nullopt))
        if (!store_.contains(Triple(t.object, iri(vocab::kCreated), t.subject)))
            v.push_back(name_of(t.subject) + ": hasCreator " + name_of(t.object) + " without matching created");
    for (const auto& t : store_.match(std::nullopt, iri(vocab::kCreated), std::nullopt))
        if (!store_.contains(Triple(t.object, iri(vocab::kHasCreator), t.subject)))
            v.push_back(name_of(t.subject) + ": created " + name_of(t.object) + " without matching hasCreator");

    // Domain/range sweep over every assertion about a store individual.
    for (const auto& t : store_.match()) {
        if (!(t.subject.is_iri() && individual_name(t.subject.text()))) continue;
        const std::string& p = t.predicate.text();
        if (p == vocab::kRdfType) continue;
        const PropertyDef* def = model_.find_property(p);
        std::string who = name_of(t.subject);
        if (!def) {
            v.push_back(who + ": property <" + p + "> is not declared");
            continue;
        }
        if (def->domain && !has_type_closure(t.subject, *def->domain))
            v.push_back(who + ": " + display_name(p) + " outside its domain " + display_name(*def->domain));
        if (def->kind == PropertyKind::Object) {
            if (t.object.is_literal()) {
                v.push_back(who + ": object property " + display_name(p) + " has a literal value");
            } else if (def->range && !has_type_closure(t.object, *def->range)) {
                v.push_back(who + ": " + display_name(p) + " value " + name_of(t.object) + " outside range " +
                            display_name(*def->range));
            }
        } else {
            if (!t.object.is_literal()) {
                v.push_back(who + ": data property " + display_name(p) + " has a non-literal value");
            } else if (def->range && datatype_iri(t.object.datatype()) != *def->range) {
                v.push_back(who + ": " + display_name(p) + " literal has datatype " +
                            std::string(datatype_iri(t.object.datatype())));
            }
        }
    }

    // Simple cycles: each found once, from its smallest node.
    std::map<std::string, std::set<std::string>> succ;
    for (const auto& name : causal_edge_names()) {
        Term e = individual_term(name);
        auto causes = objects(e, vocab::kHasCause);
        auto effects = objects(e, vocab::kHasEffect);
        for (const auto& c : causes)
            for (const auto& f : effects)
                if (!(c == f)) succ[name_of(c)].insert(name_of(f));
    }
    std::vector<std::string> path;
    std::set<std::string> on_path;
    std::function<void(const std::string&, const std::string&)> dfs = [&](const std::string& start,
                                                                          const std::string& cur) {
        auto it = succ.find(cur);
        if (it == succ.end()) return;
        for (const auto& next : it->second) {
            if (next == start) {
                report.cycles.push_back(path);
            } else if (next > start && !on_path.count(next)) {
                path.push_back(next);
                on_path.insert(next);
                dfs(start, next);
                on_path.erase(next);
                path.pop_back();
            }
        }
    };
    for (const auto& [start, _] : succ) {
        path = {start};
        on_path = {start};
        dfs(start, start);
    }
    std::sort(report.cycles.begin(), report.cycles.end());
    return report;
}

// --- ontology ------------------------------------------------------------------

ImportReport Graph::import_ontology(const std::filesystem::path& source) {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw StorageError("cannot read ontology " + source.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = std::move(buf).str();
    auto first = text.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
    if (first != std::string::npos && text.compare(first, 5, "<?xml") == 0)
        throw ParseError("RDF/XML is not supported; convert " + source.filename().string() + " to Turtle first", 1, 1);
    auto report = import_ontology_text(text);
    logger_->info("imported ontology {}: {}", source.string(), report.to_line());
    return report;
}

ImportReport Graph::import_ontology_text(std::string_view turtle) {
    require_writable();
    auto triples = parse_turtle(turtle);
    for (const auto& t : triples) {
        for (const Term* term : {&t.subject, &t.object})
            if (term->is_iri() && term->text().starts_with(vocab::kStore))
                throw ValidationError("ontology statement refers to store individual " + term->to_ntriples());
    }
    ImportReport report;
    OntologyModel next = model_.merged_with(triples, &report);
    Transaction tx(*this);
    for (const auto& t : triples) tx.insert(t);
    report.triples_added = tx.asserted();
    tx.commit();
    model_ = std::move(next);
    return report;
}

std::string Graph::add_individual_of_type(std::string_view class_name, std::string_view individual,
                                          const std::vector<std::pair<std::string, Term>>& properties) {
    require_writable();
    std::string cls = model_.resolve_class(class_name);
    check_name(individual, "individual");
    Term ind = individual_term(individual);
    if (exists(ind)) {
        auto types = types_of(ind);
        if (std::find(types.begin(), types.end(), cls) != types.end()) return std::string(individual);
        throw ValidationError(squote(individual) + " already exists with different types");
    }

    std::vector<Triple> assertions;
    for (const auto& [prop_name, value] : properties) {
        std::string prop = model_.resolve_property(prop_name);
        const PropertyDef& def = *model_.find_property(prop);
        if (prop == vocab::kHasCause || prop == vocab::kHasEffect || prop == vocab::kIsCausing ||
            prop == vocab::kIsAffectedBy)
            throw ValidationError(display_name(prop) + " is managed by the causal edge operations");
        if (def.domain && !model_.is_subclass_of(cls, *def.domain))
            throw ValidationError(display_name(prop) + " requires domain " + display_name(*def.domain) + ", got " +
                                  display_name(cls));
        if (def.kind == PropertyKind::Object) {
            if (!value.is_iri()) throw ValidationError(display_name(prop) + " expects an individual");
            if (def.range && !(exists(value) && has_type_closure(value, *def.range)))
                throw ValidationError(display_name(prop) + " value " + name_of(value) + " is not a " +
                                      display_name(*def.range));
        } else {
            if (!value.is_literal()) throw ValidationError(display_name(prop) + " expects a literal");
            if (def.range && datatype_iri(value.datatype()) != *def.range)
                throw ValidationError(display_name(prop) + " expects a literal of type <" + *def.range + ">");
        }
        assertions.emplace_back(ind, iri(prop), value);
    }

    Transaction tx(*this);
    tx.insert(Triple(ind, rdf_type(), iri(cls)));
    for (const auto& t : assertions) tx.insert(t);
    tx.commit();
    logger_->info("added individual {} of type {}", individual, display_name(cls));
    return std::string(individual);
}

std::optional<Individual> Graph::get_entity_by_name(std::string_view name) const {
    if (!is_valid_individual_name(name)) return std::nullopt;
    Term ind = individual_term(name);
    auto types = types_of(ind);
    if (types.empty()) return std::nullopt;
    return Individual{std::string(name), ind.text(), std::move(types)};
}

void Graph::promote_to_causal_node(std::string_view name) {
    if (!is_valid_individual_name(name) || !exists(individual_term(name)))
        throw NotFoundError("unknown individual " + squote(name));
    Term ind = individual_term(name);
    if (has_type_closure(ind, vocab::kCausalEdge))
        throw ValidationError(squote(name) + " is a causal edge and cannot become a causal node");
    if (has_type_closure(ind, vocab::kCausalNode)) return;
    require_writable();
    Transaction tx(*this);
    tx.insert(Triple(ind, rdf_type(), iri(vocab::kCausalNode)));
    tx.commit();
}

// --- inspection ------------------------------------------------------------------

std::vector<Individual> Graph::individuals() const {
    std::vector<Individual> out;
    std::map<std::string, std::size_t> index;
    for (const auto& t : store_.match_in_insertion_order(std::nullopt, rdf_type(), std::nullopt)) {
        if (!t.subject.is_iri() || !t.object.is_iri()) continue;
        auto name = individual_name(t.subject.text());
        if (!name) continue;
        auto [it, fresh] = index.emplace(t.subject.text(), out.size());
        if (fresh) out.push_back(Individual{*name, t.subject.text(), {}});
        out[it->second].types.push_back(t.object.text());
    }
    return out;
}

std::vector<std::string> Graph::individual_names() const {
    std::vector<std::string> out;
    for (auto& ind : individuals()) out.push_back(std::move(ind.name));
    return out;
}

std::vector<std::string> Graph::causal_node_names() const {
    std::vector<std::string> out;
    for (auto& ind : individuals())
        if (has_type_closure(Term::iri(ind.iri), vocab::kCausalNode) &&
            !has_type_closure(Term::iri(ind.iri), vocab::kCausalEdge))
            out.push_back(std::move(ind.name));
    return out;
}

std::vector<std::string> Graph::causal_edge_names() const {
    std::vector<std::string> out;
    for (auto& ind : individuals())
        if (has_type_closure(Term::iri(ind.iri), vocab::kCausalEdge)) out.push_back(std::move(ind.name));
    return out;
}

std::vector<std::string> Graph::class_iris() const {
    std::vector<std::string> out;
    for (const auto& [iri, _] : model_.classes()) out.push_back(iri);
    return out;
}

// --- low level ---------------------------------------------------------------------

void Graph::assert_triples(std::span<const Triple> triples) {
    require_writable();
    Transaction tx(*this);
    for (const auto& t : triples) tx.insert(t);
    try {
        rebuild_model();
        tx.commit();
    } catch (...) {
        tx.rollback();
        rebuild_model();
        throw;
    }
}

void Graph::compact() {
    if (!file_) throw StorageError("in-memory graph has no store file to compact");
    file_->compact(store_);
    logger_->info("compacted {} ({} triples)", file_->path().string(), store_.size());
}

void Graph::set_batching(bool on) {
    if (file_) file_->set_batching(on);
}

void Graph::flush() {
    if (file_) file_->flush();
}

}  // namespace causalstore
