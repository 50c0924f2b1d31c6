#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causalstore/documents.hpp"
#include "causalstore/ontology.hpp"
#include "causalstore/store_file.hpp"
#include "causalstore/triple_store.hpp"

namespace spdlog {
class logger;
}

namespace causalstore {

struct GraphConfig {
    // Store file; the graph lives only in memory when unset.
    std::optional<std::filesystem::path> store_path;
    bool exclusive = true;
    // Diagnostics go to `<log_file_dir>/causalstore.log` when set.
    std::optional<std::filesystem::path> log_file_dir;
    // 10 debug, 20 info, 30 warning, 40 error.
    int logger_level = 30;
    std::vector<std::filesystem::path> external_ontos;
    std::optional<ExternalGraph> external_graph;
};

struct Individual {
    std::string name;
    std::string iri;
    std::vector<std::string> types;  // class IRIs in assertion order

    bool has_type(std::string_view class_iri) const;
};

struct CausalEdgeRecord {
    std::string name;
    std::string cause;
    std::string effect;
    std::optional<double> confidence;
    std::optional<double> time_lag_s;
    std::optional<std::string> creator;
    std::vector<std::string> comments;
};

struct EdgeOptions {
    std::optional<std::string> name;
    std::optional<double> confidence;
    std::optional<double> time_lag_s;
    std::vector<std::string> comments;
    std::optional<std::string> creator;
    bool force_create = false;
};

struct ValidationReport {
    std::vector<std::string> violations;
    // Each cycle starts at its lexicographically smallest node and follows
    // edge direction.
    std::vector<std::vector<std::string>> cycles;

    bool clean() const noexcept { return violations.empty() && cycles.empty(); }
};

// A causal graph stored as reified edges in a triple store.
//
// Every mutating call validates first, then applies its changes to the store
// and appends them to the store file as one commit. If the commit fails the
// in-memory changes are rolled back before the error propagates.
class Graph {
public:
    explicit Graph(GraphConfig config = {});
    Graph(Graph&&) noexcept;
    Graph& operator=(Graph&&) noexcept;
    ~Graph();

    // --- causal nodes and edges -------------------------------------------

    // Returns the node name. An existing node of that name is returned as is.
    std::string add_causal_node(std::optional<std::string> name = std::nullopt,
                                const std::vector<std::string>& comments = {},
                                std::optional<std::string> creator = std::nullopt);

    // Returns the edge name. Re-adding an edge name with the same endpoints
    // updates the supplied metadata in place.
    std::string add_causal_edge(std::string_view cause, std::string_view effect, const EdgeOptions& options = {});

    // Removes the node together with every edge that references it.
    bool remove_causal_node(std::string_view name);
    bool remove_causal_edge_by_name(std::string_view name);
    // Directed: only edges cause -> effect.
    std::size_t remove_causal_edges_between(std::string_view cause, std::string_view effect);
    // Incoming and outgoing edges; the node stays.
    std::size_t remove_causal_edges_of_node(std::string_view name);

    CausalEdgeRecord get_edge_record(std::string_view name) const;
    ValidationReport validate() const;

    // --- ontology -----------------------------------------------------------

    ImportReport import_ontology(const std::filesystem::path& source);
    ImportReport import_ontology_text(std::string_view turtle);

    // `properties` pairs a property reference (IRI, display name or local
    // name) with a value: an individual IRI term for object properties, a
    // literal for data properties.
    std::string add_individual_of_type(std::string_view class_name, std::string_view individual_name,
                                       const std::vector<std::pair<std::string, Term>>& properties = {});
    std::optional<Individual> get_entity_by_name(std::string_view name) const;
    void promote_to_causal_node(std::string_view name);

    // --- inspection ---------------------------------------------------------

    // All individuals in creation order.
    std::vector<Individual> individuals() const;
    std::vector<std::string> individual_names() const;
    std::vector<std::string> causal_node_names() const;
    std::vector<std::string> causal_edge_names() const;
    // Sorted class IRIs of the merged ontology.
    std::vector<std::string> class_iris() const;
    // Causal edges whose cause and effect match (either may be unset).
    std::vector<std::string> edges_between(std::optional<std::string_view> cause,
                                           std::optional<std::string_view> effect) const;

    const TripleStore& store() const noexcept { return store_; }
    const OntologyModel& model() const noexcept { return model_; }
    const GraphConfig& config() const noexcept { return config_; }
    bool persistent() const noexcept { return file_.has_value(); }
    const RecoveryReport& recovery() const noexcept { return recovery_; }

    // Canonical sorted N-Triples dump of the whole store.
    std::string dump_ntriples() const { return store_.to_ntriples(); }

    // --- low level ----------------------------------------------------------

    // Asserts arbitrary well-formed triples in one commit, then re-derives the
    // ontology model. Used by importers; the caller is responsible for the
    // reification invariants (check with validate()).
    void assert_triples(std::span<const Triple> triples);

    // Rewrites the store file as a sorted snapshot. Exclusive stores only.
    void compact();
    // Skip per-commit fsync (bulk loads); flush() makes pending commits durable.
    void set_batching(bool on);
    void flush();

    spdlog::logger& logger() const { return *logger_; }

private:
    class Transaction;
    friend class Transaction;

    bool has_type_closure(const Term& subject, std::string_view class_iri) const;
    std::vector<std::string> types_of(const Term& subject) const;
    bool exists(const Term& subject) const;
    std::string fresh_name(std::string_view stem) const;
    void require_writable() const;
    void rebuild_model();
    void check_creator(std::string_view creator, std::string_view owner) const;
    void remove_individual_triples(Transaction& tx, const Term& subject);
    void remove_edge(Transaction& tx, const Term& edge);
    void attach_creator(Transaction& tx, const Term& owner, std::string_view creator);
    std::vector<Term> objects(const Term& s, std::string_view p) const;
    std::vector<Term> subjects(std::string_view p, const Term& o) const;

    GraphConfig config_;
    TripleStore store_;
    std::optional<StoreFile> file_;
    OntologyModel model_;
    RecoveryReport recovery_;
    std::shared_ptr<spdlog::logger> logger_;
};

}  // namespace causalstore
