#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalstore/term.hpp"

namespace causalstore {

enum class PropertyKind { Object, Data };

struct OntologyClass {
    std::string iri;
    std::set<std::string> parents;
};

struct PropertyDef {
    std::string iri;
    PropertyKind kind = PropertyKind::Object;
    std::optional<std::string> domain;
    // Class IRI for object properties, datatype IRI for data properties.
    std::optional<std::string> range;
};

struct ImportReport {
    std::size_t classes_added = 0;
    std::size_t properties_added = 0;
    std::size_t subclass_axioms_added = 0;
    std::size_t triples_added = 0;

    bool empty() const noexcept {
        return classes_added == 0 && properties_added == 0 && subclass_axioms_added == 0 && triples_added == 0;
    }
    std::string to_line() const;
    // Compact JSON object with alphabetical keys.
    std::string to_json() const;
};

// Class hierarchy and property declarations: the built-in causal ontology
// merged with every imported ontology. Values are immutable once built; an
// import produces a new model.
class OntologyModel {
public:
    // The causal ontology alone.
    static const OntologyModel& builtin();

    // Returns a model extended by the class/property statements in `triples`.
    // Other statements are ignored here (the caller keeps them as raw
    // triples). Throws ValidationError when a built-in would be redefined, a
    // subclass cycle appears, or a data property ranges over an unsupported
    // datatype. `report` receives the model-level counts.
    OntologyModel merged_with(std::span<const Triple> triples, ImportReport* report = nullptr) const;

    const std::map<std::string, OntologyClass>& classes() const noexcept { return classes_; }
    const std::map<std::string, PropertyDef>& properties() const noexcept { return properties_; }

    const OntologyClass* find_class(std::string_view iri) const;
    const PropertyDef* find_property(std::string_view iri) const;

    // Reflexive, transitive.
    bool is_subclass_of(std::string_view sub, std::string_view super) const;
    std::set<std::string> superclasses(std::string_view iri) const;

    static bool is_builtin(std::string_view iri);

    // Resolves a user-supplied class reference: full IRI, display form
    // (`pizza.Margherita`) or unique local name (`Margherita`). Throws
    // NotFoundError when nothing matches and ValidationError when a local
    // name is ambiguous.
    std::string resolve_class(std::string_view name) const;
    // Same lookup rules for declared properties.
    std::string resolve_property(std::string_view name) const;

private:
    void check_acyclic() const;

    std::map<std::string, OntologyClass> classes_;
    std::map<std::string, PropertyDef> properties_;
};

// Individual names map to `<store namespace><percent-encoded name>`.
// Names must be non-empty valid UTF-8 without control characters.
bool is_valid_individual_name(std::string_view name) noexcept;
std::string individual_iri(std::string_view name);
Term individual_term(std::string_view name);
// nullopt when `iri` is not in the store namespace.
std::optional<std::string> individual_name(std::string_view iri);

// `<namespace label>.<local name>`, e.g. `causalgraph.CausalNode` or
// `pizza.Margherita`; the namespace label is the last path segment of the
// namespace with any file extension removed. Store individuals show their
// decoded name: `cg_store.Rain->Wet`.
std::string display_name(std::string_view iri);
std::string local_name(std::string_view iri);

}  // namespace causalstore
