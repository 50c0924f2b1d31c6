#include "causalstore/ontology.hpp"

#include <functional>
#include <sstream>

#include "causalstore/error.hpp"
#include "causalstore/vocabulary.hpp"

namespace causalstore {

std::string ImportReport::to_line() const {
    std::ostringstream out;
    out << "imported " << classes_added << " classes, " << properties_added << " properties, "
        << subclass_axioms_added << " subclass axioms, " << triples_added << " triples";
    return out.str();
}

std::string ImportReport::to_json() const {
    std::ostringstream out;
    out << "{\"classes_added\":" << classes_added << ",\"properties_added\":" << properties_added
        << ",\"subclass_axioms_added\":" << subclass_axioms_added << ",\"triples_added\":" << triples_added << "}";
    return out.str();
}

namespace {

std::string str(std::string_view s) { return std::string(s); }

const std::set<std::string, std::less<>>& builtin_iris() {
    static const std::set<std::string, std::less<>> iris = [] {
        std::set<std::string, std::less<>> out;
        for (auto v : {vocab::kCausalNode, vocab::kCausalEdge, vocab::kCreator, vocab::kState, vocab::kEvent,
                       vocab::kVariable, vocab::kHasCause, vocab::kHasEffect, vocab::kIsCausing,
                       vocab::kIsAffectedBy, vocab::kHasCreator, vocab::kCreated, vocab::kHasConfidence,
                       vocab::kHasTimeLag, vocab::kRdfsComment})
            out.insert(str(v));
        return out;
    }();
    return iris;
}

bool is_datatype_iri(std::string_view iri) {
    return iri.starts_with(vocab::kXsd) || iri == "http://www.w3.org/2000/01/rdf-schema#Literal" ||
           iri == "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}

}  // namespace

const OntologyModel& OntologyModel::builtin() {
    static const OntologyModel model = [] {
        OntologyModel m;
        auto add_class = [&](std::string_view iri, std::initializer_list<std::string_view> parents) {
            OntologyClass c{str(iri), {}};
            for (auto p : parents) c.parents.insert(str(p));
            m.classes_.emplace(c.iri, std::move(c));
        };
        add_class(vocab::kCausalNode, {});
        add_class(vocab::kCausalEdge, {});
        add_class(vocab::kCreator, {});
        add_class(vocab::kState, {vocab::kCausalNode});
        add_class(vocab::kEvent, {vocab::kCausalNode});
        add_class(vocab::kVariable, {vocab::kCausalNode});

        auto add_prop = [&](std::string_view iri, PropertyKind kind, std::optional<std::string_view> domain,
                            std::optional<std::string_view> range) {
            PropertyDef p{str(iri), kind, {}, {}};
            if (domain) p.domain = str(*domain);
            if (range) p.range = str(*range);
            m.properties_.emplace(p.iri, std::move(p));
        };
        using K = PropertyKind;
        add_prop(vocab::kHasCause, K::Object, vocab::kCausalEdge, vocab::kCausalNode);
        add_prop(vocab::kHasEffect, K::Object, vocab::kCausalEdge, vocab::kCausalNode);
        add_prop(vocab::kIsCausing, K::Object, vocab::kCausalNode, vocab::kCausalEdge);
        add_prop(vocab::kIsAffectedBy, K::Object, vocab::kCausalNode, vocab::kCausalEdge);
        add_prop(vocab::kHasCreator, K::Object, std::nullopt, vocab::kCreator);
        add_prop(vocab::kCreated, K::Object, vocab::kCreator, std::nullopt);
        add_prop(vocab::kHasConfidence, K::Data, vocab::kCausalEdge, vocab::kXsdDecimal);
        add_prop(vocab::kHasTimeLag, K::Data, vocab::kCausalEdge, vocab::kXsdDecimal);
        add_prop(vocab::kRdfsComment, K::Data, std::nullopt, vocab::kXsdString);
        return m;
    }();
    return model;
}

bool OntologyModel::is_builtin(std::string_view iri) { return builtin_iris().count(iri) > 0; }

const OntologyClass* OntologyModel::find_class(std::string_view iri) const {
    auto it = classes_.find(str(iri));
    return it == classes_.end() ? nullptr : &it->second;
}

const PropertyDef* OntologyModel::find_property(std::string_view iri) const {
    auto it = properties_.find(str(iri));
    return it == properties_.end() ? nullptr : &it->second;
}

std::set<std::string> OntologyModel::superclasses(std::string_view iri) const {
    std::set<std::string> out;
    std::vector<std::string> stack{str(iri)};
    while (!stack.empty()) {
        auto cur = std::move(stack.back());
        stack.pop_back();
        if (!out.insert(cur).second) continue;
        if (auto* c = find_class(cur))
            for (const auto& p : c->parents) stack.push_back(p);
    }
    return out;
}

bool OntologyModel::is_subclass_of(std::string_view sub, std::string_view super) const {
    return superclasses(sub).count(str(super)) > 0;
}

void OntologyModel::check_acyclic() const {
    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> marks;
    std::function<void(const std::string&)> visit = [&](const std::string& iri) {
        auto& m = marks[iri];
        if (m == Mark::Done) return;
        if (m == Mark::Active) throw ValidationError("subclass cycle through " + display_name(iri));
        m = Mark::Active;
        if (auto* c = find_class(iri))
            for (const auto& p : c->parents) visit(p);
        marks[iri] = Mark::Done;
    };
    for (const auto& [iri, _] : classes_) visit(iri);
}

OntologyModel OntologyModel::merged_with(std::span<const Triple> triples, ImportReport* report) const {
    OntologyModel next = *this;
    ImportReport counts;
    const std::string type = str(vocab::kRdfType);
    const std::string sub_class_of = str(vocab::kRdfsSubClassOf);
    const std::string domain = str(vocab::kRdfsDomain);
    const std::string range = str(vocab::kRdfsRange);
    const OntologyModel& base = builtin();

    auto ensure_class = [&](const std::string& iri) {
        if (iri == vocab::kOwlThing) return;
        if (next.properties_.count(iri)) throw ValidationError(display_name(iri) + " is declared as both class and property");
        if (next.classes_.emplace(iri, OntologyClass{iri, {}}).second) ++counts.classes_added;
    };
    struct PendingProperty {
        std::optional<PropertyKind> kind;
        std::optional<std::string> domain;
        std::optional<std::string> range;
    };
    std::map<std::string, PendingProperty> pending;

    auto redefinition = [](const std::string& iri) {
        return ValidationError("import redefines built-in " + display_name(iri));
    };

    for (const auto& t : triples) {
        if (!t.subject.is_iri()) continue;  // restrictions and other anonymous axioms stay raw
        const std::string& s = t.subject.text();
        const std::string& p = t.predicate.text();
        bool builtin = is_builtin(s);

        if (p == type && t.object.is_iri()) {
            const std::string& o = t.object.text();
            if (o == vocab::kOwlClass || o == vocab::kRdfsClass) {
                if (builtin && !base.find_class(s)) throw redefinition(s);
                if (!builtin) ensure_class(s);
            } else if (o == vocab::kOwlObjectProperty || o == vocab::kOwlDatatypeProperty || o == vocab::kRdfProperty) {
                std::optional<PropertyKind> kind;
                if (o == vocab::kOwlObjectProperty) kind = PropertyKind::Object;
                if (o == vocab::kOwlDatatypeProperty) kind = PropertyKind::Data;
                if (builtin) {
                    auto* def = base.find_property(s);
                    if (!def || (kind && *kind != def->kind)) throw redefinition(s);
                    continue;
                }
                auto& pp = pending[s];
                if (kind) {
                    if (pp.kind && *pp.kind != *kind) throw ValidationError(display_name(s) + " declared as both object and data property");
                    pp.kind = kind;
                }
            }
        } else if (p == sub_class_of && t.object.is_iri()) {
            const std::string& o = t.object.text();
            if (builtin) {
                auto* c = base.find_class(s);
                if (!c) throw redefinition(s);
                if (o != vocab::kOwlThing && !c->parents.count(o)) throw redefinition(s);
                continue;
            }
            ensure_class(s);
            ensure_class(o);
            if (o != vocab::kOwlThing && next.classes_.at(s).parents.insert(o).second) ++counts.subclass_axioms_added;
        } else if ((p == domain || p == range) && t.object.is_iri()) {
            const std::string& o = t.object.text();
            if (builtin) {
                auto* def = base.find_property(s);
                if (!def) throw redefinition(s);
                const auto& current = p == domain ? def->domain : def->range;
                if (current != o) throw redefinition(s);
                continue;
            }
            auto& pp = pending[s];
            auto& slot = p == domain ? pp.domain : pp.range;
            if (slot && *slot != o) throw ValidationError("conflicting " + display_name(p) + " for " + display_name(s));
            slot = o;
        }
    }

    for (auto& [iri, pp] : pending) {
        PropertyDef def{iri, PropertyKind::Object, {}, {}};
        auto existing = next.properties_.find(iri);
        if (existing != next.properties_.end()) def = existing->second;
        else if (next.classes_.count(iri)) throw ValidationError(display_name(iri) + " is declared as both class and property");

        PropertyKind kind = pp.kind.value_or(existing != next.properties_.end()
                                                 ? def.kind
                                                 : (pp.range && is_datatype_iri(*pp.range) ? PropertyKind::Data
                                                                                          : PropertyKind::Object));
        if (existing != next.properties_.end() && kind != def.kind)
            throw ValidationError(display_name(iri) + " changes kind on re-import");
        def.kind = kind;

        auto merge_slot = [&](std::optional<std::string>& slot, const std::optional<std::string>& incoming,
                              const char* what) {
            if (!incoming) return;
            if (slot && *slot != *incoming)
                throw ValidationError(std::string("conflicting ") + what + " for " + display_name(iri));
            slot = incoming;
        };
        std::optional<std::string> incoming_range = pp.range;
        if (kind == PropertyKind::Data && incoming_range) {
            if (*incoming_range == "http://www.w3.org/2000/01/rdf-schema#Literal") {
                incoming_range.reset();
            } else if (!datatype_from_iri(*incoming_range)) {
                throw ValidationError("data property " + display_name(iri) + " ranges over unsupported datatype <" +
                                      *incoming_range + ">");
            }
        }
        merge_slot(def.domain, pp.domain, "domain");
        merge_slot(def.range, incoming_range, "range");
        if (def.domain) ensure_class(*def.domain);
        if (kind == PropertyKind::Object && def.range) ensure_class(*def.range);

        if (existing == next.properties_.end()) {
            next.properties_.emplace(iri, std::move(def));
            ++counts.properties_added;
        } else {
            existing->second = std::move(def);
        }
    }

    next.check_acyclic();
    if (report) {
        report->classes_added += counts.classes_added;
        report->properties_added += counts.properties_added;
        report->subclass_axioms_added += counts.subclass_axioms_added;
    }
    return next;
}

namespace {

template <typename Map>
std::string resolve_entity(const Map& entities, std::string_view name, const char* what) {
    if (name.empty()) throw NotFoundError(std::string("empty ") + what + " name");
    if (entities.count(str(name))) return str(name);
    std::vector<std::string> by_local;
    for (const auto& [iri, _] : entities) {
        if (display_name(iri) == name) return iri;
        if (local_name(iri) == name) by_local.push_back(iri);
    }
    if (by_local.size() == 1) return by_local.front();
    if (by_local.empty()) throw NotFoundError(std::string("unknown ") + what + " '" + str(name) + "'");
    std::string msg = std::string("ambiguous ") + what + " name '" + str(name) + "':";
    for (const auto& c : by_local) msg += " " + display_name(c);
    throw ValidationError(msg);
}

}  // namespace

std::string OntologyModel::resolve_class(std::string_view name) const {
    return resolve_entity(classes_, name, "class");
}

std::string OntologyModel::resolve_property(std::string_view name) const {
    return resolve_entity(properties_, name, "property");
}

bool is_valid_individual_name(std::string_view name) noexcept {
    if (name.empty()) return false;
    for (unsigned char c : name)
        if (c < 0x20 || c == 0x7f) return false;
    return is_valid_lexical(name, Datatype::String);  // UTF-8 check
}

std::string individual_iri(std::string_view name) {
    if (!is_valid_individual_name(name)) throw ValidationError("invalid individual name '" + str(name) + "'");
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out(vocab::kStore);
    for (unsigned char c : name) {
        bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
                          c == '.' || c == '_' || c == '~';
        if (unreserved) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 0xf];
        }
    }
    return out;
}

Term individual_term(std::string_view name) { return Term::iri(individual_iri(name)); }

std::optional<std::string> individual_name(std::string_view iri) {
    if (!iri.starts_with(vocab::kStore)) return std::nullopt;
    std::string_view enc = iri.substr(vocab::kStore.size());
    std::string out;
    for (std::size_t i = 0; i < enc.size(); ++i) {
        if (enc[i] != '%') {
            out += enc[i];
            continue;
        }
        if (i + 2 >= enc.size()) return std::nullopt;
        auto nib = [](char h) -> int {
            if (h >= '0' && h <= '9') return h - '0';
            if (h >= 'A' && h <= 'F') return h - 'A' + 10;
            if (h >= 'a' && h <= 'f') return h - 'a' + 10;
            return -1;
        };
        int hi = nib(enc[i + 1]);
        int lo = nib(enc[i + 2]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
    }
    if (!is_valid_individual_name(out) || individual_iri(out) != iri) return std::nullopt;
    return out;
}

std::string local_name(std::string_view iri) {
    auto cut = iri.find_last_of('#');
    if (cut == std::string_view::npos) cut = iri.find_last_of('/');
    if (cut == std::string_view::npos) return str(iri);
    return str(iri.substr(cut + 1));
}

std::string display_name(std::string_view iri) {
    // store individuals show their decoded name
    if (auto name = individual_name(iri)) return "cg_store." + *name;
    auto cut = iri.find_last_of('#');
    if (cut == std::string_view::npos) cut = iri.find_last_of('/');
    if (cut == std::string_view::npos) return str(iri);
    std::string_view ns = iri.substr(0, cut);
    while (!ns.empty() && (ns.back() == '/' || ns.back() == '#')) ns.remove_suffix(1);
    auto slash = ns.find_last_of("/:");
    std::string_view label = slash == std::string_view::npos ? ns : ns.substr(slash + 1);
    auto dot = label.find_last_of('.');
    if (dot != std::string_view::npos) {
        auto ext = label.substr(dot + 1);
        if (ext == "owl" || ext == "ttl" || ext == "rdf" || ext == "nt" || ext == "n3" || ext == "xml")
            label = label.substr(0, dot);
    }
    return str(label) + "." + str(iri.substr(cut + 1));
}

}  // namespace causalstore
