#pragma once

// Global reification check over raw triples. Independent of Graph::validate().

#include <map>
#include <set>
#include <string>
#include <vector>

#include "causalstore/term.hpp"
#include "causalstore/triple_store.hpp"

namespace testsupport {

inline std::vector<std::string> reification_violations(const std::vector<causalstore::Triple>& triples) {
    const std::string ns = "http://causalgraph.org/ontology/causalgraph#";
    const std::string type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    std::set<std::string> edges;
    std::map<std::string, std::vector<std::string>> cause_of, effect_of;  // edge -> objects
    std::set<std::pair<std::string, std::string>> has_cause, has_effect, is_causing, affected_by;

    for (const auto& t : triples) {
        const std::string s = t.subject.to_ntriples();
        const std::string& p = t.predicate.text();
        const std::string o = t.object.to_ntriples();
        if (p == type && t.object.is_iri() && t.object.text() == ns + "CausalEdge") edges.insert(s);
        if (p == ns + "hasCause") {
            cause_of[s].push_back(o);
            has_cause.insert({s, o});
        } else if (p == ns + "hasEffect") {
            effect_of[s].push_back(o);
            has_effect.insert({s, o});
        } else if (p == ns + "isCausing") {
            is_causing.insert({o, s});  // (node isCausing edge)
        } else if (p == ns + "isAffectedBy") {
            affected_by.insert({o, s});
        }
    }

    std::vector<std::string> out;
    for (const auto& e : edges) {
        if (cause_of[e].size() != 1) out.push_back(e + " has " + std::to_string(cause_of[e].size()) + " causes");
        if (effect_of[e].size() != 1) out.push_back(e + " has " + std::to_string(effect_of[e].size()) + " effects");
    }
    if (has_cause != is_causing) out.push_back("isCausing does not mirror hasCause");
    if (has_effect != affected_by) out.push_back("isAffectedBy does not mirror hasEffect");
    return out;
}

inline std::vector<std::string> reification_violations(const causalstore::TripleStore& store) {
    return reification_violations(store.match());
}

}  // namespace testsupport
