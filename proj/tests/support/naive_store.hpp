#pragma once

// Reference triple set: a flat vector scanned linearly. Deliberately shares no
// code with TripleStore beyond Term/Triple.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "causalstore/term.hpp"

namespace testsupport {

class NaiveStore {
public:
    bool insert(const causalstore::Triple& t) {
        if (std::find(triples_.begin(), triples_.end(), t) != triples_.end()) return false;
        triples_.push_back(t);
        return true;
    }

    bool erase(const causalstore::Triple& t) {
        auto it = std::find(triples_.begin(), triples_.end(), t);
        if (it == triples_.end()) return false;
        triples_.erase(it);
        return true;
    }

    std::vector<causalstore::Triple> match(const std::optional<causalstore::Term>& s,
                                           const std::optional<causalstore::Term>& p,
                                           const std::optional<causalstore::Term>& o) const {
        std::vector<causalstore::Triple> out;
        for (const auto& t : triples_) {
            if (s && !(t.subject == *s)) continue;
            if (p && !(t.predicate == *p)) continue;
            if (o && !(t.object == *o)) continue;
            out.push_back(t);
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return a.to_ntriples() < b.to_ntriples();
        });
        return out;
    }

    // Sorted canonical dump built line by line.
    std::string dump() const {
        std::vector<std::string> lines;
        for (const auto& t : triples_) lines.push_back(t.to_ntriples() + "\n");
        std::sort(lines.begin(), lines.end());
        std::string out;
        for (const auto& l : lines) out += l;
        return out;
    }

    std::size_t size() const { return triples_.size(); }
    const std::vector<causalstore::Triple>& triples() const { return triples_; }

private:
    std::vector<causalstore::Triple> triples_;
};

}  // namespace testsupport
