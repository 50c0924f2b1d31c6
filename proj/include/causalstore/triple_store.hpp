#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "causalstore/term.hpp"

namespace causalstore {

using TermId = std::uint32_t;

// In-memory triple set with SPO, POS and OSP indexes over interned term ids.
//
// Every insert records a monotonically increasing sequence number so callers
// can recover insertion order (used to list individuals in creation order).
// Const member functions never mutate and may run concurrently.
class TripleStore {
public:
    enum class Index { Spo, Pos, Osp };
    using Key = std::array<TermId, 3>;

    // Returns false when the triple was already present.
    bool insert(const Triple& t);
    // Returns false when the triple was absent.
    bool erase(const Triple& t);
    bool contains(const Triple& t) const;

    // Triples agreeing with every bound position, ordered by canonical
    // N-Triples text.
    std::vector<Triple> match(const std::optional<Term>& s = std::nullopt,
                              const std::optional<Term>& p = std::nullopt,
                              const std::optional<Term>& o = std::nullopt) const;

    // Same selection as match(), ordered by insertion sequence.
    std::vector<Triple> match_in_insertion_order(const std::optional<Term>& s = std::nullopt,
                                                 const std::optional<Term>& p = std::nullopt,
                                                 const std::optional<Term>& o = std::nullopt) const;

    // Sequence number of the insert that added `t`; nullopt when absent.
    std::optional<std::uint64_t> insertion_sequence(const Triple& t) const;

    std::size_t size() const noexcept { return spo_.size(); }
    bool empty() const noexcept { return spo_.empty(); }
    void clear();

    // Sorted canonical N-Triples, one LF-terminated line per triple.
    std::string to_ntriples() const;

    // Raw index contents, permuted back to (s, p, o) id order. Lets tests
    // re-derive each index from the others.
    std::vector<Key> index_entries(Index which) const;
    const Term& term(TermId id) const { return terms_.at(id); }

private:
    std::optional<TermId> find_id(const Term& t) const;
    TermId intern(const Term& t);
    std::vector<Key> select(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;
    Triple materialize(const Key& spo) const;

    std::vector<Term> terms_;
    std::vector<std::string> canonical_;
    std::unordered_map<std::string, TermId> ids_;

    std::set<Key> spo_;
    std::set<Key> pos_;
    std::set<Key> osp_;

    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = k[0];
            h = h * 0x9e3779b97f4a7c15ULL ^ k[1];
            h = h * 0x9e3779b97f4a7c15ULL ^ k[2];
            return static_cast<std::size_t>(h);
        }
    };
    std::unordered_map<Key, std::uint64_t, KeyHash> sequence_;
    std::uint64_t next_sequence_ = 0;
};

}  // namespace causalstore
