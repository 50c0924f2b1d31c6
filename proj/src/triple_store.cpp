#include "causalstore/triple_store.hpp"

#include <algorithm>
#include <limits>

namespace causalstore {

namespace {

constexpr TermId kMax = std::numeric_limits<TermId>::max();

TripleStore::Key to_pos(const TripleStore::Key& k) { return {k[1], k[2], k[0]}; }
TripleStore::Key to_osp(const TripleStore::Key& k) { return {k[2], k[0], k[1]}; }
TripleStore::Key from_pos(const TripleStore::Key& k) { return {k[2], k[0], k[1]}; }
TripleStore::Key from_osp(const TripleStore::Key& k) { return {k[1], k[2], k[0]}; }

// Collects keys of `index` whose first `bound` components equal `prefix`.
template <typename Fn>
void scan(const std::set<TripleStore::Key>& index, const TripleStore::Key& prefix, int bound, Fn&& emit) {
    TripleStore::Key lo = prefix;
    TripleStore::Key hi = prefix;
    for (int i = bound; i < 3; ++i) {
        lo[i] = 0;
        hi[i] = kMax;
    }
    for (auto it = index.lower_bound(lo); it != index.end() && !(hi < *it); ++it) emit(*it);
}

}  // namespace

std::optional<TermId> TripleStore::find_id(const Term& t) const {
    auto it = ids_.find(t.to_ntriples());
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

TermId TripleStore::intern(const Term& t) {
    std::string text = t.to_ntriples();
    if (auto it = ids_.find(text); it != ids_.end()) return it->second;
    auto id = static_cast<TermId>(terms_.size());
    terms_.push_back(t);
    canonical_.push_back(text);
    ids_.emplace(std::move(text), id);
    return id;
}

bool TripleStore::insert(const Triple& t) {
    Key k{intern(t.subject), intern(t.predicate), intern(t.object)};
    if (!spo_.insert(k).second) return false;
    pos_.insert(to_pos(k));
    osp_.insert(to_osp(k));
    sequence_[k] = next_sequence_++;
    return true;
}

bool TripleStore::erase(const Triple& t) {
    auto s = find_id(t.subject);
    auto p = find_id(t.predicate);
    auto o = find_id(t.object);
    if (!s || !p || !o) return false;
    Key k{*s, *p, *o};
    if (spo_.erase(k) == 0) return false;
    pos_.erase(to_pos(k));
    osp_.erase(to_osp(k));
    sequence_.erase(k);
    return true;
}

bool TripleStore::contains(const Triple& t) const {
    auto s = find_id(t.subject);
    auto p = find_id(t.predicate);
    auto o = find_id(t.object);
    return s && p && o && spo_.count(Key{*s, *p, *o}) > 0;
}

std::optional<std::uint64_t> TripleStore::insertion_sequence(const Triple& t) const {
    auto s = find_id(t.subject);
    auto p = find_id(t.predicate);
    auto o = find_id(t.object);
    if (!s || !p || !o) return std::nullopt;
    auto it = sequence_.find(Key{*s, *p, *o});
    if (it == sequence_.end()) return std::nullopt;
    return it->second;
}

void TripleStore::clear() {
    *this = TripleStore{};
}

std::vector<TripleStore::Key> TripleStore::select(const std::optional<Term>& s, const std::optional<Term>& p,
                                                  const std::optional<Term>& o) const {
    std::optional<TermId> sid, pid, oid;
    if (s && !(sid = find_id(*s))) return {};
    if (p && !(pid = find_id(*p))) return {};
    if (o && !(oid = find_id(*o))) return {};

    std::vector<Key> out;
    if (sid && oid && !pid) {
        scan(osp_, Key{*oid, *sid, 0}, 2, [&](const Key& k) { out.push_back(from_osp(k)); });
    } else if (sid) {
        int bound = 1;
        Key prefix{*sid, 0, 0};
        if (pid) {
            prefix[1] = *pid;
            bound = 2;
            if (oid) {
                prefix[2] = *oid;
                bound = 3;
            }
        }
        scan(spo_, prefix, bound, [&](const Key& k) { out.push_back(k); });
    } else if (pid) {
        Key prefix{*pid, oid ? *oid : 0, 0};
        scan(pos_, prefix, oid ? 2 : 1, [&](const Key& k) { out.push_back(from_pos(k)); });
    } else if (oid) {
        scan(osp_, Key{*oid, 0, 0}, 1, [&](const Key& k) { out.push_back(from_osp(k)); });
    } else {
        out.assign(spo_.begin(), spo_.end());
    }
    return out;
}

Triple TripleStore::materialize(const Key& k) const {
    return Triple(terms_[k[0]], terms_[k[1]], terms_[k[2]]);
}

std::vector<Triple> TripleStore::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                       const std::optional<Term>& o) const {
    auto keys = select(s, p, o);
    std::sort(keys.begin(), keys.end(), [&](const Key& a, const Key& b) {
        for (int i = 0; i < 3; ++i) {
            if (a[i] == b[i]) continue;
            return canonical_[a[i]] < canonical_[b[i]];
        }
        return false;
    });
    std::vector<Triple> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(materialize(k));
    return out;
}

std::vector<Triple> TripleStore::match_in_insertion_order(const std::optional<Term>& s,
                                                          const std::optional<Term>& p,
                                                          const std::optional<Term>& o) const {
    auto keys = select(s, p, o);
    std::sort(keys.begin(), keys.end(),
              [&](const Key& a, const Key& b) { return sequence_.at(a) < sequence_.at(b); });
    std::vector<Triple> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(materialize(k));
    return out;
}

std::string TripleStore::to_ntriples() const {
    std::string out;
    for (const auto& t : match()) {
        out += t.to_ntriples();
        out += '\n';
    }
    return out;
}

std::vector<TripleStore::Key> TripleStore::index_entries(Index which) const {
    std::vector<Key> out;
    switch (which) {
        case Index::Spo: out.assign(spo_.begin(), spo_.end()); break;
        case Index::Pos:
            for (const auto& k : pos_) out.push_back(from_pos(k));
            break;
        case Index::Osp:
            for (const auto& k : osp_) out.push_back(from_osp(k));
            break;
    }
    return out;
}

}  // namespace causalstore
