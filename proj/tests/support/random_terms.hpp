#pragma once

#include <random>
#include <string>

#include "causalstore/term.hpp"
#include "causalstore/vocabulary.hpp"

namespace testsupport {

// Small vocabularies so random patterns hit existing triples often.
inline causalstore::Term random_resource(std::mt19937_64& rng, int pool = 12) {
    std::uniform_int_distribution<int> d(0, pool - 1);
    int k = d(rng);
    if (k % 7 == 6) return causalstore::Term::blank("b" + std::to_string(k));
    return causalstore::Term::iri("http://example.org/r" + std::to_string(k));
}

inline causalstore::Term random_predicate(std::mt19937_64& rng, int pool = 5) {
    std::uniform_int_distribution<int> d(0, pool - 1);
    return causalstore::Term::iri("http://example.org/p" + std::to_string(d(rng)));
}

inline causalstore::Term random_object(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_int_distribution<int> small(0, 9);
    switch (kind(rng)) {
        case 0: return causalstore::Term::string("text " + std::to_string(small(rng)));
        case 1: return causalstore::Term::decimal(small(rng) / 10.0 + 0.1);
        case 2: return causalstore::Term::integer(small(rng));
        default: return random_resource(rng);
    }
}

inline causalstore::Triple random_triple(std::mt19937_64& rng) {
    return causalstore::Triple(random_resource(rng), random_predicate(rng), random_object(rng));
}

}  // namespace testsupport
