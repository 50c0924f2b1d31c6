#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "causalstore/term.hpp"

namespace causalstore {

struct TurtleOptions {
    // Language-tagged literals ("Margherita"@en) are read as plain strings
    // with the tag dropped. When false they are a parse error.
    bool accept_language_tags = true;
    // Prefix for relabelled blank nodes, so that blank nodes of different
    // documents never collide while re-reading one document stays stable.
    // Empty means "derive from a hash of the input".
    std::string blank_prefix;
};

// Parses the Turtle subset used for ontologies: @prefix/@base (and their
// SPARQL-style spellings), IRIs, prefixed names, `a`, `;` and `,` lists,
// blank nodes (`_:x`, `[]`, `[ ... ]`), collections, string/numeric/boolean
// literals. N-Triples input is accepted as a special case. Throws ParseError
// with line and column.
std::vector<Triple> parse_turtle(std::string_view text, const TurtleOptions& options = {});

}  // namespace causalstore
