#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "causalstore/term.hpp"

namespace causalstore {

// Parses one N-Triples statement (no trailing LF). Throws ParseError with the
// given line number on malformed input or an unsupported literal datatype.
Triple parse_ntriples_line(std::string_view line, std::size_t line_no = 1);

// Parses a whole N-Triples document; blank lines and `#` comment lines are
// skipped.
std::vector<Triple> parse_ntriples(std::string_view text);

// Appends the UTF-8 encoding of `cp` to `out`.
void append_utf8(std::string& out, std::uint32_t cp);

// Sorted canonical N-Triples dump, one LF-terminated line per triple.
std::string to_ntriples_document(std::vector<Triple> triples);

}  // namespace causalstore
