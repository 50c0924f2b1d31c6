#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causalstore/term.hpp"
#include "causalstore/triple_store.hpp"

namespace causalstore {

// One position of a triple pattern: a variable name (without '?') or a term.
struct PatternSlot {
    std::optional<std::string> variable;
    std::optional<Term> term;

    static PatternSlot var(std::string name) { return {std::move(name), std::nullopt}; }
    static PatternSlot constant(Term t) { return {std::nullopt, std::move(t)}; }
    bool is_variable() const noexcept { return variable.has_value(); }
};

struct TriplePattern {
    PatternSlot subject;
    PatternSlot predicate;
    PatternSlot object;
};

enum class CompareOp { Lt, Le, Eq, Ne, Ge, Gt };

// FILTER(?variable op constant)
struct Comparison {
    std::string variable;
    CompareOp op = CompareOp::Eq;
    Term constant = Term::string("");
};

struct QueryAst {
    std::vector<std::string> select;
    std::vector<TriplePattern> patterns;
    std::vector<Comparison> filters;
    std::optional<std::size_t> limit;
};

// SELECT ?v... | * WHERE { pattern ('.' pattern)* FILTER(...)* } [LIMIT n]
// with PREFIX declarations. `cg:`, `cgs:`, `rdf:`, `rdfs:`, `owl:` and `xsd:`
// are predeclared. Throws ParseError (with column) on syntax errors, unknown
// prefixes and variables that no pattern binds.
QueryAst parse_query(std::string_view text);

// Numeric constants compare against decimal/integer literals as doubles,
// string constants against string literals codepoint-wise, IRIs against IRIs
// by text and booleans against booleans. Every other pairing is false.
bool filter_accepts(const Term& value, CompareOp op, const Term& constant);

struct EvalOptions {
    // Join order as a permutation of pattern indexes; unset picks the
    // pattern with the most bound positions first.
    std::optional<std::vector<std::size_t>> pattern_order;
    // Check each filter as soon as its variable is bound instead of after the
    // full join.
    bool push_filters = true;
};

struct QueryResult {
    std::vector<std::string> variables;
    // Sorted by canonical term text, column by column, without duplicates.
    std::vector<std::vector<Term>> rows;
};

QueryResult eval_query(const TripleStore& store, const QueryAst& ast, const EvalOptions& options = {});

// Header line of variable names, then one line per row. Store individuals are
// shown by name, other IRIs in angle brackets, literals by lexical form.
std::string to_tsv(const QueryResult& result);
// One JSON object per row mapping variable names to N-Triples terms.
std::string to_json_lines(const QueryResult& result);

}  // namespace causalstore
