#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace causalstore {

// The literal datatypes the store accepts. Anything else is rejected when
// text is parsed.
enum class Datatype : std::uint8_t { String, Decimal, Integer, Boolean };

std::string_view datatype_iri(Datatype dt) noexcept;
std::optional<Datatype> datatype_from_iri(std::string_view iri) noexcept;

// Shortest fixed-notation text that parses back to `value`, always carrying a
// fractional part ("2.0", "0.9"). Throws ValidationError for NaN/infinity.
std::string format_decimal(double value);

struct Iri {
    std::string text;
    friend bool operator==(const Iri&, const Iri&) = default;
};

struct Literal {
    std::string lexical;
    Datatype datatype = Datatype::String;
    friend bool operator==(const Literal&, const Literal&) = default;
};

struct Blank {
    std::string label;
    friend bool operator==(const Blank&, const Blank&) = default;
};

// An RDF term. Construction validates the invariants, so a Term that exists
// is always serializable as N-Triples.
class Term {
public:
    enum class Kind : std::uint8_t { Iri, Literal, Blank };

    static Term iri(std::string text);
    static Term literal(std::string lexical, Datatype datatype);
    static Term blank(std::string label);

    static Term string(std::string value) { return literal(std::move(value), Datatype::String); }
    static Term decimal(double value) { return literal(format_decimal(value), Datatype::Decimal); }
    static Term integer(std::int64_t value) { return literal(std::to_string(value), Datatype::Integer); }
    static Term boolean(bool value) { return literal(value ? "true" : "false", Datatype::Boolean); }

    Kind kind() const noexcept { return static_cast<Kind>(value_.index()); }
    bool is_iri() const noexcept { return kind() == Kind::Iri; }
    bool is_literal() const noexcept { return kind() == Kind::Literal; }
    bool is_blank() const noexcept { return kind() == Kind::Blank; }

    // IRI text, literal lexical form or blank label.
    const std::string& text() const noexcept;
    // Only meaningful for literals.
    Datatype datatype() const noexcept;

    // Numeric value of decimal/integer literals; nullopt otherwise.
    std::optional<double> numeric_value() const;

    // Canonical N-Triples form of the term.
    std::string to_ntriples() const;

    friend bool operator==(const Term&, const Term&) = default;

private:
    explicit Term(std::variant<Iri, Literal, Blank> v) : value_(std::move(v)) {}

    std::variant<Iri, Literal, Blank> value_;
};

bool is_valid_iri(std::string_view text) noexcept;
bool is_valid_blank_label(std::string_view label) noexcept;
bool is_valid_lexical(std::string_view lexical, Datatype dt) noexcept;

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    // Throws ValidationError for a literal/blank predicate or a literal subject.
    Triple(Term s, Term p, Term o);

    // Canonical N-Triples line without the trailing LF.
    std::string to_ntriples() const;

    friend bool operator==(const Triple&, const Triple&) = default;
};

// Lexicographic order over the canonical text of (subject, predicate, object).
std::strong_ordering canonical_compare(const Term& a, const Term& b);
std::strong_ordering canonical_compare(const Triple& a, const Triple& b);

struct CanonicalLess {
    bool operator()(const Triple& a, const Triple& b) const { return canonical_compare(a, b) < 0; }
    bool operator()(const Term& a, const Term& b) const { return canonical_compare(a, b) < 0; }
};

}  // namespace causalstore
