#include <doctest.h>

#include <random>

#include "causalstore/error.hpp"
#include "causalstore/ntriples.hpp"
#include "causalstore/term.hpp"
#include "causalstore/vocabulary.hpp"
#include "support/random_terms.hpp"

using namespace causalstore;

TEST_CASE("iri invariants") {
    CHECK(Term::iri("http://example.org/a").is_iri());
    CHECK_THROWS_AS(Term::iri(""), ValidationError);
    CHECK_THROWS_AS(Term::iri("http://example.org/a b"), ValidationError);
    CHECK_THROWS_AS(Term::iri("http://example.org/a>b"), ValidationError);
    CHECK_THROWS_AS(Term::iri("http://example.org/\tb"), ValidationError);
}

TEST_CASE("literal datatypes are restricted and validated") {
    CHECK(Term::literal("0.9", Datatype::Decimal).numeric_value() == doctest::Approx(0.9));
    CHECK(Term::literal("-12", Datatype::Integer).numeric_value() == -12.0);
    CHECK(Term::literal(".5", Datatype::Decimal).numeric_value() == 0.5);
    CHECK(Term::literal("5.", Datatype::Decimal).numeric_value() == 5.0);
    CHECK_FALSE(Term::string("0.9").numeric_value());
    CHECK_THROWS_AS(Term::literal("1e3", Datatype::Decimal), ValidationError);
    CHECK_THROWS_AS(Term::literal("abc", Datatype::Integer), ValidationError);
    CHECK_THROWS_AS(Term::literal("yes", Datatype::Boolean), ValidationError);
    CHECK_THROWS_AS(Term::literal(".", Datatype::Decimal), ValidationError);
    CHECK_FALSE(datatype_from_iri("http://www.w3.org/2001/XMLSchema#dateTime"));
}

TEST_CASE("decimal formatting is shortest round-trip with a fraction") {
    CHECK(format_decimal(2.0) == "2.0");
    CHECK(format_decimal(0.9) == "0.9");
    CHECK(format_decimal(1e-7) == "0.0000001");
    CHECK(format_decimal(-0.0) == "0.0");
    CHECK(format_decimal(123456.25) == "123456.25");
    CHECK_THROWS_AS(format_decimal(std::numeric_limits<double>::quiet_NaN()), ValidationError);
}

TEST_CASE("triple shape invariants") {
    auto s = Term::iri("http://example.org/s");
    auto p = Term::iri("http://example.org/p");
    CHECK_THROWS_AS(Triple(Term::string("x"), p, s), ValidationError);
    CHECK_THROWS_AS(Triple(s, Term::blank("b1"), s), ValidationError);
    CHECK_THROWS_AS(Triple(s, Term::string("p"), s), ValidationError);
    CHECK_NOTHROW(Triple(Term::blank("b1"), p, Term::string("x")));
}

TEST_CASE("canonical n-triples text") {
    Triple t(Term::iri("http://example.org/s"), Term::iri("http://example.org/p"),
             Term::string("a \"quoted\"\nline\\"));
    CHECK(t.to_ntriples() == R"(<http://example.org/s> <http://example.org/p> "a \"quoted\"\nline\\" .)");
    Triple d(Term::blank("x"), Term::iri(std::string(vocab::kHasConfidence)), Term::decimal(0.9));
    CHECK(d.to_ntriples() ==
          "_:x <http://causalgraph.org/ontology/causalgraph#hasConfidence> "
          "\"0.9\"^^<http://www.w3.org/2001/XMLSchema#decimal> .");
}

TEST_CASE("n-triples line parsing") {
    auto t = parse_ntriples_line(R"(<http://a/s> <http://a/p> "café \t" .)");
    CHECK(t.object.text() == "caf\xC3\xA9 \t");
    auto typed = parse_ntriples_line(
        R"(<http://a/s>   <http://a/p>  "3"^^<http://www.w3.org/2001/XMLSchema#integer>  . # trailing)");
    CHECK(typed.object.datatype() == Datatype::Integer);
    auto explicit_string =
        parse_ntriples_line(R"(_:b <http://a/p> "x"^^<http://www.w3.org/2001/XMLSchema#string> .)");
    CHECK(explicit_string.object == Term::string("x"));

    CHECK_THROWS_AS(parse_ntriples_line(R"("lit" <http://a/p> <http://a/o> .)"), ParseError);
    CHECK_THROWS_AS(parse_ntriples_line(R"(<http://a/s> <http://a/p> <http://a/o>)"), ParseError);
    CHECK_THROWS_AS(parse_ntriples_line(R"(<http://a/s> <http://a/p> "x"@en .)"), ParseError);
    CHECK_THROWS_AS(
        parse_ntriples_line(R"(<http://a/s> <http://a/p> "x"^^<http://www.w3.org/2001/XMLSchema#date> .)"),
        ParseError);
    try {
        parse_ntriples_line(R"(<http://a/s> <http://a/p> "unterminated)", 7);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 7);
    }
}

TEST_CASE("canonical serialization round-trips for random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        auto t = testsupport::random_triple(rng);
        CHECK(parse_ntriples_line(t.to_ntriples()) == t);
    }
    // Awkward string content survives too.
    Triple odd(Term::iri("http://a/s"), Term::iri("http://a/p"), Term::string("tab\there \"q\" \\ \r\n end"));
    CHECK(parse_ntriples_line(odd.to_ntriples()) == odd);
}

TEST_CASE("canonical triple order equals sorted line order") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        auto a = testsupport::random_triple(rng);
        auto b = testsupport::random_triple(rng);
        bool by_terms = canonical_compare(a, b) < 0;
        bool by_lines = a.to_ntriples() < b.to_ntriples();
        CHECK(by_terms == by_lines);
    }
}
