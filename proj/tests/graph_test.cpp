#include <doctest.h>

#include <algorithm>
#include <set>

#include "causalstore/error.hpp"
#include "causalstore/graph.hpp"
#include "causalstore/vocabulary.hpp"
#include "support/temp_dir.hpp"

using namespace causalstore;
using testsupport::TempDir;

namespace {

using Names = std::vector<std::string>;

// Listing 3: two explicit nodes, one edge, then a forced edge.
Graph listing3(GraphConfig config = {}) {
    Graph g(std::move(config));
    g.add_causal_node("Rain");
    g.add_causal_node("Wet");
    g.add_causal_edge("Rain", "Wet", {.name = "Rain->Wet"});
    g.add_causal_edge("Wet", "Slippery", {.name = "Wet->Slippery", .force_create = true});
    return g;
}

std::set<std::string> objects_of(const Graph& g, const std::string& subject, std::string_view p) {
    std::set<std::string> out;
    for (const auto& t : g.store().match(individual_term(subject), Term::iri(std::string(p)), std::nullopt))
        out.insert(*individual_name(t.object.text()));
    return out;
}

}  // namespace

TEST_CASE("listing 2/3: individuals in creation order") {
    auto g = listing3();
    CHECK(g.individual_names() == Names{"Rain", "Wet", "Rain->Wet", "Slippery", "Wet->Slippery"});
    CHECK(g.causal_node_names() == Names{"Rain", "Wet", "Slippery"});
    CHECK(g.causal_edge_names() == Names{"Rain->Wet", "Wet->Slippery"});
    auto edges = g.store().match(std::nullopt, Term::iri(std::string(vocab::kRdfType)),
                                 Term::iri(std::string(vocab::kCausalEdge)));
    REQUIRE(edges.size() == 2);
    CHECK(individual_name(edges[0].subject.text()) == "Rain->Wet");
    CHECK(individual_name(edges[1].subject.text()) == "Wet->Slippery");
    CHECK(g.validate().clean());
    CHECK(objects_of(g, "Wet", vocab::kIsAffectedBy) == std::set<std::string>{"Rain->Wet"});
    CHECK(objects_of(g, "Wet", vocab::kIsCausing) == std::set<std::string>{"Wet->Slippery"});
}

TEST_CASE("add_causal_node: idempotent, generated names, comments") {
    Graph g;
    CHECK(g.add_causal_node("Rain") == "Rain");
    auto size = g.store().size();
    CHECK(g.add_causal_node("Rain") == "Rain");
    CHECK(g.store().size() == size);
    CHECK(g.add_causal_node() == "CausalNode_1");
    CHECK(g.add_causal_node() == "CausalNode_2");
    g.add_causal_node("Wet", {"some text"});
    auto comments = g.store().match(individual_term("Wet"), Term::iri(std::string(vocab::kRdfsComment)));
    REQUIRE(comments.size() == 1);
    CHECK(comments[0].object.text() == "some text");
    CHECK(g.get_entity_by_name("Rain")->types == Names{std::string(vocab::kCausalNode)});
    CHECK_FALSE(g.get_entity_by_name("Nope"));
    CHECK_THROWS_AS(g.add_causal_node(""), ValidationError);

    // the generator fills gaps left by removals
    CHECK(g.remove_causal_node("CausalNode_1"));
    CHECK(g.add_causal_node() == "CausalNode_1");
}

TEST_CASE("listing 4: edge metadata") {
    Graph g;
    g.add_causal_node("Rain");
    g.add_causal_node("Wet");
    g.add_causal_edge("Rain", "Wet",
                      {.name = "Rain->Wet", .confidence = 0.9, .time_lag_s = 2.0, .comments = {"some text"}});
    auto rec = g.get_edge_record("Rain->Wet");
    CHECK(rec.cause == "Rain");
    CHECK(rec.effect == "Wet");
    CHECK(rec.confidence == 0.9);
    CHECK(rec.time_lag_s == 2.0);
    CHECK(rec.comments == Names{"some text"});
    CHECK_FALSE(rec.creator);

    for (double bad : {0.0, 1.0000001, -0.5}) {
        CHECK_THROWS_AS(g.add_causal_edge("Rain", "Wet", {.confidence = bad}), ValidationError);
    }
    CHECK_THROWS_AS(g.add_causal_edge("Rain", "Wet", {.time_lag_s = -1.0}), ValidationError);
    CHECK_NOTHROW(g.add_causal_edge("Rain", "Wet", {.name = "e1", .confidence = 1.0}));
}

TEST_CASE("add_causal_edge: errors") {
    auto g = listing3();
    CHECK_THROWS_AS(g.add_causal_edge("Rain", "Nowhere"), NotFoundError);
    CHECK_THROWS_AS(g.add_causal_edge("Rain", "Rain"), ValidationError);
    CHECK_THROWS_AS(g.add_causal_edge("Wet", "Rain", {.name = "Rain->Wet"}), ValidationError);
    CHECK_THROWS_AS(g.add_causal_edge("Rain", "Wet", {.name = "Slippery"}), ValidationError);
    CHECK_THROWS_AS(g.add_causal_edge("Rain", "Rain->Wet"), ValidationError);
    CHECK_THROWS_AS(g.add_causal_node("Rain->Wet"), ValidationError);
    CHECK(g.individual_names().size() == 5);
}

TEST_CASE("edge upsert updates metadata in place") {
    auto g = listing3();
    auto before = g.store().size();
    g.add_causal_edge("Rain", "Wet", {.name = "Rain->Wet", .confidence = 0.5});
    CHECK(g.store().size() == before + 1);
    g.add_causal_edge("Rain", "Wet", {.name = "Rain->Wet", .confidence = 0.7, .comments = {"a"}});
    auto rec = g.get_edge_record("Rain->Wet");
    CHECK(rec.confidence == 0.7);
    CHECK(rec.comments == Names{"a"});
    g.add_causal_edge("Rain", "Wet", {.name = "Rain->Wet", .comments = {"b"}, .creator = "Alice"});
    rec = g.get_edge_record("Rain->Wet");
    CHECK(rec.confidence == 0.7);
    CHECK(rec.comments == Names{"b"});
    CHECK(rec.creator == "Alice");
    g.add_causal_edge("Rain", "Wet", {.name = "Rain->Wet", .creator = "Bob"});
    CHECK(g.get_edge_record("Rain->Wet").creator == "Bob");
    CHECK(objects_of(g, "Alice", vocab::kCreated).empty());
    CHECK(g.validate().clean());
}

TEST_CASE("creators are auto-created and mirrored") {
    Graph g;
    g.add_causal_node("Rain", {}, "Alice");
    g.add_causal_node("Wet");
    g.add_causal_edge("Rain", "Wet", {.creator = "Alice"});
    CHECK(g.get_entity_by_name("Alice")->types == Names{std::string(vocab::kCreator)});
    CHECK(objects_of(g, "Alice", vocab::kCreated) == std::set<std::string>{"Rain", "CausalEdge_1"});
    CHECK(g.validate().clean());
    CHECK_THROWS_AS(g.add_causal_edge("Rain", "Wet", {.creator = "Wet"}), ValidationError);
    CHECK_THROWS_AS(g.add_causal_node("Snow", {}, "Snow"), ValidationError);
}

TEST_CASE("listing 5: node removal cascades") {
    auto g = listing3();
    CHECK(g.remove_causal_node("Rain"));
    CHECK(g.individual_names() == Names{"Wet", "Slippery", "Wet->Slippery"});
    CHECK(objects_of(g, "Wet", vocab::kIsCausing) == std::set<std::string>{"Wet->Slippery"});
    CHECK(objects_of(g, "Wet", vocab::kIsAffectedBy).empty());
    CHECK(g.store().match(std::nullopt, std::nullopt, individual_term("Rain")).empty());
    CHECK(g.validate().clean());
    CHECK_FALSE(g.remove_causal_node("X"));
    CHECK_FALSE(g.remove_causal_node("Wet->Slippery"));
    g.add_causal_node("Lonely");
    CHECK(g.remove_causal_node("Lonely"));
    CHECK(g.causal_edge_names().size() == 1);
}

TEST_CASE("listing 6: edge removal variants") {
    SUBCASE("by name") {
        auto g = listing3();
        CHECK(g.remove_causal_edge_by_name("Rain->Wet"));
        CHECK(objects_of(g, "Rain", vocab::kIsCausing).empty());
        CHECK(g.store().match(std::nullopt, Term::iri(std::string(vocab::kHasCause)), individual_term("Rain")).empty());
        CHECK_FALSE(g.remove_causal_edge_by_name("Rain->Wet"));
        CHECK_THROWS_AS(g.get_edge_record("Rain->Wet"), NotFoundError);
    }
    SUBCASE("between two nodes is directed") {
        auto g = listing3();
        g.add_causal_edge("Rain", "Wet", {.name = "Rain->Wet (2)"});
        CHECK(g.remove_causal_edges_between("Wet", "Rain") == 0);
        CHECK(g.remove_causal_edges_between("Rain", "Wet") == 2);
        CHECK(g.remove_causal_edges_between("Rain", "Wet") == 0);
        CHECK(g.remove_causal_edges_between("A", "B") == 0);
        CHECK(g.validate().clean());
    }
    SUBCASE("all edges of a node") {
        auto g = listing3();
        g.add_causal_node("Lonely");
        CHECK(g.remove_causal_edges_of_node("Wet") == 2);
        CHECK(g.remove_causal_edges_of_node("Wet") == 0);
        CHECK(g.remove_causal_edges_of_node("Lonely") == 0);
        CHECK(g.causal_node_names() == Names{"Rain", "Wet", "Slippery", "Lonely"});
        CHECK(g.causal_edge_names().empty());
    }
}

TEST_CASE("add then remove an edge restores the store byte for byte") {
    auto g = listing3();
    auto before = g.dump_ntriples();
    g.add_causal_edge("Slippery", "Rain",
                      {.name = "back", .confidence = 0.3, .time_lag_s = 1.5, .comments = {"c"}, .creator = "Zed"});
    g.remove_causal_edge_by_name("back");
    // the auto-created creator remains, as an individual in its own right
    CHECK(g.remove_causal_node("Zed") == false);
    auto after = g.dump_ntriples();
    auto zed = "<" + individual_iri("Zed") + ">";
    std::string filtered;
    std::size_t start = 0;
    while (start < after.size()) {
        auto end = after.find('\n', start);
        auto line = after.substr(start, end - start + 1);
        if (line.rfind(zed, 0) != 0) filtered += line;
        start = end + 1;
    }
    CHECK(filtered == before);
}

TEST_CASE("validate: cycles and violations") {
    Graph empty;
    CHECK(empty.validate().clean());

    auto g = listing3();
    CHECK(g.validate().cycles.empty());
    g.add_causal_edge("Slippery", "Rain");
    auto report = g.validate();
    CHECK(report.violations.empty());
    REQUIRE(report.cycles.size() == 1);
    CHECK(report.cycles[0] == Names{"Rain", "Wet", "Slippery"});

    // a raw assertion that breaks the reification pattern is reported
    g.assert_triples(std::vector<Triple>{Triple(individual_term("Rain->Wet"), Term::iri(std::string(vocab::kHasCause)),
                                                individual_term("Slippery"))});
    report = g.validate();
    CHECK_FALSE(report.violations.empty());
}

TEST_CASE("validate: cycle enumeration agrees with a brute force count") {
    // complete digraph on 4 nodes: simple cycles = sum over k=2..4 of C(4,k)*(k-1)!
    Graph g;
    Names nodes{"a", "b", "c", "d"};
    for (const auto& n : nodes) g.add_causal_node(n);
    for (const auto& x : nodes)
        for (const auto& y : nodes)
            if (x != y) g.add_causal_edge(x, y);
    auto report = g.validate();
    CHECK(report.violations.empty());
    CHECK(report.cycles.size() == 6 * 1 + 4 * 2 + 1 * 6);
    for (const auto& c : report.cycles) CHECK(*std::min_element(c.begin(), c.end()) == c.front());
}

TEST_CASE("persistence: reopen, shared mode and locks") {
    TempDir dir;
    auto path = dir / "g.cgs";
    std::string dump;
    {
        auto g = listing3(GraphConfig{path});
        dump = g.dump_ntriples();
        CHECK_THROWS_AS(Graph(GraphConfig{path}), LockError);
        Graph reader(GraphConfig{path, false});
        CHECK(reader.dump_ntriples() == dump);
        CHECK_THROWS_AS(reader.add_causal_node("X"), StorageError);
        CHECK_FALSE(reader.remove_causal_node("X"));
        CHECK_THROWS_AS(reader.remove_causal_node("Rain"), StorageError);
    }
    Graph g(GraphConfig{path});
    CHECK(g.dump_ntriples() == dump);
    CHECK(g.individual_names() == Names{"Rain", "Wet", "Rain->Wet", "Slippery", "Wet->Slippery"});
    g.compact();
    CHECK(g.dump_ntriples() == dump);
}

TEST_CASE("logging goes to the configured directory") {
    TempDir dir;
    {
        Graph g(GraphConfig{.log_file_dir = dir / "logs", .logger_level = 10});
        g.add_causal_node("Rain");
    }
    auto log = testsupport::read_file(dir / "logs" / "causalstore.log");
    CHECK(log.find("added causal node Rain") != std::string::npos);
}
