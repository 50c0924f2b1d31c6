#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace causalstore {

// Lossless property-graph form of a whole graph.
struct PropertyGraphDoc {
    struct Node {
        std::string name;
        std::vector<std::string> types;  // class IRIs
        std::vector<std::string> comments;
        std::optional<std::string> creator;
        friend bool operator==(const Node&, const Node&) = default;
    };
    struct Edge {
        std::string name;
        std::string cause;
        std::string effect;
        std::optional<double> confidence;
        std::optional<double> time_lag_s;
        std::vector<std::string> comments;
        std::optional<std::string> creator;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    // Canonical N-Triples lines for every stored statement the node/edge
    // fields do not express (imported ontologies, foreign assertions).
    std::vector<std::string> ontology_extras;

    friend bool operator==(const PropertyGraphDoc&, const PropertyGraphDoc&) = default;
};

// Lossy structure-only form: variables, directed links with lag in whole
// steps and a confidence, plus the step size in seconds.
struct LinkTupleDoc {
    struct Link {
        std::size_t cause = 0;
        std::size_t effect = 0;
        std::int64_t lag_steps = 0;
        double confidence = 1.0;
        friend bool operator==(const Link&, const Link&) = default;
    };

    std::vector<std::string> variables;
    std::vector<Link> links;
    double step_s = 1.0;

    friend bool operator==(const LinkTupleDoc&, const LinkTupleDoc&) = default;
};

using ExternalGraph = std::variant<PropertyGraphDoc, LinkTupleDoc>;

}  // namespace causalstore
