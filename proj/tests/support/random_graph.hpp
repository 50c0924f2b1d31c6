#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "causalstore/error.hpp"
#include "causalstore/graph.hpp"

namespace testsupport {

// Node names include characters every output format has to escape.
inline std::string random_node_name(std::mt19937_64& rng, int k) {
    static const std::vector<std::string> decorations = {"", "", "", " x", "\"q\"", "<&>", "\xC3\xBC", "#1", "a\\b",
                                                         "%20", "->"};
    std::uniform_int_distribution<std::size_t> d(0, decorations.size() - 1);
    return "N" + std::to_string(k) + decorations[d(rng)];
}

inline std::string random_comment(std::mt19937_64& rng) {
    static const std::vector<std::string> comments = {"some text", "line one\nline two", "tab\there",
                                                      "quote \" and \\", "<b>&amp;</b>", "\xE2\x88\x86t > 0"};
    std::uniform_int_distribution<std::size_t> d(0, comments.size() - 1);
    return comments[d(rng)];
}

struct RandomGraphLimits {
    int max_nodes = 30;
    int max_edges = 60;
    // Removals interleaved with additions.
    bool with_removals = true;
    // When false, comments and creators are drawn but not applied, so two runs
    // from the same seed differ only in those.
    bool with_annotations = true;
};

// Drives `g` through a random mutation sequence within the limits, calling
// `after_step` after every mutation. Returns the number of steps taken.
inline int build_random_graph(causalstore::Graph& g, std::mt19937_64& rng, const RandomGraphLimits& limits = {},
                              const std::function<void(const std::string&)>& after_step = {}) {
    using causalstore::EdgeOptions;
    std::uniform_int_distribution<int> node_count(2, limits.max_nodes);
    std::uniform_int_distribution<int> edge_count(0, limits.max_edges);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int target_nodes = node_count(rng);
    const int target_edges = edge_count(rng);
    const std::vector<std::string> creators = {"Alice", "Bob", "Carol"};

    std::vector<std::string> nodes;
    int steps = 0;
    auto step = [&](const std::string& what) {
        ++steps;
        if (after_step) after_step(what);
    };

    for (int i = 0; i < target_nodes; ++i) {
        std::vector<std::string> comments;
        if (unit(rng) < 0.3) comments.push_back(random_comment(rng));
        std::optional<std::string> creator;
        if (unit(rng) < 0.2) creator = creators[rng() % creators.size()];
        if (!limits.with_annotations) {
            comments.clear();
            creator.reset();
        }
        nodes.push_back(g.add_causal_node(random_node_name(rng, i), comments, creator));
        step("add node " + nodes.back());
    }

    int edges = 0;
    while (edges < target_edges) {
        const auto& c = nodes[rng() % nodes.size()];
        const auto& e = nodes[rng() % nodes.size()];
        if (c == e) continue;
        EdgeOptions opts;
        if (unit(rng) < 0.7) opts.confidence = static_cast<double>(1 + rng() % 1000) / 1000.0;
        if (unit(rng) < 0.6) opts.time_lag_s = unit(rng) < 0.5 ? static_cast<double>(rng() % 20) / 4.0 : unit(rng) * 12.0;
        if (unit(rng) < 0.3) opts.comments.push_back(random_comment(rng));
        if (unit(rng) < 0.25) opts.creator = creators[rng() % creators.size()];
        if (unit(rng) < 0.3) opts.name = c + "->" + e;  // may upsert an existing edge
        if (!limits.with_annotations) {
            opts.comments.clear();
            opts.creator.reset();
        }
        try {
            g.add_causal_edge(c, e, opts);
        } catch (const causalstore::ValidationError&) {
            continue;  // name collision with a node name, rejected as documented
        }
        ++edges;
        step("add edge " + c + " -> " + e);

        if (limits.with_removals && unit(rng) < 0.08) {
            auto names = g.causal_edge_names();
            if (!names.empty()) {
                g.remove_causal_edge_by_name(names[rng() % names.size()]);
                step("remove edge");
            }
        }
        if (limits.with_removals && unit(rng) < 0.03 && nodes.size() > 2) {
            auto idx = rng() % nodes.size();
            g.remove_causal_node(nodes[idx]);
            nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(idx));
            step("remove node");
        }
        if (limits.with_removals && unit(rng) < 0.03) {
            g.remove_causal_edges_of_node(nodes[rng() % nodes.size()]);
            step("remove edges of node");
        }
    }
    return steps;
}

}  // namespace testsupport
