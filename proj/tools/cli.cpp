#include "cli.hpp"

#include <curl/curl.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "causalstore/error.hpp"
#include "causalstore/graph.hpp"
#include "causalstore/interchange.hpp"
#include "causalstore/query.hpp"
#include "causalstore/viz.hpp"

namespace causalstore::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

size_t write_to_stream(char* data, size_t size, size_t n, void* user) {
    static_cast<std::ofstream*>(user)->write(data, static_cast<std::streamsize>(size * n));
    return size * n;
}

// Downloads `url` into a fresh file under the temp directory.
fs::path download(const std::string& url) {
    std::random_device rd;
    auto name = url.substr(url.find_last_of('/') + 1);
    if (name.empty() || name.find_first_of("?#") != std::string::npos) name = "ontology.ttl";
    fs::path dir = fs::temp_directory_path() / ("causalstore-download-" + std::to_string(rd()));
    fs::create_directories(dir);
    fs::path target = dir / name;

    std::ofstream file(target, std::ios::binary);
    CURL* curl = curl_easy_init();
    if (!curl) throw StorageError("cannot initialise the HTTP client");
    char error[CURL_ERROR_SIZE] = {0};
    curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
    curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(curl, CURLOPT_FAILONERROR, 1L);
    curl_easy_setopt(curl, CURLOPT_ERRORBUFFER, error);
    curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, write_to_stream);
    curl_easy_setopt(curl, CURLOPT_WRITEDATA, &file);
    CURLcode rc = curl_easy_perform(curl);
    curl_easy_cleanup(curl);
    file.close();
    if (rc != CURLE_OK) {
        fs::remove_all(dir);
        throw StorageError("download of " + url + " failed: " + (error[0] ? error : curl_easy_strerror(rc)));
    }
    return target;
}

bool is_url(const std::string& s) { return s.starts_with("http://") || s.starts_with("https://"); }

ExternalGraph read_document(const fs::path& path) {
    std::string text = read_text(path);
    nlohmann::json probe;
    try {
        probe = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": invalid JSON: " + e.what(), 1, e.byte);
    }
    if (probe.is_object() && probe.contains("variables")) return link_tuple_from_json(text);
    return property_graph_from_json(text);
}

std::optional<std::string> viewer_asset() {
    std::vector<fs::path> candidates;
    if (const char* env = std::getenv("CAUSALSTORE_VIEWER_ASSET")) candidates.emplace_back(env);
#ifdef CAUSALSTORE_VIEWER_ASSET_PATH
    candidates.emplace_back(CAUSALSTORE_VIEWER_ASSET_PATH);
#endif
    for (const auto& c : candidates) {
        std::error_code ec;
        if (fs::is_regular_file(c, ec)) return read_text(c);
    }
    return std::nullopt;
}

void print_joined(std::ostream& out, const std::vector<std::string>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) out << (i ? " " : "") << items[i];
    out << "\n";
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& text) {
    if (path) write_text_file(*path, text);
    else out << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Causal graphs stored as reified edges in an RDF triple store.", "causalstore"};
    app.require_subcommand(1);

    std::optional<std::string> store;
    bool shared = false;
    std::optional<std::string> log_dir;
    int log_level = 30;
    app.add_option("--store", store, "Store file");
    auto* excl_flag = app.add_flag("--exclusive", "Open with the writer lock (default)");
    app.add_flag("--shared", shared, "Open read-only without the lock")->excludes(excl_flag);
    app.add_option("--log-dir", log_dir, "Directory for causalstore.log");
    app.add_option("--log-level", log_level, "10 debug, 20 info, 30 warning, 40 error");

    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    // init
    auto* init = sub("init", "Create or open a store, optionally filled from a document");
    std::optional<std::string> init_from;
    std::vector<std::string> init_ontos;
    init->add_option("--from", init_from, "Property-graph or link-tuple JSON document");
    init->add_option("--onto", init_ontos, "Ontology to import (repeatable)");

    // add-node
    auto* add_node = sub("add-node", "Add a causal node");
    std::string node_name;
    std::vector<std::string> node_comments;
    std::optional<std::string> node_creator;
    add_node->add_option("name", node_name)->required();
    add_node->add_option("--comment", node_comments);
    add_node->add_option("--creator", node_creator);

    // add-edge
    auto* add_edge = sub("add-edge", "Add a causal edge");
    std::string cause, effect;
    EdgeOptions edge_opts;
    add_edge->add_option("cause", cause)->required();
    add_edge->add_option("effect", effect)->required();
    add_edge->add_option("--name", edge_opts.name);
    add_edge->add_option("--confidence", edge_opts.confidence);
    add_edge->add_option("--lag-s", edge_opts.time_lag_s);
    add_edge->add_flag("--force-create", edge_opts.force_create);
    add_edge->add_option("--comment", edge_opts.comments);
    add_edge->add_option("--creator", edge_opts.creator);

    // rm-node
    auto* rm_node = sub("rm-node", "Remove a causal node and its edges");
    std::string rm_node_name;
    rm_node->add_option("name", rm_node_name)->required();

    // rm-edge
    auto* rm_edge = sub("rm-edge", "Remove causal edges");
    std::optional<std::string> rm_name, rm_of_node;
    std::vector<std::string> rm_between;
    auto* o_name = rm_edge->add_option("--name", rm_name);
    auto* o_between = rm_edge->add_option("--between", rm_between)->expected(2)->excludes(o_name);
    rm_edge->add_option("--of-node", rm_of_node)->excludes(o_name)->excludes(o_between);

    // list
    auto* list = sub("list", "List individuals or classes");
    bool list_individuals = false, list_classes = false;
    auto* f_ind = list->add_flag("--individuals", list_individuals);
    list->add_flag("--classes", list_classes)->excludes(f_ind);

    // export
    auto* exp = sub("export", "Export the graph");
    std::string exp_format;
    std::optional<std::string> exp_out;
    double step_s = 1.0;
    exp->add_option("--format", exp_format)
        ->required()
        ->check(CLI::IsMember({"pgjson", "linktuple", "gml", "graphml", "ntriples", "dot", "html"}));
    exp->add_option("--out", exp_out, "Output file (standard output when omitted)");
    exp->add_option("--step-s", step_s, "Link-tuple step size in seconds");

    // import
    auto* imp = sub("import", "Load a document into a new store");
    std::string imp_format, imp_in;
    std::optional<std::string> imp_store;
    bool imp_overwrite = false;
    imp->add_option("--format", imp_format)->required()->check(CLI::IsMember({"pgjson", "linktuple"}));
    imp->add_option("--in", imp_in)->required();
    imp->add_option("--store", imp_store, "New store file");
    imp->add_flag("--overwrite", imp_overwrite);

    // import-onto
    auto* onto = sub("import-onto", "Import a Turtle/N-Triples ontology from a path or http(s) URL");
    std::string onto_src;
    bool onto_json = false;
    onto->add_option("source", onto_src)->required();
    onto->add_flag("--json", onto_json);

    // query
    auto* query = sub("query", "Run a SELECT query");
    std::string query_text;
    bool query_json = false;
    query->add_option("query", query_text, "Query text or @file")->required();
    query->add_flag("--json", query_json);

    auto* validate = sub("validate", "Check invariants and report cycles");
    auto* compact = sub("compact", "Rewrite the store file as a sorted snapshot");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        if (auto* active = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
            err << "run '" << active->get_name() << " --help' for the accepted flags\n";
        return kUsageError;
    }

    try {
        if (imp->parsed()) {
            auto target = imp_store ? imp_store : store;
            if (!target) throw UsageError("import needs --store <new path>");
            GraphConfig config;
            config.store_path = *target;
            if (log_dir) config.log_file_dir = *log_dir;
            config.logger_level = log_level;
            std::string text = read_text(imp_in);
            Graph g = imp_format == "pgjson"
                          ? load_property_graph(property_graph_from_json(text), config, imp_overwrite)
                          : load_link_tuple(link_tuple_from_json(text), config, imp_overwrite);
            out << "loaded " << g.causal_node_names().size() << " nodes, " << g.causal_edge_names().size()
                << " edges into " << *target << "\n";
            return kOk;
        }

        if (!store) throw UsageError("--store <path> is required");
        if (rm_edge->parsed() && !rm_name && rm_between.empty() && !rm_of_node)
            throw UsageError("rm-edge needs one of --name, --between or --of-node");

        GraphConfig config;
        config.store_path = *store;
        config.exclusive = !shared;
        if (log_dir) config.log_file_dir = *log_dir;
        config.logger_level = log_level;
        if (init->parsed()) {
            for (const auto& o : init_ontos) config.external_ontos.emplace_back(o);
            if (init_from) config.external_graph = read_document(*init_from);
        }
        Graph g(std::move(config));

        if (init->parsed()) {
            out << "store " << *store << ": " << g.individual_names().size() << " individuals\n";
        } else if (add_node->parsed()) {
            out << g.add_causal_node(node_name, node_comments, node_creator) << "\n";
        } else if (add_edge->parsed()) {
            out << g.add_causal_edge(cause, effect, edge_opts) << "\n";
        } else if (rm_node->parsed()) {
            out << (g.remove_causal_node(rm_node_name) ? "true" : "false") << "\n";
        } else if (rm_edge->parsed()) {
            if (rm_name) out << (g.remove_causal_edge_by_name(*rm_name) ? "true" : "false") << "\n";
            else if (!rm_between.empty()) out << g.remove_causal_edges_between(rm_between[0], rm_between[1]) << "\n";
            else out << g.remove_causal_edges_of_node(*rm_of_node) << "\n";
        } else if (list->parsed()) {
            if (list_classes) {
                std::vector<std::string> names;
                for (const auto& iri : g.class_iris()) names.push_back(display_name(iri));
                print_joined(out, names);
            } else {
                print_joined(out, g.individual_names());
            }
        } else if (exp->parsed()) {
            if (exp_format == "pgjson") {
                emit(out, exp_out, to_json(export_property_graph(g)) + "\n");
            } else if (exp_format == "linktuple") {
                auto lt = export_link_tuple(g, step_s);
                for (const auto& w : lt.warnings) err << "warning: " << w << "\n";
                emit(out, exp_out, to_json(lt.doc) + "\n");
            } else if (exp_format == "gml") {
                emit(out, exp_out, to_gml(g));
            } else if (exp_format == "graphml") {
                emit(out, exp_out, to_graphml(g));
            } else if (exp_format == "ntriples") {
                emit(out, exp_out, g.dump_ntriples());
            } else if (exp_format == "dot") {
                emit(out, exp_out, render_dot(g));
            } else {
                RenderOptions ro;
                ro.viewer_script = viewer_asset();
                emit(out, exp_out, render_html(g, ro));
            }
        } else if (onto->parsed()) {
            std::optional<fs::path> downloaded;
            if (is_url(onto_src)) downloaded = download(onto_src);
            ImportReport report;
            try {
                report = g.import_ontology(downloaded ? *downloaded : fs::path(onto_src));
            } catch (...) {
                if (downloaded) fs::remove_all(downloaded->parent_path());
                throw;
            }
            if (downloaded) fs::remove_all(downloaded->parent_path());
            out << (onto_json ? report.to_json() : report.to_line()) << "\n";
        } else if (query->parsed()) {
            std::string text = query_text.starts_with("@") ? read_text(query_text.substr(1)) : query_text;
            auto result = eval_query(g.store(), parse_query(text));
            out << (query_json ? to_json_lines(result) : to_tsv(result));
        } else if (validate->parsed()) {
            auto report = g.validate();
            for (const auto& v : report.violations) out << "violation: " << v << "\n";
            for (const auto& c : report.cycles) {
                out << "cycle:";
                for (const auto& n : c) out << " " << n;
                out << "\n";
            }
            if (report.clean()) out << "ok\n";
            return report.violations.empty() ? kOk : kDomainError;
        } else if (compact->parsed()) {
            g.compact();
            out << "compacted " << *store << "\n";
        }
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }
}

}  // namespace causalstore::cli
