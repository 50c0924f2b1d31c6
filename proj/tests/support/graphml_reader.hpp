#pragma once

// Minimal GraphML reader: a small XML tokenizer (elements, attributes, text,
// the five predefined entities and numeric references, one XML declaration)
// that checks nesting and collects nodes, edges and their data values.

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport::graphml {

struct Element {
    std::string name;
    std::map<std::string, std::string> attrs;
    std::vector<Element> children;
    std::string text;
};

class Reader {
public:
    explicit Reader(std::string text) : text_(std::move(text)) {}

    Element parse() {
        if (text_.compare(0, 5, "<?xml") == 0) {
            auto end = text_.find("?>");
            if (end == std::string::npos) fail("unterminated declaration");
            pos_ = end + 2;
        }
        skip_ws();
        Element root = parse_element();
        skip_ws();
        if (pos_ != text_.size()) fail("content after the root element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("graphml: " + what + " at offset " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\t' || text_[pos_] == '\r'))
            ++pos_;
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' || c == '.';
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
        if (start == pos_) fail("expected a name");
        return text_.substr(start, pos_ - start);
    }

    std::string decode(const std::string& raw) const {
        std::string out;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            unsigned char c = static_cast<unsigned char>(raw[i]);
            if (c == '<') fail("raw < in character data");
            if (c < 0x20 && c != '\n' && c != '\t' && c != '\r') fail("control character in character data");
            if (c != '&') {
                out += raw[i];
                continue;
            }
            auto semi = raw.find(';', i);
            if (semi == std::string::npos) fail("unterminated reference");
            std::string ref = raw.substr(i + 1, semi - i - 1);
            i = semi;
            if (ref == "lt") out += '<';
            else if (ref == "gt") out += '>';
            else if (ref == "amp") out += '&';
            else if (ref == "quot") out += '"';
            else if (ref == "apos") out += '\'';
            else if (ref.size() > 1 && ref[0] == '#') {
                unsigned long cp = ref[1] == 'x' ? std::stoul(ref.substr(2), nullptr, 16) : std::stoul(ref.substr(1));
                if (cp < 0x20 && cp != 0x9 && cp != 0xA && cp != 0xD) fail("reference to a forbidden character");
                append_utf8(out, cp);
            } else {
                fail("unknown entity &" + ref + ";");
            }
        }
        return out;
    }

    static void append_utf8(std::string& out, unsigned long cp) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    Element parse_element() {
        if (pos_ >= text_.size() || text_[pos_] != '<') fail("expected <");
        ++pos_;
        Element el;
        el.name = parse_name();
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size()) fail("unterminated tag");
            if (text_.compare(pos_, 2, "/>") == 0) {
                pos_ += 2;
                return el;
            }
            if (text_[pos_] == '>') {
                ++pos_;
                break;
            }
            std::string attr = parse_name();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != '=') fail("expected =");
            ++pos_;
            skip_ws();
            if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) fail("expected quoted value");
            char q = text_[pos_++];
            auto end = text_.find(q, pos_);
            if (end == std::string::npos) fail("unterminated attribute");
            if (!el.attrs.emplace(attr, decode(text_.substr(pos_, end - pos_))).second) fail("duplicate attribute " + attr);
            pos_ = end + 1;
        }
        for (;;) {
            auto lt = text_.find('<', pos_);
            if (lt == std::string::npos) fail("unterminated element " + el.name);
            el.text += decode(text_.substr(pos_, lt - pos_));
            pos_ = lt;
            if (text_.compare(pos_, 2, "</") == 0) {
                pos_ += 2;
                if (parse_name() != el.name) fail("mismatched end tag for " + el.name);
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] != '>') fail("expected >");
                ++pos_;
                return el;
            }
            el.children.push_back(parse_element());
        }
    }

    std::string text_;
    std::size_t pos_ = 0;
};

struct Summary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    bool directed = false;
    // attr.name -> values in document order, per element kind
    std::map<std::string, std::vector<std::string>> node_data;
    std::map<std::string, std::vector<std::string>> edge_data;
};

inline Summary read(const std::string& text) {
    Element root = Reader(text).parse();
    if (root.name != "graphml") throw std::runtime_error("graphml: root is " + root.name);
    std::map<std::string, std::string> keys;  // id -> attr.name
    const Element* graph = nullptr;
    for (const auto& c : root.children) {
        if (c.name == "key") {
            if (graph) throw std::runtime_error("graphml: key after graph");
            keys[c.attrs.at("id")] = c.attrs.at("attr.name");
        } else if (c.name == "graph") {
            if (graph) throw std::runtime_error("graphml: more than one graph");
            graph = &c;
        }
    }
    if (!graph) throw std::runtime_error("graphml: no graph element");
    Summary out;
    auto ed = graph->attrs.find("edgedefault");
    out.directed = ed != graph->attrs.end() && ed->second == "directed";

    auto collect = [&](const Element& el, std::map<std::string, std::vector<std::string>>& into) {
        for (const auto& d : el.children) {
            if (d.name != "data") continue;
            auto k = keys.find(d.attrs.at("key"));
            if (k == keys.end()) throw std::runtime_error("graphml: undeclared key " + d.attrs.at("key"));
            into[k->second].push_back(d.text);
        }
    };
    std::set<std::string> ids;
    for (const auto& c : graph->children) {
        if (c.name != "node") continue;
        if (!ids.insert(c.attrs.at("id")).second) throw std::runtime_error("graphml: duplicate node id");
        collect(c, out.node_data);
        ++out.nodes;
    }
    for (const auto& c : graph->children) {
        if (c.name != "edge") continue;
        if (!ids.count(c.attrs.at("source")) || !ids.count(c.attrs.at("target")))
            throw std::runtime_error("graphml: edge with a dangling endpoint");
        collect(c, out.edge_data);
        ++out.edges;
    }
    return out;
}

}  // namespace testsupport::graphml
