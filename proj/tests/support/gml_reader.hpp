#pragma once

// Minimal GML reader: key/value lists, integers, reals, quoted strings with
// &name; and &#N; references. Enough to count nodes and edges and check that
// edge endpoints name declared node ids.

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace testsupport::gml {

struct Value;
using List = std::vector<std::pair<std::string, Value>>;

struct Value {
    enum class Kind { Int, Real, String, List } kind = Kind::Int;
    long long i = 0;
    double r = 0;
    std::string s;
    std::shared_ptr<List> list;
};

class Reader {
public:
    explicit Reader(std::string text) : text_(std::move(text)) {}

    List parse() {
        List top = parse_list(false);
        skip_ws();
        if (pos_ != text_.size()) fail("trailing text");
        return top;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("gml: " + what + " at offset " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {  // comment to end of line
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    List parse_list(bool nested) {
        List out;
        for (;;) {
            skip_ws();
            if (pos_ == text_.size()) {
                if (nested) fail("unterminated list");
                return out;
            }
            if (text_[pos_] == ']') {
                if (!nested) fail("unexpected ]");
                ++pos_;
                return out;
            }
            std::string key = parse_key();
            skip_ws();
            out.emplace_back(std::move(key), parse_value());
        }
    }

    std::string parse_key() {
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) fail("expected key");
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    Value parse_value() {
        if (pos_ >= text_.size()) fail("expected value");
        Value v;
        char c = text_[pos_];
        if (c == '[') {
            ++pos_;
            v.kind = Value::Kind::List;
            v.list = std::make_shared<List>(parse_list(true));
        } else if (c == '"') {
            v.kind = Value::Kind::String;
            v.s = parse_string();
        } else if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            bool real = false;
            ++pos_;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                } else if (d == '.' || d == 'e' || d == 'E' || ((d == '-' || d == '+') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))) {
                    real = true;
                } else {
                    break;
                }
                ++pos_;
            }
            std::string num = text_.substr(start, pos_ - start);
            try {
                std::size_t used = 0;
                if (real) {
                    v.kind = Value::Kind::Real;
                    v.r = std::stod(num, &used);
                } else {
                    v.i = std::stoll(num, &used);
                }
                if (used != num.size()) fail("bad number " + num);
            } catch (const std::logic_error&) {
                fail("bad number " + num);
            }
        } else {
            fail("expected value");
        }
        return v;
    }

    std::string parse_string() {
        ++pos_;
        std::string out;
        for (;;) {
            if (pos_ >= text_.size()) fail("unterminated string");
            unsigned char c = static_cast<unsigned char>(text_[pos_]);
            if (c == '"') {
                ++pos_;
                return out;
            }
            if (c >= 0x80) fail("non-ASCII byte in string");
            if (c == '&') {
                std::size_t semi = text_.find(';', pos_);
                if (semi == std::string::npos || semi - pos_ > 10) fail("bad character reference");
                std::string ref = text_.substr(pos_ + 1, semi - pos_ - 1);
                pos_ = semi + 1;
                if (ref == "quot") out += '"';
                else if (ref == "amp") out += '&';
                else if (ref == "lt") out += '<';
                else if (ref == "gt") out += '>';
                else if (ref.size() > 1 && ref[0] == '#') out += encode(std::stoul(ref.substr(1)));
                else fail("unknown reference &" + ref + ";");
                continue;
            }
            out += static_cast<char>(c);
            ++pos_;
        }
    }

    static std::string encode(unsigned long cp) {
        std::string out;
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
        return out;
    }

    std::string text_;
    std::size_t pos_ = 0;
};

struct Summary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    bool directed = false;
    std::vector<std::string> labels;      // node labels in file order
    std::vector<std::string> edge_names;  // edge `name` values in file order
};

inline const Value* find(const List& l, const std::string& key) {
    for (const auto& [k, v] : l)
        if (k == key) return &v;
    return nullptr;
}

// Throws std::runtime_error when the text is not a single directed graph whose
// edges reference declared node ids.
inline Summary read(const std::string& text) {
    List top = Reader(text).parse();
    const Value* g = find(top, "graph");
    if (!g || g->kind != Value::Kind::List) throw std::runtime_error("gml: no graph list");
    Summary out;
    std::set<long long> ids;
    for (const auto& [k, v] : *g->list) {
        if (k == "directed") out.directed = v.kind == Value::Kind::Int && v.i == 1;
        if (k != "node") continue;
        if (v.kind != Value::Kind::List) throw std::runtime_error("gml: node is not a list");
        const Value* id = find(*v.list, "id");
        if (!id || id->kind != Value::Kind::Int || !ids.insert(id->i).second)
            throw std::runtime_error("gml: node without a unique integer id");
        const Value* label = find(*v.list, "label");
        out.labels.push_back(label && label->kind == Value::Kind::String ? label->s : "");
        ++out.nodes;
    }
    for (const auto& [k, v] : *g->list) {
        if (k != "edge") continue;
        if (v.kind != Value::Kind::List) throw std::runtime_error("gml: edge is not a list");
        for (const char* end : {"source", "target"}) {
            const Value* e = find(*v.list, end);
            if (!e || e->kind != Value::Kind::Int || !ids.count(e->i))
                throw std::runtime_error(std::string("gml: edge with a dangling ") + end);
        }
        const Value* name = find(*v.list, "name");
        out.edge_names.push_back(name && name->kind == Value::Kind::String ? name->s : "");
        ++out.edges;
    }
    return out;
}

}  // namespace testsupport::gml
