#include "causalstore/turtle.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>

#include "causalstore/error.hpp"
#include "causalstore/ntriples.hpp"
#include "causalstore/vocabulary.hpp"

namespace causalstore {

namespace {

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 12);
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }

bool has_scheme(std::string_view iri) {
    if (iri.empty() || !is_alpha(iri[0])) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        char c = iri[i];
        if (c == ':') return true;
        if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) return false;
    }
    return false;
}

std::string resolve_iri(const std::string& base, const std::string& ref) {
    if (base.empty() || has_scheme(ref)) return ref;
    std::string no_fragment = base.substr(0, base.find('#'));
    if (ref.empty()) return no_fragment;
    if (ref[0] == '#') return no_fragment + ref;
    if (ref[0] == '/') {
        auto scheme_end = base.find("://");
        if (scheme_end == std::string::npos) return ref;
        auto path_start = base.find('/', scheme_end + 3);
        return base.substr(0, path_start) + ref;
    }
    auto slash = no_fragment.rfind('/');
    return (slash == std::string::npos ? no_fragment : no_fragment.substr(0, slash + 1)) + ref;
}

class TurtleParser {
public:
    TurtleParser(std::string_view text, const TurtleOptions& options)
        : s_(text), options_(options), blank_prefix_(options.blank_prefix) {
        if (blank_prefix_.empty()) blank_prefix_ = "t" + fnv1a_hex(text);
    }

    std::vector<Triple> parse() {
        for (;;) {
            skip();
            if (eof()) break;
            if (directive()) continue;
            triples();
            skip();
            expect('.');
        }
        return std::move(out_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    bool eof() const { return pos_ >= s_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }

    void skip() {
        while (!eof()) {
            char c = s_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos_;
            } else if (c == '#') {
                while (!eof() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool keyword(std::string_view kw, bool case_insensitive) {
        if (pos_ + kw.size() > s_.size()) return false;
        for (std::size_t i = 0; i < kw.size(); ++i) {
            char a = s_[pos_ + i];
            char b = kw[i];
            if (case_insensitive && a >= 'a' && a <= 'z') a = static_cast<char>(a - 'a' + 'A');
            if (a != b) return false;
        }
        char after = peek(kw.size());
        if (is_alpha(after) || is_digit(after) || after == ':' || after == '_' || after == '-') return false;
        pos_ += kw.size();
        return true;
    }

    bool directive() {
        if (peek() == '@') {
            ++pos_;
            if (keyword("prefix", false)) {
                prefix_decl();
                expect('.');
            } else if (keyword("base", false)) {
                skip();
                base_ = resolve_iri(base_, iri_ref());
                expect('.');
            } else {
                fail("unknown directive");
            }
            return true;
        }
        if (keyword("PREFIX", true)) {
            prefix_decl();
            return true;
        }
        if (keyword("BASE", true)) {
            skip();
            base_ = resolve_iri(base_, iri_ref());
            return true;
        }
        return false;
    }

    void prefix_decl() {
        skip();
        std::size_t start = pos_;
        while (!eof() && peek() != ':') {
            char c = peek();
            if (!(is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.' || is_high(c))) fail("bad prefix name");
            ++pos_;
        }
        if (eof()) fail("expected ':' in prefix declaration");
        std::string name(s_.substr(start, pos_ - start));
        ++pos_;
        skip();
        prefixes_[name] = resolve_iri(base_, iri_ref());
    }

    std::string iri_ref() {
        if (peek() != '<') fail("expected IRI");
        ++pos_;
        std::string text;
        for (;;) {
            if (eof()) fail("unterminated IRI");
            char c = s_[pos_++];
            if (c == '>') break;
            if (c == '\\') {
                char e = peek();
                ++pos_;
                if (e == 'u') append_utf8(text, hex(4));
                else if (e == 'U') append_utf8(text, hex(8));
                else fail("bad escape in IRI");
                continue;
            }
            if (static_cast<unsigned char>(c) <= 0x20) fail("whitespace in IRI");
            text += c;
        }
        return text;
    }

    std::uint32_t hex(std::size_t n) {
        std::uint32_t cp = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (eof()) fail("truncated escape");
            char h = s_[pos_++];
            cp <<= 4;
            if (is_digit(h)) cp |= static_cast<std::uint32_t>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
            else fail("bad hex digit");
        }
        return cp;
    }

    Term make_iri(const std::string& raw) {
        std::string full = resolve_iri(base_, raw);
        if (!is_valid_iri(full)) fail("invalid IRI <" + full + ">");
        return Term::iri(std::move(full));
    }

    // Prefixed name starting at pos_ (which may be ':').
    Term prefixed_name() {
        std::size_t start = pos_;
        while (!eof() && peek() != ':') {
            char c = peek();
            if (!(is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.' || is_high(c))) break;
            ++pos_;
        }
        if (peek() != ':') {
            pos_ = start;
            fail("expected prefixed name");
        }
        std::string prefix(s_.substr(start, pos_ - start));
        ++pos_;
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) {
            pos_ = start;
            fail("undeclared prefix '" + prefix + ":'");
        }
        std::string local;
        for (;;) {
            char c = peek();
            if (is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == ':' || c == '.' || is_high(c)) {
                local += c;
                ++pos_;
            } else if (c == '%') {
                if (!std::isxdigit(static_cast<unsigned char>(peek(1))) ||
                    !std::isxdigit(static_cast<unsigned char>(peek(2))))
                    fail("bad percent escape in local name");
                local.append(s_.substr(pos_, 3));
                pos_ += 3;
            } else if (c == '\\') {
                char e = peek(1);
                if (e == '\0' || std::string_view("_~.-!$&'()*+,;=/?#@%").find(e) == std::string_view::npos)
                    fail("bad escape in local name");
                local += e;
                pos_ += 2;
            } else {
                break;
            }
        }
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            --pos_;
        }
        std::string full = it->second + local;
        if (!is_valid_iri(full)) fail("invalid IRI <" + full + ">");
        return Term::iri(std::move(full));
    }

    std::string blank_label(std::string_view raw) {
        std::string out = blank_prefix_ + "_";
        for (unsigned char c : raw) {
            if (is_alpha(static_cast<char>(c)) || is_digit(static_cast<char>(c)) || c == '-') {
                out += static_cast<char>(c);
            } else {
                char buf[4];
                std::snprintf(buf, sizeof buf, "_%02X", c);
                out += buf;
            }
        }
        return out;
    }

    Term fresh_blank() { return Term::blank(blank_prefix_ + "n" + std::to_string(anon_++)); }

    Term blank_node_label() {
        pos_ += 2;  // "_:"
        std::size_t start = pos_;
        while (!eof()) {
            char c = peek();
            if (is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.' || is_high(c)) ++pos_;
            else break;
        }
        while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
        if (pos_ == start) fail("empty blank node label");
        return Term::blank(blank_label(s_.substr(start, pos_ - start)));
    }

    Term iri_or_pname() {
        if (peek() == '<') return make_iri(iri_ref());
        return prefixed_name();
    }

    void emit(const Term& s, const Term& p, const Term& o) {
        if (s.is_literal()) fail("literal used as subject");
        out_.emplace_back(s, p, o);
    }

    void triples() {
        skip();
        if (peek() == '[') {
            Term subject = blank_property_list();
            skip();
            if (peek() != '.') predicate_object_list(subject);
            return;
        }
        Term subject = subject_term();
        predicate_object_list(subject);
    }

    Term subject_term() {
        skip();
        char c = peek();
        if (c == '<' ) return make_iri(iri_ref());
        if (c == '_' && peek(1) == ':') return blank_node_label();
        if (c == '(') return collection();
        if (c == '"' || c == '\'' || is_digit(c) || c == '+' || c == '-') fail("literal used as subject");
        return prefixed_name();
    }

    Term verb() {
        skip();
        if (peek() == 'a') {
            char after = peek(1);
            if (after == ' ' || after == '\t' || after == '\n' || after == '\r' || after == '<' || after == '[' ||
                after == '"' || after == '_' || after == '(' || after == '#') {
                ++pos_;
                return Term::iri(std::string(vocab::kRdfType));
            }
        }
        if (peek() == '<' || peek() == ':' || is_alpha(peek()) || is_high(peek())) return iri_or_pname();
        fail("expected predicate");
    }

    void predicate_object_list(const Term& subject) {
        for (;;) {
            Term p = verb();
            object_list(subject, p);
            skip();
            if (peek() != ';') return;
            while (peek() == ';') {
                ++pos_;
                skip();
            }
            char c = peek();
            if (c == '.' || c == ']' || c == '\0') return;
        }
    }

    void object_list(const Term& subject, const Term& predicate) {
        for (;;) {
            Term o = object();
            emit(subject, predicate, o);
            skip();
            if (peek() != ',') return;
            ++pos_;
        }
    }

    Term blank_property_list() {
        expect('[');
        Term node = fresh_blank();
        skip();
        if (peek() != ']') predicate_object_list(node);
        expect(']');
        return node;
    }

    Term collection() {
        expect('(');
        std::vector<Term> items;
        for (;;) {
            skip();
            if (peek() == ')') {
                ++pos_;
                break;
            }
            if (eof()) fail("unterminated collection");
            items.push_back(object());
        }
        Term first = Term::iri(std::string(vocab::kRdf) + "first");
        Term rest = Term::iri(std::string(vocab::kRdf) + "rest");
        Term nil = Term::iri(std::string(vocab::kRdf) + "nil");
        if (items.empty()) return nil;
        std::vector<Term> cells;
        for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(fresh_blank());
        for (std::size_t i = 0; i < items.size(); ++i) {
            emit(cells[i], first, items[i]);
            emit(cells[i], rest, i + 1 < items.size() ? cells[i + 1] : nil);
        }
        return cells.front();
    }

    Term object() {
        skip();
        char c = peek();
        if (c == '<') return make_iri(iri_ref());
        if (c == '_' && peek(1) == ':') return blank_node_label();
        if (c == '[') return blank_property_list();
        if (c == '(') return collection();
        if (c == '"' || c == '\'') return string_literal();
        if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(peek(1)))) return numeric_literal();
        if (keyword("true", false)) return Term::boolean(true);
        if (keyword("false", false)) return Term::boolean(false);
        return prefixed_name();
    }

    Term numeric_literal() {
        std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        while (is_digit(peek())) ++pos_;
        bool decimal = false;
        if (peek() == '.' && is_digit(peek(1))) {
            decimal = true;
            ++pos_;
            while (is_digit(peek())) ++pos_;
        }
        if (peek() == 'e' || peek() == 'E') fail("double literals are not supported");
        std::string lexical(s_.substr(start, pos_ - start));
        Datatype dt = decimal ? Datatype::Decimal : Datatype::Integer;
        if (!is_valid_lexical(lexical, dt)) fail("malformed numeric literal");
        return Term::literal(std::move(lexical), dt);
    }

    Term string_literal() {
        char q = peek();
        bool long_form = peek(1) == q && peek(2) == q;
        pos_ += long_form ? 3 : 1;
        std::string value;
        for (;;) {
            if (eof()) fail("unterminated string literal");
            char c = s_[pos_];
            if (long_form) {
                if (c == q && peek(1) == q && peek(2) == q) {
                    pos_ += 3;
                    // Up to two extra quotes may close a long string.
                    while (peek() == q) {
                        value += q;
                        ++pos_;
                    }
                    break;
                }
            } else if (c == q) {
                ++pos_;
                break;
            } else if (c == '\n' || c == '\r') {
                fail("line break in short string literal");
            }
            ++pos_;
            if (c != '\\') {
                value += c;
                continue;
            }
            char e = peek();
            ++pos_;
            switch (e) {
                case 't': value += '\t'; break;
                case 'b': value += '\b'; break;
                case 'n': value += '\n'; break;
                case 'r': value += '\r'; break;
                case 'f': value += '\f'; break;
                case '"': value += '"'; break;
                case '\'': value += '\''; break;
                case '\\': value += '\\'; break;
                case 'u': append_utf8(value, hex(4)); break;
                case 'U': append_utf8(value, hex(8)); break;
                default: fail("unknown escape sequence");
            }
        }
        Datatype dt = Datatype::String;
        if (peek() == '@') {
            if (!options_.accept_language_tags) fail("language-tagged literals are not supported");
            ++pos_;
            while (is_alpha(peek()) || is_digit(peek()) || peek() == '-') ++pos_;
        } else if (peek() == '^' && peek(1) == '^') {
            pos_ += 2;
            Term dt_iri = iri_or_pname();
            auto parsed = datatype_from_iri(dt_iri.text());
            if (!parsed) fail("unsupported literal datatype <" + dt_iri.text() + ">");
            dt = *parsed;
        }
        if (!is_valid_lexical(value, dt)) fail("invalid lexical form \"" + value + "\"");
        return Term::literal(std::move(value), dt);
    }

    std::string_view s_;
    TurtleOptions options_;
    std::string blank_prefix_;
    std::size_t pos_ = 0;
    std::size_t anon_ = 0;
    std::string base_;
    std::map<std::string, std::string> prefixes_;
    std::vector<Triple> out_;
};

}  // namespace

std::vector<Triple> parse_turtle(std::string_view text, const TurtleOptions& options) {
    return TurtleParser(text, options).parse();
}

}  // namespace causalstore
