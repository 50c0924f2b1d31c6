#include "causalstore/ntriples.hpp"

#include <algorithm>

#include "causalstore/error.hpp"

namespace causalstore {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    }
}

namespace {

class LineParser {
public:
    LineParser(std::string_view text, std::size_t line_no) : s_(text), line_(line_no) {}

    Triple parse() {
        skip_ws();
        Term subject = term();
        skip_ws();
        Term predicate = term();
        skip_ws();
        Term object = term();
        skip_ws();
        expect('.');
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] != '#') fail("unexpected trailing characters");
        if (subject.is_literal()) fail("literal in subject position");
        if (!predicate.is_iri()) fail("predicate must be an IRI");
        return Triple(std::move(subject), std::move(predicate), std::move(object));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Term term() {
        if (pos_ >= s_.size()) fail("unexpected end of statement");
        char c = s_[pos_];
        if (c == '<') return Term::iri(iri_ref());
        if (c == '_') return blank();
        if (c == '"') return literal();
        fail("expected a term");
    }

    std::string iri_ref() {
        expect('<');
        auto end = s_.find('>', pos_);
        if (end == std::string_view::npos) fail("unterminated IRI");
        std::string text(s_.substr(pos_, end - pos_));
        if (!is_valid_iri(text)) fail("invalid IRI");
        pos_ = end + 1;
        return text;
    }

    Term blank() {
        if (s_.substr(pos_, 2) != "_:") fail("expected blank node");
        pos_ += 2;
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t') ++pos_;
        std::string label(s_.substr(start, pos_ - start));
        if (!is_valid_blank_label(label)) fail("invalid blank node label");
        return Term::blank(std::move(label));
    }

    std::uint32_t hex(std::size_t digits) {
        if (pos_ + digits > s_.size()) fail("truncated unicode escape");
        std::uint32_t cp = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            char h = s_[pos_++];
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
            else fail("bad hex digit in escape");
        }
        return cp;
    }

    Term literal() {
        expect('"');
        std::string lexical;
        for (;;) {
            if (pos_ >= s_.size()) fail("unterminated literal");
            char c = s_[pos_++];
            if (c == '"') break;
            if (c == '\n' || c == '\r') fail("raw line break in literal");
            if (c != '\\') {
                lexical += c;
                continue;
            }
            if (pos_ >= s_.size()) fail("dangling escape");
            char e = s_[pos_++];
            switch (e) {
                case 't': lexical += '\t'; break;
                case 'b': lexical += '\b'; break;
                case 'n': lexical += '\n'; break;
                case 'r': lexical += '\r'; break;
                case 'f': lexical += '\f'; break;
                case '"': lexical += '"'; break;
                case '\'': lexical += '\''; break;
                case '\\': lexical += '\\'; break;
                case 'u': append_utf8(lexical, hex(4)); break;
                case 'U': append_utf8(lexical, hex(8)); break;
                default: fail("unknown escape sequence");
            }
        }
        Datatype dt = Datatype::String;
        if (s_.substr(pos_, 2) == "^^") {
            pos_ += 2;
            std::string dt_iri = iri_ref();
            auto parsed = datatype_from_iri(dt_iri);
            if (!parsed) fail("unsupported literal datatype <" + dt_iri + ">");
            dt = *parsed;
        } else if (pos_ < s_.size() && s_[pos_] == '@') {
            fail("language-tagged literals are not supported");
        }
        if (!is_valid_lexical(lexical, dt)) fail("invalid lexical form for datatype");
        return Term::literal(std::move(lexical), dt);
    }

    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace

Triple parse_ntriples_line(std::string_view line, std::size_t line_no) {
    return LineParser(line, line_no).parse();
}

std::vector<Triple> parse_ntriples(std::string_view text) {
    std::vector<Triple> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;
        out.push_back(parse_ntriples_line(line, line_no));
    }
    return out;
}

std::string to_ntriples_document(std::vector<Triple> triples) {
    std::vector<std::string> lines;
    lines.reserve(triples.size());
    for (const auto& t : triples) lines.push_back(t.to_ntriples());
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace causalstore
