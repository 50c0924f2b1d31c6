#include "causalstore/term.hpp"

#include <charconv>
#include <cmath>

#include "causalstore/error.hpp"
#include "causalstore/vocabulary.hpp"

namespace causalstore {

std::string_view datatype_iri(Datatype dt) noexcept {
    switch (dt) {
        case Datatype::String: return vocab::kXsdString;
        case Datatype::Decimal: return vocab::kXsdDecimal;
        case Datatype::Integer: return vocab::kXsdInteger;
        case Datatype::Boolean: return vocab::kXsdBoolean;
    }
    return vocab::kXsdString;
}

std::optional<Datatype> datatype_from_iri(std::string_view iri) noexcept {
    if (iri == vocab::kXsdString) return Datatype::String;
    if (iri == vocab::kXsdDecimal) return Datatype::Decimal;
    if (iri == vocab::kXsdInteger) return Datatype::Integer;
    if (iri == vocab::kXsdBoolean) return Datatype::Boolean;
    return std::nullopt;
}

std::string format_decimal(double value) {
    if (!std::isfinite(value)) throw ValidationError("decimal value must be finite");
    if (value == 0.0) value = 0.0;  // folds -0.0
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    if (ec != std::errc{}) throw ValidationError("decimal value cannot be formatted");
    std::string out(buf, end);
    if (out.find('.') == std::string::npos) out += ".0";
    return out;
}

bool is_valid_iri(std::string_view text) noexcept {
    if (text.empty()) return false;
    for (unsigned char c : text) {
        if (c <= 0x20 || c == 0x7f) return false;
        switch (c) {
            case '<': case '>': case '"': case '{': case '}':
            case '|': case '^': case '`': case '\\':
                return false;
            default: break;
        }
    }
    return true;
}

bool is_valid_blank_label(std::string_view label) noexcept {
    if (label.empty()) return false;
    for (unsigned char c : label) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '-';
        if (!ok) return false;
    }
    return true;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xe ? 3 : (c >> 3) == 0x1e ? 4 : 0;
        if (len == 0 || i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k)
            if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
        i += len;
    }
    return true;
}

}  // namespace

bool is_valid_lexical(std::string_view lexical, Datatype dt) noexcept {
    switch (dt) {
        case Datatype::String:
            return valid_utf8(lexical);
        case Datatype::Integer: {
            std::string_view s = lexical;
            if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
            return all_digits(s);
        }
        case Datatype::Decimal: {
            std::string_view s = lexical;
            if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
            auto dot = s.find('.');
            if (dot == std::string_view::npos) return all_digits(s);
            auto whole = s.substr(0, dot);
            auto frac = s.substr(dot + 1);
            if (whole.empty() && frac.empty()) return false;
            return (whole.empty() || all_digits(whole)) && (frac.empty() || all_digits(frac));
        }
        case Datatype::Boolean:
            return lexical == "true" || lexical == "false" || lexical == "1" || lexical == "0";
    }
    return false;
}

Term Term::iri(std::string text) {
    if (!is_valid_iri(text)) throw ValidationError("invalid IRI <" + text + ">");
    return Term(Iri{std::move(text)});
}

Term Term::literal(std::string lexical, Datatype datatype) {
    if (!is_valid_lexical(lexical, datatype))
        throw ValidationError("invalid lexical form \"" + lexical + "\" for " +
                              std::string(datatype_iri(datatype)));
    return Term(Literal{std::move(lexical), datatype});
}

Term Term::blank(std::string label) {
    if (!is_valid_blank_label(label)) throw ValidationError("invalid blank node label _:" + label);
    return Term(Blank{std::move(label)});
}

const std::string& Term::text() const noexcept {
    switch (value_.index()) {
        case 0: return std::get<Iri>(value_).text;
        case 1: return std::get<Literal>(value_).lexical;
        default: return std::get<Blank>(value_).label;
    }
}

Datatype Term::datatype() const noexcept {
    if (auto* lit = std::get_if<Literal>(&value_)) return lit->datatype;
    return Datatype::String;
}

std::optional<double> Term::numeric_value() const {
    auto* lit = std::get_if<Literal>(&value_);
    if (!lit || (lit->datatype != Datatype::Decimal && lit->datatype != Datatype::Integer)) return std::nullopt;
    std::string_view s = lit->lexical;
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) return std::nullopt;
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        // from_chars rejects forms like "5." and ".5"; normalize and retry.
        std::string norm(s);
        bool neg = !norm.empty() && norm[0] == '-';
        if (neg) norm.erase(0, 1);
        if (!norm.empty() && norm.front() == '.') norm.insert(0, "0");
        if (!norm.empty() && norm.back() == '.') norm.push_back('0');
        if (neg) norm.insert(0, "-");
        auto r = std::from_chars(norm.data(), norm.data() + norm.size(), v);
        if (r.ec != std::errc{}) return std::nullopt;
    }
    return v;
}

namespace {

void append_escaped(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c; break;
        }
    }
}

}  // namespace

std::string Term::to_ntriples() const {
    std::string out;
    switch (kind()) {
        case Kind::Iri:
            out.reserve(text().size() + 2);
            out += '<';
            out += text();
            out += '>';
            break;
        case Kind::Blank:
            out = "_:" + text();
            break;
        case Kind::Literal: {
            out += '"';
            append_escaped(out, text());
            out += '"';
            if (datatype() != Datatype::String) {
                out += "^^<";
                out += datatype_iri(datatype());
                out += '>';
            }
            break;
        }
    }
    return out;
}

Triple::Triple(Term s, Term p, Term o) : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
    if (subject.is_literal()) throw ValidationError("triple subject cannot be a literal: " + subject.to_ntriples());
    if (!predicate.is_iri()) throw ValidationError("triple predicate must be an IRI: " + predicate.to_ntriples());
}

std::string Triple::to_ntriples() const {
    return subject.to_ntriples() + ' ' + predicate.to_ntriples() + ' ' + object.to_ntriples() + " .";
}

std::strong_ordering canonical_compare(const Term& a, const Term& b) {
    return a.to_ntriples() <=> b.to_ntriples();
}

std::strong_ordering canonical_compare(const Triple& a, const Triple& b) {
    if (auto c = canonical_compare(a.subject, b.subject); c != 0) return c;
    if (auto c = canonical_compare(a.predicate, b.predicate); c != 0) return c;
    return canonical_compare(a.object, b.object);
}

}  // namespace causalstore
