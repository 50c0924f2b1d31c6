#include "causalstore/query.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "causalstore/error.hpp"
#include "causalstore/ntriples.hpp"
#include "causalstore/ontology.hpp"
#include "causalstore/vocabulary.hpp"

namespace causalstore {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_name_char(char c) {
    return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
}

class QueryParser {
public:
    explicit QueryParser(std::string_view text) : s_(text) {
        prefixes_["cg"] = std::string(vocab::kCausal);
        prefixes_["cgs"] = std::string(vocab::kStore);
        prefixes_["rdf"] = std::string(vocab::kRdf);
        prefixes_["rdfs"] = std::string(vocab::kRdfs);
        prefixes_["owl"] = std::string(vocab::kOwl);
        prefixes_["xsd"] = std::string(vocab::kXsd);
    }

    QueryAst parse() {
        QueryAst ast;
        skip();
        while (keyword("PREFIX")) {
            skip();
            std::size_t start = pos_;
            while (!eof() && is_name_char(peek())) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            expect(':');
            skip();
            prefixes_[name] = iri_ref();
            skip();
        }
        if (!keyword("SELECT")) fail("expected SELECT");
        skip();
        bool star = false;
        if (peek() == '*') {
            ++pos_;
            star = true;
        } else {
            while (peek() == '?' || peek() == '$') {
                ast.select.push_back(variable());
                skip();
            }
            if (ast.select.empty()) fail("expected variables or '*' after SELECT");
        }
        skip();
        if (!keyword("WHERE")) fail("expected WHERE");
        expect('{');
        for (;;) {
            skip();
            if (peek() == '}') break;
            if (keyword("FILTER")) {
                ast.filters.push_back(filter());
                continue;
            }
            if (peek() == '.' && !ast.patterns.empty()) {
                ++pos_;
                continue;
            }
            ast.patterns.push_back(pattern());
        }
        if (ast.patterns.empty()) fail("empty WHERE clause");
        expect('}');
        skip();
        if (keyword("LIMIT")) {
            skip();
            std::size_t start = pos_;
            while (is_digit(peek())) ++pos_;
            if (start == pos_) fail("expected a number after LIMIT");
            auto n = std::stoull(std::string(s_.substr(start, pos_ - start)));
            if (n == 0) fail("LIMIT must be positive");
            ast.limit = static_cast<std::size_t>(n);
        }
        skip();
        if (!eof()) fail("unexpected trailing text");

        std::vector<std::string> bound;
        for (const auto& p : ast.patterns)
            for (const auto* slot : {&p.subject, &p.predicate, &p.object})
                if (slot->variable && std::find(bound.begin(), bound.end(), *slot->variable) == bound.end())
                    bound.push_back(*slot->variable);
        if (star) ast.select = bound;
        auto check_bound = [&](const std::string& v, const char* where) {
            if (std::find(bound.begin(), bound.end(), v) == bound.end())
                throw ParseError(std::string("variable ?") + v + " in " + where + " is not bound by any pattern", 1,
                                 1);
        };
        for (const auto& v : ast.select) check_bound(v, "SELECT");
        for (const auto& f : ast.filters) check_bound(f.variable, "FILTER");
        return ast;
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
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos_;
            } else if (c == '#') {
                while (!eof() && peek() != '\n') ++pos_;
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

    bool keyword(std::string_view kw) {
        if (pos_ + kw.size() > s_.size()) return false;
        for (std::size_t i = 0; i < kw.size(); ++i) {
            char a = s_[pos_ + i];
            if (a >= 'a' && a <= 'z') a = static_cast<char>(a - 'a' + 'A');
            if (a != kw[i]) return false;
        }
        if (is_name_char(peek(kw.size())) || peek(kw.size()) == ':') return false;
        pos_ += kw.size();
        return true;
    }

    // case-sensitive, unlike keywords
    bool exact_word(std::string_view w) {
        if (!s_.substr(pos_).starts_with(w)) return false;
        if (is_name_char(peek(w.size())) || peek(w.size()) == ':') return false;
        pos_ += w.size();
        return true;
    }

    std::string variable() {
        if (peek() != '?' && peek() != '$') fail("expected variable");
        ++pos_;
        std::size_t start = pos_;
        while (!eof() && (is_alpha(peek()) || is_digit(peek()) || peek() == '_')) ++pos_;
        if (start == pos_) fail("empty variable name");
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string iri_ref() {
        if (peek() != '<') fail("expected IRI");
        std::size_t start = ++pos_;
        while (!eof() && peek() != '>') ++pos_;
        if (eof()) fail("unterminated IRI");
        std::string text(s_.substr(start, pos_ - start));
        ++pos_;
        if (!is_valid_iri(text)) fail("invalid IRI <" + text + ">");
        return text;
    }

    std::string prefixed_name() {
        std::size_t start = pos_;
        while (!eof() && is_name_char(peek())) ++pos_;
        if (peek() != ':') {
            pos_ = start;
            fail("expected a term");
        }
        std::string prefix(s_.substr(start, pos_ - start));
        ++pos_;
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) {
            pos_ = start;
            fail("unknown prefix '" + prefix + ":'");
        }
        std::size_t local_start = pos_;
        while (!eof() && (is_name_char(peek()) || peek() == '.' || peek() == '%')) ++pos_;
        while (pos_ > local_start && s_[pos_ - 1] == '.') --pos_;  // a trailing dot ends the pattern
        std::string iri = it->second + std::string(s_.substr(local_start, pos_ - local_start));
        if (!is_valid_iri(iri)) fail("invalid IRI <" + iri + ">");
        return iri;
    }

    Term literal() {
        char quote = peek();
        ++pos_;
        std::string value;
        for (;;) {
            if (eof()) fail("unterminated string");
            char c = s_[pos_++];
            if (c == quote) break;
            if (c == '\\') {
                char e = peek();
                ++pos_;
                switch (e) {
                    case 'n': value += '\n'; break;
                    case 'r': value += '\r'; break;
                    case 't': value += '\t'; break;
                    case '\\': value += '\\'; break;
                    case '"': value += '"'; break;
                    case '\'': value += '\''; break;
                    default: fail("bad escape in string");
                }
                continue;
            }
            value += c;
        }
        if (peek() == '@') fail("language tags are not supported");
        if (peek() == '^' && peek(1) == '^') {
            pos_ += 2;
            std::string dt = peek() == '<' ? iri_ref() : prefixed_name();
            auto datatype = datatype_from_iri(dt);
            if (!datatype) fail("unsupported datatype <" + dt + ">");
            if (!is_valid_lexical(value, *datatype)) fail("invalid lexical form for <" + dt + ">");
            return Term::literal(std::move(value), *datatype);
        }
        return Term::string(std::move(value));
    }

    Term number() {
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
        std::string text(s_.substr(start, pos_ - start));
        if (text.empty() || text == "+" || text == "-") fail("expected a number");
        return Term::literal(text, decimal ? Datatype::Decimal : Datatype::Integer);
    }

    PatternSlot slot(bool predicate_position) {
        skip();
        char c = peek();
        if (c == '?' || c == '$') return PatternSlot::var(variable());
        if (c == '<') return PatternSlot::constant(Term::iri(iri_ref()));
        if (predicate_position && c == 'a' && !is_name_char(peek(1)) && peek(1) != ':') {
            ++pos_;
            return PatternSlot::constant(Term::iri(std::string(vocab::kRdfType)));
        }
        if (predicate_position) return PatternSlot::constant(Term::iri(prefixed_name()));
        if (c == '"' || c == '\'') return PatternSlot::constant(literal());
        if (is_digit(c) || c == '+' || c == '-') return PatternSlot::constant(number());
        if (exact_word("true")) return PatternSlot::constant(Term::boolean(true));
        if (exact_word("false")) return PatternSlot::constant(Term::boolean(false));
        if (c == '_' && peek(1) == ':') fail("blank nodes are not supported in queries");
        return PatternSlot::constant(Term::iri(prefixed_name()));
    }

    TriplePattern pattern() {
        TriplePattern p;
        std::size_t at = pos_;
        p.subject = slot(false);
        if (p.subject.term && p.subject.term->is_literal()) {
            pos_ = at;
            fail("a literal cannot be a subject");
        }
        p.predicate = slot(true);
        p.object = slot(false);
        return p;
    }

    Comparison filter() {
        expect('(');
        skip();
        Comparison cmp;
        cmp.variable = variable();
        skip();
        static const std::pair<std::string_view, CompareOp> ops[] = {
            {"<=", CompareOp::Le}, {">=", CompareOp::Ge}, {"!=", CompareOp::Ne},
            {"<", CompareOp::Lt},  {">", CompareOp::Gt},  {"=", CompareOp::Eq}};
        bool found = false;
        for (const auto& [text, op] : ops) {
            if (s_.substr(pos_).starts_with(text)) {
                cmp.op = op;
                pos_ += text.size();
                found = true;
                break;
            }
        }
        if (!found) fail("expected a comparison operator");
        auto value = slot(false);
        if (value.is_variable()) fail("FILTER compares a variable with a constant");
        cmp.constant = *value.term;
        expect(')');
        return cmp;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::map<std::string, std::string> prefixes_;
};

template <typename T>
bool apply(CompareOp op, const T& a, const T& b) {
    switch (op) {
        case CompareOp::Lt: return a < b;
        case CompareOp::Le: return a <= b;
        case CompareOp::Eq: return a == b;
        case CompareOp::Ne: return a != b;
        case CompareOp::Ge: return a >= b;
        case CompareOp::Gt: return a > b;
    }
    return false;
}

bool is_numeric(const Term& t) {
    return t.is_literal() && (t.datatype() == Datatype::Decimal || t.datatype() == Datatype::Integer);
}

class Evaluator {
public:
    Evaluator(const TripleStore& store, const QueryAst& ast, const EvalOptions& options)
        : store_(store), ast_(ast), options_(options) {
        for (const auto& p : ast.patterns)
            for (const auto* s : {&p.subject, &p.predicate, &p.object})
                if (s->variable && !slots_.count(*s->variable)) slots_.emplace(*s->variable, slots_.size());
        binding_.resize(slots_.size());
    }

    QueryResult run() {
        order_ = plan();
        std::set<std::vector<Term>, RowLess> rows;
        join(0, rows);
        QueryResult out;
        out.variables = ast_.select;
        for (const auto& r : rows) {
            if (ast_.limit && out.rows.size() >= *ast_.limit) break;
            out.rows.push_back(r);
        }
        return out;
    }

private:
    struct RowLess {
        bool operator()(const std::vector<Term>& a, const std::vector<Term>& b) const {
            for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
                auto c = canonical_compare(a[i], b[i]);
                if (c != 0) return c < 0;
            }
            return a.size() < b.size();
        }
    };

    std::vector<std::size_t> plan() const {
        const auto n = ast_.patterns.size();
        if (options_.pattern_order) {
            auto order = *options_.pattern_order;
            auto sorted = order;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 0; i < n; ++i)
                if (sorted.size() != n || sorted[i] != i)
                    throw ValidationError("pattern_order is not a permutation of the patterns");
            return order;
        }
        std::vector<std::size_t> order;
        std::set<std::string> bound;
        std::vector<bool> used(n, false);
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t best = n;
            int best_score = -1;
            for (std::size_t i = 0; i < n; ++i) {
                if (used[i]) continue;
                int score = 0;
                const auto& p = ast_.patterns[i];
                for (const auto* s : {&p.subject, &p.predicate, &p.object})
                    if (!s->variable || bound.count(*s->variable)) ++score;
                if (score > best_score) {
                    best_score = score;
                    best = i;
                }
            }
            used[best] = true;
            order.push_back(best);
            const auto& p = ast_.patterns[best];
            for (const auto* s : {&p.subject, &p.predicate, &p.object})
                if (s->variable) bound.insert(*s->variable);
        }
        return order;
    }

    std::optional<Term> resolve(const PatternSlot& s) const {
        if (!s.variable) return s.term;
        return binding_[slots_.at(*s.variable)];
    }

    bool filters_hold(bool final_pass) const {
        for (const auto& f : ast_.filters) {
            const auto& value = binding_[slots_.at(f.variable)];
            if (!value) {
                if (final_pass) return false;
                continue;
            }
            if (!filter_accepts(*value, f.op, f.constant)) return false;
        }
        return true;
    }

    void join(std::size_t depth, std::set<std::vector<Term>, RowLess>& rows) {
        if (depth == order_.size()) {
            if (!options_.push_filters && !filters_hold(true)) return;
            std::vector<Term> row;
            for (const auto& v : ast_.select) row.push_back(*binding_[slots_.at(v)]);
            rows.insert(std::move(row));
            return;
        }
        const auto& p = ast_.patterns[order_[depth]];
        for (const auto& t : store_.match(resolve(p.subject), resolve(p.predicate), resolve(p.object))) {
            std::vector<std::size_t> newly;
            bool ok = true;
            const std::pair<const PatternSlot*, const Term*> parts[] = {
                {&p.subject, &t.subject}, {&p.predicate, &t.predicate}, {&p.object, &t.object}};
            for (const auto& [slot, term] : parts) {
                if (!slot->variable) continue;
                auto idx = slots_.at(*slot->variable);
                if (binding_[idx]) {
                    if (!(*binding_[idx] == *term)) ok = false;
                } else {
                    binding_[idx] = *term;
                    newly.push_back(idx);
                }
            }
            if (ok && options_.push_filters) ok = filters_hold(false);
            if (ok) join(depth + 1, rows);
            for (auto idx : newly) binding_[idx].reset();
        }
    }

    const TripleStore& store_;
    const QueryAst& ast_;
    const EvalOptions& options_;
    std::map<std::string, std::size_t> slots_;
    std::vector<std::optional<Term>> binding_;
    std::vector<std::size_t> order_;
};

std::string tsv_cell(const Term& t) {
    std::string raw;
    if (t.is_iri()) {
        auto name = individual_name(t.text());
        raw = name ? *name : "<" + t.text() + ">";
    } else if (t.is_blank()) {
        raw = "_:" + t.text();
    } else {
        raw = t.text();
    }
    std::string out;
    for (char c : raw) {
        if (c == '\t') out += "\\t";
        else if (c == '\n') out += "\\n";
        else if (c == '\r') out += "\\r";
        else if (c == '\\') out += "\\\\";
        else out += c;
    }
    return out;
}

}  // namespace

QueryAst parse_query(std::string_view text) { return QueryParser(text).parse(); }

bool filter_accepts(const Term& value, CompareOp op, const Term& constant) {
    if (is_numeric(constant)) {
        if (!is_numeric(value)) return false;
        auto a = value.numeric_value();
        auto b = constant.numeric_value();
        return a && b && apply(op, *a, *b);
    }
    if (value.kind() != constant.kind() || value.is_blank()) return false;
    if (value.is_literal()) {
        if (value.datatype() != constant.datatype()) return false;
        if (value.datatype() == Datatype::Boolean) return apply(op, value.text() == "true", constant.text() == "true");
    }
    // UTF-8 byte order equals code point order.
    return apply(op, std::string_view(value.text()), std::string_view(constant.text()));
}

QueryResult eval_query(const TripleStore& store, const QueryAst& ast, const EvalOptions& options) {
    return Evaluator(store, ast, options).run();
}

std::string to_tsv(const QueryResult& result) {
    std::string out;
    for (std::size_t i = 0; i < result.variables.size(); ++i) out += (i ? "\t" : "") + result.variables[i];
    out += '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + tsv_cell(row[i]);
        out += '\n';
    }
    return out;
}

std::string to_json_lines(const QueryResult& result) {
    std::string out;
    for (const auto& row : result.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[result.variables[i]] = row[i].to_ntriples();
        out += obj.dump() + "\n";
    }
    return out;
}

}  // namespace causalstore
