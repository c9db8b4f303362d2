#pragma once

// Recursive-descent parsers shared by state text and rule files. Internal.

#include <cstddef>
#include <set>
#include <string>

#include "multiway/errors.hpp"
#include "multiway/hypergraph.hpp"
#include "multiway/term.hpp"

namespace multiway::detail {

class TextCursor {
public:
    TextCursor(const std::string& text, std::size_t line, std::size_t col_offset = 0)
        : text_(text), line_(line), col_offset_(col_offset) {}

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    char get() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        return text_[pos_++];
    }
    void expect(char c) {
        char got = get();
        if (got != c) fail(std::string("expected '") + c + "', got '" + got + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_offset_ + pos_ + 1);
    }

    static bool ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_';
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        if (pos_ == start) fail("expected an identifier");
        return text_.substr(start, pos_ - start);
    }

    std::size_t position() const { return pos_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t col_offset_;
};

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// {{1,2},{y,z}}; identifiers are variables (rejected unless allow_vars).
inline PatternGraph parse_pattern_graph_text(const std::string& s, std::size_t line,
                                             bool allow_vars,
                                             std::size_t col_offset = 0) {
    TextCursor cur(s, line, col_offset);
    PatternGraph out;
    cur.expect('{');
    if (cur.peek() == '}') {
        cur.expect('}');
        if (!cur.at_end()) cur.fail("trailing input after hypergraph");
        return out;
    }
    for (;;) {
        cur.expect('{');
        PatternEdge edge;
        for (;;) {
            std::string tok = cur.identifier();
            PatternAtom atom;
            if (tok.find_first_not_of("0123456789") == std::string::npos) {
                atom.is_var = false;
                atom.literal = std::stoull(tok);
            } else {
                if (!allow_vars) cur.fail("vertex label must be a number: '" + tok + "'");
                atom.is_var = true;
                atom.var = tok;
            }
            edge.push_back(std::move(atom));
            char c = cur.get();
            if (c == ',') continue;
            if (c == '}') break;
            cur.fail(std::string("expected ',' or '}', got '") + c + "'");
        }
        if (edge.empty()) cur.fail("empty hyperedge");
        out.edges.push_back(std::move(edge));
        char c = cur.get();
        if (c == ',') continue;
        if (c == '}') break;
        cur.fail(std::string("expected ',' or '}', got '") + c + "'");
    }
    if (!cur.at_end()) cur.fail("trailing input after hypergraph");
    return out;
}

inline Hypergraph pattern_to_ground(const PatternGraph& p, std::size_t line) {
    Hypergraph out;
    for (const auto& pe : p.edges) {
        HyperEdge he;
        for (const auto& atom : pe) {
            if (atom.is_var) throw ParseError("variable in a ground hypergraph", line, 1);
            he.push_back(atom.literal);
        }
        out.edges.push_back(std::move(he));
    }
    return out;
}

// head[arg,...]; heads in `variables` (when given) become variable leaves.
inline Term parse_term_node(TextCursor& cur, const std::set<std::string>* variables) {
    std::string head = cur.identifier();
    Term t;
    t.head = head;
    if (variables && variables->count(head)) {
        t.is_var = true;
        if (cur.peek() == '[') cur.fail("variable '" + head + "' cannot take arguments");
        return t;
    }
    if (cur.peek() == '[') {
        cur.expect('[');
        for (;;) {
            t.args.push_back(parse_term_node(cur, variables));
            char c = cur.get();
            if (c == ',') continue;
            if (c == ']') break;
            cur.fail(std::string("expected ',' or ']', got '") + c + "'");
        }
    }
    return t;
}

inline Term parse_term_text(const std::string& s, std::size_t line,
                            const std::set<std::string>* variables,
                            std::size_t col_offset = 0) {
    TextCursor cur(s, line, col_offset);
    Term t = parse_term_node(cur, variables);
    if (!cur.at_end()) cur.fail("trailing input after term");
    return t;
}

}  // namespace multiway::detail
