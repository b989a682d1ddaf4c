#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "archflaw/decl.hpp"
#include "archflaw/source.hpp"

namespace archflaw::dsl {

struct ParseResult {
    std::vector<Declaration> decls;
    std::vector<Diagnostic> errors;

    bool ok() const { return errors.empty(); }
};

namespace detail {

enum class Tok { Ident, String, Colon, Comma, Arrow, LBrace, RBrace, End, Bad };

struct Token {
    Tok kind = Tok::End;
    std::string text; // identifier text or decoded string content
    SourceSpan span;
};

class Lexer {
public:
    Lexer(std::string_view src, std::string file, std::vector<Diagnostic>& errors)
        : src_(src), file_(std::move(file)), errors_(errors) {}

    Token next() {
        skip_trivia();
        Token t;
        t.span = here(1);
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src_[pos_];
        if (c == '{') return punct(Tok::LBrace);
        if (c == '}') return punct(Tok::RBrace);
        if (c == ':') return punct(Tok::Colon);
        if (c == ',') return punct(Tok::Comma);
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            t.kind = Tok::Arrow;
            t.span.length = 2;
            advance();
            advance();
            return t;
        }
        if (c == '"') return lex_string();
        if (is_ident_start(c)) return lex_ident();
        // Unknown byte: report once and skip it.
        errors_.push_back({DiagCode::UnexpectedToken,
                           std::string("unexpected character '") + printable(c) + "'", t.span});
        advance();
        t.kind = Tok::Bad;
        return t;
    }

private:
    static bool is_ident_start(char c) {
        return c == '_' || std::isalpha(static_cast<unsigned char>(c));
    }
    static bool is_ident_char(char c) {
        return c == '_' || std::isalnum(static_cast<unsigned char>(c));
    }
    static std::string printable(char c) {
        if (std::isprint(static_cast<unsigned char>(c))) return std::string(1, c);
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned char>(c));
        return buf;
    }

    SourceSpan here(int length) const { return {file_, line_, col_, length}; }

    void advance() {
        if (pos_ >= src_.size()) return;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    Token punct(Tok kind) {
        Token t;
        t.kind = kind;
        t.span = here(1);
        advance();
        return t;
    }

    Token lex_ident() {
        Token t;
        t.kind = Tok::Ident;
        t.span = here(0);
        size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        t.span.length = static_cast<int>(t.text.size());
        return t;
    }

    Token lex_string() {
        Token t;
        t.kind = Tok::String;
        t.span = here(1);
        advance(); // opening quote
        std::string out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '"') {
                advance();
                t.text = std::move(out);
                t.span.length = col_ - t.span.column;
                return t;
            }
            if (c == '\n') break;
            if (c == '\\' && pos_ + 1 < src_.size()) {
                char esc = src_[pos_ + 1];
                if (esc == '"' || esc == '\\') {
                    out.push_back(esc);
                    advance();
                    advance();
                    continue;
                }
            }
            out.push_back(c);
            advance();
        }
        errors_.push_back({DiagCode::UnterminatedString, "unterminated string literal", t.span});
        t.kind = Tok::Bad;
        return t;
    }

    std::string_view src_;
    std::string file_;
    std::vector<Diagnostic>& errors_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::string_view src, std::string file)
        : lexer_(src, file, result_.errors) {
        tok_ = lexer_.next();
    }

    ParseResult run() {
        parse_model();
        return std::move(result_);
    }

private:
    static bool is_statement_keyword(const Token& t) {
        if (t.kind != Tok::Ident) return false;
        return t.text == "entity" || t.text == "process" || t.text == "store" ||
               t.text == "boundary" || t.text == "asset" || t.text == "flow" ||
               t.text == "session";
    }

    void error(DiagCode code, std::string msg) {
        result_.errors.push_back({code, std::move(msg), tok_.span});
    }

    void bump() { tok_ = lexer_.next(); }

    bool at_ident(std::string_view kw) const { return tok_.kind == Tok::Ident && tok_.text == kw; }

    bool expect(Tok kind, const char* what) {
        if (tok_.kind == kind) return true;
        error(DiagCode::UnexpectedToken, std::string("expected ") + what);
        return false;
    }

    // Skip to the start of the next statement so several errors can be
    // reported in one pass.
    void recover() {
        while (tok_.kind != Tok::End && tok_.kind != Tok::RBrace && !is_statement_keyword(tok_)) {
            if (tok_.kind == Tok::LBrace) {
                skip_block();
                continue;
            }
            bump();
        }
    }

    void skip_block() {
        int depth = 0;
        do {
            if (tok_.kind == Tok::LBrace) ++depth;
            if (tok_.kind == Tok::RBrace) --depth;
            if (tok_.kind == Tok::End) return;
            bump();
        } while (depth > 0);
    }

    void parse_model() {
        if (!at_ident("model")) {
            error(DiagCode::UnexpectedToken, "expected keyword 'model'");
            return;
        }
        Declaration header;
        header.kind = DeclKind::ModelHeader;
        header.span = tok_.span;
        bump();
        if (tok_.kind == Tok::String || tok_.kind == Tok::Ident) {
            header.name = tok_.text;
            bump();
        } else {
            error(DiagCode::UnexpectedToken, "expected model name");
        }
        result_.decls.push_back(std::move(header));
        if (!expect(Tok::LBrace, "'{'")) return;
        bump();
        while (tok_.kind != Tok::RBrace && tok_.kind != Tok::End) {
            if (!parse_statement()) recover();
        }
        if (tok_.kind != Tok::RBrace)
            error(DiagCode::UnexpectedToken, "expected '}' to close model block");
        else
            bump();
        if (tok_.kind != Tok::End)
            error(DiagCode::UnexpectedToken, "unexpected input after model block");
    }

    bool parse_statement() {
        if (tok_.kind != Tok::Ident) {
            error(DiagCode::UnexpectedToken, "expected a statement keyword");
            return false;
        }
        const std::string kw = tok_.text;
        if (kw == "entity") return parse_element(DeclKind::Entity);
        if (kw == "process") return parse_element(DeclKind::Process);
        if (kw == "store") return parse_element(DeclKind::Store);
        if (kw == "boundary") return parse_named(DeclKind::Boundary);
        if (kw == "asset") return parse_named(DeclKind::Asset);
        if (kw == "flow") return parse_flow();
        if (kw == "session") return parse_session();
        error(DiagCode::UnknownKeyword, "unknown keyword '" + kw + "'");
        return false;
    }

    bool take_name(Declaration& d, const char* what) {
        if (tok_.kind != Tok::Ident) {
            error(DiagCode::UnexpectedToken, std::string("expected ") + what);
            return false;
        }
        d.name = tok_.text;
        d.span = tok_.span;
        bump();
        return true;
    }

    bool take_ref(std::optional<Ref>& out, const char* what) {
        if (tok_.kind != Tok::Ident) {
            error(DiagCode::UnexpectedToken, std::string("expected ") + what);
            return false;
        }
        out = Ref{tok_.text, tok_.span};
        bump();
        return true;
    }

    bool parse_named(DeclKind kind) {
        Declaration d;
        d.kind = kind;
        bump();
        if (!take_name(d, "a name")) return false;
        if (!parse_attr_block(d)) return false;
        result_.decls.push_back(std::move(d));
        return true;
    }

    bool parse_element(DeclKind kind) {
        Declaration d;
        d.kind = kind;
        bump();
        if (!take_name(d, "an element name")) return false;
        if (at_ident("in")) {
            bump();
            if (!at_ident("boundary")) {
                error(DiagCode::UnexpectedToken, "expected keyword 'boundary' after 'in'");
                return false;
            }
            bump();
            if (!take_ref(d.boundary, "a boundary name")) return false;
        }
        if (!parse_attr_block(d)) return false;
        result_.decls.push_back(std::move(d));
        return true;
    }

    bool parse_flow() {
        Declaration d;
        d.kind = DeclKind::Flow;
        bump();
        if (!take_name(d, "a flow name")) return false;
        if (!expect(Tok::Colon, "':'")) return false;
        bump();
        if (!take_ref(d.source, "a source element name")) return false;
        if (!expect(Tok::Arrow, "'->'")) return false;
        bump();
        if (!take_ref(d.target, "a target element name")) return false;
        if (at_ident("carries")) {
            bump();
            while (true) {
                if (tok_.kind != Tok::Ident) {
                    error(DiagCode::UnexpectedToken, "expected an asset name");
                    return false;
                }
                d.carries.push_back(Ref{tok_.text, tok_.span});
                bump();
                if (tok_.kind != Tok::Comma) break;
                bump();
            }
        }
        if (!parse_attr_block(d)) return false;
        result_.decls.push_back(std::move(d));
        return true;
    }

    bool parse_session() {
        Declaration d;
        d.kind = DeclKind::Session;
        bump();
        if (!take_name(d, "a session name")) return false;
        if (!at_ident("between")) {
            error(DiagCode::UnexpectedToken, "expected keyword 'between'");
            return false;
        }
        bump();
        if (!take_ref(d.endpoint_a, "an endpoint element name")) return false;
        if (!expect(Tok::Comma, "','")) return false;
        bump();
        if (!take_ref(d.endpoint_b, "an endpoint element name")) return false;
        if (!parse_attr_block(d)) return false;
        result_.decls.push_back(std::move(d));
        return true;
    }

    // Attribute blocks are optional; commas between entries are optional.
    bool parse_attr_block(Declaration& d) {
        if (tok_.kind != Tok::LBrace) return true;
        bump();
        while (tok_.kind != Tok::RBrace) {
            if (tok_.kind == Tok::End) {
                error(DiagCode::UnexpectedToken, "expected '}' to close attribute block");
                return false;
            }
            if (tok_.kind != Tok::Ident) {
                error(DiagCode::UnexpectedToken, "expected an attribute name");
                return false;
            }
            std::string key = tok_.text;
            SourceSpan key_span = tok_.span;
            bump();
            if (!expect(Tok::Colon, "':' after attribute name")) return false;
            bump();
            Literal lit;
            SourceSpan value_span = tok_.span;
            if (tok_.kind == Tok::String) {
                lit.kind = Literal::Kind::String;
                lit.text = tok_.text;
            } else if (tok_.kind == Tok::Ident) {
                if (tok_.text == "true" || tok_.text == "false") {
                    lit.kind = Literal::Kind::Bool;
                    lit.bool_value = tok_.text == "true";
                    lit.text = tok_.text;
                } else if (tok_.text == "unknown") {
                    lit.kind = Literal::Kind::Unknown;
                    lit.text = "unknown";
                } else {
                    lit.kind = Literal::Kind::Ident;
                    lit.text = tok_.text;
                }
            } else {
                error(DiagCode::UnexpectedToken, "expected an attribute value");
                return false;
            }
            bump();
            if (!d.attributes.emplace(key, Attribute{lit, key_span, value_span}).second) {
                result_.errors.push_back(
                    {DiagCode::DuplicateId, "duplicate attribute '" + key + "'", key_span});
                return false;
            }
            if (tok_.kind == Tok::Comma) bump();
        }
        bump();
        return true;
    }

    ParseResult result_;
    Lexer lexer_;
    Token tok_;
};

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string literal_text(const Literal& l) {
    switch (l.kind) {
        case Literal::Kind::Bool: return l.bool_value ? "true" : "false";
        case Literal::Kind::Unknown: return "unknown";
        case Literal::Kind::Ident: return l.text;
        default: return quote(l.text);
    }
}

} // namespace detail

/// Parses `.dfd` source into declarations. On a syntax error the parser
/// recovers at the next statement so one pass reports every error.
inline ParseResult parse(std::string_view text, std::string file = "<input>") {
    return detail::Parser(text, std::move(file)).run();
}

/// Canonical text form. Declarations keep their order; attributes print in
/// key order. parse() of the output reproduces the declarations exactly.
inline std::string pretty_print(const std::vector<Declaration>& decls) {
    std::string out;
    auto attrs = [&](const Declaration& d) {
        if (d.attributes.empty()) return;
        out += " {";
        bool first = true;
        for (const auto& [k, a] : d.attributes) {
            out += first ? " " : ", ";
            first = false;
            out += k;
            out += ": ";
            out += detail::literal_text(a.value);
        }
        out += " }";
    };

    size_t i = 0;
    bool wrapped = false;
    if (!decls.empty() && decls[0].kind == DeclKind::ModelHeader) {
        out += "model " + detail::quote(decls[0].name) + " {\n";
        wrapped = true;
        i = 1;
    }
    for (; i < decls.size(); ++i) {
        const Declaration& d = decls[i];
        if (wrapped) out += "  ";
        switch (d.kind) {
            case DeclKind::Entity:
            case DeclKind::Process:
            case DeclKind::Store:
                out += std::string(to_string(d.kind)) + " " + d.name;
                if (d.boundary) out += " in boundary " + d.boundary->name;
                attrs(d);
                break;
            case DeclKind::Boundary:
            case DeclKind::Asset:
                out += std::string(to_string(d.kind)) + " " + d.name;
                attrs(d);
                break;
            case DeclKind::Flow: {
                out += "flow " + d.name + ": " + (d.source ? d.source->name : "?") + " -> " +
                       (d.target ? d.target->name : "?");
                if (!d.carries.empty()) {
                    out += " carries ";
                    for (size_t c = 0; c < d.carries.size(); ++c) {
                        if (c) out += ", ";
                        out += d.carries[c].name;
                    }
                }
                attrs(d);
                break;
            }
            case DeclKind::Session:
                out += "session " + d.name + " between " + (d.endpoint_a ? d.endpoint_a->name : "?") +
                       ", " + (d.endpoint_b ? d.endpoint_b->name : "?");
                attrs(d);
                break;
            case DeclKind::ModelHeader:
                // A stray header past the front would not re-parse; skip it.
                continue;
        }
        out += '\n';
    }
    if (wrapped) out += "}\n";
    return out;
}

} // namespace archflaw::dsl
