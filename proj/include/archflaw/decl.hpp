#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "archflaw/source.hpp"

namespace archflaw {

enum class DeclKind { ModelHeader, Entity, Process, Store, Boundary, Asset, Flow, Session };

inline const char* to_string(DeclKind k) {
    switch (k) {
        case DeclKind::ModelHeader: return "model";
        case DeclKind::Entity: return "entity";
        case DeclKind::Process: return "process";
        case DeclKind::Store: return "store";
        case DeclKind::Boundary: return "boundary";
        case DeclKind::Asset: return "asset";
        case DeclKind::Flow: return "flow";
        default: return "session";
    }
}

/// Attribute literal: `true`, `false`, `unknown`, a bare identifier, or a
/// quoted string. `text` holds the identifier/string content.
struct Literal {
    enum class Kind { Bool, Unknown, Ident, String };
    Kind kind = Kind::Ident;
    bool bool_value = false;
    std::string text;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// A named reference to another declaration, with the span of the name token
/// so resolution errors can point at the exact source position.
struct Ref {
    std::string name;
    SourceSpan span;

    friend bool operator==(const Ref& a, const Ref& b) { return a.name == b.name; }
};

struct Attribute {
    Literal value;
    SourceSpan key_span;
    SourceSpan value_span;

    friend bool operator==(const Attribute& a, const Attribute& b) { return a.value == b.value; }
};

/// One parsed statement. Structural clauses (boundary membership, flow
/// endpoints, carried assets, session endpoints) are dedicated fields;
/// the attribute map holds only annotation/property key-value pairs.
struct Declaration {
    DeclKind kind = DeclKind::Entity;
    std::string name;
    std::optional<Ref> boundary;              // entity/process/store
    std::optional<Ref> source, target;        // flow
    std::vector<Ref> carries;                 // flow
    std::optional<Ref> endpoint_a, endpoint_b; // session
    std::map<std::string, Attribute> attributes;
    SourceSpan span;

    // Spans are layout metadata; two declarations are equal when their
    // content is, which is what the parse/pretty-print round trip preserves.
    friend bool operator==(const Declaration& a, const Declaration& b) {
        return a.kind == b.kind && a.name == b.name && a.boundary == b.boundary &&
               a.source == b.source && a.target == b.target && a.carries == b.carries &&
               a.endpoint_a == b.endpoint_a && a.endpoint_b == b.endpoint_b &&
               a.attributes == b.attributes;
    }
};

} // namespace archflaw
