#pragma once

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "archflaw/model.hpp"

namespace archflaw {

enum class CatalogVersion { V1, V2 };

inline const char* to_string(CatalogVersion v) { return v == CatalogVersion::V1 ? "v1" : "v2"; }

inline std::optional<CatalogVersion> catalog_version_from_string(std::string_view s) {
    if (s == "v1" || s == "V1") return CatalogVersion::V1;
    if (s == "v2" || s == "V2") return CatalogVersion::V2;
    return std::nullopt;
}

/// Category an inspection target or question guard can name.
enum class TargetCategory { Entity, Process, Store, Flow, Session };

inline const char* to_string(TargetCategory c) {
    switch (c) {
        case TargetCategory::Entity: return "entity";
        case TargetCategory::Process: return "process";
        case TargetCategory::Store: return "store";
        case TargetCategory::Flow: return "flow";
        default: return "session";
    }
}

struct ScopeFilter {
    enum class Kind { CrossingBoundary, CarriesSensitivity, InteractsWithAssets, TargetsStore };
    Kind kind = Kind::CrossingBoundary;
    Sensitivity level = Sensitivity::High;

    friend bool operator==(const ScopeFilter&, const ScopeFilter&) = default;
};

enum class ScopeBase { ExternalEntities, Processes, DataStores, Flows, Sessions, AssetPaths };

struct ScopeTerm {
    ScopeBase base = ScopeBase::Processes;
    std::vector<ScopeFilter> filters;
};

/// Union of selector terms, each a base set narrowed by filters.
struct ScopeSpec {
    std::vector<ScopeTerm> terms;
};

/// One closed-question predicate atom: an annotation key compared against an
/// expected value on the target itself, on a flow target's receiving element,
/// or folded over an element target's incident flows.
struct Atom {
    enum class Subject { Self, TargetElement, IncidentFlows };
    enum class FlowDirection { Any, Outgoing, Incoming };

    Subject subject = Subject::Self;
    FlowDirection direction = FlowDirection::Any;
    bool carrying_assets_only = false;
    std::string key;
    TriState expect = TriState::Yes;
};

struct Predicate {
    enum class Op { Leaf, AllOf, AnyOf };
    Op op = Op::Leaf;
    Atom atom;
    std::vector<Predicate> children;
};

struct QuestionSpec {
    std::string id;
    std::string prompt;
    std::vector<TargetCategory> applies_to; // empty = any target the scope yields
    std::vector<ScopeFilter> when;          // structural guards, all must hold
    Predicate predicate;
    std::string from; // v1 question this one carries over (v2 catalogs)
};

struct FlawDefinition {
    int id = 0;
    CatalogVersion version = CatalogVersion::V1;
    std::string name;
    std::string description;
    ScopeSpec scope;
    std::vector<QuestionSpec> questions;
    std::vector<int> cwe_refs;
    bool applicable = true;
};

struct Catalog {
    CatalogVersion version = CatalogVersion::V1;
    std::vector<FlawDefinition> flaws;
    // v2 only: old id -> new id, nullopt = removed from the catalog.
    std::map<int, std::optional<int>> mapping;
    // v2 only: v1 question ids intentionally not carried over.
    std::set<std::string> dropped_questions;

    const FlawDefinition* find(int id) const {
        for (const auto& f : flaws)
            if (f.id == id) return &f;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------
// Rendering (catalog show, findings explanations)

inline std::string to_string(const ScopeFilter& f) {
    switch (f.kind) {
        case ScopeFilter::Kind::CrossingBoundary: return "crossing_boundary";
        case ScopeFilter::Kind::TargetsStore: return "targets_store";
        case ScopeFilter::Kind::CarriesSensitivity:
            return std::string("carries_sensitivity(") + to_string(f.level) + ")";
        default:
            return std::string("interacts_with_assets(") + to_string(f.level) + ")";
    }
}

inline std::string to_string(ScopeBase b) {
    switch (b) {
        case ScopeBase::ExternalEntities: return "ExternalEntities";
        case ScopeBase::Processes: return "Processes";
        case ScopeBase::DataStores: return "DataStores";
        case ScopeBase::Flows: return "Flows";
        case ScopeBase::Sessions: return "Sessions";
        default: return "AssetPaths";
    }
}

inline std::string to_string(const ScopeSpec& s) {
    std::string out;
    for (size_t i = 0; i < s.terms.size(); ++i) {
        if (i) out += " | ";
        out += to_string(s.terms[i].base);
        if (!s.terms[i].filters.empty()) {
            out += '(';
            for (size_t j = 0; j < s.terms[i].filters.size(); ++j) {
                if (j) out += ", ";
                out += to_string(s.terms[i].filters[j]);
            }
            out += ')';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Catalog file parsing

namespace catdetail {

struct Tok {
    enum Kind { Ident, Number, String, LBrace, RBrace, LParen, RParen, Comma, Semi, Eq, Pipe, Dot, Arrow, End } kind = End;
    std::string text;
    int line = 1;
};

class Lexer {
public:
    Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

    Tok next() {
        skip_trivia();
        Tok t;
        t.line = line_;
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        auto one = [&](Tok::Kind k) {
            t.kind = k;
            ++pos_;
            return t;
        };
        switch (c) {
            case '{': return one(Tok::LBrace);
            case '}': return one(Tok::RBrace);
            case '(': return one(Tok::LParen);
            case ')': return one(Tok::RParen);
            case ',': return one(Tok::Comma);
            case ';': return one(Tok::Semi);
            case '=': return one(Tok::Eq);
            case '|': return one(Tok::Pipe);
            case '.': return one(Tok::Dot);
            default: break;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            t.kind = Tok::Arrow;
            pos_ += 2;
            return t;
        }
        if (c == '"') {
            ++pos_;
            std::string out;
            while (pos_ < src_.size() && src_[pos_] != '"') {
                if (src_[pos_] == '\n') fail("unterminated string", t.line);
                if (src_[pos_] == '\\' && pos_ + 1 < src_.size() &&
                    (src_[pos_ + 1] == '"' || src_[pos_ + 1] == '\\'))
                    ++pos_;
                out.push_back(src_[pos_++]);
            }
            if (pos_ >= src_.size()) fail("unterminated string", t.line);
            ++pos_;
            t.kind = Tok::String;
            t.text = std::move(out);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
                ++pos_;
            t.kind = Tok::Number;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (c == '_' || std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && (src_[pos_] == '_' || src_[pos_] == '/' ||
                                          std::isalnum(static_cast<unsigned char>(src_[pos_]))))
                ++pos_;
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        fail(std::string("unexpected character '") + c + "'", line_);
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, int line) const {
        throw CatalogError(file_ + ":" + std::to_string(line) + ": " + msg);
    }

private:
    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1;
};

class Parser {
public:
    Parser(std::string_view src, std::string file) : lexer_(src, file), file_(std::move(file)) {
        bump();
    }

    Catalog run() {
        Catalog cat;
        expect_ident("version");
        cat.version = need_version(take_ident("catalog version"));
        bool saw_mapping = false;
        while (tok_.kind != Tok::End) {
            if (at_ident("flaw")) {
                cat.flaws.push_back(parse_flaw(cat.version));
            } else if (at_ident("mapping")) {
                if (saw_mapping) fail("duplicate mapping block");
                parse_mapping(cat);
                saw_mapping = true;
            } else if (at_ident("dropped")) {
                bump();
                while (tok_.kind == Tok::Number) {
                    cat.dropped_questions.insert(tok_.text);
                    bump();
                }
            } else {
                fail("expected 'flaw', 'mapping' or 'dropped'");
            }
        }
        return cat;
    }

private:
    void bump() { tok_ = lexer_.next(); }
    bool at_ident(std::string_view s) const { return tok_.kind == Tok::Ident && tok_.text == s; }

    [[noreturn]] void fail(const std::string& msg) const { lexer_.fail(msg, tok_.line); }

    void expect(Tok::Kind k, const char* what) {
        if (tok_.kind != k) fail(std::string("expected ") + what);
    }
    void eat(Tok::Kind k, const char* what) {
        expect(k, what);
        bump();
    }
    void expect_ident(std::string_view kw) {
        if (!at_ident(kw)) fail("expected keyword '" + std::string(kw) + "'");
        bump();
    }
    std::string take_ident(const char* what) {
        expect(Tok::Ident, what);
        std::string s = tok_.text;
        bump();
        return s;
    }
    std::string take_string(const char* what) {
        expect(Tok::String, what);
        std::string s = tok_.text;
        bump();
        return s;
    }
    int take_int(const char* what) {
        expect(Tok::Number, what);
        if (tok_.text.find('.') != std::string::npos) fail(std::string("expected ") + what);
        int v = std::atoi(tok_.text.c_str());
        bump();
        return v;
    }

    CatalogVersion need_version(const std::string& s) {
        auto v = catalog_version_from_string(s);
        if (!v) fail("unknown catalog version '" + s + "'");
        return *v;
    }

    Sensitivity parse_level() {
        std::string s = take_ident("a sensitivity level");
        if (s == "High") return Sensitivity::High;
        if (s == "Medium") return Sensitivity::Medium;
        if (s == "Low") return Sensitivity::Low;
        fail("unknown sensitivity level '" + s + "'");
    }

    ScopeFilter parse_filter() {
        std::string name = take_ident("a scope filter");
        ScopeFilter f;
        if (name == "crossing_boundary") {
            f.kind = ScopeFilter::Kind::CrossingBoundary;
        } else if (name == "targets_store") {
            f.kind = ScopeFilter::Kind::TargetsStore;
        } else if (name == "carries_sensitivity" || name == "interacts_with_assets") {
            f.kind = name == "carries_sensitivity" ? ScopeFilter::Kind::CarriesSensitivity
                                                   : ScopeFilter::Kind::InteractsWithAssets;
            eat(Tok::LParen, "'('");
            f.level = parse_level();
            eat(Tok::RParen, "')'");
        } else {
            fail("unknown scope filter '" + name + "'");
        }
        return f;
    }

    ScopeSpec parse_scope() {
        ScopeSpec spec;
        while (true) {
            ScopeTerm term;
            std::string base = take_ident("a scope base");
            if (base == "ExternalEntities") term.base = ScopeBase::ExternalEntities;
            else if (base == "Processes") term.base = ScopeBase::Processes;
            else if (base == "DataStores") term.base = ScopeBase::DataStores;
            else if (base == "Flows") term.base = ScopeBase::Flows;
            else if (base == "Sessions") term.base = ScopeBase::Sessions;
            else if (base == "AssetPaths") term.base = ScopeBase::AssetPaths;
            else fail("unknown scope base '" + base + "'");
            if (tok_.kind == Tok::LParen) {
                bump();
                term.filters.push_back(parse_filter());
                while (tok_.kind == Tok::Comma) {
                    bump();
                    term.filters.push_back(parse_filter());
                }
                eat(Tok::RParen, "')'");
            }
            spec.terms.push_back(std::move(term));
            if (tok_.kind != Tok::Pipe) break;
            bump();
        }
        return spec;
    }

    TriState parse_expected() {
        std::string s = take_ident("'yes' or 'no'");
        if (s == "yes") return TriState::Yes;
        if (s == "no") return TriState::No;
        fail("expected answer must be 'yes' or 'no'");
    }

    Predicate parse_predicate() {
        if (at_ident("all_of") || at_ident("any_of")) {
            Predicate p;
            p.op = tok_.text == "all_of" ? Predicate::Op::AllOf : Predicate::Op::AnyOf;
            bump();
            eat(Tok::LParen, "'('");
            p.children.push_back(parse_predicate());
            while (tok_.kind == Tok::Semi) {
                bump();
                p.children.push_back(parse_predicate());
            }
            eat(Tok::RParen, "')'");
            if (p.children.empty()) fail("empty composite predicate");
            return p;
        }
        Predicate p;
        p.op = Predicate::Op::Leaf;
        Atom& a = p.atom;
        std::string head = take_ident("an annotation key");
        if (head == "target" && tok_.kind == Tok::Dot) {
            a.subject = Atom::Subject::TargetElement;
            bump();
            a.key = take_ident("an annotation key");
        } else if (head == "flows" && tok_.kind == Tok::LParen) {
            a.subject = Atom::Subject::IncidentFlows;
            bump();
            while (tok_.kind != Tok::RParen) {
                std::string sel = take_ident("a flow selector");
                if (sel == "outgoing") a.direction = Atom::FlowDirection::Outgoing;
                else if (sel == "incoming") a.direction = Atom::FlowDirection::Incoming;
                else if (sel == "carries_assets") a.carrying_assets_only = true;
                else if (sel == "all") { /* default */ }
                else fail("unknown flow selector '" + sel + "'");
                if (tok_.kind == Tok::Comma) bump();
            }
            bump();
            eat(Tok::Dot, "'.'");
            a.key = take_ident("an annotation key");
        } else {
            a.subject = Atom::Subject::Self;
            a.key = head;
        }
        eat(Tok::Eq, "'='");
        a.expect = parse_expected();
        return p;
    }

    std::optional<TargetCategory> category_from(const std::string& s) {
        if (s == "entity") return TargetCategory::Entity;
        if (s == "process") return TargetCategory::Process;
        if (s == "store") return TargetCategory::Store;
        if (s == "flow") return TargetCategory::Flow;
        if (s == "session") return TargetCategory::Session;
        return std::nullopt;
    }

    QuestionSpec parse_question() {
        QuestionSpec q;
        expect_ident("question");
        if (tok_.kind != Tok::Number) fail("expected a question id");
        q.id = tok_.text;
        bump();
        while (tok_.kind == Tok::Ident && tok_.text != "when") {
            if (tok_.text == "any") {
                bump();
                continue;
            }
            auto cat = category_from(tok_.text);
            if (!cat) break;
            q.applies_to.push_back(*cat);
            bump();
        }
        if (at_ident("when")) {
            bump();
            q.when.push_back(parse_filter());
            while (tok_.kind == Tok::Comma) {
                bump();
                q.when.push_back(parse_filter());
            }
        }
        eat(Tok::LBrace, "'{'");
        bool have_check = false;
        while (tok_.kind != Tok::RBrace) {
            if (at_ident("prompt")) {
                bump();
                q.prompt = take_string("prompt text");
            } else if (at_ident("check")) {
                bump();
                q.predicate = parse_predicate();
                have_check = true;
            } else if (at_ident("from")) {
                bump();
                expect(Tok::Number, "a question id");
                q.from = tok_.text;
                bump();
            } else {
                fail("expected 'prompt', 'check' or 'from'");
            }
        }
        bump();
        if (q.prompt.empty()) fail("question " + q.id + " has no prompt");
        if (!have_check) fail("question " + q.id + " has no check");
        return q;
    }

    FlawDefinition parse_flaw(CatalogVersion version) {
        FlawDefinition f;
        f.version = version;
        expect_ident("flaw");
        f.id = take_int("a flaw id");
        f.name = take_string("a flaw name");
        eat(Tok::LBrace, "'{'");
        bool have_scope = false;
        while (tok_.kind != Tok::RBrace) {
            if (at_ident("description")) {
                bump();
                f.description = take_string("description text");
            } else if (at_ident("cwe")) {
                bump();
                while (tok_.kind == Tok::Number) f.cwe_refs.push_back(take_int("a CWE id"));
            } else if (at_ident("scope")) {
                bump();
                f.scope = parse_scope();
                have_scope = true;
            } else if (at_ident("question")) {
                f.questions.push_back(parse_question());
            } else {
                fail("expected 'description', 'cwe', 'scope' or 'question'");
            }
        }
        bump();
        if (!have_scope) fail("flaw " + std::to_string(f.id) + " has no scope");
        if (f.questions.empty()) fail("flaw " + std::to_string(f.id) + " has no questions");
        return f;
    }

    void parse_mapping(Catalog& cat) {
        expect_ident("mapping");
        eat(Tok::LBrace, "'{'");
        while (tok_.kind != Tok::RBrace) {
            int old_id = take_int("an old flaw id");
            eat(Tok::Arrow, "'->'");
            std::optional<int> new_id;
            if (at_ident("removed")) bump();
            else new_id = take_int("a new flaw id or 'removed'");
            if (!cat.mapping.emplace(old_id, new_id).second)
                fail("duplicate mapping entry for " + std::to_string(old_id));
        }
        bump();
    }

    Lexer lexer_;
    std::string file_;
    Tok tok_;
};

// Target categories a scope term can yield.
inline std::vector<TargetCategory> yields(const ScopeTerm& t) {
    switch (t.base) {
        case ScopeBase::ExternalEntities: return {TargetCategory::Entity};
        case ScopeBase::Processes: return {TargetCategory::Process};
        case ScopeBase::DataStores: return {TargetCategory::Store};
        case ScopeBase::Flows:
        case ScopeBase::AssetPaths: return {TargetCategory::Flow};
        default: return {TargetCategory::Session};
    }
}

inline bool filter_valid_for(const ScopeFilter& f, TargetCategory c) {
    bool is_element = c == TargetCategory::Entity || c == TargetCategory::Process ||
                      c == TargetCategory::Store;
    switch (f.kind) {
        case ScopeFilter::Kind::CrossingBoundary: return is_element || c == TargetCategory::Flow;
        case ScopeFilter::Kind::InteractsWithAssets: return is_element;
        case ScopeFilter::Kind::CarriesSensitivity:
        case ScopeFilter::Kind::TargetsStore: return c == TargetCategory::Flow;
    }
    return false;
}

inline bool atom_valid_for(const Atom& a, TargetCategory c) {
    auto kind = annotation_kind(a.key);
    if (!kind) return false;
    bool is_element = c == TargetCategory::Entity || c == TargetCategory::Process ||
                      c == TargetCategory::Store;
    switch (a.subject) {
        case Atom::Subject::Self:
            if (is_element) return *kind == AnnotationKind::Element;
            if (c == TargetCategory::Flow) return *kind == AnnotationKind::Flow;
            return *kind == AnnotationKind::Session;
        case Atom::Subject::TargetElement:
            return c == TargetCategory::Flow && *kind == AnnotationKind::Element;
        case Atom::Subject::IncidentFlows:
            return is_element && *kind == AnnotationKind::Flow;
    }
    return false;
}

inline bool predicate_valid_for(const Predicate& p, TargetCategory c) {
    if (p.op == Predicate::Op::Leaf) return atom_valid_for(p.atom, c);
    for (const auto& child : p.children)
        if (!predicate_valid_for(child, c)) return false;
    return true;
}

inline void check_catalog(const Catalog& cat, const std::string& file) {
    auto fail = [&](const std::string& msg) { throw CatalogError(file + ": " + msg); };

    int expected = cat.version == CatalogVersion::V1 ? 19 : 9;
    if (static_cast<int>(cat.flaws.size()) != expected)
        fail("expected " + std::to_string(expected) + " flaw definitions, found " +
             std::to_string(cat.flaws.size()));
    std::set<int> ids;
    for (const auto& f : cat.flaws) ids.insert(f.id);
    for (int i = 1; i <= expected; ++i)
        if (!ids.count(i)) fail("missing flaw id " + std::to_string(i));
    if (static_cast<int>(ids.size()) != expected) fail("duplicate flaw ids");

    for (const auto& f : cat.flaws) {
        std::string where = "flaw " + std::to_string(f.id);
        if (f.name.empty()) fail(where + " has an empty name");
        // Effective target categories per question, with filter/atom typing.
        std::vector<TargetCategory> scope_yields;
        for (const auto& term : f.scope.terms) {
            for (TargetCategory c : yields(term)) {
                scope_yields.push_back(c);
                for (const auto& flt : term.filters)
                    if (!filter_valid_for(flt, c))
                        fail(where + ": filter " + to_string(flt) + " cannot apply to " +
                             to_string(c) + " targets");
            }
        }
        std::set<std::string> qids;
        for (const auto& q : f.questions) {
            std::string qwhere = where + " question " + q.id;
            if (!qids.insert(q.id).second) fail(qwhere + " has a duplicate id");
            bool applies_somewhere = false;
            for (TargetCategory c : scope_yields) {
                if (!q.applies_to.empty() &&
                    std::find(q.applies_to.begin(), q.applies_to.end(), c) == q.applies_to.end())
                    continue;
                applies_somewhere = true;
                if (!predicate_valid_for(q.predicate, c))
                    fail(qwhere + " uses an annotation key invalid for " + to_string(c) +
                         " targets");
                for (const auto& g : q.when)
                    if (!filter_valid_for(g, c))
                        fail(qwhere + " guard " + to_string(g) + " cannot apply to " +
                             to_string(c) + " targets");
            }
            if (!applies_somewhere) fail(qwhere + " can never apply to any scoped target");
        }
    }

    if (cat.version == CatalogVersion::V2) {
        if (cat.mapping.size() != 19) fail("mapping must cover old ids 1..19");
        int removed = 0;
        for (int i = 1; i <= 19; ++i) {
            auto it = cat.mapping.find(i);
            if (it == cat.mapping.end()) fail("mapping misses old id " + std::to_string(i));
            if (!it->second) {
                ++removed;
            } else if (*it->second < 1 || *it->second > 9 || !cat.find(*it->second)) {
                fail("mapping target out of range for old id " + std::to_string(i));
            }
        }
        if (removed != 1) fail("exactly one old flaw must map to removed");
    } else {
        if (!cat.mapping.empty()) fail("v1 catalog must not define a mapping");
        if (!cat.dropped_questions.empty()) fail("v1 catalog must not drop questions");
    }
}

} // namespace catdetail

/// Directory holding `v1/flaws.cat` and `v2/flaws.cat`. The environment
/// variable ARCHFLAW_CATALOG_DIR wins; otherwise the build-time default.
inline std::filesystem::path default_catalog_dir() {
    if (const char* env = std::getenv("ARCHFLAW_CATALOG_DIR"); env && *env)
        return env;
#ifdef ARCHFLAW_CATALOG_ROOT
    return ARCHFLAW_CATALOG_ROOT;
#else
    return "catalog";
#endif
}

inline Catalog parse_catalog_text(std::string_view text, const std::string& file) {
    Catalog cat = catdetail::Parser(text, file).run();
    std::sort(cat.flaws.begin(), cat.flaws.end(),
              [](const FlawDefinition& a, const FlawDefinition& b) { return a.id < b.id; });
    catdetail::check_catalog(cat, file);
    return cat;
}

/// Loads and fully checks one catalog version. Throws CatalogError on any
/// schema violation.
inline Catalog load_catalog(CatalogVersion version,
                            const std::filesystem::path& dir = default_catalog_dir()) {
    std::filesystem::path path = dir / to_string(version) / "flaws.cat";
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot read catalog file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_catalog_text(ss.str(), path.string());
}

/// Old id (1..19) to the consolidated catalog: new id, or nullopt when the
/// flaw was removed from the reorganized catalog.
inline std::optional<int> map_flaw_id(const Catalog& v2, int old_id) {
    if (old_id < 1 || old_id > 19)
        throw std::out_of_range("flaw id " + std::to_string(old_id) + " not in 1..19");
    if (v2.mapping.empty()) throw CatalogError("catalog carries no id mapping");
    return v2.mapping.at(old_id);
}

inline const FlawDefinition& require_flaw(const Catalog& cat, int flaw_id) {
    const FlawDefinition* f = cat.find(flaw_id);
    if (!f)
        throw UnknownFlawError("no flaw " + std::to_string(flaw_id) + " in catalog " +
                               to_string(cat.version));
    return *f;
}

inline std::vector<int> cwe_refs(const Catalog& cat, int flaw_id) {
    return require_flaw(cat, flaw_id).cwe_refs;
}

inline int question_count(const Catalog& cat, int flaw_id) {
    return static_cast<int>(require_flaw(cat, flaw_id).questions.size());
}

/// Cross-version integrity: every v1 question either carries over to exactly
/// one v2 question, belongs to the removed flaw, or is explicitly dropped.
inline void verify_catalog_pair(const Catalog& v1, const Catalog& v2) {
    auto fail = [](const std::string& msg) { throw CatalogError("catalog pair: " + msg); };
    if (v1.version != CatalogVersion::V1 || v2.version != CatalogVersion::V2)
        fail("expects a (v1, v2) pair");

    std::map<std::string, int> carried; // v1 qid -> v2 flaw id
    for (const auto& f : v2.flaws) {
        for (const auto& q : f.questions) {
            if (q.from.empty()) fail("v2 question " + q.id + " lacks a source question");
            if (!carried.emplace(q.from, f.id).second)
                fail("v1 question " + q.from + " carried over twice");
        }
    }
    for (const auto& f : v1.flaws) {
        auto mapped = v2.mapping.at(f.id);
        for (const auto& q : f.questions) {
            auto it = carried.find(q.id);
            if (!mapped) {
                if (it != carried.end())
                    fail("question " + q.id + " of the removed flaw is carried over");
                continue;
            }
            if (v2.dropped_questions.count(q.id)) {
                if (it != carried.end()) fail("dropped question " + q.id + " is carried over");
                continue;
            }
            if (it == carried.end()) fail("v1 question " + q.id + " is not carried over");
            if (it->second != *mapped)
                fail("v1 question " + q.id + " landed in v2 flaw " +
                     std::to_string(it->second) + " but flaw " + std::to_string(f.id) +
                     " maps to " + std::to_string(*mapped));
        }
    }
    for (const auto& [qid, flaw] : carried) {
        bool exists = false;
        for (const auto& f : v1.flaws)
            for (const auto& q : f.questions)
                if (q.id == qid) exists = true;
        if (!exists) fail("v2 references unknown v1 question " + qid);
    }
}

} // namespace archflaw
