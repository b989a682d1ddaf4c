#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "archflaw/annotations.hpp"
#include "archflaw/decl.hpp"

namespace archflaw {

enum class ElementKind { ExternalEntity, Process, DataStore };

inline const char* to_string(ElementKind k) {
    switch (k) {
        case ElementKind::ExternalEntity: return "entity";
        case ElementKind::Process: return "process";
        default: return "store";
    }
}

enum class Sensitivity { High, Medium, Low };

inline const char* to_string(Sensitivity s) {
    switch (s) {
        case Sensitivity::High: return "high";
        case Sensitivity::Medium: return "medium";
        default: return "low";
    }
}

inline std::optional<Sensitivity> sensitivity_from_string(std::string_view s) {
    if (s == "high") return Sensitivity::High;
    if (s == "medium") return Sensitivity::Medium;
    if (s == "low") return Sensitivity::Low;
    return std::nullopt;
}

/// True when `a` is at least as sensitive as `b`.
inline bool at_least(Sensitivity a, Sensitivity b) {
    return static_cast<int>(a) <= static_cast<int>(b);
}

enum class AssetCategory { Credential, CryptoKey, SessionToken, PersonalData, Measurement, Other };

inline const char* to_string(AssetCategory c) {
    switch (c) {
        case AssetCategory::Credential: return "credential";
        case AssetCategory::CryptoKey: return "crypto_key";
        case AssetCategory::SessionToken: return "session_token";
        case AssetCategory::PersonalData: return "personal_data";
        case AssetCategory::Measurement: return "measurement";
        default: return "other";
    }
}

inline std::optional<AssetCategory> asset_category_from_string(std::string_view s) {
    if (s == "credential") return AssetCategory::Credential;
    if (s == "crypto_key") return AssetCategory::CryptoKey;
    if (s == "session_token") return AssetCategory::SessionToken;
    if (s == "personal_data") return AssetCategory::PersonalData;
    if (s == "measurement") return AssetCategory::Measurement;
    if (s == "other") return AssetCategory::Other;
    return std::nullopt;
}

/// Stored annotations. std::map keeps rendering deterministic.
using AnnotationMap = std::map<std::string, TriState>;

struct Element {
    std::string id;
    ElementKind kind = ElementKind::Process;
    std::optional<std::string> boundary;
    AnnotationMap annotations;

    friend bool operator==(const Element&, const Element&) = default;
};

struct Flow {
    std::string id;
    std::string source;
    std::string target;
    std::vector<std::string> carries;
    AnnotationMap annotations;

    friend bool operator==(const Flow&, const Flow&) = default;
};

struct TrustBoundary {
    std::string id;
    std::string description;

    friend bool operator==(const TrustBoundary&, const TrustBoundary&) = default;
};

struct Asset {
    std::string id;
    Sensitivity sensitivity = Sensitivity::Low;
    AssetCategory category = AssetCategory::Other;

    friend bool operator==(const Asset&, const Asset&) = default;
};

struct Session {
    std::string id;
    std::string endpoint_a;
    std::string endpoint_b;
    AnnotationMap annotations;

    friend bool operator==(const Session&, const Session&) = default;
};

/// The annotated DFD graph. Immutable after validation; safe for concurrent
/// reads. Collections keep declaration order.
struct ArchModel {
    std::string name;
    std::vector<Element> elements;
    std::vector<Flow> flows;
    std::vector<TrustBoundary> boundaries;
    std::vector<Asset> assets;
    std::vector<Session> sessions;

    const Element* find_element(std::string_view id) const {
        for (const auto& e : elements)
            if (e.id == id) return &e;
        return nullptr;
    }
    const Flow* find_flow(std::string_view id) const {
        for (const auto& f : flows)
            if (f.id == id) return &f;
        return nullptr;
    }
    const Asset* find_asset(std::string_view id) const {
        for (const auto& a : assets)
            if (a.id == id) return &a;
        return nullptr;
    }
    const Session* find_session(std::string_view id) const {
        for (const auto& s : sessions)
            if (s.id == id) return &s;
        return nullptr;
    }

    /// Flows incident to an element, in declaration order.
    std::vector<const Flow*> flows_of(std::string_view element_id) const {
        std::vector<const Flow*> out;
        for (const auto& f : flows)
            if (f.source == element_id || f.target == element_id) out.push_back(&f);
        return out;
    }

    friend bool operator==(const ArchModel&, const ArchModel&) = default;
};

// ---------------------------------------------------------------------------
// Annotation lookup

inline TriState lookup_stored(const AnnotationMap& m, std::string_view key) {
    auto it = m.find(std::string(key));
    return it == m.end() ? TriState::Unknown : it->second;
}

inline TriState annotation_lookup(const Element& e, std::string_view key) {
    if (!annotation_registered(key, AnnotationKind::Element))
        throw KeyKindMismatchError("annotation '" + std::string(key) + "' is not an element key");
    return lookup_stored(e.annotations, key);
}

inline TriState annotation_lookup(const Flow& f, std::string_view key) {
    if (!annotation_registered(key, AnnotationKind::Flow))
        throw KeyKindMismatchError("annotation '" + std::string(key) + "' is not a flow key");
    return lookup_stored(f.annotations, key);
}

inline TriState annotation_lookup(const Session& s, std::string_view key) {
    if (!annotation_registered(key, AnnotationKind::Session))
        throw KeyKindMismatchError("annotation '" + std::string(key) + "' is not a session key");
    return lookup_stored(s.annotations, key);
}

// ---------------------------------------------------------------------------
// Graph queries

/// Elements without a boundary share one implicit zone, so a flow between two
/// boundary-less elements is not a crossing.
inline bool crosses_boundary(const ArchModel& model, const Flow& flow) {
    const Element* s = model.find_element(flow.source);
    const Element* t = model.find_element(flow.target);
    auto zone = [](const Element* e) { return e && e->boundary ? *e->boundary : std::string(); };
    return zone(s) != zone(t);
}

/// True when the element has at least one boundary-crossing incident flow.
inline bool touches_crossing_flow(const ArchModel& model, const Element& e) {
    for (const Flow* f : model.flows_of(e.id))
        if (crosses_boundary(model, *f)) return true;
    return false;
}

/// True when the element is source or target of a flow carrying an asset of
/// at least the given sensitivity.
inline bool interacts_with_assets(const ArchModel& model, const Element& e, Sensitivity level) {
    for (const Flow* f : model.flows_of(e.id))
        for (const auto& aid : f->carries)
            if (const Asset* a = model.find_asset(aid); a && at_least(a->sensitivity, level))
                return true;
    return false;
}

/// True when the flow carries an asset of at least the given sensitivity.
inline bool carries_sensitivity(const ArchModel& model, const Flow& f, Sensitivity level) {
    for (const auto& aid : f.carries)
        if (const Asset* a = model.find_asset(aid); a && at_least(a->sensitivity, level))
            return true;
    return false;
}

namespace detail {

inline void extend_asset_path(const std::vector<const Flow*>& carrying,
                              std::vector<const Flow*>& path,
                              std::set<std::vector<std::string>>& out) {
    const Flow* last = path.back();
    bool extended = false;
    for (const Flow* g : carrying) {
        if (g->source != last->target) continue;
        if (std::find(path.begin(), path.end(), g) != path.end()) continue;
        path.push_back(g);
        extend_asset_path(carrying, path, out);
        path.pop_back();
        extended = true;
    }
    if (extended) return;
    // Forward-maximal. Keep it only if it cannot be prepended either,
    // otherwise the same path is found from an earlier start flow.
    for (const Flow* g : carrying) {
        if (g->target == path.front()->source &&
            std::find(path.begin(), path.end(), g) == path.end())
            return;
    }
    std::vector<std::string> ids;
    ids.reserve(path.size());
    for (const Flow* f : path) ids.push_back(f->id);
    out.insert(std::move(ids));
}

} // namespace detail

/// Every maximal simple path (no repeated flow) whose flows all carry the
/// asset, as flow-id sequences sorted lexicographically. An asset carried by
/// no flow yields an empty list.
inline std::vector<std::vector<std::string>> asset_paths(const ArchModel& model,
                                                         std::string_view asset_id) {
    std::vector<const Flow*> carrying;
    for (const auto& f : model.flows)
        if (std::find(f.carries.begin(), f.carries.end(), asset_id) != f.carries.end())
            carrying.push_back(&f);

    std::set<std::vector<std::string>> paths;
    for (const Flow* f : carrying) {
        std::vector<const Flow*> path{f};
        detail::extend_asset_path(carrying, path, paths);
    }
    return {paths.begin(), paths.end()};
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationConfig {
    bool allow_self_loops = false;
};

/// Either a model satisfying every invariant or the complete list of
/// violations; never a partial model.
struct ValidationResult {
    std::optional<ArchModel> model;
    std::vector<Diagnostic> errors;

    bool ok() const { return model.has_value(); }
};

namespace detail {

inline bool is_element_decl(DeclKind k) {
    return k == DeclKind::Entity || k == DeclKind::Process || k == DeclKind::Store;
}

inline ElementKind element_kind_of(DeclKind k) {
    switch (k) {
        case DeclKind::Entity: return ElementKind::ExternalEntity;
        case DeclKind::Process: return ElementKind::Process;
        default: return ElementKind::DataStore;
    }
}

inline AnnotationKind annotation_kind_of(DeclKind k) {
    if (is_element_decl(k)) return AnnotationKind::Element;
    return k == DeclKind::Flow ? AnnotationKind::Flow : AnnotationKind::Session;
}

} // namespace detail

inline ValidationResult validate_model(const std::vector<Declaration>& decls,
                                       const ValidationConfig& config = {}) {
    ValidationResult result;
    auto& errors = result.errors;
    auto error = [&](DiagCode code, std::string msg, const SourceSpan& span) {
        errors.push_back({code, std::move(msg), span});
    };

    const Declaration* header = nullptr;
    for (const auto& d : decls) {
        if (d.kind != DeclKind::ModelHeader) continue;
        if (header)
            error(DiagCode::DuplicateId, "duplicate model header", d.span);
        else
            header = &d;
    }
    if (!header) {
        SourceSpan at;
        if (!decls.empty()) at = decls.front().span;
        error(DiagCode::MissingModelHeader, "missing model header", at);
    }

    // Ids share one namespace across categories so finding locations and
    // ground-truth references are unambiguous.
    std::map<std::string, const Declaration*> by_id;
    for (const auto& d : decls) {
        if (d.kind == DeclKind::ModelHeader) continue;
        auto [it, inserted] = by_id.emplace(d.name, &d);
        if (!inserted)
            error(DiagCode::DuplicateId,
                  "duplicate id '" + d.name + "' (first declared as " +
                      to_string(it->second->kind) + ")",
                  d.span);
    }

    auto declared_as = [&](const std::string& name, auto pred) -> bool {
        auto it = by_id.find(name);
        return it != by_id.end() && pred(it->second->kind);
    };
    auto check_element_ref = [&](const Declaration& d, const Ref& ref, const char* role) {
        if (!declared_as(ref.name, detail::is_element_decl))
            error(DiagCode::DanglingReference,
                  std::string(to_string(d.kind)) + " '" + d.name + "' " + role +
                      " undeclared element '" + ref.name + "'",
                  ref.span);
    };

    for (const auto& d : decls) {
        switch (d.kind) {
            case DeclKind::Entity:
            case DeclKind::Process:
            case DeclKind::Store:
                if (d.boundary && !declared_as(d.boundary->name,
                                               [](DeclKind k) { return k == DeclKind::Boundary; }))
                    error(DiagCode::DanglingReference,
                          std::string(to_string(d.kind)) + " '" + d.name +
                              "' references undeclared boundary '" + d.boundary->name + "'",
                          d.boundary->span);
                break;
            case DeclKind::Flow: {
                if (d.source) check_element_ref(d, *d.source, "sources from");
                if (d.target) check_element_ref(d, *d.target, "targets");
                for (const auto& c : d.carries)
                    if (!declared_as(c.name, [](DeclKind k) { return k == DeclKind::Asset; }))
                        error(DiagCode::DanglingReference,
                              "flow '" + d.name + "' carries undeclared asset '" + c.name + "'",
                              c.span);
                if (d.source && d.target && d.source->name == d.target->name &&
                    !config.allow_self_loops)
                    error(DiagCode::SelfLoopNotAllowed,
                          "flow '" + d.name + "' is a self-loop on '" + d.source->name + "'",
                          d.span);
                break;
            }
            case DeclKind::Session:
                if (d.endpoint_a) check_element_ref(d, *d.endpoint_a, "connects");
                if (d.endpoint_b) check_element_ref(d, *d.endpoint_b, "connects");
                break;
            default:
                break;
        }

        // Attribute checks per declaration kind.
        if (d.kind == DeclKind::Asset) {
            bool have_sensitivity = false;
            for (const auto& [key, attr] : d.attributes) {
                if (key == "sensitivity") {
                    have_sensitivity = true;
                    if (attr.value.kind != Literal::Kind::Ident ||
                        !sensitivity_from_string(attr.value.text))
                        error(DiagCode::InvalidEnumValue,
                              "asset '" + d.name + "' sensitivity must be high, medium or low",
                              attr.value_span);
                } else if (key == "category") {
                    if (attr.value.kind != Literal::Kind::Ident ||
                        !asset_category_from_string(attr.value.text))
                        error(DiagCode::InvalidEnumValue,
                              "asset '" + d.name + "' has invalid category '" + attr.value.text +
                                  "'",
                              attr.value_span);
                } else {
                    error(DiagCode::UnknownAnnotationKey,
                          "unknown asset attribute '" + key + "'", attr.key_span);
                }
            }
            if (!have_sensitivity)
                error(DiagCode::InvalidEnumValue,
                      "asset '" + d.name + "' is missing required attribute 'sensitivity'",
                      d.span);
        } else if (d.kind == DeclKind::Boundary) {
            for (const auto& [key, attr] : d.attributes) {
                if (key != "description")
                    error(DiagCode::UnknownAnnotationKey,
                          "unknown boundary attribute '" + key + "'", attr.key_span);
                else if (attr.value.kind != Literal::Kind::String)
                    error(DiagCode::InvalidEnumValue,
                          "boundary description must be a quoted string", attr.value_span);
            }
        } else if (d.kind != DeclKind::ModelHeader) {
            AnnotationKind want = detail::annotation_kind_of(d.kind);
            for (const auto& [key, attr] : d.attributes) {
                if (!annotation_kind(key)) {
                    error(DiagCode::UnknownAnnotationKey,
                          "unknown annotation key '" + key + "'", attr.key_span);
                    continue;
                }
                if (*annotation_kind(key) != want) {
                    error(DiagCode::UnknownAnnotationKey,
                          "annotation '" + key + "' does not apply to a " +
                              std::string(to_string(d.kind)),
                          attr.key_span);
                    continue;
                }
                if (attr.value.kind != Literal::Kind::Bool &&
                    attr.value.kind != Literal::Kind::Unknown)
                    error(DiagCode::InvalidEnumValue,
                          "annotation '" + key + "' must be true, false or unknown",
                          attr.value_span);
            }
        }
    }

    if (!errors.empty()) return result;

    ArchModel model;
    model.name = header->name;
    auto to_annotations = [](const Declaration& d) {
        AnnotationMap m;
        for (const auto& [key, attr] : d.attributes) {
            if (attr.value.kind == Literal::Kind::Bool)
                m[key] = attr.value.bool_value ? TriState::Yes : TriState::No;
            else
                m[key] = TriState::Unknown;
        }
        return m;
    };

    for (const auto& d : decls) {
        switch (d.kind) {
            case DeclKind::Entity:
            case DeclKind::Process:
            case DeclKind::Store: {
                Element e;
                e.id = d.name;
                e.kind = detail::element_kind_of(d.kind);
                if (d.boundary) e.boundary = d.boundary->name;
                e.annotations = to_annotations(d);
                model.elements.push_back(std::move(e));
                break;
            }
            case DeclKind::Boundary: {
                TrustBoundary b;
                b.id = d.name;
                if (auto it = d.attributes.find("description"); it != d.attributes.end())
                    b.description = it->second.value.text;
                model.boundaries.push_back(std::move(b));
                break;
            }
            case DeclKind::Asset: {
                Asset a;
                a.id = d.name;
                a.sensitivity = *sensitivity_from_string(d.attributes.at("sensitivity").value.text);
                if (auto it = d.attributes.find("category"); it != d.attributes.end())
                    a.category = *asset_category_from_string(it->second.value.text);
                model.assets.push_back(std::move(a));
                break;
            }
            case DeclKind::Flow: {
                Flow f;
                f.id = d.name;
                f.source = d.source ? d.source->name : "";
                f.target = d.target ? d.target->name : "";
                for (const auto& c : d.carries) f.carries.push_back(c.name);
                f.annotations = to_annotations(d);
                model.flows.push_back(std::move(f));
                break;
            }
            case DeclKind::Session: {
                Session s;
                s.id = d.name;
                s.endpoint_a = d.endpoint_a ? d.endpoint_a->name : "";
                s.endpoint_b = d.endpoint_b ? d.endpoint_b->name : "";
                s.annotations = to_annotations(d);
                model.sessions.push_back(std::move(s));
                break;
            }
            case DeclKind::ModelHeader:
                break;
        }
    }

    result.model = std::move(model);
    return result;
}

/// Serializes a validated model back to declarations. validate_model of the
/// result reproduces an equal model.
inline std::vector<Declaration> model_to_decls(const ArchModel& model) {
    std::vector<Declaration> decls;
    auto lit_bool = [](TriState v) {
        Literal l;
        if (v == TriState::Unknown) {
            l.kind = Literal::Kind::Unknown;
            l.text = "unknown";
        } else {
            l.kind = Literal::Kind::Bool;
            l.bool_value = v == TriState::Yes;
            l.text = v == TriState::Yes ? "true" : "false";
        }
        return l;
    };
    auto put_annotations = [&](Declaration& d, const AnnotationMap& m) {
        for (const auto& [k, v] : m) d.attributes[k] = Attribute{lit_bool(v), {}, {}};
    };

    Declaration header;
    header.kind = DeclKind::ModelHeader;
    header.name = model.name;
    decls.push_back(std::move(header));

    for (const auto& b : model.boundaries) {
        Declaration d;
        d.kind = DeclKind::Boundary;
        d.name = b.id;
        if (!b.description.empty())
            d.attributes["description"] =
                Attribute{Literal{Literal::Kind::String, false, b.description}, {}, {}};
        decls.push_back(std::move(d));
    }
    for (const auto& a : model.assets) {
        Declaration d;
        d.kind = DeclKind::Asset;
        d.name = a.id;
        d.attributes["sensitivity"] =
            Attribute{Literal{Literal::Kind::Ident, false, to_string(a.sensitivity)}, {}, {}};
        d.attributes["category"] =
            Attribute{Literal{Literal::Kind::Ident, false, to_string(a.category)}, {}, {}};
        decls.push_back(std::move(d));
    }
    for (const auto& e : model.elements) {
        Declaration d;
        switch (e.kind) {
            case ElementKind::ExternalEntity: d.kind = DeclKind::Entity; break;
            case ElementKind::Process: d.kind = DeclKind::Process; break;
            case ElementKind::DataStore: d.kind = DeclKind::Store; break;
        }
        d.name = e.id;
        if (e.boundary) d.boundary = Ref{*e.boundary, {}};
        put_annotations(d, e.annotations);
        decls.push_back(std::move(d));
    }
    for (const auto& f : model.flows) {
        Declaration d;
        d.kind = DeclKind::Flow;
        d.name = f.id;
        d.source = Ref{f.source, {}};
        d.target = Ref{f.target, {}};
        for (const auto& c : f.carries) d.carries.push_back(Ref{c, {}});
        put_annotations(d, f.annotations);
        decls.push_back(std::move(d));
    }
    for (const auto& s : model.sessions) {
        Declaration d;
        d.kind = DeclKind::Session;
        d.name = s.id;
        d.endpoint_a = Ref{s.endpoint_a, {}};
        d.endpoint_b = Ref{s.endpoint_b, {}};
        put_annotations(d, s.annotations);
        decls.push_back(std::move(d));
    }
    return decls;
}

} // namespace archflaw
