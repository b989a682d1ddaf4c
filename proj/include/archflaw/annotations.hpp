#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace archflaw {

/// Three-valued answer domain for model annotations and question evaluation.
/// An absent annotation reads as Unknown; storing Unknown explicitly is
/// equivalent to not storing the key at all.
enum class TriState { Yes, No, Unknown };

inline constexpr std::string_view to_string(TriState v) {
    switch (v) {
        case TriState::Yes: return "yes";
        case TriState::No: return "no";
        default: return "unknown";
    }
}

inline std::optional<TriState> tristate_from_string(std::string_view s) {
    if (s == "yes" || s == "true") return TriState::Yes;
    if (s == "no" || s == "false") return TriState::No;
    if (s == "unknown") return TriState::Unknown;
    return std::nullopt;
}

/// Kleene strong conjunction: No dominates, then Unknown.
inline TriState tri_and(TriState a, TriState b) {
    if (a == TriState::No || b == TriState::No) return TriState::No;
    if (a == TriState::Unknown || b == TriState::Unknown) return TriState::Unknown;
    return TriState::Yes;
}

/// Kleene strong disjunction: Yes dominates, then Unknown.
inline TriState tri_or(TriState a, TriState b) {
    if (a == TriState::Yes || b == TriState::Yes) return TriState::Yes;
    if (a == TriState::Unknown || b == TriState::Unknown) return TriState::Unknown;
    return TriState::No;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an annotation key is queried on an object of the wrong kind,
/// e.g. a session key asked of a flow.
struct KeyKindMismatchError : Error {
    using Error::Error;
};

struct CatalogError : Error {
    using Error::Error;
};

struct UnknownFlawError : Error {
    using Error::Error;
};

struct VersionMismatchError : Error {
    using Error::Error;
};

/// Which model object category an annotation key attaches to.
enum class AnnotationKind { Element, Flow, Session };

namespace detail {

struct RegistryEntry {
    std::string_view key;
    AnnotationKind kind;
};

// Closed vocabulary. Unknown keys are validation errors, never silent
// "insufficient information".
inline constexpr std::array<RegistryEntry, 33> kAnnotationRegistry{{
    // element-level
    {"is_authentication_point", AnnotationKind::Element},
    {"verifies_peer_identity", AnnotationKind::Element},
    {"performs_authorization", AnnotationKind::Element},
    {"authorization_contextual", AnnotationKind::Element},
    {"authorization_revocable", AnnotationKind::Element},
    {"supports_multi_factor", AnnotationKind::Element},
    {"allows_auth_downgrade", AnnotationKind::Element},
    {"requires_reauthentication", AnnotationKind::Element},
    {"logs_critical_access", AnnotationKind::Element},
    {"resource_limited", AnnotationKind::Element},
    {"monitors_external_interaction", AnnotationKind::Element},
    {"encrypted_at_rest", AnnotationKind::Element},
    {"access_controlled", AnnotationKind::Element},
    {"credential_storage_secure", AnnotationKind::Element},
    {"key_lifecycle_managed", AnnotationKind::Element},
    {"uses_standard_crypto", AnnotationKind::Element},
    // flow-level
    {"channel_encrypted", AnnotationKind::Flow},
    {"endpoint_authenticated", AnnotationKind::Flow},
    {"replay_protected", AnnotationKind::Flow},
    {"integrity_protected", AnnotationKind::Flow},
    // session-level
    {"secure_channel", AnnotationKind::Session},
    {"id_encrypted_in_transit", AnnotationKind::Session},
    {"id_hard_to_guess", AnnotationKind::Session},
    {"id_not_in_url", AnnotationKind::Session},
    {"server_side_validation", AnnotationKind::Session},
    {"secure_cookies", AnnotationKind::Session},
    {"id_bound_to_client", AnnotationKind::Session},
    {"single_endpoint_enforced", AnnotationKind::Session},
    {"timeout_set", AnnotationKind::Session},
    {"invalidated_on_logout", AnnotationKind::Session},
    {"renewed_on_privilege_change", AnnotationKind::Session},
    {"lifecycle_monitored", AnnotationKind::Session},
    {"reauth_after_inactivity", AnnotationKind::Session},
}};

} // namespace detail

/// Looks up the registered kind of an annotation key, or nullopt if the key
/// is not part of the vocabulary.
inline std::optional<AnnotationKind> annotation_kind(std::string_view key) {
    for (const auto& e : detail::kAnnotationRegistry)
        if (e.key == key) return e.kind;
    return std::nullopt;
}

inline bool annotation_registered(std::string_view key, AnnotationKind kind) {
    auto k = annotation_kind(key);
    return k.has_value() && *k == kind;
}

} // namespace archflaw
