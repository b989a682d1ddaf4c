#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace archflaw {

/// 1-based position of a token inside a source file.
struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;
    int length = 0;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class DiagCode {
    UnexpectedToken,
    UnterminatedString,
    UnknownKeyword,
    DanglingReference,
    DuplicateId,
    UnknownAnnotationKey,
    InvalidEnumValue,
    SelfLoopNotAllowed,
    MissingModelHeader,
    IoError,
};

struct Diagnostic {
    DiagCode code = DiagCode::UnexpectedToken;
    std::string message;
    SourceSpan span;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// One line per error, `file:line:col: error: message`, ordered by span.
/// Ordering is stable so equal spans keep their original relative order.
inline std::string render_diagnostics(std::vector<Diagnostic> diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.span.file != b.span.file) return a.span.file < b.span.file;
        if (a.span.line != b.span.line) return a.span.line < b.span.line;
        return a.span.column < b.span.column;
    });
    std::string out;
    for (const auto& d : diags) {
        out += d.span.file;
        out += ':';
        out += std::to_string(d.span.line);
        out += ':';
        out += std::to_string(d.span.column);
        out += ": error: ";
        out += d.message;
        out += '\n';
    }
    return out;
}

} // namespace archflaw
