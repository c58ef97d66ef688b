#pragma once

#include <exception>
#include <string>
#include <string_view>
#include <utility>

namespace kcharge::dsl {

/// 1-based source position.
struct Pos {
    int line = 1;
    int column = 1;
};

struct Diagnostic {
    std::string severity = "error";
    std::string message;
    int line = 1;
    int column = 1;
    std::string snippet; // the offending source line
};

/// Carries the single primary Diagnostic of a failed parse or evaluation.
class DiagnosticError : public std::exception {
public:
    explicit DiagnosticError(Diagnostic d) : diag_(std::move(d)) {}

    const Diagnostic& diagnostic() const { return diag_; }
    const char* what() const noexcept override { return diag_.message.c_str(); }

private:
    Diagnostic diag_;
};

/// Text of line `line` (1-based) of `source`, without the newline.
inline std::string source_line(std::string_view source, int line)
{
    std::size_t start = 0;
    for (int l = 1; l < line; ++l) {
        const std::size_t nl = source.find('\n', start);
        if (nl == std::string_view::npos) {
            return {};
        }
        start = nl + 1;
    }
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) {
        end = source.size();
    }
    std::string s(source.substr(start, end - start));
    if (!s.empty() && s.back() == '\r') {
        s.pop_back();
    }
    return s;
}

inline DiagnosticError make_error(std::string_view source, Pos pos, std::string message)
{
    return DiagnosticError(Diagnostic{"error", std::move(message), pos.line, pos.column, source_line(source, pos.line)});
}

/// `file:line:col: error: message`, then the source line and a caret.
inline std::string format_diagnostic(const Diagnostic& d, std::string_view file)
{
    std::string s = std::string(file) + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
                    d.severity + ": " + d.message + "\n";
    s += "  " + d.snippet + "\n";
    s += "  " + std::string(static_cast<std::size_t>(d.column > 0 ? d.column - 1 : 0), ' ') + "^\n";
    return s;
}

} // namespace kcharge::dsl
