#pragma once

#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kcharge/dsl/evaluator.hpp"

namespace kcharge::dsl {

inline constexpr const char* kVersion = "kcharge 0.1.0";

enum ExitCode { kExitOk = 0, kExitDiagnostic = 1, kExitUsage = 2 };

/// Command-line front end. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact characteristic-class, K-theory and K-cycle calculator", "kcharge"};
    std::optional<std::string> script_path;
    std::optional<std::string> eval_text;
    std::string format = "human";
    int degree_cap = kDefaultOrder;
    bool version = false;

    auto* script_opt = app.add_option("--script", script_path, "Run a .ks script file");
    auto* eval_opt = app.add_option("--eval", eval_text, "Run script text given inline");
    script_opt->excludes(eval_opt);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--degree-cap", degree_cap, "Truncation order in complex degree")
        ->check(CLI::Range(0, kMaxDegreeCap));
    app.add_flag("--version", version, "Print the version and exit");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (version) {
        out << kVersion << "\n";
        return kExitOk;
    }
    if (!script_path && !eval_text) {
        err << "error: one of --script or --eval is required\n" << app.help();
        return kExitUsage;
    }

    std::string source;
    std::string file = "<eval>";
    if (script_path) {
        std::ifstream in(*script_path, std::ios::binary);
        if (!in) {
            err << "error: cannot open script '" << *script_path << "'\n";
            return kExitUsage;
        }
        source.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        file = *script_path;
    } else {
        source = *eval_text;
    }

    const bool json = format == "json";
    try {
        run_script(source, degree_cap, [&](const Output& o) { out << (json ? to_json(o) : to_human(o)); });
    } catch (const DiagnosticError& d) {
        out.flush();
        err << format_diagnostic(d.diagnostic(), file);
        return kExitDiagnostic;
    }
    return kExitOk;
}

} // namespace kcharge::dsl
