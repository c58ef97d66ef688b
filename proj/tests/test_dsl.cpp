#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "fuzz.hpp"
#include "golden.hpp"
#include "kcharge/dsl/cli.hpp"
#include "kcharge/dsl/lexer.hpp"
#include "kcharge/dsl/parser.hpp"
#include "kcharge/dsl/printer.hpp"

using namespace kcharge::dsl;
namespace kt = kcharge::testing;

namespace {

Diagnostic diagnose(const std::string& src)
{
    try {
        (void)evaluate(src);
    } catch (const DiagnosticError& d) {
        return d.diagnostic();
    }
    ADD_FAILURE() << "no diagnostic for: " << src;
    return {};
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus() { return kt::read_file(std::filesystem::path(KCHARGE_DATA_DIR) / "roundtrip_corpus.ks"); }

} // namespace

TEST(Lexer, CompoundOperators)
{
    const auto toks = tokenize("E (+) F (x) (G) -> == # tail\n;");
    std::vector<Tok> kinds;
    for (const auto& t : toks) {
        kinds.push_back(t.kind);
    }
    const std::vector<Tok> want = {Tok::Ident, Tok::OPlus,  Tok::Ident, Tok::OTimes, Tok::LParen, Tok::Ident,
                                   Tok::RParen, Tok::Arrow, Tok::EqEq,  Tok::Semi,   Tok::End};
    EXPECT_EQ(kinds, want);
    EXPECT_EQ(toks[9].pos.line, 2);
    EXPECT_EQ(toks[9].pos.column, 1);
}

TEST(Parser, ThreeStatements)
{
    const Script s = parse("space X = CP(2);\nbundle E on X = O(1) (+) eps(1);\nprint ch(E);\n");
    ASSERT_EQ(s.statements.size(), 3u);
    EXPECT_EQ(s.statements[0].kind, Stmt::Kind::Space);
    EXPECT_EQ(s.statements[1].bundle.kind, BundleNode::Kind::Sum);
    EXPECT_EQ(s.statements[2].exprs[0].kind, ExprNode::Kind::Ch);
}

TEST(Parser, TruncatedInput)
{
    const Diagnostic d = diagnose("space X = CP(2);\nprint td(");
    EXPECT_EQ(d.line, 2);
    EXPECT_EQ(d.column, 10);
    EXPECT_NE(d.message.find("unexpected end of input"), std::string::npos) << d.message;
    EXPECT_EQ(format_diagnostic(d, "t.ks"), "t.ks:2:10: error: " + d.message + "\n  print td(\n           ^\n");
}

TEST(Parser, Precedence)
{
    EXPECT_EQ(print(parse("bundle E on X = A - B (+) C (x) D;")), "bundle E on X = A - B (+) C (x) D;\n");
    const Script s = parse("bundle E on X = A - B (+) C (x) D;");
    const BundleNode& b = s.statements[0].bundle;
    EXPECT_EQ(b.kind, BundleNode::Kind::Difference);
    EXPECT_EQ(b.children[1].kind, BundleNode::Kind::Sum);
    EXPECT_EQ(b.children[1].children[1].kind, BundleNode::Kind::Tensor);
    EXPECT_EQ(print(parse("print (1 + 2) * -3;")), "print (1 + 2) * -3;\n");
    EXPECT_EQ(print(parse("print 1 - (2 - 3);")), "print 1 - (2 - 3);\n");
    EXPECT_EQ(print(parse("print (1 - 2) - 3;")), "print 1 - 2 - 3;\n");
}

TEST(Parser, Limits)
{
    EXPECT_NE(diagnose("print 10000000;").message.find("literal"), std::string::npos);
    EXPECT_NO_THROW((void)parse("print 1000000;"));
    std::string deep = "print " + std::string(300, '(') + "1" + std::string(300, ')') + ";";
    EXPECT_NE(diagnose(deep).message.find("nest"), std::string::npos);
    EXPECT_NE(diagnose("space map = CP(1);").message.find("reserved"), std::string::npos);
    EXPECT_NE(diagnose("space X = CP(41);").message.find("40"), std::string::npos);
    EXPECT_NE(diagnose("space X = S(20) * S(20) * S(2);").message.find("dimension"), std::string::npos);
    EXPECT_NE(diagnose("space X = T(30);").message.find("1024"), std::string::npos);
}

TEST(Printer, CorpusRoundTrip)
{
    const Script s = parse(corpus());
    ASSERT_EQ(s.statements.size(), 50u);
    const std::string once = print(s);
    EXPECT_EQ(parse(once), s);
    EXPECT_EQ(print(parse(once)), once);
}

TEST(Printer, RandomAstRoundTrip)
{
    for (unsigned seed = 0; seed < 200; ++seed) {
        const Script s = kt::AstGenerator(seed).script(8);
        const std::string text = print(s);
        Script back;
        try {
            back = parse(text);
        } catch (const DiagnosticError& d) {
            FAIL() << seed << ": " << format_diagnostic(d.diagnostic(), "<ast>") << text;
        }
        EXPECT_EQ(back, s) << text;
    }
}

TEST(Evaluator, Deterministic)
{
    const std::string src = corpus();
    const auto a = evaluate(src);
    const auto b = evaluate(src);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(to_json(a[i]), to_json(b[i]));
    }
}

TEST(Evaluator, JsonMatchesHuman)
{
    for (const Output& o : evaluate(corpus())) {
        const auto j = nlohmann::json::parse(to_json(o));
        EXPECT_EQ(j["stmt"].get<int>(), o.statement);
        EXPECT_EQ(j["kind"].get<std::string>(), o.kind);
        EXPECT_EQ(j["value"].get<std::string>() + "\n", to_human(o));
        EXPECT_EQ(j["space"].is_null(), !o.space.has_value());
    }
}

TEST(Evaluator, ValueKinds)
{
    const auto out = evaluate("space X = CP(1);\nmap i : X -> X = id;\nbundle E on X = O(1);\nkcycle C = [X ; E ; i];\n"
                              "print 1; print ch(E); print homchern(C); print kgroup(X, 0); print parity(C);\n"
                              "print parity(E); print C; print X; print i; print E;");
    std::vector<std::string> kinds;
    for (const auto& o : out) {
        kinds.push_back(o.kind);
    }
    const std::vector<std::string> want = {"rational", "class", "homology", "group", "brane",
                                           "parity",   "kcycle", "space",   "map",   "kclass"};
    EXPECT_EQ(kinds, want);
    EXPECT_EQ(out[0].statement, 5);
    EXPECT_EQ(out[1].space, std::optional<std::string>("CP(1)"));
}

TEST(Evaluator, Diagnostics)
{
    EXPECT_EQ(diagnose("print ch(E);").message, "undeclared name 'E'");
    EXPECT_NE(diagnose("space X = CP(1); space X = CP(2);").message.find("X"), std::string::npos);
    EXPECT_NE(diagnose("space X = T(2); bundle E on X = O(1);").message.find("not T(2)"), std::string::npos);
    const Diagnostic d = diagnose("space X = CP(1);\nassert 1 == 2;");
    EXPECT_EQ(d.line, 2);
    EXPECT_EQ(d.message, "assertion failed: 1 != 2");
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(cli({"--version"}).out, std::string(kVersion) + "\n");
    EXPECT_EQ(cli({"--eval", "print 2 * 3;"}).out, "6\n");
    EXPECT_EQ(cli({"--eval", "print 1;", "--format", "json"}).out,
              "{\"stmt\":1,\"kind\":\"rational\",\"space\":null,\"value\":\"1\"}\n");
    const CliRun bad = cli({"--eval", "print x"});
    EXPECT_EQ(bad.code, kExitDiagnostic);
    EXPECT_EQ(bad.err.rfind("<eval>:1:", 0), 0u) << bad.err;
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"--format", "xml", "--eval", "print 1;"}).code, kExitUsage);
    EXPECT_EQ(cli({"--degree-cap", "21", "--eval", "print 1;"}).code, kExitUsage);
    EXPECT_EQ(cli({"--script", "a.ks", "--eval", "print 1;"}).code, kExitUsage);
    const CliRun missing = cli({"--script", "/nonexistent/x.ks"});
    EXPECT_EQ(missing.code, kExitUsage);
    EXPECT_EQ(missing.err, "error: cannot open script '/nonexistent/x.ks'\n");
    EXPECT_EQ(cli({"--degree-cap", "1", "--eval", "space X = CP(2); bundle L on X = O(1); print ch(L);"}).out,
              "1 + x\n");
}

TEST(Cli, PartialOutputBeforeError)
{
    const CliRun r = cli({"--eval", "print 1;\nprint 2;\nprint q;"});
    EXPECT_EQ(r.code, kExitDiagnostic);
    EXPECT_EQ(r.out, "1\n2\n");
}

TEST(Golden, Scripts)
{
    const auto cases = kt::golden_cases(KCHARGE_GOLDEN_DIR);
    ASSERT_GE(cases.size(), 20u);
    for (const auto& c : cases) {
        EXPECT_EQ(kt::check_golden(c), "");
    }
}

TEST(Fuzz, NoCrashes)
{
    std::vector<std::string> seeds = {corpus()};
    for (const auto& c : kt::golden_cases(KCHARGE_GOLDEN_DIR)) {
        seeds.push_back(kt::read_file(c.script));
    }
    const kt::FuzzReport r = kt::fuzz_scripts(10000, 7, seeds);
    EXPECT_EQ(r.inputs, 10000);
    EXPECT_EQ(r.crashes, 0) << r.first_crash;
    EXPECT_GT(r.diagnostics, 0);
    EXPECT_GT(r.accepted, 0);
}
