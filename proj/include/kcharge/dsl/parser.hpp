#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kcharge/dsl/ast.hpp"
#include "kcharge/dsl/diagnostic.hpp"
#include "kcharge/dsl/lexer.hpp"

namespace kcharge::dsl {

inline constexpr long kMaxLiteral = 1000000;
inline constexpr int kMaxNesting = 200;

inline bool is_reserved(std::string_view word)
{
    static const std::set<std::string, std::less<>> words = {
        "space", "map",   "bundle", "kcycle",    "print",    "assert", "on",     "point",   "S",
        "CP",    "T",     "O",      "eps",       "N",        "dual",   "pull",   "ch",      "td",
        "ahat",  "c",     "p",      "integrate", "homchern", "kgroup", "parity", "tachyon", "id",
        "const", "deg",   "incl",   "slice",     "proj",
    };
    return words.contains(word);
}

/// Recursive-descent parser. Every failure is a DiagnosticError at the
/// offending token.
class Parser {
public:
    explicit Parser(std::string_view source) : src_(source), toks_(tokenize(source)) {}

    Script parse_script()
    {
        Script s;
        while (peek().kind != Tok::End) {
            s.statements.push_back(statement());
        }
        return s;
    }

private:
    // --- token helpers ---

    const Token& peek(std::size_t ahead = 0) const
    {
        const std::size_t k = pos_ + ahead;
        return k < toks_.size() ? toks_[k] : toks_.back();
    }

    bool at_word(std::string_view w, std::size_t ahead = 0) const
    {
        return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
    }

    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token& t, const std::string& expected) const
    {
        if (t.kind == Tok::End) {
            throw make_error(src_, t.pos, "unexpected end of input, expected " + expected);
        }
        throw make_error(src_, t.pos, "expected " + expected + ", found " + describe(t));
    }

    Token expect(Tok kind, const char* what)
    {
        if (peek().kind != kind) {
            fail(peek(), what);
        }
        return take();
    }

    void expect_word(std::string_view w)
    {
        if (!at_word(w)) {
            fail(peek(), "'" + std::string(w) + "'");
        }
        take();
    }

    std::string name(Pos* where = nullptr)
    {
        const Token& t = peek();
        if (t.kind != Tok::Ident) {
            fail(t, "a name");
        }
        if (is_reserved(t.text)) {
            throw make_error(src_, t.pos, "'" + t.text + "' is a reserved word, expected a name");
        }
        if (where != nullptr) {
            *where = t.pos;
        }
        return take().text;
    }

    long integer()
    {
        const Pos start = peek().pos;
        bool negative = false;
        if (peek().kind == Tok::Minus) {
            take();
            negative = true;
        }
        const Token t = expect(Tok::Int, "an integer");
        if (t.text.size() > 7 || std::stol(t.text) > kMaxLiteral) {
            throw make_error(src_, start, "integer literal out of range (limit " + std::to_string(kMaxLiteral) + ")");
        }
        const long v = std::stol(t.text);
        return negative ? -v : v;
    }

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser)
        {
            if (++p.depth_ > kMaxNesting) {
                throw make_error(p.src_, p.peek().pos, "expression nested too deeply");
            }
        }
        ~DepthGuard() { --p.depth_; }
    };

    // --- statements ---

    Stmt statement()
    {
        Stmt st;
        st.pos = peek().pos;
        if (at_word("space")) {
            take();
            st.kind = Stmt::Kind::Space;
            st.name = name(&st.name_pos);
            expect(Tok::Assign, "'='");
            st.space = space_expr();
        } else if (at_word("map")) {
            take();
            st.kind = Stmt::Kind::Map;
            st.name = name(&st.name_pos);
            expect(Tok::Colon, "':'");
            st.source = name(&st.source_pos);
            expect(Tok::Arrow, "'->'");
            st.target = name(&st.target_pos);
            expect(Tok::Assign, "'='");
            st.map = map_expr();
        } else if (at_word("bundle")) {
            take();
            st.kind = Stmt::Kind::Bundle;
            st.name = name(&st.name_pos);
            expect_word("on");
            st.source = name(&st.source_pos);
            expect(Tok::Assign, "'='");
            st.bundle = bundle_expr();
        } else if (at_word("kcycle")) {
            take();
            st.kind = Stmt::Kind::KCycle;
            st.name = name(&st.name_pos);
            expect(Tok::Assign, "'='");
            expect(Tok::LBracket, "'['");
            st.source = name(&st.source_pos);
            expect(Tok::Semi, "';'");
            st.bundle = bundle_expr();
            expect(Tok::Semi, "';'");
            st.target = name(&st.target_pos);
            expect(Tok::RBracket, "']'");
        } else if (at_word("print")) {
            take();
            st.kind = Stmt::Kind::Print;
            st.exprs.push_back(expr());
        } else if (at_word("assert")) {
            take();
            st.kind = Stmt::Kind::Assert;
            st.exprs.push_back(expr());
            expect(Tok::EqEq, "'=='");
            st.exprs.push_back(expr());
        } else {
            fail(peek(), "a statement (space, map, bundle, kcycle, print or assert)");
        }
        expect(Tok::Semi, "';'");
        return st;
    }

    // --- spaces ---

    SpaceNode space_expr()
    {
        DepthGuard guard(*this);
        SpaceNode first = space_primary();
        if (peek().kind != Tok::Star) {
            return first;
        }
        SpaceNode prod;
        prod.kind = SpaceNode::Kind::Product;
        prod.pos = first.pos;
        prod.factors.push_back(std::move(first));
        while (peek().kind == Tok::Star) {
            take();
            prod.factors.push_back(space_primary());
        }
        return prod;
    }

    SpaceNode space_primary()
    {
        SpaceNode s;
        s.pos = peek().pos;
        if (peek().kind == Tok::LParen) {
            take();
            s = space_expr();
            expect(Tok::RParen, "')'");
            return s;
        }
        auto sized = [&](SpaceNode::Kind k) {
            take();
            expect(Tok::LParen, "'('");
            s.kind = k;
            s.value = integer();
            expect(Tok::RParen, "')'");
        };
        if (at_word("point")) {
            take();
            s.kind = SpaceNode::Kind::Point;
        } else if (at_word("S")) {
            sized(SpaceNode::Kind::Sphere);
        } else if (at_word("CP")) {
            sized(SpaceNode::Kind::CP);
        } else if (at_word("T")) {
            sized(SpaceNode::Kind::Torus);
        } else if (peek().kind == Tok::Ident && !is_reserved(peek().text)) {
            s.kind = SpaceNode::Kind::Name;
            s.name = name();
        } else {
            fail(peek(), "a space (point, S(n), CP(n), T(n) or a name)");
        }
        return s;
    }

    // --- maps ---

    MapNode map_expr()
    {
        MapNode m;
        m.pos = peek().pos;
        auto indexed = [&](MapNode::Kind k) {
            take();
            expect(Tok::LParen, "'('");
            m.kind = k;
            m.value = integer();
            expect(Tok::RParen, "')'");
        };
        if (at_word("id")) {
            take();
            m.kind = MapNode::Kind::Identity;
        } else if (at_word("const")) {
            take();
            m.kind = MapNode::Kind::Constant;
        } else if (at_word("incl")) {
            take();
            m.kind = MapNode::Kind::Inclusion;
        } else if (at_word("deg")) {
            indexed(MapNode::Kind::Degree);
        } else if (at_word("slice")) {
            indexed(MapNode::Kind::Slice);
        } else if (at_word("proj")) {
            indexed(MapNode::Kind::Projection);
        } else {
            m.kind = MapNode::Kind::Compose;
            if (peek().kind != Tok::Ident) {
                fail(peek(), "a map (id, const, deg(d), incl, slice(i), proj(i) or g . f)");
            }
            m.names.push_back(name());
            while (peek().kind == Tok::Dot) {
                take();
                m.names.push_back(name());
            }
        }
        return m;
    }

    // --- bundles ---

    BundleNode binary(BundleNode::Kind kind, BundleNode lhs, BundleNode rhs)
    {
        BundleNode n;
        n.kind = kind;
        n.pos = lhs.pos;
        n.children.push_back(std::move(lhs));
        n.children.push_back(std::move(rhs));
        return n;
    }

    BundleNode bundle_expr()
    {
        DepthGuard guard(*this);
        BundleNode lhs = bundle_sum();
        while (peek().kind == Tok::Minus) {
            take();
            lhs = binary(BundleNode::Kind::Difference, std::move(lhs), bundle_sum());
        }
        return lhs;
    }

    BundleNode bundle_sum()
    {
        BundleNode lhs = bundle_tensor();
        while (peek().kind == Tok::OPlus) {
            take();
            lhs = binary(BundleNode::Kind::Sum, std::move(lhs), bundle_tensor());
        }
        return lhs;
    }

    BundleNode bundle_tensor()
    {
        BundleNode lhs = bundle_primary();
        while (peek().kind == Tok::OTimes) {
            take();
            lhs = binary(BundleNode::Kind::Tensor, std::move(lhs), bundle_primary());
        }
        return lhs;
    }

    BundleNode bundle_primary()
    {
        BundleNode b;
        b.pos = peek().pos;
        if (peek().kind == Tok::LParen) {
            take();
            b = bundle_expr();
            expect(Tok::RParen, "')'");
            return b;
        }
        auto open = [&](BundleNode::Kind k) {
            take();
            expect(Tok::LParen, "'('");
            b.kind = k;
        };
        if (at_word("O")) {
            open(BundleNode::Kind::Line);
            b.value = integer();
        } else if (at_word("eps")) {
            open(BundleNode::Kind::Trivial);
            b.value = integer();
        } else if (at_word("T")) {
            open(BundleNode::Kind::Tangent);
            b.space.push_back(space_expr());
        } else if (at_word("N")) {
            open(BundleNode::Kind::Normal);
            b.name = name();
        } else if (at_word("dual")) {
            open(BundleNode::Kind::Dual);
            b.children.push_back(bundle_expr());
        } else if (at_word("pull")) {
            open(BundleNode::Kind::Pull);
            b.name = name();
            expect(Tok::Comma, "','");
            b.children.push_back(bundle_expr());
        } else if (peek().kind == Tok::Ident && !is_reserved(peek().text)) {
            b.kind = BundleNode::Kind::Name;
            b.name = name();
            return b;
        } else {
            fail(peek(), "a bundle (O(k), eps(n), T(X), N(f), dual(e), pull(f, e) or a name)");
        }
        expect(Tok::RParen, "')'");
        return b;
    }

    // --- expressions ---

    ExprNode expr()
    {
        DepthGuard guard(*this);
        ExprNode lhs = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const auto kind = take().kind == Tok::Plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
            lhs = combine(kind, std::move(lhs), term());
        }
        return lhs;
    }

    ExprNode term()
    {
        ExprNode lhs = unary();
        while (peek().kind == Tok::Star) {
            take();
            lhs = combine(ExprNode::Kind::Mul, std::move(lhs), unary());
        }
        return lhs;
    }

    ExprNode unary()
    {
        if (peek().kind == Tok::Minus) {
            DepthGuard guard(*this);
            ExprNode n;
            n.kind = ExprNode::Kind::Neg;
            n.pos = take().pos;
            n.children.push_back(unary());
            return n;
        }
        return primary();
    }

    static ExprNode combine(ExprNode::Kind kind, ExprNode lhs, ExprNode rhs)
    {
        ExprNode n;
        n.kind = kind;
        n.pos = lhs.pos;
        n.children.push_back(std::move(lhs));
        n.children.push_back(std::move(rhs));
        return n;
    }

    ExprNode primary()
    {
        ExprNode e;
        e.pos = peek().pos;
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            take();
            e = expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (t.kind == Tok::Int) {
            e.kind = ExprNode::Kind::Int;
            e.value = integer();
            return e;
        }
        if (t.kind != Tok::Ident) {
            fail(t, "an expression");
        }
        if (!is_reserved(t.text)) {
            e.kind = ExprNode::Kind::Name;
            e.name = name();
            return e;
        }
        const std::string fn = t.text;
        auto open = [&](ExprNode::Kind k) {
            take();
            expect(Tok::LParen, "'('");
            e.kind = k;
        };
        if (fn == "ch" || fn == "td" || fn == "ahat") {
            open(fn == "ch" ? ExprNode::Kind::Ch : fn == "td" ? ExprNode::Kind::Td : ExprNode::Kind::AHat);
            e.bundle.push_back(bundle_expr());
        } else if (fn == "c" || fn == "p") {
            open(fn == "c" ? ExprNode::Kind::Chern : ExprNode::Kind::Pontryagin);
            e.value = integer();
            expect(Tok::Comma, "','");
            e.bundle.push_back(bundle_expr());
        } else if (fn == "integrate") {
            open(ExprNode::Kind::Integrate);
            e.children.push_back(expr());
        } else if (fn == "homchern" || fn == "parity" || fn == "tachyon") {
            open(fn == "homchern" ? ExprNode::Kind::HomChern
                                  : fn == "parity" ? ExprNode::Kind::Parity : ExprNode::Kind::Tachyon);
            e.name = name();
        } else if (fn == "kgroup") {
            open(ExprNode::Kind::KGroup);
            e.space.push_back(space_expr());
            expect(Tok::Comma, "','");
            e.value = integer();
        } else {
            fail(t, "an expression");
        }
        expect(Tok::RParen, "')'");
        return e;
    }

    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

/// Parses a whole script; throws DiagnosticError.
inline Script parse(std::string_view source) { return Parser(source).parse_script(); }

} // namespace kcharge::dsl
