#pragma once

// Random script inputs for the parser fuzz and round-trip properties.

#include <exception>
#include <random>
#include <string>
#include <vector>

#include "kcharge/dsl/evaluator.hpp"
#include "kcharge/dsl/printer.hpp"

namespace kcharge::testing {

inline const std::vector<std::string>& vocabulary()
{
    static const std::vector<std::string> words = {
        "space", "map",  "bundle", "kcycle",   "print",    "assert", "on",     "point",   "S",     "CP",
        "T",     "O",    "eps",    "N",        "dual",     "pull",   "ch",     "td",      "ahat",  "c",
        "p",     "integrate", "homchern", "kgroup", "parity", "tachyon", "id",  "const",   "deg",   "incl",
        "slice", "proj", "X",      "Y",        "M",        "E",      "f",      "g",       "C",     "0",
        "1",     "2",    "3",      "-1",       "40",       "999999", "(",      ")",       "[",     "]",
        ",",     ";",    ":",      "=",        "==",       "->",     "*",      "+",       "-",     ".",
        "(+)",   "(x)",  "#",      "\n",       " ",        "\t",     "\xff",   "@",       "/"};
    return words;
}

inline std::string random_bytes(std::mt19937& rng)
{
    std::uniform_int_distribution<int> len(0, 80);
    std::uniform_int_distribution<int> byte(0, 255);
    std::string s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
        s += static_cast<char>(byte(rng));
    }
    return s;
}

inline std::string token_soup(std::mt19937& rng)
{
    const auto& v = vocabulary();
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
    std::uniform_int_distribution<int> len(1, 40);
    std::string s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
        s += v[pick(rng)];
        s += ' ';
    }
    return s;
}

inline std::string mutate(std::mt19937& rng, std::string s)
{
    const auto& v = vocabulary();
    std::uniform_int_distribution<int> edits(1, 4);
    const int n = edits(rng);
    for (int k = 0; k < n && !s.empty(); ++k) {
        std::uniform_int_distribution<std::size_t> at(0, s.size() - 1);
        const std::size_t i = at(rng);
        switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0:
            s.erase(i, std::uniform_int_distribution<std::size_t>(1, 6)(rng));
            break;
        case 1:
            s.insert(i, v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]);
            break;
        case 2:
            s[i] = static_cast<char>(std::uniform_int_distribution<int>(32, 126)(rng));
            break;
        default: {
            const std::size_t j = at(rng);
            s.insert(i, s.substr(j, std::uniform_int_distribution<std::size_t>(1, 12)(rng)));
            break;
        }
        }
    }
    return s;
}

struct FuzzReport {
    int inputs = 0;
    int accepted = 0;
    int diagnostics = 0;
    int crashes = 0;
    std::string first_crash;
};

/// Feeds `count` random inputs through parse and evaluate. Anything other
/// than normal completion or a DiagnosticError counts as a crash.
inline FuzzReport fuzz_scripts(int count, unsigned seed, const std::vector<std::string>& corpus)
{
    std::mt19937 rng(seed);
    FuzzReport r;
    for (int i = 0; i < count; ++i) {
        std::string input;
        switch (i % 3) {
        case 0:
            input = random_bytes(rng);
            break;
        case 1:
            input = token_soup(rng);
            break;
        default:
            input = corpus.empty() ? token_soup(rng)
                                   : mutate(rng, corpus[std::uniform_int_distribution<std::size_t>(0, corpus.size() - 1)(rng)]);
            break;
        }
        ++r.inputs;
        try {
            (void)dsl::evaluate(input);
            ++r.accepted;
        } catch (const dsl::DiagnosticError& d) {
            if (d.diagnostic().line < 1 || d.diagnostic().column < 1) {
                ++r.crashes;
            } else {
                ++r.diagnostics;
            }
        } catch (...) {
            if (r.crashes++ == 0) {
                r.first_crash = input;
            }
        }
    }
    return r;
}

// --- random ASTs for the round-trip property ---

class AstGenerator {
public:
    explicit AstGenerator(unsigned seed) : rng_(seed) {}

    dsl::Script script(int statements)
    {
        dsl::Script s;
        for (int i = 0; i < statements; ++i) {
            s.statements.push_back(statement());
        }
        return s;
    }

private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::string name()
    {
        static const std::vector<std::string> names = {"X", "Y", "M", "E", "F", "f", "g", "h", "C", "D2", "my_space"};
        return names[static_cast<std::size_t>(pick(0, static_cast<int>(names.size()) - 1))];
    }

    dsl::SpaceNode space(int depth)
    {
        using K = dsl::SpaceNode::Kind;
        dsl::SpaceNode s;
        const int k = depth <= 0 ? pick(0, 4) : pick(0, 5);
        switch (k) {
        case 0:
            s.kind = K::Name;
            s.name = name();
            break;
        case 1:
            s.kind = K::Point;
            break;
        case 2:
            s.kind = K::Sphere;
            s.value = pick(-2, 9);
            break;
        case 3:
            s.kind = K::CP;
            s.value = pick(0, 5);
            break;
        case 4:
            s.kind = K::Torus;
            s.value = pick(1, 4);
            break;
        default: {
            s.kind = K::Product;
            const int n = pick(2, 3);
            for (int i = 0; i < n; ++i) {
                s.factors.push_back(space(depth - 1));
            }
            break;
        }
        }
        return s;
    }

    dsl::BundleNode bundle(int depth)
    {
        using K = dsl::BundleNode::Kind;
        dsl::BundleNode b;
        const int k = depth <= 0 ? pick(0, 4) : pick(0, 9);
        switch (k) {
        case 0:
            b.kind = K::Name;
            b.name = name();
            break;
        case 1:
            b.kind = K::Line;
            b.value = pick(-5, 5);
            break;
        case 2:
            b.kind = K::Trivial;
            b.value = pick(0, 4);
            break;
        case 3:
            b.kind = K::Tangent;
            b.space.push_back(space(1));
            break;
        case 4:
            b.kind = K::Normal;
            b.name = name();
            break;
        case 5:
            b.kind = K::Dual;
            b.children.push_back(bundle(depth - 1));
            break;
        case 6:
            b.kind = K::Pull;
            b.name = name();
            b.children.push_back(bundle(depth - 1));
            break;
        default:
            b.kind = k == 7 ? K::Sum : k == 8 ? K::Tensor : K::Difference;
            b.children.push_back(bundle(depth - 1));
            b.children.push_back(bundle(depth - 1));
            break;
        }
        return b;
    }

    dsl::ExprNode expr(int depth)
    {
        using K = dsl::ExprNode::Kind;
        dsl::ExprNode e;
        const int k = depth <= 0 ? pick(0, 1) : pick(0, 15);
        switch (k) {
        case 0:
            e.kind = K::Int;
            e.value = pick(0, 100);
            break;
        case 1:
            e.kind = K::Name;
            e.name = name();
            break;
        case 2:
            e.kind = K::Neg;
            e.children.push_back(expr(depth - 1));
            break;
        case 3:
        case 4:
        case 5:
            e.kind = k == 3 ? K::Add : k == 4 ? K::Sub : K::Mul;
            e.children.push_back(expr(depth - 1));
            e.children.push_back(expr(depth - 1));
            break;
        case 6:
        case 7:
        case 8:
            e.kind = k == 6 ? K::Ch : k == 7 ? K::Td : K::AHat;
            e.bundle.push_back(bundle(2));
            break;
        case 9:
        case 10:
            e.kind = k == 9 ? K::Chern : K::Pontryagin;
            e.value = pick(-1, 4);
            e.bundle.push_back(bundle(2));
            break;
        case 11:
            e.kind = K::Integrate;
            e.children.push_back(expr(depth - 1));
            break;
        case 12:
            e.kind = K::KGroup;
            e.space.push_back(space(1));
            e.value = pick(-3, 3);
            break;
        default:
            e.kind = k == 13 ? K::HomChern : k == 14 ? K::Parity : K::Tachyon;
            e.name = name();
            break;
        }
        return e;
    }

    dsl::MapNode map()
    {
        using K = dsl::MapNode::Kind;
        dsl::MapNode m;
        m.kind = static_cast<K>(pick(0, 6));
        if (m.kind == K::Degree || m.kind == K::Slice || m.kind == K::Projection) {
            m.value = pick(-3, 3);
        }
        if (m.kind == K::Compose) {
            const int n = pick(1, 3);
            for (int i = 0; i < n; ++i) {
                m.names.push_back(name());
            }
        }
        return m;
    }

    dsl::Stmt statement()
    {
        using K = dsl::Stmt::Kind;
        dsl::Stmt st;
        st.kind = static_cast<K>(pick(0, 5));
        switch (st.kind) {
        case K::Space:
            st.name = name();
            st.space = space(2);
            break;
        case K::Map:
            st.name = name();
            st.source = name();
            st.target = name();
            st.map = map();
            break;
        case K::Bundle:
            st.name = name();
            st.source = name();
            st.bundle = bundle(3);
            break;
        case K::KCycle:
            st.name = name();
            st.source = name();
            st.bundle = bundle(3);
            st.target = name();
            break;
        case K::Print:
            st.exprs.push_back(expr(3));
            break;
        case K::Assert:
            st.exprs.push_back(expr(3));
            st.exprs.push_back(expr(3));
            break;
        }
        return st;
    }

    std::mt19937 rng_;
};

} // namespace kcharge::testing
