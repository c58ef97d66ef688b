#pragma once

#include <string>

#include "kcharge/dsl/ast.hpp"

namespace kcharge::dsl {

// Canonical script text. Parentheses appear only where precedence needs
// them, so parse(print(s)) == s for every parsed script s.

inline std::string print(const SpaceNode& s)
{
    using K = SpaceNode::Kind;
    switch (s.kind) {
    case K::Name:
        return s.name;
    case K::Point:
        return "point";
    case K::Sphere:
        return "S(" + std::to_string(s.value) + ")";
    case K::CP:
        return "CP(" + std::to_string(s.value) + ")";
    case K::Torus:
        return "T(" + std::to_string(s.value) + ")";
    case K::Product: {
        std::string out;
        for (const auto& f : s.factors) {
            if (!out.empty()) {
                out += " * ";
            }
            out += f.kind == K::Product ? "(" + print(f) + ")" : print(f);
        }
        return out;
    }
    }
    return "?";
}

namespace detail {

inline int level(const BundleNode& b)
{
    switch (b.kind) {
    case BundleNode::Kind::Difference:
        return 0;
    case BundleNode::Kind::Sum:
        return 1;
    case BundleNode::Kind::Tensor:
        return 2;
    default:
        return 3;
    }
}

inline int level(const ExprNode& e)
{
    switch (e.kind) {
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub:
        return 0;
    case ExprNode::Kind::Mul:
        return 1;
    case ExprNode::Kind::Neg:
        return 2;
    default:
        return 3;
    }
}

} // namespace detail

inline std::string print(const BundleNode& b, int min_level = 0)
{
    using K = BundleNode::Kind;
    std::string s;
    switch (b.kind) {
    case K::Name:
        s = b.name;
        break;
    case K::Line:
        s = "O(" + std::to_string(b.value) + ")";
        break;
    case K::Trivial:
        s = "eps(" + std::to_string(b.value) + ")";
        break;
    case K::Tangent:
        s = "T(" + print(b.space.at(0)) + ")";
        break;
    case K::Normal:
        s = "N(" + b.name + ")";
        break;
    case K::Dual:
        s = "dual(" + print(b.children.at(0)) + ")";
        break;
    case K::Pull:
        s = "pull(" + b.name + ", " + print(b.children.at(0)) + ")";
        break;
    case K::Difference:
        s = print(b.children.at(0), 0) + " - " + print(b.children.at(1), 1);
        break;
    case K::Sum:
        s = print(b.children.at(0), 1) + " (+) " + print(b.children.at(1), 2);
        break;
    case K::Tensor:
        s = print(b.children.at(0), 2) + " (x) " + print(b.children.at(1), 3);
        break;
    }
    return detail::level(b) < min_level ? "(" + s + ")" : s;
}

inline std::string print(const ExprNode& e, int min_level = 0)
{
    using K = ExprNode::Kind;
    auto call = [&](const std::string& fn, const std::string& args) { return fn + "(" + args + ")"; };
    std::string s;
    switch (e.kind) {
    case K::Int:
        s = std::to_string(e.value);
        break;
    case K::Name:
        s = e.name;
        break;
    case K::Neg:
        s = "-" + print(e.children.at(0), 2);
        break;
    case K::Add:
        s = print(e.children.at(0), 0) + " + " + print(e.children.at(1), 1);
        break;
    case K::Sub:
        s = print(e.children.at(0), 0) + " - " + print(e.children.at(1), 1);
        break;
    case K::Mul:
        s = print(e.children.at(0), 1) + " * " + print(e.children.at(1), 2);
        break;
    case K::Ch:
        s = call("ch", print(e.bundle.at(0)));
        break;
    case K::Td:
        s = call("td", print(e.bundle.at(0)));
        break;
    case K::AHat:
        s = call("ahat", print(e.bundle.at(0)));
        break;
    case K::Chern:
        s = call("c", std::to_string(e.value) + ", " + print(e.bundle.at(0)));
        break;
    case K::Pontryagin:
        s = call("p", std::to_string(e.value) + ", " + print(e.bundle.at(0)));
        break;
    case K::Integrate:
        s = call("integrate", print(e.children.at(0)));
        break;
    case K::HomChern:
        s = call("homchern", e.name);
        break;
    case K::KGroup:
        s = call("kgroup", print(e.space.at(0)) + ", " + std::to_string(e.value));
        break;
    case K::Parity:
        s = call("parity", e.name);
        break;
    case K::Tachyon:
        s = call("tachyon", e.name);
        break;
    }
    return detail::level(e) < min_level ? "(" + s + ")" : s;
}

inline std::string print(const MapNode& m)
{
    using K = MapNode::Kind;
    switch (m.kind) {
    case K::Identity:
        return "id";
    case K::Constant:
        return "const";
    case K::Degree:
        return "deg(" + std::to_string(m.value) + ")";
    case K::Inclusion:
        return "incl";
    case K::Slice:
        return "slice(" + std::to_string(m.value) + ")";
    case K::Projection:
        return "proj(" + std::to_string(m.value) + ")";
    case K::Compose: {
        std::string s;
        for (const auto& n : m.names) {
            s += (s.empty() ? "" : " . ") + n;
        }
        return s;
    }
    }
    return "?";
}

inline std::string print(const Stmt& st)
{
    using K = Stmt::Kind;
    switch (st.kind) {
    case K::Space:
        return "space " + st.name + " = " + print(st.space) + ";";
    case K::Map:
        return "map " + st.name + " : " + st.source + " -> " + st.target + " = " + print(st.map) + ";";
    case K::Bundle:
        return "bundle " + st.name + " on " + st.source + " = " + print(st.bundle) + ";";
    case K::KCycle:
        return "kcycle " + st.name + " = [" + st.source + " ; " + print(st.bundle) + " ; " + st.target + "];";
    case K::Print:
        return "print " + print(st.exprs.at(0)) + ";";
    case K::Assert:
        return "assert " + print(st.exprs.at(0)) + " == " + print(st.exprs.at(1)) + ";";
    }
    return "?";
}

/// One statement per line.
inline std::string print(const Script& s)
{
    std::string out;
    for (const auto& st : s.statements) {
        out += print(st) + "\n";
    }
    return out;
}

} // namespace kcharge::dsl
