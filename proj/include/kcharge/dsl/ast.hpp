#pragma once

#include <string>
#include <vector>

#include "kcharge/dsl/diagnostic.hpp"

namespace kcharge::dsl {

// Node equality ignores source positions, so a reparsed script compares
// equal to the original.

struct SpaceNode {
    enum class Kind { Name, Point, Sphere, CP, Torus, Product };
    Kind kind = Kind::Point;
    Pos pos;
    std::string name;
    long value = 0;
    std::vector<SpaceNode> factors;

    friend bool operator==(const SpaceNode& a, const SpaceNode& b)
    {
        return a.kind == b.kind && a.name == b.name && a.value == b.value && a.factors == b.factors;
    }
};

struct BundleNode {
    enum class Kind { Name, Line, Trivial, Tangent, Normal, Dual, Pull, Sum, Tensor, Difference };
    Kind kind = Kind::Trivial;
    Pos pos;
    std::string name; // bundle name, or the map of N(f) and pull(f, e)
    long value = 0;
    std::vector<SpaceNode> space; // T(space)
    std::vector<BundleNode> children;

    friend bool operator==(const BundleNode& a, const BundleNode& b)
    {
        return a.kind == b.kind && a.name == b.name && a.value == b.value && a.space == b.space &&
               a.children == b.children;
    }
};

struct ExprNode {
    enum class Kind {
        Int,
        Name,
        Neg,
        Add,
        Sub,
        Mul,
        Ch,
        Td,
        AHat,
        Chern,
        Pontryagin,
        Integrate,
        HomChern,
        KGroup,
        Parity,
        Tachyon,
    };
    Kind kind = Kind::Int;
    Pos pos;
    std::string name;
    long value = 0;
    std::vector<SpaceNode> space;   // kgroup
    std::vector<BundleNode> bundle; // ch, td, ahat, c, p
    std::vector<ExprNode> children;

    friend bool operator==(const ExprNode& a, const ExprNode& b)
    {
        return a.kind == b.kind && a.name == b.name && a.value == b.value && a.space == b.space &&
               a.bundle == b.bundle && a.children == b.children;
    }
};

struct MapNode {
    enum class Kind { Identity, Constant, Degree, Inclusion, Slice, Projection, Compose };
    Kind kind = Kind::Identity;
    Pos pos;
    long value = 0;
    std::vector<std::string> names; // g . f, outermost first

    friend bool operator==(const MapNode& a, const MapNode& b)
    {
        return a.kind == b.kind && a.value == b.value && a.names == b.names;
    }
};

struct Stmt {
    enum class Kind { Space, Map, Bundle, KCycle, Print, Assert };
    Kind kind = Kind::Print;
    Pos pos;
    Pos name_pos;
    std::string name;
    SpaceNode space;          // space decl
    std::string source;       // map: source space; bundle: base space; kcycle: manifold
    std::string target;       // map: target space; kcycle: map name
    Pos source_pos;
    Pos target_pos;
    MapNode map;
    BundleNode bundle;        // bundle decl, kcycle bundle
    std::vector<ExprNode> exprs; // print: 1, assert: 2

    friend bool operator==(const Stmt& a, const Stmt& b)
    {
        return a.kind == b.kind && a.name == b.name && a.space == b.space && a.source == b.source &&
               a.target == b.target && a.map == b.map && a.bundle == b.bundle && a.exprs == b.exprs;
    }
};

struct Script {
    std::vector<Stmt> statements;

    friend bool operator==(const Script& a, const Script& b) { return a.statements == b.statements; }
};

} // namespace kcharge::dsl
