#pragma once

// Test helpers: random classes and bundle expressions with an independent
// Chern-root model.

#include <random>
#include <utility>
#include <vector>

#include "kcharge/kcharge.hpp"

namespace kcharge::testing {

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational small_rational(Rng& rng)
{
    return make_rational(uniform(rng, -6, 6), uniform(rng, 1, 4));
}

inline GradedClass random_class(Rng& rng, const Space& x, int terms = 4)
{
    const auto basis = x.basis();
    GradedClass c(x);
    for (int i = 0; i < terms; ++i) {
        const auto& e = basis[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(basis.size()) - 1))];
        c += GradedClass::monomial(x, e, small_rational(rng));
    }
    return c;
}

inline HomologyClass random_homology(Rng& rng, const Space& x, int terms = 4)
{
    return poincare_dual(random_class(rng, x, terms));
}

/// exp of a class with nilpotent positive-degree part, summed until the
/// powers vanish.
inline GradedClass graded_exp(const GradedClass& r)
{
    GradedClass out = GradedClass::one(r.space());
    GradedClass power = GradedClass::one(r.space());
    for (int j = 1; j <= r.space()->dimension() + 1; ++j) {
        power = Rational(1, j) * (power * r);
        out += power;
    }
    return out;
}

/// A virtual sum of line bundles: multiset of Chern roots with integer
/// multiplicities.
struct RootModel {
    std::vector<std::pair<GradedClass, long>> roots;

    long rank() const
    {
        long r = 0;
        for (const auto& [c, m] : roots) {
            r += m;
        }
        return r;
    }

    GradedClass ch(const Space& x) const
    {
        GradedClass out(x);
        for (const auto& [c, m] : roots) {
            out += Rational(m) * graded_exp(c);
        }
        return out;
    }

    /// prod (1 + r)^m, negative m through the inverse.
    GradedClass total_chern(const Space& x) const
    {
        GradedClass out = GradedClass::one(x);
        for (const auto& [c, m] : roots) {
            const GradedClass f = GradedClass::one(x) + c;
            const GradedClass g = m >= 0 ? f : f.inverse();
            for (long k = 0; k < (m >= 0 ? m : -m); ++k) {
                out = out * g;
            }
        }
        return out;
    }

    RootModel dual() const
    {
        RootModel d = *this;
        for (auto& [c, m] : d.roots) {
            c = -c;
        }
        return d;
    }

    friend RootModel operator+(RootModel a, const RootModel& b)
    {
        a.roots.insert(a.roots.end(), b.roots.begin(), b.roots.end());
        return a;
    }

    friend RootModel operator*(const RootModel& a, const RootModel& b)
    {
        RootModel t;
        for (const auto& [c, m] : a.roots) {
            for (const auto& [d, n] : b.roots) {
                t.roots.emplace_back(c + d, m * n);
            }
        }
        return t;
    }

    RootModel pulled(const ModelMap& f) const
    {
        RootModel p;
        for (const auto& [c, m] : roots) {
            p.roots.emplace_back(f.pullback(c), m);
        }
        return p;
    }
};

struct ModeledBundle {
    BundleExpr bundle;
    RootModel model;
};

/// A leaf bundle on `x` together with its roots.
inline ModeledBundle random_leaf(Rng& rng, const Space& x)
{
    const GradedClass zero(x);
    const int pick = uniform(rng, 0, 3);
    if (pick == 0) {
        const int n = uniform(rng, 0, 2);
        return {BundleExpr::trivial(x, n), RootModel{{{zero, n}}}};
    }
    switch (x->kind()) {
    case SpaceKind::ComplexProjective: {
        const GradedClass h = GradedClass::generator(x, 0);
        if (pick == 1) {
            // T CP^n (+) eps = O(1)^{n+1}
            const long n = x->parameter();
            return {BundleExpr::tangent(x), RootModel{{{h, n + 1}, {zero, -1}}}};
        }
        const int k = uniform(rng, -3, 3);
        return {BundleExpr::tautological(x, k), RootModel{{{Rational(k) * h, 1}}}};
    }
    case SpaceKind::Product: {
        if (pick == 1) {
            const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(x->factors().size()) - 1));
            const ModelMap p = ModelMap::projection(x, i);
            ModeledBundle inner = random_leaf(rng, x->factors()[i]);
            return {BundleExpr::pullback(p, inner.bundle), inner.model.pulled(p)};
        }
        break;
    }
    default:
        break;
    }
    // a line bundle with a random integral degree-2 class as c_1
    GradedClass c1(x);
    for (const auto& e : x.basis()) {
        if (x.degree(e) == 2) {
            c1 += GradedClass::monomial(x, e, Rational(uniform(rng, -2, 2)));
        }
    }
    return {BundleExpr::line(c1), RootModel{{{c1, 1}}}};
}

inline ModeledBundle random_bundle(Rng& rng, const Space& x, int depth = 2)
{
    if (depth == 0 || uniform(rng, 0, 3) == 0) {
        return random_leaf(rng, x);
    }
    switch (uniform(rng, 0, 2)) {
    case 0: {
        ModeledBundle a = random_bundle(rng, x, depth - 1);
        return {BundleExpr::dual(a.bundle), a.model.dual()};
    }
    case 1: {
        ModeledBundle a = random_bundle(rng, x, depth - 1);
        ModeledBundle b = random_bundle(rng, x, depth - 1);
        return {BundleExpr::sum(a.bundle, b.bundle), a.model + b.model};
    }
    default: {
        ModeledBundle a = random_bundle(rng, x, depth - 1);
        ModeledBundle b = random_bundle(rng, x, depth - 1);
        return {BundleExpr::tensor(a.bundle, b.bundle), a.model * b.model};
    }
    }
}

} // namespace kcharge::testing
