#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kcharge/error.hpp"
#include "kcharge/graded.hpp"
#include "kcharge/space.hpp"

namespace kcharge {

enum class MapKind {
    Identity,
    ConstToBasepoint,
    SphereDegree,
    LinearInclusion, // point or CP^m into CP^n (S^2 counts as CP^1)
    TorusInclusion,  // coordinate subtorus T^m into T^n
    SliceInclusion,  // factor into product at the basepoint of the others
    Projection,      // product onto a factor
    Compose,
};

/// A continuous map between catalog spaces, up to homotopy. Basepoints are
/// the canonical ones of each catalog space.
class ModelMap {
public:
    static ModelMap identity(const Space& x) { return ModelMap(MapKind::Identity, x, x); }

    static ModelMap constant(const Space& source, const Space& target)
    {
        return ModelMap(MapKind::ConstToBasepoint, source, target);
    }

    static ModelMap sphere_degree(const Space& sphere, int degree)
    {
        if (sphere->kind() != SpaceKind::Sphere) {
            throw Unsupported("degree maps are defined on spheres, not " + sphere.text());
        }
        ModelMap m(MapKind::SphereDegree, sphere, sphere);
        m.param_ = degree;
        return m;
    }

    static ModelMap linear_inclusion(const Space& source, const Space& target)
    {
        const int m = projective_level(source, "source");
        const int n = projective_level(target, "target");
        if (m > n || (target->kind() == SpaceKind::Sphere && source->kind() == SpaceKind::Sphere)) {
            throw Unsupported("no linear inclusion " + source.text() + " -> " + target.text());
        }
        return ModelMap(MapKind::LinearInclusion, source, target);
    }

    static ModelMap torus_inclusion(const Space& source, const Space& target)
    {
        if (source->kind() != SpaceKind::Torus || target->kind() != SpaceKind::Torus ||
            source->parameter() > target->parameter()) {
            throw Unsupported("no subtorus inclusion " + source.text() + " -> " + target.text());
        }
        return ModelMap(MapKind::TorusInclusion, source, target);
    }

    static ModelMap slice(const Space& product, std::size_t factor)
    {
        check_factor(product, factor);
        ModelMap m(MapKind::SliceInclusion, product->factors()[factor], product);
        m.param_ = static_cast<int>(factor);
        return m;
    }

    static ModelMap projection(const Space& product, std::size_t factor)
    {
        check_factor(product, factor);
        ModelMap m(MapKind::Projection, product, product->factors()[factor]);
        m.param_ = static_cast<int>(factor);
        return m;
    }

    /// Composite of `maps` applied in order: maps[0] first.
    static ModelMap compose(const std::vector<ModelMap>& maps)
    {
        if (maps.empty()) {
            throw InvalidArgument("empty composition");
        }
        std::vector<ModelMap> flat;
        for (const auto& f : maps) {
            if (!flat.empty() && flat.back().target_ != f.source_) {
                throw SpaceMismatch("composition: " + flat.back().target_.text() + " does not match " +
                                    f.source_.text());
            }
            if (f.kind_ == MapKind::Compose) {
                flat.insert(flat.end(), f.parts_.begin(), f.parts_.end());
            } else {
                flat.push_back(f);
            }
        }
        if (flat.size() == 1) {
            return flat.front();
        }
        ModelMap m(MapKind::Compose, flat.front().source_, flat.back().target_);
        m.parts_ = std::move(flat);
        return m;
    }

    /// g ∘ f
    friend ModelMap operator*(const ModelMap& g, const ModelMap& f) { return compose({f, g}); }

    MapKind kind() const { return kind_; }
    const Space& source() const { return source_; }
    const Space& target() const { return target_; }
    int degree() const { return param_; }
    std::size_t factor() const { return static_cast<std::size_t>(param_); }
    const std::vector<ModelMap>& parts() const { return parts_; }

    /// Real codimension for inclusions.
    int codimension() const { return target_->dimension() - source_->dimension(); }

    /// Induced ring homomorphism H^*(target) -> H^*(source).
    GradedClass pullback(const GradedClass& a) const
    {
        if (a.space() != target_) {
            throw SpaceMismatch("pullback along " + to_string() + " of a class on " + a.space().text());
        }
        if (kind_ == MapKind::Compose) {
            GradedClass r = a;
            for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
                r = it->pullback(r);
            }
            return r;
        }
        GradedClass r(source_);
        for (const auto& [e, c] : a.terms()) {
            r += pull_monomial(e, c);
        }
        return r;
    }

    /// Induced map on rational homology, dual to the pullback:
    /// <a, f_* h> = <f^* a, h> for every cohomology class a.
    HomologyClass pushforward(const HomologyClass& h) const
    {
        if (h.space() != source_) {
            throw SpaceMismatch("pushforward along " + to_string() + " of a class on " + h.space().text());
        }
        HomologyClass r(target_);
        if (h.is_zero()) {
            return r;
        }
        const Space& t = target_;
        for (const auto& kappa : t.basis()) {
            const Exponents dual = complement(t, kappa);
            const GradedClass dual_class = GradedClass::monomial(t, dual);
            const Rational sigma = integrate(dual_class * GradedClass::monomial(t, kappa));
            const Rational value = pair(pullback(dual_class), h);
            if (value != 0) {
                r.add_term(kappa, value / sigma);
            }
        }
        return r;
    }

    std::string body() const
    {
        switch (kind_) {
        case MapKind::Identity:
            return "id";
        case MapKind::ConstToBasepoint:
            return "const";
        case MapKind::SphereDegree:
            return "deg(" + std::to_string(param_) + ")";
        case MapKind::LinearInclusion:
        case MapKind::TorusInclusion:
            return "incl";
        case MapKind::SliceInclusion:
            return "slice(" + std::to_string(param_ + 1) + ")";
        case MapKind::Projection:
            return "proj(" + std::to_string(param_ + 1) + ")";
        case MapKind::Compose: {
            std::string s;
            for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
                s += (s.empty() ? "" : " . ") + it->body();
            }
            return s;
        }
        }
        return "?";
    }

    /// `body : source -> target`
    std::string to_string() const { return body() + " : " + source_.text() + " -> " + target_.text(); }

    friend bool operator==(const ModelMap& a, const ModelMap& b)
    {
        return a.kind_ == b.kind_ && a.source_ == b.source_ && a.target_ == b.target_ &&
               a.param_ == b.param_ && a.parts_ == b.parts_;
    }
    friend bool operator!=(const ModelMap& a, const ModelMap& b) { return !(a == b); }

private:
    ModelMap(MapKind kind, Space source, Space target)
        : kind_(kind), source_(std::move(source)), target_(std::move(target))
    {
    }

    static int projective_level(const Space& s, const char* role)
    {
        switch (s->kind()) {
        case SpaceKind::Point:
            return 0;
        case SpaceKind::ComplexProjective:
            return s->parameter();
        case SpaceKind::Sphere:
            if (s->parameter() == 2) {
                return 1;
            }
            break;
        default:
            break;
        }
        throw Unsupported(std::string("linear inclusion ") + role + " must be point, CP(n) or S(2), not " +
                          s.text());
    }

    static void check_factor(const Space& product, std::size_t factor)
    {
        if (product->kind() != SpaceKind::Product || factor >= product->factors().size()) {
            throw Unsupported("no factor " + std::to_string(factor + 1) + " in " + product.text());
        }
    }

    GradedClass pull_monomial(const Exponents& e, const Rational& c) const
    {
        const Space& s = source_;
        const std::size_t ns = s->generator_count();
        auto is_constant = [&] {
            for (int v : e) {
                if (v != 0) {
                    return false;
                }
            }
            return true;
        };
        switch (kind_) {
        case MapKind::Identity:
            return GradedClass::monomial(s, e, c);
        case MapKind::ConstToBasepoint:
            return is_constant() ? GradedClass::constant(s, c) : GradedClass(s);
        case MapKind::SphereDegree: {
            Rational scale = 1;
            for (int k = 0; k < e[0]; ++k) {
                scale *= param_;
            }
            return GradedClass::monomial(s, e, c * scale);
        }
        case MapKind::LinearInclusion:
            if (ns == 0) {
                return is_constant() ? GradedClass::constant(s, c) : GradedClass(s);
            }
            return GradedClass::monomial(s, e, c);
        case MapKind::TorusInclusion: {
            for (std::size_t i = ns; i < e.size(); ++i) {
                if (e[i] != 0) {
                    return GradedClass(s);
                }
            }
            return GradedClass::monomial(s, Exponents(e.begin(), e.begin() + static_cast<long>(ns)), c);
        }
        case MapKind::SliceInclusion: {
            const std::size_t lo = target_->factor_offset(factor());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if ((i < lo || i >= lo + ns) && e[i] != 0) {
                    return GradedClass(s);
                }
            }
            return GradedClass::monomial(
                s, Exponents(e.begin() + static_cast<long>(lo), e.begin() + static_cast<long>(lo + ns)), c);
        }
        case MapKind::Projection: {
            const std::size_t lo = source_->factor_offset(factor());
            Exponents out(ns, 0);
            std::copy(e.begin(), e.end(), out.begin() + static_cast<long>(lo));
            return GradedClass::monomial(s, out, c);
        }
        case MapKind::Compose:
            break;
        }
        throw InternalError("unreachable map kind");
    }

    MapKind kind_;
    Space source_;
    Space target_;
    int param_ = 0;
    std::vector<ModelMap> parts_;
};

} // namespace kcharge
