#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kcharge/bundle.hpp"
#include "kcharge/charclass.hpp"
#include "kcharge/error.hpp"
#include "kcharge/graded.hpp"
#include "kcharge/ktheory.hpp"
#include "kcharge/map.hpp"

namespace kcharge {

/// Grading of K-homology: even cycles are type IIB branes, odd ones type IIA.
enum class BraneType { IIB_even, IIA_odd };

inline std::string to_string(BraneType t) { return t == BraneType::IIB_even ? "IIB_even" : "IIA_odd"; }

/// Baum-Douglas K-cycle [M, E, phi] into a catalog target X.
class KCycle {
public:
    KCycle(Space manifold, KClass bundle, ModelMap map)
        : m_(std::move(manifold)), e_(std::move(bundle)), phi_(std::move(map))
    {
        if (!m_->spinc()) {
            throw InvalidArgument(m_.text() + " carries no spin^c structure");
        }
        if (e_.space() != m_) {
            throw SpaceMismatch("K-cycle bundle lives on " + e_.space().text() + ", manifold is " + m_.text());
        }
        if (phi_.source() != m_) {
            throw SpaceMismatch("K-cycle map starts at " + phi_.source().text() + ", manifold is " + m_.text());
        }
    }

    const Space& manifold() const { return m_; }
    const KClass& bundle() const { return e_; }
    const ModelMap& map() const { return phi_; }
    const Space& target() const { return phi_.target(); }
    int parity() const { return m_->dimension() % 2; }

    /// `[space ; kclass ; map]`
    std::string to_string() const
    {
        return "[" + m_.text() + " ; " + e_.to_string() + " ; " + phi_.to_string() + "]";
    }

private:
    Space m_;
    KClass e_;
    ModelMap phi_;
};

inline BraneType parity_type(const KCycle& c) { return c.parity() == 0 ? BraneType::IIB_even : BraneType::IIA_odd; }

/// Homological Chern character phi_*((ch(E) ∪ Td(M)) ∩ [M]); Td(M) is the
/// Todd class of the spin^c tangent data (complex structure on CP^n, spin
/// structure on spheres and tori).
inline HomologyClass hom_chern(const KCycle& c)
{
    const Space& m = c.manifold();
    const int order = c.bundle().order();
    const GradedClass td = todd_class(BundleExpr::tangent(m).evaluate(order).total_chern, order);
    return c.map().pushforward(poincare_dual(c.bundle().ch() * td));
}

/// Formal integer combination of K-cycles over one target; disjoint union
/// is addition and orientation reversal is negation.
class KCycleSum {
public:
    explicit KCycleSum(Space target) : target_(std::move(target)) {}

    static KCycleSum of(const KCycle& c, long coefficient = 1)
    {
        KCycleSum s(c.target());
        s.terms_.emplace_back(coefficient, c);
        return s;
    }

    const Space& target() const { return target_; }
    const std::vector<std::pair<long, KCycle>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    friend KCycleSum disjoint_union(const KCycleSum& a, const KCycleSum& b)
    {
        if (a.target_ != b.target_) {
            throw SpaceMismatch("disjoint union of cycles into " + a.target_.text() + " and " + b.target_.text());
        }
        KCycleSum r = a;
        r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
        return r;
    }

    friend KCycleSum negate(const KCycleSum& a)
    {
        KCycleSum r = a;
        for (auto& t : r.terms_) {
            t.first = -t.first;
        }
        return r;
    }

private:
    Space target_;
    std::vector<std::pair<long, KCycle>> terms_;
};

/// -[M, E, phi]: M with reversed spin^c structure.
inline KCycleSum negate(const KCycle& c) { return KCycleSum::of(c, -1); }

inline HomologyClass hom_chern(const KCycleSum& s)
{
    HomologyClass h(s.target());
    for (const auto& [k, c] : s.terms()) {
        h += Rational(k) * hom_chern(c);
    }
    return h;
}

inline BraneType parity_type(const KCycleSum& s)
{
    if (s.empty()) {
        return BraneType::IIB_even;
    }
    const BraneType t = parity_type(s.terms().front().second);
    for (const auto& [k, c] : s.terms()) {
        if (parity_type(c) != t) {
            throw InvalidArgument("K-cycle sum mixes even and odd cycles");
        }
    }
    return t;
}

/// [M, E1, phi] ⊔ [M, E2, phi] ~ [M, E1 (+) E2, phi]
inline KCycle direct_sum_move(const KCycle& a, const KCycle& b)
{
    if (a.manifold() != b.manifold() || a.map() != b.map()) {
        throw InvalidArgument("direct sum needs cycles with the same manifold and map");
    }
    return KCycle(a.manifold(), a.bundle() + b.bundle(), a.map());
}

/// Post-composition f_*[M, E, phi] = [M, E, f ∘ phi].
inline KCycle push_cycle(const ModelMap& f, const KCycle& c)
{
    return KCycle(c.manifold(), c.bundle(), f * c.map());
}

/// Vector-bundle modification along the trivial real bundle H of rank 2k:
/// M^ = M × S^{2k}, rho the projection, and
///   [M, E, phi] ~ [M^, H^ ⊠ rho^*E, phi ∘ rho]
/// with H^ the clutched spinor bundle (rank 2^{k-1}, ch = 2^{k-1} + y).
inline KCycle vb_modification(const KCycle& c, int half_rank)
{
    if (half_rank < 1) {
        throw InvalidArgument("vector-bundle modification needs k >= 1");
    }
    const BundleExpr spinor = BundleExpr::clutched_spinor(half_rank);
    const Space m_hat = Space::product({c.manifold(), spinor.space()});
    const ModelMap rho = ModelMap::projection(m_hat, 0);
    const ModelMap to_sphere = ModelMap::projection(m_hat, 1);
    const BundleExpr h_hat = BundleExpr::pullback(to_sphere, spinor);
    KClass e_hat = c.bundle().transform(
        m_hat, [&](const BundleExpr& e) { return BundleExpr::tensor(h_hat, BundleExpr::pullback(rho, e)); });
    return KCycle(m_hat, std::move(e_hat), c.map() * rho);
}

/// Rational-cohomology shadow of the Thom/Gysin pushforward
/// K(M) -> K(X) for an embedding i: ch(i_! a) = i_*(ch(a) · Td(N)^{-1}).
inline GradedClass thom_pushforward(const KClass& a, const ModelMap& inclusion)
{
    if (inclusion.kind() != MapKind::LinearInclusion && inclusion.kind() != MapKind::Identity) {
        throw Unsupported("Thom pushforward needs a linear inclusion, got " + inclusion.to_string());
    }
    if (inclusion.codimension() % 2 != 0) {
        throw InvalidArgument("Thom pushforward needs even codimension");
    }
    if (a.space() != inclusion.source()) {
        throw SpaceMismatch("K-class on " + a.space().text() + " pushed along " + inclusion.to_string());
    }
    const BundleData normal = BundleExpr::normal(inclusion).evaluate(a.order());
    const GradedClass corrected = a.ch() * todd_class(normal.total_chern, a.order()).inverse();
    return poincare_dual_inverse(inclusion.pushforward(poincare_dual(corrected)));
}

/// Integral K-class on CP^n or S^2 with prescribed Chern character, written
/// over line bundles O(i). Throws when `ch` is not the character of an
/// integral class.
inline KClass realize_k_class(const GradedClass& ch, int order = kDefaultOrder)
{
    const Space& x = ch.space();
    const bool ok = x->kind() == SpaceKind::ComplexProjective ||
                    (x->kind() == SpaceKind::Sphere && x->parameter() == 2);
    if (!ok) {
        throw Unsupported("cannot realize K-classes on " + x.text());
    }
    const int n = x->dimension() / 2;
    // basis h^j with h = O(1) - 1, ch(h)^j = (e^g - 1)^j = g^j + higher terms
    const GradedClass h = BundleExpr::tautological(x, 1).chern_character(order) - GradedClass::one(x);
    GradedClass residual = ch;
    std::vector<Rational> a;
    for (int j = 0; j <= n; ++j) {
        Exponents e{j};
        const Rational aj = residual.coefficient(e);
        a.push_back(aj);
        residual -= aj * h.pow(j);
    }
    if (!residual.is_zero()) {
        throw InvalidArgument("not a Chern character of a K^0 class: " + ch.to_string());
    }
    std::vector<BundleExpr> plus;
    std::vector<BundleExpr> minus;
    for (int i = 0; i <= n; ++i) {
        // h^j = sum_i C(j,i) (-1)^{j-i} O(i)
        Rational count = 0;
        for (int j = i; j <= n; ++j) {
            Rational term = a[static_cast<std::size_t>(j)] * Rational(binomial(j, static_cast<unsigned>(i)));
            count += (j - i) % 2 == 0 ? term : Rational(-term);
        }
        if (!is_integer(count)) {
            throw InvalidArgument("Chern character " + ch.to_string() + " is not integral");
        }
        const long mult = count.get_num().get_si();
        if (mult == 0) {
            continue;
        }
        const long magnitude = mult > 0 ? mult : -mult;
        BundleExpr summand = i == 0 ? BundleExpr::trivial(x, static_cast<int>(magnitude))
                                    : BundleExpr::tautological(x, i);
        if (i != 0 && magnitude > 1) {
            summand = BundleExpr::tensor(BundleExpr::trivial(x, static_cast<int>(magnitude)), summand);
        }
        (mult > 0 ? plus : minus).push_back(summand);
    }
    return KClass(x, std::move(plus), std::move(minus), order);
}

struct TachyonResult {
    KCycle cycle;
    bool verified = false;
};

/// Brane/antibrane condensation [M, E, i] ~ [X, V - W, id_X] for a linear
/// inclusion i. V - W carries the Thom-pushforward charge; the equality of
/// homological Chern characters is checked before returning.
inline TachyonResult tachyon_reduce(const KCycle& c)
{
    const ModelMap& phi = c.map();
    if (phi.kind() == MapKind::Identity) {
        return {c, true};
    }
    const GradedClass charge = thom_pushforward(c.bundle(), phi);
    const Space& x = phi.target();
    KCycle reduced(x, realize_k_class(charge, c.bundle().order()), ModelMap::identity(x));
    if (reduced.bundle().ch() != charge) {
        throw InternalError("realized K-class has character " + reduced.bundle().ch().to_string() +
                            ", expected " + charge.to_string());
    }
    const HomologyClass before = hom_chern(c);
    const HomologyClass after = hom_chern(reduced);
    if (before != after) {
        throw InternalError("tachyon reduction changed the charge: " + before.to_string() + " vs " +
                            after.to_string());
    }
    return {std::move(reduced), true};
}

} // namespace kcharge
