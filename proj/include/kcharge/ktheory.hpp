#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kcharge/bundle.hpp"
#include "kcharge/charclass.hpp"
#include "kcharge/error.hpp"
#include "kcharge/graded.hpp"
#include "kcharge/space.hpp"

namespace kcharge {

/// Formal difference (sum of plus) - (sum of minus) of bundle expressions:
/// an element of the Grothendieck group K^0(X). The virtual rank and the
/// Chern-character image are computed once at construction.
class KClass {
public:
    explicit KClass(Space space, int order = kDefaultOrder)
        : space_(std::move(space)), order_(order), ch_(space_)
    {
    }

    KClass(Space space, std::vector<BundleExpr> plus, std::vector<BundleExpr> minus, int order = kDefaultOrder)
        : space_(std::move(space)), order_(order), plus_(std::move(plus)), minus_(std::move(minus)), ch_(space_)
    {
        for (const auto& e : plus_) {
            absorb(e, 1);
        }
        for (const auto& e : minus_) {
            absorb(e, -1);
        }
    }

    static KClass of(const BundleExpr& e, int order = kDefaultOrder) { return KClass(e.space(), {e}, {}, order); }

    static KClass difference(const BundleExpr& e, const BundleExpr& f, int order = kDefaultOrder)
    {
        if (e.space() != f.space()) {
            throw SpaceMismatch("K-class difference of bundles on " + e.space().text() + " and " + f.space().text());
        }
        return KClass(e.space(), {e}, {f}, order);
    }

    const Space& space() const { return space_; }
    int order() const { return order_; }
    const std::vector<BundleExpr>& plus() const { return plus_; }
    const std::vector<BundleExpr>& minus() const { return minus_; }
    int virtual_rank() const { return rank_; }
    const GradedClass& ch() const { return ch_; }

    /// c(plus) / c(minus).
    GradedClass total_chern() const
    {
        GradedClass num = GradedClass::one(space_);
        GradedClass den = GradedClass::one(space_);
        for (const auto& e : plus_) {
            num = num * e.evaluate(order_).total_chern;
        }
        for (const auto& e : minus_) {
            den = den * e.evaluate(order_).total_chern;
        }
        return num * den.inverse();
    }

    friend KClass operator+(const KClass& a, const KClass& b)
    {
        a.require_same_space(b);
        std::vector<BundleExpr> plus = a.plus_;
        std::vector<BundleExpr> minus = a.minus_;
        plus.insert(plus.end(), b.plus_.begin(), b.plus_.end());
        minus.insert(minus.end(), b.minus_.begin(), b.minus_.end());
        return KClass(a.space_, std::move(plus), std::move(minus), std::min(a.order_, b.order_));
    }

    /// The inverse of E - F is F - E.
    friend KClass operator-(const KClass& a) { return KClass(a.space_, a.minus_, a.plus_, a.order_); }

    friend KClass operator-(const KClass& a, const KClass& b) { return a + (-b); }

    /// (E1 - E2)(F1 - F2) = E1F1 + E2F2 - E1F2 - E2F1
    friend KClass operator*(const KClass& a, const KClass& b)
    {
        a.require_same_space(b);
        std::vector<BundleExpr> plus;
        std::vector<BundleExpr> minus;
        auto cross = [](const std::vector<BundleExpr>& xs, const std::vector<BundleExpr>& ys,
                        std::vector<BundleExpr>& out) {
            for (const auto& x : xs) {
                for (const auto& y : ys) {
                    out.push_back(BundleExpr::tensor(x, y));
                }
            }
        };
        cross(a.plus_, b.plus_, plus);
        cross(a.minus_, b.minus_, plus);
        cross(a.plus_, b.minus_, minus);
        cross(a.minus_, b.plus_, minus);
        return KClass(a.space_, std::move(plus), std::move(minus), std::min(a.order_, b.order_));
    }

    /// Applies `fn` (BundleExpr -> BundleExpr) to every summand, e.g. a pullback.
    template <class Fn>
    KClass transform(const Space& space, Fn fn) const
    {
        std::vector<BundleExpr> plus;
        std::vector<BundleExpr> minus;
        for (const auto& e : plus_) {
            plus.push_back(fn(e));
        }
        for (const auto& e : minus_) {
            minus.push_back(fn(e));
        }
        return KClass(space, std::move(plus), std::move(minus), order_);
    }

    /// `A (+) B - C (+) D`; the empty class prints as `eps(0)`.
    std::string to_string() const
    {
        auto join = [](const std::vector<BundleExpr>& xs) {
            std::string s;
            for (const auto& e : xs) {
                s += (s.empty() ? "" : " (+) ") + e.to_string();
            }
            return s;
        };
        std::string s = plus_.empty() ? std::string("eps(0)") : join(plus_);
        if (!minus_.empty()) {
            s += " - " + join(minus_);
        }
        return s;
    }

private:
    void absorb(const BundleExpr& e, int sign)
    {
        if (e.space() != space_) {
            throw SpaceMismatch("K-class on " + space_.text() + " given a bundle on " + e.space().text());
        }
        BundleData d = e.evaluate(order_);
        rank_ = checked_rank(static_cast<long long>(rank_) + static_cast<long long>(sign) * d.rank);
        GradedClass ch = kcharge::chern_character(d.rank, d.total_chern, order_);
        if (sign > 0) {
            ch_ += ch;
        } else {
            ch_ -= ch;
        }
    }

    void require_same_space(const KClass& b) const
    {
        if (space_ != b.space_) {
            throw SpaceMismatch("K-classes on " + space_.text() + " and " + b.space_.text());
        }
    }

    Space space_;
    int order_;
    std::vector<BundleExpr> plus_;
    std::vector<BundleExpr> minus_;
    int rank_ = 0;
    GradedClass ch_;
};

/// Equality in K^0(X) decided by (virtual rank, Chern character). Sound and
/// complete on the catalog because every catalog space has torsion-free K-theory;
/// it is not a decision procedure for spaces with torsion.
inline bool equal_mod_stable(const KClass& a, const KClass& b)
{
    if (a.space() != b.space()) {
        throw SpaceMismatch("comparing K-classes on " + a.space().text() + " and " + b.space().text());
    }
    return a.virtual_rank() == b.virtual_rank() && a.ch() == b.ch();
}

/// Finitely generated abelian group Z^r (+) Z/k1 (+) ... in invariant-factor form.
struct FGAbelianGroup {
    long free_rank = 0;
    std::vector<long> torsion;

    FGAbelianGroup() = default;
    explicit FGAbelianGroup(long rank, std::vector<long> factors = {}) : free_rank(rank), torsion(std::move(factors))
    {
        canonicalize();
    }

    /// Invariant factors k1 | k2 | ...; units dropped.
    void canonicalize()
    {
        for (auto& t : torsion) {
            t = std::abs(t);
            if (t == 0) {
                throw InvalidArgument("torsion factor 0 belongs in the free rank");
            }
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < torsion.size(); ++i) {
                for (std::size_t j = i + 1; j < torsion.size(); ++j) {
                    const long g = std::gcd(torsion[i], torsion[j]);
                    const long l = torsion[i] / g * torsion[j];
                    if (torsion[i] != g || torsion[j] != l) {
                        torsion[i] = g;
                        torsion[j] = l;
                        changed = true;
                    }
                }
            }
        }
        torsion.erase(std::remove(torsion.begin(), torsion.end(), 1L), torsion.end());
    }

    /// `0`, `Z`, `Z^r`, with ` (+) Z/k` per torsion factor.
    std::string to_string() const
    {
        std::string s;
        if (free_rank == 1) {
            s = "Z";
        } else if (free_rank > 1) {
            s = "Z^" + std::to_string(free_rank);
        }
        for (long t : torsion) {
            s += (s.empty() ? "" : " (+) ") + std::string("Z/") + std::to_string(t);
        }
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const FGAbelianGroup& a, const FGAbelianGroup& b)
    {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

namespace detail {

struct KRanks {
    long even = 0;
    long odd = 0;
};

inline KRanks k_ranks(const Space& x)
{
    const int n = x->parameter();
    switch (x->kind()) {
    case SpaceKind::Point:
        return {1, 0};
    case SpaceKind::Sphere:
        return n % 2 == 0 ? KRanks{2, 0} : KRanks{1, 1};
    case SpaceKind::ComplexProjective:
        return {n + 1, 0};
    case SpaceKind::Torus:
        return {1L << (n - 1), 1L << (n - 1)};
    case SpaceKind::Product: {
        KRanks r{1, 0};
        for (const auto& f : x->factors()) {
            const KRanks g = k_ranks(f);
            r = {r.even * g.even + r.odd * g.odd, r.even * g.odd + r.odd * g.even};
        }
        return r;
    }
    }
    throw InternalError("unreachable space kind");
}

} // namespace detail

/// K^degree(X); depends on degree only mod 2 (Bott periodicity).
inline FGAbelianGroup k_group(const Space& x, int degree)
{
    const detail::KRanks r = detail::k_ranks(x);
    return FGAbelianGroup(((degree % 2) + 2) % 2 == 0 ? r.even : r.odd);
}

/// Reduced K-theory: the kernel of restriction to a basepoint, which splits
/// K^0(X) = K~^0(X) (+) Z. Odd degree is unchanged.
inline FGAbelianGroup reduced_k_group(const Space& x, int degree = 0)
{
    FGAbelianGroup g = k_group(x, degree);
    if (((degree % 2) + 2) % 2 == 0) {
        g.free_rank -= 1;
    }
    return g;
}

enum class Parity { Even, Odd };

inline std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// Parity of the degrees supporting a class; the zero class counts as even.
inline Parity chern_parity(const GradedClass& ch)
{
    const bool odd = ch.has_odd_support();
    if (odd && ch.has_even_support()) {
        throw InvalidArgument("class with mixed-parity support: " + ch.to_string());
    }
    return odd ? Parity::Odd : Parity::Even;
}

/// K^0 classes have Chern characters in even degrees.
inline Parity chern_parity(const KClass& k)
{
    if (chern_parity(k.ch()) != Parity::Even) {
        throw InternalError("K^0 class with odd Chern character: " + k.ch().to_string());
    }
    return Parity::Even;
}

} // namespace kcharge
