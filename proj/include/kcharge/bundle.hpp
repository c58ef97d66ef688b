#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcharge/charclass.hpp"
#include "kcharge/error.hpp"
#include "kcharge/graded.hpp"
#include "kcharge/map.hpp"
#include "kcharge/space.hpp"

namespace kcharge {

enum class BundleKind {
    Line,         // line bundle with prescribed c_1
    Tautological, // O(k) on CP^n (and on S^2 = CP^1)
    Trivial,
    Tangent,
    Normal,
    ClutchedSpinor, // clutched spinor bundle on S^{2k} used by vector-bundle modification
    Dual,
    Sum,
    Tensor,
    Pullback,
};

/// Rank arithmetic with an overflow check.
inline int checked_rank(long long r)
{
    if (r > std::numeric_limits<int>::max() || r < std::numeric_limits<int>::min()) {
        throw InvalidArgument("bundle rank out of range");
    }
    return static_cast<int>(r);
}

/// Rank and total Chern class of an evaluated bundle expression.
struct BundleData {
    int rank = 0;
    GradedClass total_chern;
};

/// Immutable symbolic vector-bundle expression over one catalog space.
class BundleExpr {
public:
    /// Line bundle with first Chern class `c1` (a degree-2 class).
    static BundleExpr line(const GradedClass& c1)
    {
        if (!c1.is_zero() && c1.homogeneous(2) != c1) {
            throw InvalidArgument("c_1 of a line bundle must have degree 2, got " + c1.to_string());
        }
        auto n = node(BundleKind::Line, c1.space());
        n->c1 = c1;
        return BundleExpr(std::move(n));
    }

    /// O(k): c = 1 + k x on CP^n, 1 + k y on S^2.
    static BundleExpr tautological(const Space& x, int k)
    {
        const bool ok = x->kind() == SpaceKind::ComplexProjective ||
                        (x->kind() == SpaceKind::Sphere && x->parameter() == 2);
        if (!ok) {
            throw Unsupported("O(k) is defined on CP(n) and S(2), not " + x.text());
        }
        auto n = node(BundleKind::Tautological, x);
        n->param = k;
        return BundleExpr(std::move(n));
    }

    static BundleExpr trivial(const Space& x, int rank)
    {
        if (rank < 0) {
            throw InvalidArgument("trivial bundle of negative rank");
        }
        auto n = node(BundleKind::Trivial, x);
        n->param = rank;
        return BundleExpr(std::move(n));
    }

    static BundleExpr tangent(const Space& x) { return BundleExpr(node(BundleKind::Tangent, x)); }

    /// Normal bundle of a linear inclusion (or of the identity).
    static BundleExpr normal(const ModelMap& embedding)
    {
        if (embedding.kind() != MapKind::LinearInclusion && embedding.kind() != MapKind::Identity) {
            throw Unsupported("normal bundles are available for linear inclusions only, not " +
                              embedding.to_string());
        }
        auto n = node(BundleKind::Normal, embedding.source());
        n->map = embedding;
        return BundleExpr(std::move(n));
    }

    /// Clutched spinor bundle on S^{2k} from the trivial rank-2k bundle over a
    /// point: rank 2^{k-1}, ch = 2^{k-1} + y.
    static BundleExpr clutched_spinor(int half_rank)
    {
        if (half_rank < 1 || half_rank > 8) {
            throw InvalidArgument("clutched spinor bundle needs 1 <= k <= 8");
        }
        auto n = node(BundleKind::ClutchedSpinor, Space::sphere(2 * half_rank));
        n->param = half_rank;
        return BundleExpr(std::move(n));
    }

    static BundleExpr dual(const BundleExpr& e)
    {
        auto n = node(BundleKind::Dual, e.space());
        n->children = {e};
        return BundleExpr(std::move(n));
    }

    static BundleExpr sum(const BundleExpr& a, const BundleExpr& b) { return binary(BundleKind::Sum, a, b); }
    static BundleExpr tensor(const BundleExpr& a, const BundleExpr& b) { return binary(BundleKind::Tensor, a, b); }

    static BundleExpr pullback(const ModelMap& f, const BundleExpr& e)
    {
        if (e.space() != f.target()) {
            throw SpaceMismatch("pullback along " + f.to_string() + " of a bundle on " + e.space().text());
        }
        auto n = node(BundleKind::Pullback, f.source());
        n->map = f;
        n->children = {e};
        return BundleExpr(std::move(n));
    }

    BundleKind kind() const { return node_->kind; }
    const Space& space() const { return node_->space; }
    int parameter() const { return node_->param; }
    const std::vector<BundleExpr>& children() const { return node_->children; }
    const std::optional<ModelMap>& map() const { return node_->map; }
    const std::optional<GradedClass>& first_chern() const { return node_->c1; }

    BundleData evaluate(int order = kDefaultOrder) const
    {
        const Space& x = space();
        const GradedClass one = GradedClass::one(x);
        switch (kind()) {
        case BundleKind::Line:
            return {1, one + *node_->c1};
        case BundleKind::Tautological:
            return {1, one + Rational(parameter()) * GradedClass::generator(x, 0)};
        case BundleKind::Trivial:
            return {parameter(), one};
        case BundleKind::Tangent:
            return tangent_data(x);
        case BundleKind::Normal: {
            const ModelMap& f = *node_->map;
            if (f.kind() == MapKind::Identity) {
                return {0, one};
            }
            // c(N) = c(T target)|_source / c(T source) = (1 + x)^{n-m}
            const int codim = f.codimension() / 2;
            if (x->kind() == SpaceKind::Point) {
                return {codim, one};
            }
            return {codim, (one + GradedClass::generator(x, 0)).pow(codim)};
        }
        case BundleKind::ClutchedSpinor: {
            const int k = parameter();
            // only c_k survives on S^{2k}; Newton gives s_k = (-1)^{k-1} k c_k = k! y
            Rational ck(factorial(static_cast<unsigned>(k - 1)));
            if (k % 2 == 0) {
                ck = -ck;
            }
            return {1 << (k - 1), one + ck * GradedClass::generator(x, 0)};
        }
        case BundleKind::Dual: {
            BundleData d = children()[0].evaluate(order);
            return {d.rank, d.total_chern.conjugate_twist()};
        }
        case BundleKind::Sum: {
            BundleData a = children()[0].evaluate(order);
            BundleData b = children()[1].evaluate(order);
            return {checked_rank(static_cast<long long>(a.rank) + b.rank), a.total_chern * b.total_chern};
        }
        case BundleKind::Tensor: {
            // splitting principle in power-sum coordinates: ch is multiplicative
            BundleData a = children()[0].evaluate(order);
            BundleData b = children()[1].evaluate(order);
            const GradedClass ch = kcharge::chern_character(a.rank, a.total_chern, order) *
                                   kcharge::chern_character(b.rank, b.total_chern, order);
            return {checked_rank(static_cast<long long>(a.rank) * b.rank), total_chern_from_character(ch, order)};
        }
        case BundleKind::Pullback: {
            BundleData d = children()[0].evaluate(order);
            return {d.rank, node_->map->pullback(d.total_chern)};
        }
        }
        throw InternalError("unreachable bundle kind");
    }

    GradedClass chern_character(int order = kDefaultOrder) const
    {
        BundleData d = evaluate(order);
        return kcharge::chern_character(d.rank, d.total_chern, order);
    }

    /// Canonical text: `O(k)`, `eps(n)`, `T(space)`, `N(map)`, `dual(e)`,
    /// `e1 (+) e2`, `e1 (x) e2`, `pull(map, e)`, plus `L[c1]` and `spinor(k)`.
    std::string to_string() const { return format(0); }

    friend bool operator==(const BundleExpr& a, const BundleExpr& b)
    {
        return a.space() == b.space() && a.to_string() == b.to_string();
    }

private:
    struct Node {
        BundleKind kind;
        Space space;
        int param = 0;
        std::optional<GradedClass> c1;
        std::optional<ModelMap> map;
        std::vector<BundleExpr> children;
    };

    explicit BundleExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<Node> node(BundleKind kind, const Space& x)
    {
        auto n = std::make_shared<Node>(Node{kind, x, 0, std::nullopt, std::nullopt, {}});
        return n;
    }

    static BundleExpr binary(BundleKind kind, const BundleExpr& a, const BundleExpr& b)
    {
        if (a.space() != b.space()) {
            throw SpaceMismatch(std::string(kind == BundleKind::Sum ? "direct sum" : "tensor product") +
                                " of bundles on " + a.space().text() + " and " + b.space().text());
        }
        auto n = node(kind, a.space());
        n->children = {a, b};
        return BundleExpr(std::move(n));
    }

    static BundleData tangent_data(const Space& x)
    {
        const GradedClass one = GradedClass::one(x);
        switch (x->kind()) {
        case SpaceKind::Point:
            return {0, one};
        case SpaceKind::ComplexProjective: {
            const int n = x->parameter();
            return {n, (one + GradedClass::generator(x, 0)).pow(n + 1)};
        }
        case SpaceKind::Sphere:
        case SpaceKind::Torus:
            // stably trivial; spheres carry their spin structure
            return {x->parameter(), one};
        case SpaceKind::Product: {
            BundleData d{0, one};
            for (std::size_t i = 0; i < x->factors().size(); ++i) {
                const auto proj = ModelMap::projection(x, i);
                BundleData f = tangent_data(x->factors()[i]);
                d.rank = checked_rank(static_cast<long long>(d.rank) + f.rank);
                d.total_chern = d.total_chern * proj.pullback(f.total_chern);
            }
            return d;
        }
        }
        throw InternalError("unreachable space kind");
    }

    int level() const
    {
        switch (kind()) {
        case BundleKind::Sum:
            return 1;
        case BundleKind::Tensor:
            return 2;
        default:
            return 3;
        }
    }

    std::string format(int min_level) const
    {
        std::string s;
        switch (kind()) {
        case BundleKind::Line:
            s = "L[" + node_->c1->to_string() + "]";
            break;
        case BundleKind::Tautological:
            s = "O(" + std::to_string(parameter()) + ")";
            break;
        case BundleKind::Trivial:
            s = "eps(" + std::to_string(parameter()) + ")";
            break;
        case BundleKind::Tangent:
            s = "T(" + space().text() + ")";
            break;
        case BundleKind::Normal:
            s = "N(" + node_->map->to_string() + ")";
            break;
        case BundleKind::ClutchedSpinor:
            s = "spinor(" + std::to_string(parameter()) + ")";
            break;
        case BundleKind::Dual:
            s = "dual(" + children()[0].format(0) + ")";
            break;
        case BundleKind::Sum:
            s = children()[0].format(1) + " (+) " + children()[1].format(2);
            break;
        case BundleKind::Tensor:
            s = children()[0].format(2) + " (x) " + children()[1].format(3);
            break;
        case BundleKind::Pullback:
            s = "pull(" + node_->map->to_string() + ", " + children()[0].format(0) + ")";
            break;
        }
        return level() < min_level ? "(" + s + ")" : s;
    }

    std::shared_ptr<const Node> node_;
};

/// Euler-sequence identity c(T CP^n) · c(eps^1) = c(O(1))^{n+1}, checked for
/// a candidate tangent total Chern class on CP^n.
inline bool euler_sequence_holds(const GradedClass& tangent_total_chern)
{
    const Space& x = tangent_total_chern.space();
    if (x->kind() != SpaceKind::ComplexProjective) {
        throw Unsupported("Euler sequence check needs CP(n), got " + x.text());
    }
    const int n = x->parameter();
    const GradedClass lhs = tangent_total_chern * BundleExpr::trivial(x, 1).evaluate().total_chern;
    const GradedClass rhs = BundleExpr::tautological(x, 1).evaluate().total_chern.pow(n + 1);
    return lhs == rhs;
}

/// Verifies the tangent-bundle table entry for CP^n against the Euler sequence.
inline bool tangent_euler_sequence_check(int n)
{
    if (n < 1 || n > 6) {
        throw InvalidArgument("tangent_euler_sequence_check needs 1 <= n <= 6");
    }
    const Space x = Space::cp(n);
    return euler_sequence_holds(BundleExpr::tangent(x).evaluate().total_chern);
}

} // namespace kcharge
