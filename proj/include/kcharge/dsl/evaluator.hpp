#pragma once

#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kcharge/dsl/ast.hpp"
#include "kcharge/dsl/diagnostic.hpp"
#include "kcharge/dsl/parser.hpp"
#include "kcharge/kcharge.hpp"

namespace kcharge::dsl {

inline constexpr int kMaxDimension = 40;
inline constexpr std::size_t kMaxBasis = 1024;
inline constexpr int kMaxDegreeCap = 20;
inline constexpr std::size_t kMaxSummands = 256;

/// Result of one `print`.
struct Output {
    int statement = 0; // 1-based statement index
    std::string kind;  // rational, class, homology, group, brane, parity, kcycle, space, map, kclass
    std::optional<std::string> space;
    std::string value;
};

inline std::string to_human(const Output& o) { return o.value + "\n"; }

/// One JSON object per line: {"stmt":..,"kind":..,"space":..,"value":..}.
inline std::string to_json(const Output& o)
{
    nlohmann::ordered_json j;
    j["stmt"] = o.statement;
    j["kind"] = o.kind;
    j["space"] = o.space ? nlohmann::ordered_json(*o.space) : nlohmann::ordered_json(nullptr);
    j["value"] = o.value;
    return j.dump() + "\n";
}

class Evaluator {
public:
    using Sink = std::function<void(const Output&)>;

    Evaluator(std::string_view source, int degree_cap, Sink sink)
        : src_(source), cap_(degree_cap), sink_(std::move(sink))
    {
        if (cap_ < 0 || cap_ > kMaxDegreeCap) {
            throw InvalidArgument("degree cap must lie in [0, " + std::to_string(kMaxDegreeCap) + "]");
        }
    }

    /// Runs every statement in order; stops at the first DiagnosticError.
    void run(const Script& script)
    {
        for (std::size_t i = 0; i < script.statements.size(); ++i) {
            execute(script.statements[i], static_cast<int>(i + 1));
        }
    }

private:
    using Binding = std::variant<Space, ModelMap, KClass, KCycle>;
    using Value = std::variant<Rational, GradedClass, HomologyClass, FGAbelianGroup, BraneType, Parity, KCycle,
                               Space, ModelMap, KClass>;

    [[noreturn]] void fail(Pos pos, std::string message) const { throw make_error(src_, pos, std::move(message)); }

    /// Runs `fn`, turning engine errors into a Diagnostic at `pos`.
    template <class Fn>
    auto at(Pos pos, Fn fn) const -> decltype(fn())
    {
        try {
            return fn();
        } catch (const DiagnosticError&) {
            throw;
        } catch (const Error& e) {
            fail(pos, e.what());
        }
    }

    // --- environment ---

    static const char* binding_kind(const Binding& b)
    {
        switch (b.index()) {
        case 0:
            return "a space";
        case 1:
            return "a map";
        case 2:
            return "a bundle";
        default:
            return "a kcycle";
        }
    }

    void bind(const std::string& name, Pos pos, Binding b)
    {
        if (env_.contains(name)) {
            fail(pos, "'" + name + "' is already declared");
        }
        env_.emplace(name, std::move(b));
    }

    const Binding& lookup(const std::string& name, Pos pos) const
    {
        auto it = env_.find(name);
        if (it == env_.end()) {
            fail(pos, "undeclared name '" + name + "'");
        }
        return it->second;
    }

    template <class T>
    const T& lookup_as(const std::string& name, Pos pos, const char* wanted) const
    {
        const Binding& b = lookup(name, pos);
        if (const T* v = std::get_if<T>(&b)) {
            return *v;
        }
        fail(pos, "'" + name + "' is " + binding_kind(b) + ", expected " + wanted);
    }

    // --- spaces ---

    Space space(const SpaceNode& s) const
    {
        using K = SpaceNode::Kind;
        auto sized = [&](auto make) -> Space {
            if (s.value < 1 || s.value > kMaxDimension) {
                fail(s.pos, "space parameter must lie in [1, " + std::to_string(kMaxDimension) + "]");
            }
            return at(s.pos, [&] { return make(static_cast<int>(s.value)); });
        };
        Space out;
        switch (s.kind) {
        case K::Name:
            return lookup_as<Space>(s.name, s.pos, "a space");
        case K::Point:
            return Space::point();
        case K::Sphere:
            out = sized(Space::sphere);
            break;
        case K::CP:
            out = sized(Space::cp);
            break;
        case K::Torus:
            out = sized(Space::torus);
            break;
        case K::Product: {
            std::vector<Space> factors;
            int dim = 0;
            for (const auto& f : s.factors) {
                factors.push_back(space(f));
                dim += factors.back()->dimension();
                if (dim > kMaxDimension) {
                    fail(s.pos, "space dimension exceeds " + std::to_string(kMaxDimension));
                }
            }
            out = at(s.pos, [&] { return Space::product(std::move(factors)); });
            break;
        }
        }
        if (out->dimension() > kMaxDimension) {
            fail(s.pos, "space dimension exceeds " + std::to_string(kMaxDimension));
        }
        if (out.basis_size() > kMaxBasis) {
            fail(s.pos, "cohomology basis of " + out.text() + " exceeds " + std::to_string(kMaxBasis) + " elements");
        }
        return out;
    }

    // --- maps ---

    ModelMap map(const MapNode& m, const Space& source, const Space& target) const
    {
        using K = MapNode::Kind;
        const ModelMap f = at(m.pos, [&]() -> ModelMap {
            auto index = [&]() -> std::size_t {
                if (m.value < 1) {
                    fail(m.pos, "factor index must be positive");
                }
                return static_cast<std::size_t>(m.value - 1);
            };
            switch (m.kind) {
            case K::Identity:
                return ModelMap::identity(source);
            case K::Constant:
                return ModelMap::constant(source, target);
            case K::Degree:
                return ModelMap::sphere_degree(source, static_cast<int>(m.value));
            case K::Inclusion:
                if (source->kind() == SpaceKind::Torus && target->kind() == SpaceKind::Torus) {
                    return ModelMap::torus_inclusion(source, target);
                }
                return ModelMap::linear_inclusion(source, target);
            case K::Slice:
                return ModelMap::slice(target, index());
            case K::Projection:
                return ModelMap::projection(source, index());
            case K::Compose: {
                std::vector<ModelMap> parts;
                for (auto it = m.names.rbegin(); it != m.names.rend(); ++it) {
                    parts.push_back(lookup_as<ModelMap>(*it, m.pos, "a map"));
                }
                return ModelMap::compose(parts);
            }
            }
            throw InternalError("unreachable map kind");
        });
        if (f.source() != source || f.target() != target) {
            fail(m.pos, "map is " + f.to_string() + ", declared " + source.text() + " -> " + target.text());
        }
        return f;
    }

    // --- bundles ---

    static bool mentions_line(const BundleNode& b)
    {
        if (b.kind == BundleNode::Kind::Line) {
            return true;
        }
        for (const auto& c : b.children) {
            if (b.kind != BundleNode::Kind::Pull && mentions_line(c)) {
                return true;
            }
        }
        return false;
    }

    /// Space a bundle expression lives on, when its leaves pin it down.
    std::optional<Space> infer(const BundleNode& b) const
    {
        using K = BundleNode::Kind;
        switch (b.kind) {
        case K::Name:
            return lookup_as<KClass>(b.name, b.pos, "a bundle").space();
        case K::Line:
        case K::Trivial:
            return std::nullopt;
        case K::Tangent:
            return space(b.space.at(0));
        case K::Normal:
        case K::Pull:
            return lookup_as<ModelMap>(b.name, b.pos, "a map").source();
        case K::Dual:
            return infer(b.children.at(0));
        case K::Sum:
        case K::Tensor:
        case K::Difference: {
            auto s = infer(b.children.at(0));
            return s ? s : infer(b.children.at(1));
        }
        }
        return std::nullopt;
    }

    KClass bundle_on_inferred(const BundleNode& b) const
    {
        if (auto s = infer(b)) {
            return bundle(b, *s);
        }
        if (mentions_line(b)) {
            fail(b.pos, "cannot infer the space of this bundle; declare it with 'bundle NAME on SPACE'");
        }
        return bundle(b, Space::point());
    }

    KClass bundle(const BundleNode& b, const Space& x) const
    {
        using K = BundleNode::Kind;
        auto single = [&](auto make) { return at(b.pos, [&] { return KClass::of(make(), cap_); }); };
        auto require_space = [&](const Space& s) {
            if (s != x) {
                fail(b.pos, "bundle lives on " + s.text() + ", expected " + x.text());
            }
        };
        switch (b.kind) {
        case K::Name: {
            const KClass& k = lookup_as<KClass>(b.name, b.pos, "a bundle");
            require_space(k.space());
            return k;
        }
        case K::Line:
            return single([&] { return BundleExpr::tautological(x, static_cast<int>(b.value)); });
        case K::Trivial:
            if (b.value < 0) {
                fail(b.pos, "eps(n) needs n >= 0");
            }
            return single([&] { return BundleExpr::trivial(x, static_cast<int>(b.value)); });
        case K::Tangent:
            require_space(space(b.space.at(0)));
            return single([&] { return BundleExpr::tangent(x); });
        case K::Normal: {
            const ModelMap& f = lookup_as<ModelMap>(b.name, b.pos, "a map");
            require_space(f.source());
            return single([&] { return BundleExpr::normal(f); });
        }
        case K::Dual: {
            const KClass inner = bundle(b.children.at(0), x);
            return at(b.pos, [&] { return inner.transform(x, [](const BundleExpr& e) { return BundleExpr::dual(e); }); });
        }
        case K::Pull: {
            const ModelMap& f = lookup_as<ModelMap>(b.name, b.pos, "a map");
            require_space(f.source());
            const KClass inner = bundle(b.children.at(0), f.target());
            return at(b.pos, [&] {
                return inner.transform(x, [&](const BundleExpr& e) { return BundleExpr::pullback(f, e); });
            });
        }
        case K::Sum:
        case K::Tensor:
        case K::Difference: {
            const KClass lhs = bundle(b.children.at(0), x);
            const KClass rhs = bundle(b.children.at(1), x);
            const std::size_t nl = lhs.plus().size() + lhs.minus().size();
            const std::size_t nr = rhs.plus().size() + rhs.minus().size();
            if ((b.kind == K::Tensor ? nl * nr : nl + nr) > kMaxSummands) {
                fail(b.pos, "bundle expression expands to more than " + std::to_string(kMaxSummands) + " summands");
            }
            return at(b.pos, [&] {
                return b.kind == K::Sum ? lhs + rhs : b.kind == K::Tensor ? lhs * rhs : lhs - rhs;
            });
        }
        }
        throw InternalError("unreachable bundle kind");
    }

    // --- expressions ---

    static std::string kind_name(const Value& v)
    {
        static const char* names[] = {"rational", "class", "homology", "group", "brane",
                                      "parity",   "kcycle", "space",   "map",   "kclass"};
        return names[v.index()];
    }

    static std::optional<std::string> space_of(const Value& v)
    {
        return std::visit(
            [](const auto& x) -> std::optional<std::string> {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, GradedClass> || std::is_same_v<T, HomologyClass> ||
                              std::is_same_v<T, KClass>) {
                    return x.space().text();
                } else if constexpr (std::is_same_v<T, KCycle>) {
                    return x.target().text();
                } else if constexpr (std::is_same_v<T, Space>) {
                    return x.text();
                } else {
                    return std::nullopt;
                }
            },
            v);
    }

    static std::string text_of(const Value& v)
    {
        return std::visit(
            [](const auto& x) -> std::string {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Rational>) {
                    return kcharge::to_string(x);
                } else if constexpr (std::is_same_v<T, BraneType> || std::is_same_v<T, Parity>) {
                    return kcharge::to_string(x);
                } else if constexpr (std::is_same_v<T, Space>) {
                    return x.text();
                } else {
                    return x.to_string();
                }
            },
            v);
    }

    Value arithmetic(const ExprNode& e, const Value& a, const Value& b) const
    {
        using K = ExprNode::Kind;
        const auto* qa = std::get_if<Rational>(&a);
        const auto* qb = std::get_if<Rational>(&b);
        const auto* ca = std::get_if<GradedClass>(&a);
        const auto* cb = std::get_if<GradedClass>(&b);
        const auto* ha = std::get_if<HomologyClass>(&a);
        const auto* hb = std::get_if<HomologyClass>(&b);
        auto combine = [&](const auto& x, const auto& y) -> Value {
            using T = std::decay_t<decltype(x)>;
            switch (e.kind) {
            case K::Add:
                return T(x + y);
            case K::Sub:
                return T(x - y);
            default:
                if constexpr (requires { x * y; }) {
                    return T(x * y);
                }
                throw InternalError("unsupported product");
            }
        };
        return at(e.pos, [&]() -> Value {
            if (qa && qb) {
                return combine(*qa, *qb);
            }
            if (ca && cb) {
                return combine(*ca, *cb);
            }
            if (qa && cb) {
                return combine(GradedClass::constant(cb->space(), *qa), *cb);
            }
            if (ca && qb) {
                return combine(*ca, GradedClass::constant(ca->space(), *qb));
            }
            if (ha && hb && e.kind != K::Mul) {
                return combine(*ha, *hb);
            }
            if (e.kind == K::Mul && qa && hb) {
                return *qa * *hb;
            }
            if (e.kind == K::Mul && ha && qb) {
                return *qb * *ha;
            }
            const char* op = e.kind == K::Add ? "+" : e.kind == K::Sub ? "-" : "*";
            fail(e.pos, "operator " + std::string(op) + " does not apply to " + kind_name(a) + " and " + kind_name(b));
        });
    }

    Value eval(const ExprNode& e) const
    {
        using K = ExprNode::Kind;
        switch (e.kind) {
        case K::Int:
            return Rational(e.value);
        case K::Name: {
            return std::visit([](const auto& x) -> Value { return x; }, lookup(e.name, e.pos));
        }
        case K::Neg: {
            const Value v = eval(e.children.at(0));
            if (const auto* q = std::get_if<Rational>(&v)) {
                return Rational(-*q);
            }
            if (const auto* c = std::get_if<GradedClass>(&v)) {
                return -*c;
            }
            if (const auto* h = std::get_if<HomologyClass>(&v)) {
                return -*h;
            }
            fail(e.pos, "cannot negate a " + kind_name(v));
        }
        case K::Add:
        case K::Sub:
        case K::Mul:
            return arithmetic(e, eval(e.children.at(0)), eval(e.children.at(1)));
        case K::Ch: {
            const KClass k = bundle_on_inferred(e.bundle.at(0));
            return k.ch();
        }
        case K::Td: {
            const KClass k = bundle_on_inferred(e.bundle.at(0));
            return at(e.pos, [&] { return todd_class(k.total_chern(), cap_); });
        }
        case K::AHat: {
            const KClass k = bundle_on_inferred(e.bundle.at(0));
            return at(e.pos, [&] {
                const auto p = pontryagin_classes(k.total_chern());
                return a_hat_class(k.space(), p, cap_);
            });
        }
        case K::Chern: {
            const KClass k = bundle_on_inferred(e.bundle.at(0));
            if (e.value < 0) {
                fail(e.pos, "Chern class index must be >= 0");
            }
            if (2 * e.value > k.space()->dimension()) {
                return GradedClass(k.space());
            }
            return at(e.pos, [&] { return k.total_chern().homogeneous(2 * static_cast<int>(e.value)); });
        }
        case K::Pontryagin: {
            const KClass k = bundle_on_inferred(e.bundle.at(0));
            if (e.value < 0) {
                fail(e.pos, "Pontryagin class index must be >= 0");
            }
            if (e.value == 0) {
                return GradedClass::one(k.space());
            }
            return at(e.pos, [&] {
                const auto p = pontryagin_classes(k.total_chern());
                const auto i = static_cast<std::size_t>(e.value);
                return i <= p.size() ? p[i - 1] : GradedClass(k.space());
            });
        }
        case K::Integrate: {
            const Value v = eval(e.children.at(0));
            if (const auto* q = std::get_if<Rational>(&v)) {
                return *q;
            }
            if (const auto* c = std::get_if<GradedClass>(&v)) {
                return integrate(*c);
            }
            if (const auto* h = std::get_if<HomologyClass>(&v)) {
                return at(e.pos, [&] { return pair(GradedClass::one(h->space()), *h); });
            }
            fail(e.pos, "cannot integrate a " + kind_name(v));
        }
        case K::HomChern: {
            const KCycle& c = lookup_as<KCycle>(e.name, e.pos, "a kcycle");
            return at(e.pos, [&] { return hom_chern(c); });
        }
        case K::KGroup: {
            const Space x = space(e.space.at(0));
            return at(e.pos, [&] { return k_group(x, static_cast<int>(e.value)); });
        }
        case K::Parity: {
            const Binding& b = lookup(e.name, e.pos);
            if (const auto* c = std::get_if<KCycle>(&b)) {
                return parity_type(*c);
            }
            if (const auto* k = std::get_if<KClass>(&b)) {
                return at(e.pos, [&] { return chern_parity(*k); });
            }
            fail(e.pos, "'" + e.name + "' is " + binding_kind(b) + ", expected a kcycle or a bundle");
        }
        case K::Tachyon: {
            const KCycle& c = lookup_as<KCycle>(e.name, e.pos, "a kcycle");
            return at(e.pos, [&] { return tachyon_reduce(c).cycle; });
        }
        }
        throw InternalError("unreachable expression kind");
    }

    /// Canonical form used by assert; rationals compare as constant classes.
    static bool same_value(const Value& a, const Value& b)
    {
        const auto sa = space_of(a);
        const auto sb = space_of(b);
        if (sa && sb && *sa != *sb) {
            return false;
        }
        const bool scalar_a = std::holds_alternative<Rational>(a) || std::holds_alternative<GradedClass>(a);
        const bool scalar_b = std::holds_alternative<Rational>(b) || std::holds_alternative<GradedClass>(b);
        if (a.index() != b.index() && !(scalar_a && scalar_b)) {
            return false;
        }
        return text_of(a) == text_of(b);
    }

    // --- statements ---

    void execute(const Stmt& st, int index)
    {
        using K = Stmt::Kind;
        switch (st.kind) {
        case K::Space:
            bind(st.name, st.name_pos, space(st.space));
            break;
        case K::Map: {
            const Space& src = lookup_as<Space>(st.source, st.source_pos, "a space");
            const Space& tgt = lookup_as<Space>(st.target, st.target_pos, "a space");
            ModelMap f = map(st.map, src, tgt);
            bind(st.name, st.name_pos, std::move(f));
            break;
        }
        case K::Bundle: {
            const Space& x = lookup_as<Space>(st.source, st.source_pos, "a space");
            KClass k = bundle(st.bundle, x);
            bind(st.name, st.name_pos, std::move(k));
            break;
        }
        case K::KCycle: {
            const Space& m = lookup_as<Space>(st.source, st.source_pos, "a space");
            const KClass e = bundle(st.bundle, m);
            const ModelMap& f = lookup_as<ModelMap>(st.target, st.target_pos, "a map");
            KCycle c = at(st.pos, [&] { return KCycle(m, e, f); });
            bind(st.name, st.name_pos, std::move(c));
            break;
        }
        case K::Print: {
            const Value v = eval(st.exprs.at(0));
            sink_(Output{index, kind_name(v), space_of(v), text_of(v)});
            break;
        }
        case K::Assert: {
            const Value a = eval(st.exprs.at(0));
            const Value b = eval(st.exprs.at(1));
            if (!same_value(a, b)) {
                auto shown = [](const Value& v) {
                    const auto s = space_of(v);
                    return text_of(v) + (s ? " (on " + *s + ")" : "");
                };
                fail(st.pos, "assertion failed: " + shown(a) + " != " + shown(b));
            }
            break;
        }
        }
    }

    std::string_view src_;
    int cap_;
    Sink sink_;
    std::map<std::string, Binding> env_;
};

/// Parses and evaluates `source`, passing each print to `sink`.
inline void run_script(std::string_view source, int degree_cap, const Evaluator::Sink& sink)
{
    const Script script = parse(source);
    Evaluator(source, degree_cap, sink).run(script);
}

/// Convenience: all outputs of a script, or the DiagnosticError.
inline std::vector<Output> evaluate(std::string_view source, int degree_cap = kDefaultOrder)
{
    std::vector<Output> out;
    run_script(source, degree_cap, [&](const Output& o) { out.push_back(o); });
    return out;
}

} // namespace kcharge::dsl
