#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kcharge/error.hpp"
#include "kcharge/rational.hpp"
#include "kcharge/space.hpp"

namespace kcharge {

/// Product of two reduced monomials. Returns 0 when a nilpotency relation
/// kills the product, otherwise +1 or -1 (Koszul sign from moving odd
/// generators past each other) and writes the exponents to `out`.
inline int multiply_monomials(const Space& space, const Exponents& a, const Exponents& b,
                              Exponents& out)
{
    const auto& gens = space->generators();
    out.resize(gens.size());
    int odd_swaps = 0;
    int odd_a_after = 0; // odd-degree factors of a to the right of position i
    for (std::size_t k = gens.size(); k > 0; --k) {
        const std::size_t i = k - 1;
        const int e = a[i] + b[i];
        if (e > gens[i].max_exponent) {
            return 0;
        }
        out[i] = e;
        const bool odd = gens[i].degree % 2 != 0;
        if (odd) {
            odd_swaps += b[i] * odd_a_after;
            odd_a_after += a[i];
        }
    }
    return odd_swaps % 2 == 0 ? 1 : -1;
}

namespace detail {

/// Sparse map from reduced monomials to nonzero rationals over one space.
class TermMap {
public:
    using Terms = std::map<Exponents, Rational>;

    explicit TermMap(Space space) : space_(std::move(space)) {}

    const Space& space() const { return space_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Exponents& e, const Rational& c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (inserted) {
            // callers may hand in an unreduced mpq
            it->second.canonicalize();
        } else {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    void require_same_space(const TermMap& other, const char* what) const
    {
        if (space_ != other.space_) {
            throw SpaceMismatch(std::string(what) + ": classes live on " + space_.text() + " and " +
                                other.space_.text());
        }
    }

    /// Canonical text; `wrap` decorates each monomial.
    template <class Wrap>
    std::string format(Wrap wrap) const
    {
        if (terms_.empty()) {
            return "0";
        }
        // by degree, then with earlier generators first
        std::vector<const Terms::value_type*> order;
        order.reserve(terms_.size());
        for (const auto& t : terms_) {
            order.push_back(&t);
        }
        std::stable_sort(order.begin(), order.end(), [this](const auto* a, const auto* b) {
            const int da = space_.degree(a->first);
            const int db = space_.degree(b->first);
            return da != db ? da < db : a->first > b->first;
        });
        std::string s;
        bool first = true;
        for (const auto* t : order) {
            const auto& [e, c] = *t;
            const bool negative = c < 0;
            const Rational mag = negative ? Rational(-c) : c;
            if (first) {
                s += negative ? "-" : "";
            } else {
                s += negative ? " - " : " + ";
            }
            first = false;
            const std::string mono = wrap(e);
            if (mono.empty()) {
                s += to_string(mag);
            } else if (mag == 1) {
                s += mono;
            } else {
                s += to_string(mag) + "*" + mono;
            }
        }
        return s;
    }

    friend bool operator==(const TermMap& a, const TermMap& b)
    {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

protected:
    Space space_;
    Terms terms_;
};

} // namespace detail

/// Element of H^*(X; Q) for a catalog space X, on the reduced monomial basis.
class GradedClass : public detail::TermMap {
public:
    explicit GradedClass(Space space) : TermMap(std::move(space)) {}

    static GradedClass constant(const Space& space, const Rational& c)
    {
        GradedClass r(space);
        r.add_term(Exponents(space->generator_count(), 0), c);
        return r;
    }

    static GradedClass one(const Space& space) { return constant(space, 1); }

    /// Monomial with the given exponents; zero if a relation kills it.
    static GradedClass monomial(const Space& space, const Exponents& e, const Rational& c = 1)
    {
        GradedClass r(space);
        if (e.size() != space->generator_count()) {
            throw InvalidArgument("exponent vector has wrong length for " + space.text());
        }
        const auto& gens = space->generators();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0) {
                throw InvalidArgument("negative exponent");
            }
            if (e[i] > gens[i].max_exponent) {
                return r;
            }
        }
        r.add_term(e, c);
        return r;
    }

    static GradedClass generator(const Space& space, std::size_t index)
    {
        if (index >= space->generator_count()) {
            throw InvalidArgument("no generator " + std::to_string(index) + " on " + space.text());
        }
        Exponents e(space->generator_count(), 0);
        e[index] = 1;
        return monomial(space, e);
    }

    static GradedClass fundamental(const Space& space) { return monomial(space, space.fundamental()); }

    Rational constant_term() const { return coefficient(Exponents(space_->generator_count(), 0)); }

    /// Component of cohomological degree `degree`.
    GradedClass homogeneous(int degree) const
    {
        GradedClass r(space_);
        for (const auto& [e, c] : terms_) {
            if (space_.degree(e) == degree) {
                r.terms_.emplace(e, c);
            }
        }
        return r;
    }

    /// Highest degree with a nonzero term, -1 for the zero class.
    int top_degree() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            d = std::max(d, space_.degree(e));
        }
        return d;
    }

    bool has_odd_support() const
    {
        for (const auto& [e, c] : terms_) {
            if (space_.degree(e) % 2 != 0) {
                return true;
            }
        }
        return false;
    }

    bool has_even_support() const
    {
        for (const auto& [e, c] : terms_) {
            if (space_.degree(e) % 2 == 0) {
                return true;
            }
        }
        return false;
    }

    GradedClass& operator+=(const GradedClass& b)
    {
        require_same_space(b, "sum");
        for (const auto& [e, c] : b.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    GradedClass& operator-=(const GradedClass& b)
    {
        require_same_space(b, "difference");
        for (const auto& [e, c] : b.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    GradedClass& operator*=(const Rational& q)
    {
        if (q == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) {
            c *= q;
        }
        return *this;
    }

    friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
    friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
    friend GradedClass operator-(GradedClass a) { return a *= Rational(-1); }
    friend GradedClass operator*(const Rational& q, GradedClass a) { return a *= q; }
    friend GradedClass operator*(GradedClass a, const Rational& q) { return a *= q; }

    /// Cup product.
    friend GradedClass operator*(const GradedClass& a, const GradedClass& b)
    {
        a.require_same_space(b, "cup product");
        GradedClass r(a.space_);
        Exponents out;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                const int sign = multiply_monomials(a.space_, ea, eb, out);
                if (sign != 0) {
                    r.add_term(out, sign > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
                }
            }
        }
        return r;
    }

    /// Multiplies the degree-2i part by (-1)^i; the Chern-class effect of
    /// complex conjugation.
    GradedClass conjugate_twist() const
    {
        GradedClass r(space_);
        for (const auto& [e, c] : terms_) {
            const int d = space_.degree(e);
            r.terms_.emplace(e, (d / 2) % 2 == 0 ? c : Rational(-c));
        }
        return r;
    }

    /// Multiplicative inverse; requires constant term != 0 (the rest is nilpotent).
    GradedClass inverse() const
    {
        const Rational c0 = constant_term();
        if (c0 == 0) {
            throw InvalidArgument("class with zero constant term is not invertible");
        }
        // 1/(c0 (1 + n)) = (1/c0) sum (-n)^k, n nilpotent
        GradedClass n = (Rational(1) / c0) * (*this) - one(space_);
        GradedClass power = one(space_);
        GradedClass sum = one(space_);
        for (int k = 1; k <= space_->dimension(); ++k) {
            power = power * (-n);
            if (power.is_zero()) {
                break;
            }
            sum += power;
        }
        return (Rational(1) / c0) * sum;
    }

    GradedClass pow(int k) const
    {
        if (k < 0) {
            return inverse().pow(-k);
        }
        GradedClass r = one(space_);
        for (int i = 0; i < k; ++i) {
            r = r * (*this);
        }
        return r;
    }

    std::string to_string() const
    {
        return format([this](const Exponents& e) {
            std::string m = space_.monomial_text(e);
            return m == "1" ? std::string() : m;
        });
    }

    friend bool operator==(const GradedClass& a, const GradedClass& b)
    {
        return static_cast<const TermMap&>(a) == static_cast<const TermMap&>(b);
    }
    friend bool operator!=(const GradedClass& a, const GradedClass& b) { return !(a == b); }
};

/// Element of H_*(X; Q). The basis element keyed by monomial mu is the cap
/// product mu ∩ [X], of grade dim X - deg mu; the key 1 is the fundamental
/// cycle and the fundamental monomial keys the point class.
class HomologyClass : public detail::TermMap {
public:
    explicit HomologyClass(Space space) : TermMap(std::move(space)) {}

    static HomologyClass basis_element(const Space& space, const Exponents& e, const Rational& c = 1)
    {
        HomologyClass h(space);
        h.add_term(e, c);
        return h;
    }

    static HomologyClass fundamental_cycle(const Space& space)
    {
        return basis_element(space, Exponents(space->generator_count(), 0));
    }

    static HomologyClass point_class(const Space& space) { return basis_element(space, space.fundamental()); }

    int grade(const Exponents& e) const { return space_->dimension() - space_.degree(e); }

    /// Component of homological grade `g`.
    HomologyClass graded_part(int g) const
    {
        HomologyClass r(space_);
        for (const auto& [e, c] : terms_) {
            if (grade(e) == g) {
                r.terms_.emplace(e, c);
            }
        }
        return r;
    }

    bool has_odd_support() const
    {
        for (const auto& [e, c] : terms_) {
            if (grade(e) % 2 != 0) {
                return true;
            }
        }
        return false;
    }

    bool has_even_support() const
    {
        for (const auto& [e, c] : terms_) {
            if (grade(e) % 2 == 0) {
                return true;
            }
        }
        return false;
    }

    HomologyClass& operator+=(const HomologyClass& b)
    {
        require_same_space(b, "sum");
        for (const auto& [e, c] : b.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    HomologyClass& operator-=(const HomologyClass& b)
    {
        require_same_space(b, "difference");
        for (const auto& [e, c] : b.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    HomologyClass& operator*=(const Rational& q)
    {
        if (q == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) {
            c *= q;
        }
        return *this;
    }

    friend HomologyClass operator+(HomologyClass a, const HomologyClass& b) { return a += b; }
    friend HomologyClass operator-(HomologyClass a, const HomologyClass& b) { return a -= b; }
    friend HomologyClass operator-(HomologyClass a) { return a *= Rational(-1); }
    friend HomologyClass operator*(const Rational& q, HomologyClass a) { return a *= q; }

    /// Terms `c*[mu]` where `[mu]` stands for mu ∩ [X].
    std::string to_string() const
    {
        return format([this](const Exponents& e) { return "[" + space_.monomial_text(e) + "]"; });
    }

    friend bool operator==(const HomologyClass& a, const HomologyClass& b)
    {
        return static_cast<const TermMap&>(a) == static_cast<const TermMap&>(b);
    }
    friend bool operator!=(const HomologyClass& a, const HomologyClass& b) { return !(a == b); }
};

/// Evaluation on the fundamental class: the coefficient of the top monomial.
inline Rational integrate(const GradedClass& a)
{
    return a.coefficient(a.space().fundamental());
}

inline HomologyClass poincare_dual(const GradedClass& a)
{
    HomologyClass h(a.space());
    for (const auto& [e, c] : a.terms()) {
        h.add_term(e, c);
    }
    return h;
}

inline GradedClass poincare_dual_inverse(const HomologyClass& h)
{
    GradedClass a(h.space());
    for (const auto& [e, c] : h.terms()) {
        a += GradedClass::monomial(h.space(), e, c);
    }
    return a;
}

/// Kronecker pairing <a, h> with <a, mu ∩ [X]> = integral of a·mu.
inline Rational pair(const GradedClass& a, const HomologyClass& h)
{
    if (a.space() != h.space()) {
        throw SpaceMismatch("pairing: " + a.space().text() + " vs " + h.space().text());
    }
    Rational sum = 0;
    for (const auto& [e, c] : h.terms()) {
        sum += c * integrate(a * GradedClass::monomial(a.space(), e));
    }
    return sum;
}

/// Complementary monomial: mu · complement(mu) = ±(fundamental monomial).
inline Exponents complement(const Space& space, const Exponents& e)
{
    Exponents top = space.fundamental();
    for (std::size_t i = 0; i < e.size(); ++i) {
        top[i] -= e[i];
    }
    return top;
}

/// External product on X × Y; the result lives on `product`, whose two
/// factors must be X and Y in that order.
inline GradedClass kunneth(const GradedClass& a, const GradedClass& b, const Space& product)
{
    if (product->kind() != SpaceKind::Product || product->factors().size() != 2 ||
        product->factors()[0] != a.space() || product->factors()[1] != b.space()) {
        throw Unsupported("kunneth: " + product.text() + " is not " + a.space().text() + "*" +
                          b.space().text());
    }
    GradedClass r(product);
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exponents e = ea;
            e.insert(e.end(), eb.begin(), eb.end());
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

inline GradedClass kunneth(const GradedClass& a, const GradedClass& b)
{
    return kunneth(a, b, Space::product({a.space(), b.space()}));
}

/// Reads the canonical text form back. Accepts any sum of products of
/// rationals and generator powers and reduces it, so unreduced input such as
/// `t2*t1` or `x^3` on CP(2) is normalized.
inline GradedClass parse_class(const Space& space, std::string_view text)
{
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto fail = [&](const std::string& why) -> GradedClass {
        throw InvalidArgument("cannot parse class '" + std::string(text) + "': " + why);
    };
    auto read_int = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        return std::string(text.substr(start, pos - start));
    };
    auto factor = [&]() -> GradedClass {
        skip();
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::string num = read_int();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                std::string den = read_int();
                if (den.empty()) {
                    return fail("missing denominator");
                }
                num += "/" + den;
            }
            return GradedClass::constant(space, parse_rational(num));
        }
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        std::string name(text.substr(start, pos - start));
        if (name.empty()) {
            return fail("expected a coefficient or generator");
        }
        const auto& gens = space->generators();
        std::size_t idx = gens.size();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].name == name) {
                idx = i;
            }
        }
        if (idx == gens.size()) {
            return fail("unknown generator '" + name + "'");
        }
        int power = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            std::string p = read_int();
            if (p.empty() || p.size() > 6) {
                return fail("bad exponent");
            }
            power = std::stoi(p);
        }
        return GradedClass::generator(space, idx).pow(power);
    };
    GradedClass result(space);
    skip();
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
    }
    while (true) {
        GradedClass term = factor();
        skip();
        while (pos < text.size() && text[pos] == '*') {
            ++pos;
            term = term * factor();
            skip();
        }
        result += negative ? -term : term;
        if (pos == text.size()) {
            break;
        }
        if (text[pos] != '+' && text[pos] != '-') {
            return fail("unexpected '" + std::string(1, text[pos]) + "'");
        }
        negative = text[pos] == '-';
        ++pos;
    }
    return result;
}

inline std::ostream& operator<<(std::ostream& os, const GradedClass& a) { return os << a.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const HomologyClass& h) { return os << h.to_string(); }

} // namespace kcharge
