#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "kcharge/error.hpp"
#include "kcharge/formal.hpp"
#include "kcharge/graded.hpp"
#include "kcharge/newton.hpp"
#include "kcharge/series.hpp"

namespace kcharge {

/// Default truncation order, in complex degree. Covers 10-dimensional
/// targets with room to spare.
inline constexpr int kDefaultOrder = 10;

enum class GenusVariables { Chern, Pontryagin };

/// Universal polynomials of a multiplicative genus: the degree-k part of
/// prod_i f(x_i) written in c_1, c_2, ... (elementary symmetric functions of
/// the roots x_i) or in p_1, p_2, ... (elementary symmetric functions of the
/// x_i^2).
struct GenusPolynomials {
    GenusVariables variables = GenusVariables::Chern;
    int order = 0;
    FormalPoly total{0, 0};

    FormalPoly degree(int k) const { return total.weight_part(k); }

    /// One line per degree: `k: polynomial`.
    std::string to_string() const
    {
        std::string s;
        for (int k = 0; k <= order; ++k) {
            s += std::to_string(k) + ": " + degree(k).to_string() + "\n";
        }
        return s;
    }
};

/// Substitutes values[i] for v_{i+1} in `poly`.
template <RationalAlgebra R>
R substitute(const FormalPoly& poly, std::span<const R> values, const R& zero, const R& one)
{
    // powers[i][k] = values[i]^k, built lazily
    std::vector<std::vector<R>> powers(values.size());
    R result = zero;
    for (const auto& [e, c] : poly.terms()) {
        R term = one;
        bool vanishes = false;
        for (std::size_t i = 0; i < e.size() && !vanishes; ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (i >= values.size()) {
                vanishes = true;
                break;
            }
            auto& pw = powers[i];
            if (pw.empty()) {
                pw.push_back(one);
            }
            while (static_cast<int>(pw.size()) <= e[i]) {
                pw.push_back(pw.back() * values[i]);
            }
            term = term * pw[static_cast<std::size_t>(e[i])];
        }
        if (!vanishes) {
            result = result + c * term;
        }
    }
    return result;
}

/// Expands prod_i f(x_i) through degree `order` in class variables. The
/// product is exp(sum_k a_k s_k) where log f = sum_k a_k t^k and s_k are the
/// power sums, which Newton's identities express in the class variables.
inline GenusPolynomials expand_genus(const UnivariateSeries& f, int order, GenusVariables type)
{
    if (order < 0) {
        throw InvalidArgument("negative genus order");
    }
    if (f[0] != 1) {
        throw InvalidArgument("characteristic series must have constant term 1");
    }
    UnivariateSeries g(order);
    if (type == GenusVariables::Chern) {
        if (f.order() < order) {
            throw InvalidArgument("characteristic series is shorter than the requested order");
        }
        g = f.truncated(order);
    } else {
        if (f.order() < 2 * order) {
            throw InvalidArgument("characteristic series is shorter than the requested order");
        }
        for (int k = 0; k <= 2 * order; ++k) {
            if (k % 2 == 1 && f[k] != 0) {
                throw InvalidArgument("a Pontryagin-type genus needs an even characteristic series");
            }
        }
        for (int k = 0; k <= order; ++k) {
            g[k] = f[2 * k];
        }
    }
    const char prefix = type == GenusVariables::Chern ? 'c' : 'p';
    const UnivariateSeries logs = g.log();
    std::vector<FormalPoly> vars;
    for (int i = 1; i <= order; ++i) {
        vars.push_back(FormalPoly::variable(order, order, i, prefix));
    }
    const FormalPoly zero(order, order, prefix);
    const auto s = power_sums_from_chern<FormalPoly>(vars, order, zero);
    FormalPoly exponent = zero;
    for (int k = 1; k <= order; ++k) {
        exponent = exponent + logs[k] * s[static_cast<std::size_t>(k - 1)];
    }
    GenusPolynomials out;
    out.variables = type;
    out.order = order;
    out.total = exponent.exp();
    return out;
}

namespace detail {

template <class Make>
const GenusPolynomials& cached_genus(int order, Make make)
{
    static std::mutex mutex;
    static std::map<int, GenusPolynomials> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) {
        it = cache.emplace(order, make(order)).first;
    }
    return it->second;
}

} // namespace detail

inline const GenusPolynomials& todd_polynomials(int order)
{
    return detail::cached_genus(order, [](int n) {
        return expand_genus(UnivariateSeries::todd(n), n, GenusVariables::Chern);
    });
}

/// A-hat polynomials in p_1..p_order.
inline const GenusPolynomials& a_hat_polynomials(int order)
{
    return detail::cached_genus(order, [](int n) {
        return expand_genus(UnivariateSeries::a_hat(2 * n), n, GenusVariables::Pontryagin);
    });
}

/// c_1 .. c_{dim/2} of a total Chern class.
inline std::vector<GradedClass> chern_classes(const GradedClass& total)
{
    std::vector<GradedClass> c;
    for (int i = 1; 2 * i <= total.space()->dimension(); ++i) {
        c.push_back(total.homogeneous(2 * i));
    }
    return c;
}

inline void require_total_chern(const GradedClass& total)
{
    if (total.constant_term() != 1) {
        throw InvalidArgument("total Chern class must have constant term 1, got " + total.to_string());
    }
    if (total.has_odd_support()) {
        throw InvalidArgument("total Chern class has odd-degree components: " + total.to_string());
    }
}

inline int complex_order(const Space& space, int order)
{
    return std::max(0, std::min(order, space->dimension() / 2));
}

/// Power sums s_1..s_n of the Chern roots, computed in the cohomology ring.
inline std::vector<GradedClass> power_sums_from_chern(const GradedClass& total, int n)
{
    const auto c = chern_classes(total);
    return power_sums_from_chern<GradedClass>(c, n, GradedClass(total.space()));
}

/// ch = rank + sum_k s_k / k!
inline GradedClass chern_character(const Rational& rank, const GradedClass& total, int order = kDefaultOrder)
{
    require_total_chern(total);
    const Space& x = total.space();
    const int n = complex_order(x, order);
    GradedClass ch = GradedClass::constant(x, rank);
    const auto s = power_sums_from_chern(total, n);
    for (int k = 1; k <= n; ++k) {
        ch += Rational(1) / Rational(factorial(static_cast<unsigned>(k))) * s[static_cast<std::size_t>(k - 1)];
    }
    return ch;
}

/// Inverse of chern_character: the total Chern class whose Chern character
/// is `ch` (constant term = rank).
inline GradedClass total_chern_from_character(const GradedClass& ch, int order = kDefaultOrder)
{
    if (ch.has_odd_support()) {
        throw InvalidArgument("Chern character with odd-degree components: " + ch.to_string());
    }
    const Space& x = ch.space();
    const int n = complex_order(x, order);
    std::vector<GradedClass> s;
    for (int k = 1; k <= n; ++k) {
        s.push_back(Rational(factorial(static_cast<unsigned>(k))) * ch.homogeneous(2 * k));
    }
    const auto c = chern_from_power_sums<GradedClass>(s, n, GradedClass(x), GradedClass::one(x));
    GradedClass total = GradedClass::one(x);
    for (const auto& ci : c) {
        total += ci;
    }
    return total;
}

/// Todd class from a total Chern class (virtual classes allowed).
inline GradedClass todd_class(const GradedClass& total, int order = kDefaultOrder)
{
    require_total_chern(total);
    const Space& x = total.space();
    const int n = complex_order(x, order);
    const auto c = chern_classes(total);
    return substitute<GradedClass>(todd_polynomials(n).total, c, GradedClass(x), GradedClass::one(x));
}

/// p_i = (-1)^i c_{2i}(E ⊗ C) with c(E ⊗ C) = c(E) c(conj E); p_1 .. p_{dim/4}.
inline std::vector<GradedClass> pontryagin_classes(const GradedClass& total)
{
    require_total_chern(total);
    const GradedClass complexified = total * total.conjugate_twist();
    std::vector<GradedClass> p;
    for (int i = 1; 4 * i <= total.space()->dimension(); ++i) {
        GradedClass pi = complexified.homogeneous(4 * i);
        p.push_back(i % 2 == 0 ? pi : -pi);
    }
    return p;
}

/// As above, listing only p_1..p_rank.
inline std::vector<GradedClass> pontryagin_classes(const GradedClass& total, int rank)
{
    auto p = pontryagin_classes(total);
    if (rank >= 0 && static_cast<std::size_t>(rank) < p.size()) {
        p.erase(p.begin() + rank, p.end());
    }
    return p;
}

/// A-hat class from Pontryagin classes p_1, p_2, ... on `space`.
inline GradedClass a_hat_class(const Space& space, std::span<const GradedClass> pontryagin,
                               int order = kDefaultOrder)
{
    for (const auto& p : pontryagin) {
        if (p.space() != space) {
            throw SpaceMismatch("Pontryagin class on " + p.space().text() + ", expected " + space.text());
        }
    }
    const int n = std::max(0, std::min(order / 2, space->dimension() / 4));
    return substitute<GradedClass>(a_hat_polynomials(n).total, pontryagin, GradedClass(space),
                                   GradedClass::one(space));
}

/// Checks Td = e^{c_1/2} A-hat identically through degree `order`, with r
/// formal roots (c_i = 0 for i > r). `a_hat_series` replaces the A-hat
/// characteristic series; pass a perturbed one to see the check fail.
inline bool todd_identity_check(int order, int roots, const UnivariateSeries& a_hat_series)
{
    if (order < 0 || order > 12 || roots < 0 || roots > std::max(order, 1)) {
        throw InvalidArgument("todd_identity_check needs 0 <= order <= 12 and roots <= order");
    }
    if (order == 0) {
        return true;
    }
    const FormalPoly td = expand_genus(UnivariateSeries::todd(order), order, GenusVariables::Chern).total;
    const int half = order / 2;
    const FormalPoly ahat_p = expand_genus(a_hat_series.truncated(2 * half), half, GenusVariables::Pontryagin).total;

    const FormalPoly zero(order, order);
    const FormalPoly one = FormalPoly::constant(order, order, 1);
    std::vector<FormalPoly> c;
    FormalPoly total = one;
    FormalPoly conj = one;
    for (int i = 1; i <= order; ++i) {
        c.push_back(FormalPoly::variable(order, order, i));
        total = total + c.back();
        conj = i % 2 == 0 ? conj + c.back() : conj - c.back();
    }
    const FormalPoly complexified = total * conj;
    std::vector<FormalPoly> p;
    for (int j = 1; j <= half; ++j) {
        FormalPoly pj = complexified.weight_part(2 * j);
        p.push_back(j % 2 == 0 ? pj : Rational(-1) * pj);
    }
    const FormalPoly ahat_c = substitute<FormalPoly>(ahat_p, p, zero, one);
    const FormalPoly twist = (Rational(1, 2) * c[0]).exp();
    const FormalPoly rhs = twist * ahat_c;
    return td.restrict_variables(roots) == rhs.restrict_variables(roots);
}

inline bool todd_identity_check(int order, int roots)
{
    return todd_identity_check(order, roots, UnivariateSeries::a_hat(2 * (order / 2)));
}

} // namespace kcharge
