#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "kcharge/rational.hpp"

namespace kcharge {

/// Commutative Q-algebra elements: graded classes (even part) and formal
/// polynomials both qualify.
template <class R>
concept RationalAlgebra = requires(const R& a, const R& b, const Rational& q) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { q * a } -> std::convertible_to<R>;
};

/// Newton's identities: power sums s_1..s_n of the Chern roots from the
/// elementary symmetric functions chern[0] = c_1, chern[1] = c_2, ...
/// (entries past the end are zero).
///   s_k = c_1 s_{k-1} - c_2 s_{k-2} + ... + (-1)^(k-1) k c_k
template <RationalAlgebra R>
std::vector<R> power_sums_from_chern(std::span<const R> chern, int n, const R& zero)
{
    auto c = [&](int i) -> const R& {
        return i >= 1 && static_cast<std::size_t>(i) <= chern.size() ? chern[static_cast<std::size_t>(i - 1)]
                                                                      : zero;
    };
    std::vector<R> s;
    s.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
    for (int k = 1; k <= n; ++k) {
        R sk = Rational(k % 2 == 1 ? k : -k) * c(k);
        for (int i = 1; i < k; ++i) {
            R term = c(i) * s[static_cast<std::size_t>(k - i - 1)];
            sk = i % 2 == 1 ? R(sk + term) : R(sk - term);
        }
        s.push_back(std::move(sk));
    }
    return s;
}

/// Inverse Newton: c_1..c_n from power sums s_1..s_n.
///   k c_k = sum_{i=1..k} (-1)^(i-1) c_{k-i} s_i,  c_0 = 1
template <RationalAlgebra R>
std::vector<R> chern_from_power_sums(std::span<const R> power_sums, int n, const R& zero, const R& one)
{
    auto s = [&](int i) -> const R& {
        return static_cast<std::size_t>(i) <= power_sums.size() ? power_sums[static_cast<std::size_t>(i - 1)]
                                                                 : zero;
    };
    std::vector<R> c;
    c.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
    for (int k = 1; k <= n; ++k) {
        R acc = zero;
        for (int i = 1; i <= k; ++i) {
            const R& prev = k - i == 0 ? one : c[static_cast<std::size_t>(k - i - 1)];
            R term = prev * s(i);
            acc = i % 2 == 1 ? R(acc + term) : R(acc - term);
        }
        c.push_back(Rational(1, k) * acc);
    }
    return c;
}

} // namespace kcharge
