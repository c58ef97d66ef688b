#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kcharge {

/// Exact arbitrary-precision rational. Results of gmpxx arithmetic are
/// always canonical (gcd 1, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// `p/q` with q > 0 and gcd(p, q) = 1; `p` alone when q = 1.
inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

inline Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(long n, unsigned k)
{
    // generalized binomial for negative n: n(n-1)...(n-k+1)/k!
    Integer r;
    if (n >= 0) {
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), k);
    } else {
        mpz_bin_ui(r.get_mpz_t(), Integer(n).get_mpz_t(), k);
    }
    return r;
}

/// Parses `p` or `p/q`. Throws std::invalid_argument on malformed text.
inline Rational parse_rational(std::string_view text)
{
    Rational q;
    std::string s(text);
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
    q.canonicalize();
    return q;
}

} // namespace kcharge
