#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kcharge/error.hpp"
#include "kcharge/rational.hpp"

namespace kcharge {

/// Truncated power series c_0 + c_1 t + ... + c_N t^N over Q.
class UnivariateSeries {
public:
    explicit UnivariateSeries(int order) : c_(static_cast<std::size_t>(check(order)) + 1, Rational(0)) {}

    UnivariateSeries(std::vector<Rational> coefficients) : c_(std::move(coefficients))
    {
        if (c_.empty()) {
            throw InvalidArgument("a series needs at least a constant term");
        }
    }

    static UnivariateSeries constant(int order, const Rational& value)
    {
        UnivariateSeries s(order);
        s.c_[0] = value;
        return s;
    }

    /// t itself.
    static UnivariateSeries variable(int order)
    {
        UnivariateSeries s(order);
        if (order >= 1) {
            s.c_[1] = 1;
        }
        return s;
    }

    /// e^(scale t)
    static UnivariateSeries exponential(int order, const Rational& scale = 1)
    {
        UnivariateSeries s(order);
        Rational term = 1;
        for (int k = 0; k <= order; ++k) {
            s.c_[static_cast<std::size_t>(k)] = term;
            term = term * scale / (k + 1);
        }
        return s;
    }

    /// Characteristic series of the Todd class, t / (1 - e^(-t)).
    static UnivariateSeries todd(int order)
    {
        // (1 - e^(-t)) / t = sum_k (-1)^k t^k / (k+1)!
        UnivariateSeries d(order);
        for (int k = 0; k <= order; ++k) {
            Rational v(1);
            v /= Rational(factorial(static_cast<unsigned>(k + 1)));
            d.c_[static_cast<std::size_t>(k)] = k % 2 == 0 ? v : Rational(-v);
        }
        return d.inverse();
    }

    /// Characteristic series of the A-hat genus, (t/2) / sinh(t/2).
    static UnivariateSeries a_hat(int order)
    {
        // sinh(t/2) / (t/2) = sum_k (t/2)^(2k) / (2k+1)!
        UnivariateSeries d(order);
        for (int k = 0; 2 * k <= order; ++k) {
            Rational v(1);
            v /= Rational(factorial(static_cast<unsigned>(2 * k + 1)));
            v /= Rational(Integer(1) << static_cast<unsigned>(2 * k));
            d.c_[static_cast<std::size_t>(2 * k)] = v;
        }
        return d.inverse();
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    Rational& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<Rational>& coefficients() const { return c_; }

    /// Same series cut (or zero-padded) to another order.
    UnivariateSeries truncated(int order) const
    {
        UnivariateSeries s(order);
        for (int k = 0; k <= order && k <= this->order(); ++k) {
            s[k] = (*this)[k];
        }
        return s;
    }

    friend UnivariateSeries operator+(const UnivariateSeries& a, const UnivariateSeries& b)
    {
        UnivariateSeries r(std::min(a.order(), b.order()));
        for (int k = 0; k <= r.order(); ++k) {
            r[k] = a[k] + b[k];
        }
        return r;
    }

    friend UnivariateSeries operator-(const UnivariateSeries& a, const UnivariateSeries& b)
    {
        UnivariateSeries r(std::min(a.order(), b.order()));
        for (int k = 0; k <= r.order(); ++k) {
            r[k] = a[k] - b[k];
        }
        return r;
    }

    friend UnivariateSeries operator*(const Rational& q, UnivariateSeries a)
    {
        for (auto& v : a.c_) {
            v *= q;
        }
        return a;
    }

    friend UnivariateSeries operator*(const UnivariateSeries& a, const UnivariateSeries& b)
    {
        UnivariateSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (int j = 0; i + j <= r.order(); ++j) {
                r[i + j] += a[i] * b[j];
            }
        }
        return r;
    }

    friend bool operator==(const UnivariateSeries& a, const UnivariateSeries& b) { return a.c_ == b.c_; }

    /// Multiplicative inverse; requires c_0 != 0.
    UnivariateSeries inverse() const
    {
        if (c_[0] == 0) {
            throw InvalidArgument("series with zero constant term is not invertible");
        }
        UnivariateSeries r(order());
        r[0] = Rational(1) / c_[0];
        for (int k = 1; k <= order(); ++k) {
            Rational acc = 0;
            for (int i = 1; i <= k; ++i) {
                acc += (*this)[i] * r[k - i];
            }
            r[k] = -acc / c_[0];
        }
        return r;
    }

    /// this(inner(t)); inner must have zero constant term.
    UnivariateSeries compose(const UnivariateSeries& inner) const
    {
        if (inner[0] != 0) {
            throw InvalidArgument("composition requires an inner series without constant term");
        }
        const int n = std::min(order(), inner.order());
        UnivariateSeries r = constant(n, c_[0]);
        UnivariateSeries power = constant(n, 1);
        for (int k = 1; k <= n; ++k) {
            power = power * inner.truncated(n);
            r = r + (*this)[k] * power;
        }
        return r;
    }

    /// log of a series with constant term 1: integral of f'/f.
    UnivariateSeries log() const
    {
        if (c_[0] != 1) {
            throw InvalidArgument("log requires constant term 1");
        }
        UnivariateSeries deriv(order());
        for (int k = 1; k <= order(); ++k) {
            deriv[k - 1] = Rational(k) * (*this)[k];
        }
        UnivariateSeries q = deriv * inverse();
        UnivariateSeries r(order());
        for (int k = 1; k <= order(); ++k) {
            r[k] = q[k - 1] / k;
        }
        return r;
    }

    std::string to_string() const
    {
        std::string s;
        for (int k = 0; k <= order(); ++k) {
            if (c_[static_cast<std::size_t>(k)] == 0) {
                continue;
            }
            if (!s.empty()) {
                s += " + ";
            }
            s += kcharge::to_string(c_[static_cast<std::size_t>(k)]);
            if (k > 0) {
                s += "*t^" + std::to_string(k);
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    static int check(int order)
    {
        if (order < 0) {
            throw InvalidArgument("negative truncation order");
        }
        return order;
    }

    std::vector<Rational> c_;
};

} // namespace kcharge
