#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kcharge/error.hpp"
#include "kcharge/rational.hpp"

namespace kcharge {

/// Polynomial over Q in formal class variables v_1..v_n where v_i has
/// weight i (c_i or p_i), truncated above a fixed total weight.
class FormalPoly {
public:
    using Exponents = std::vector<int>;

    FormalPoly(int variables, int max_weight, char prefix = 'c')
        : nvars_(variables), max_weight_(max_weight), prefix_(prefix)
    {
        if (variables < 0 || max_weight < 0) {
            throw InvalidArgument("formal polynomial dimensions must be non-negative");
        }
    }

    static FormalPoly constant(int variables, int max_weight, const Rational& c, char prefix = 'c')
    {
        FormalPoly p(variables, max_weight, prefix);
        p.add_term(Exponents(static_cast<std::size_t>(variables), 0), c);
        return p;
    }

    /// The variable v_i (1-based); zero if its weight exceeds the cap.
    static FormalPoly variable(int variables, int max_weight, int i, char prefix = 'c')
    {
        if (i < 1 || i > variables) {
            throw InvalidArgument("formal variable index out of range");
        }
        FormalPoly p(variables, max_weight, prefix);
        Exponents e(static_cast<std::size_t>(variables), 0);
        e[static_cast<std::size_t>(i - 1)] = 1;
        p.add_term(e, 1);
        return p;
    }

    int variables() const { return nvars_; }
    int max_weight() const { return max_weight_; }
    char prefix() const { return prefix_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    static int weight(const Exponents& e)
    {
        int w = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            w += static_cast<int>(i + 1) * e[i];
        }
        return w;
    }

    Rational coefficient(const Exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Exponents& e, const Rational& c)
    {
        if (c == 0 || weight(e) > max_weight_) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (inserted) {
            it->second.canonicalize();
        } else {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    /// Homogeneous component of weight w.
    FormalPoly weight_part(int w) const
    {
        FormalPoly r(nvars_, max_weight_, prefix_);
        for (const auto& [e, c] : terms_) {
            if (weight(e) == w) {
                r.terms_.emplace(e, c);
            }
        }
        return r;
    }

    /// Sets v_i = 0 for every i > k.
    FormalPoly restrict_variables(int k) const
    {
        FormalPoly r(nvars_, max_weight_, prefix_);
        for (const auto& [e, c] : terms_) {
            bool keep = true;
            for (std::size_t i = static_cast<std::size_t>(std::max(k, 0)); i < e.size(); ++i) {
                keep = keep && e[i] == 0;
            }
            if (keep) {
                r.terms_.emplace(e, c);
            }
        }
        return r;
    }

    friend FormalPoly operator+(FormalPoly a, const FormalPoly& b)
    {
        a.check(b);
        for (const auto& [e, c] : b.terms_) {
            a.add_term(e, c);
        }
        return a;
    }

    friend FormalPoly operator-(FormalPoly a, const FormalPoly& b)
    {
        a.check(b);
        for (const auto& [e, c] : b.terms_) {
            a.add_term(e, -c);
        }
        return a;
    }

    friend FormalPoly operator*(const Rational& q, FormalPoly a)
    {
        if (q == 0) {
            a.terms_.clear();
        }
        for (auto& [e, c] : a.terms_) {
            c *= q;
        }
        return a;
    }

    friend FormalPoly operator*(const FormalPoly& a, const FormalPoly& b)
    {
        a.check(b);
        FormalPoly r(a.nvars_, a.max_weight_, a.prefix_);
        Exponents e(static_cast<std::size_t>(a.nvars_));
        for (const auto& [ea, ca] : a.terms_) {
            const int wa = weight(ea);
            for (const auto& [eb, cb] : b.terms_) {
                if (wa + weight(eb) > a.max_weight_) {
                    continue;
                }
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    /// exp of a polynomial without constant term.
    FormalPoly exp() const
    {
        if (coefficient(Exponents(static_cast<std::size_t>(nvars_), 0)) != 0) {
            throw InvalidArgument("exp of a formal polynomial needs zero constant term");
        }
        FormalPoly sum = constant(nvars_, max_weight_, 1, prefix_);
        FormalPoly power = sum;
        for (int k = 1; k <= max_weight_; ++k) {
            power = Rational(1, k) * (power * (*this));
            if (power.is_zero()) {
                break;
            }
            sum = sum + power;
        }
        return sum;
    }

    /// Canonical text: ascending weight, and within a weight descending
    /// exponent order (c1^2 before c2).
    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            const int wa = weight(a.first);
            const int wb = weight(b.first);
            return wa != wb ? wa < wb : a.first > b.first;
        });
        std::string s;
        bool first = true;
        for (const auto& [e, c] : sorted) {
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) {
                    continue;
                }
                if (!mono.empty()) {
                    mono += "*";
                }
                mono += prefix_ + std::to_string(i + 1);
                if (e[i] > 1) {
                    mono += "^" + std::to_string(e[i]);
                }
            }
            const bool negative = c < 0;
            const Rational mag = negative ? Rational(-c) : c;
            s += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
            first = false;
            if (mono.empty()) {
                s += kcharge::to_string(mag);
            } else if (mag == 1) {
                s += mono;
            } else {
                s += kcharge::to_string(mag) + "*" + mono;
            }
        }
        return s;
    }

    friend bool operator==(const FormalPoly& a, const FormalPoly& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void check(const FormalPoly& b) const
    {
        if (nvars_ != b.nvars_ || max_weight_ != b.max_weight_) {
            throw InvalidArgument("formal polynomials over different variable sets");
        }
    }

    int nvars_;
    int max_weight_;
    char prefix_;
    std::map<Exponents, Rational> terms_;
};

} // namespace kcharge
