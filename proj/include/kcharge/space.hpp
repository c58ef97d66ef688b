#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kcharge/error.hpp"

namespace kcharge {

/// Exponent vector, one entry per generator of the ambient space.
using Exponents = std::vector<int>;

enum class SpaceKind { Point, Sphere, ComplexProjective, Torus, Product };

struct Generator {
    std::string name;
    int degree = 0;
    int max_exponent = 0; // nilpotency: g^(max_exponent + 1) = 0
};

class Space;

/// A catalog manifold together with the presentation of its rational
/// cohomology ring. Every catalog space is closed, oriented and spin^c.
///
/// Torsion is invisible here: all catalog spaces have torsion-free integral
/// cohomology, so the rational ring loses nothing for them.
class ModelSpace {
public:
    SpaceKind kind() const { return kind_; }
    /// n of S^n, CP^n, T^n; 0 for point and products.
    int parameter() const { return param_; }
    int dimension() const { return dim_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t generator_count() const { return gens_.size(); }
    const std::vector<Space>& factors() const { return factors_; }
    /// First generator index of product factor i.
    std::size_t factor_offset(std::size_t i) const { return offsets_.at(i); }
    bool spinc() const { return true; }
    const std::string& text() const { return text_; }

private:
    friend class Space;
    SpaceKind kind_ = SpaceKind::Point;
    int param_ = 0;
    int dim_ = 0;
    std::vector<Generator> gens_;
    std::vector<Space> factors_;
    std::vector<std::size_t> offsets_;
    std::string text_;
};

/// Shared immutable handle to a ModelSpace. Equality is structural.
class Space {
public:
    Space() : Space(point()) {}

    static Space point()
    {
        auto s = std::make_shared<ModelSpace>();
        s->kind_ = SpaceKind::Point;
        s->text_ = "point";
        return Space(std::move(s));
    }

    static Space sphere(int n)
    {
        if (n < 1) {
            throw InvalidArgument("S(n) requires n >= 1");
        }
        auto s = std::make_shared<ModelSpace>();
        s->kind_ = SpaceKind::Sphere;
        s->param_ = n;
        s->dim_ = n;
        s->gens_ = {{"y", n, 1}};
        s->text_ = "S(" + std::to_string(n) + ")";
        return Space(std::move(s));
    }

    static Space cp(int n)
    {
        if (n < 1) {
            throw InvalidArgument("CP(n) requires n >= 1");
        }
        auto s = std::make_shared<ModelSpace>();
        s->kind_ = SpaceKind::ComplexProjective;
        s->param_ = n;
        s->dim_ = 2 * n;
        s->gens_ = {{"x", 2, n}};
        s->text_ = "CP(" + std::to_string(n) + ")";
        return Space(std::move(s));
    }

    static Space torus(int n)
    {
        if (n < 1) {
            throw InvalidArgument("T(n) requires n >= 1");
        }
        auto s = std::make_shared<ModelSpace>();
        s->kind_ = SpaceKind::Torus;
        s->param_ = n;
        s->dim_ = n;
        for (int i = 1; i <= n; ++i) {
            s->gens_.push_back({"t" + std::to_string(i), 1, 1});
        }
        s->text_ = "T(" + std::to_string(n) + ")";
        return Space(std::move(s));
    }

    /// Cartesian product; nested products are kept as single factors.
    static Space product(std::vector<Space> factors)
    {
        if (factors.size() < 2) {
            throw Unsupported("a product needs at least two factors");
        }
        auto s = std::make_shared<ModelSpace>();
        s->kind_ = SpaceKind::Product;
        struct Leaf {
            std::string base;
            std::size_t leaf;
        };
        std::vector<Leaf> leaves;
        std::size_t leaf_index = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& f = *factors[i];
            s->offsets_.push_back(s->gens_.size());
            s->dim_ += f.dimension();
            if (i > 0) {
                s->text_ += "*";
            }
            s->text_ += f.kind() == SpaceKind::Product ? "(" + f.text() + ")" : f.text();
            collect_leaves(factors[i], leaves, leaf_index, s->gens_);
        }
        std::map<std::string, int> counts;
        for (const auto& l : leaves) {
            ++counts[l.base];
        }
        for (std::size_t g = 0; g < leaves.size(); ++g) {
            s->gens_[g].name = leaves[g].base;
            if (counts[leaves[g].base] > 1) {
                s->gens_[g].name += "_" + std::to_string(leaves[g].leaf + 1);
            }
        }
        s->factors_ = std::move(factors);
        return Space(std::move(s));
    }

    const ModelSpace& operator*() const { return *ptr_; }
    const ModelSpace* operator->() const { return ptr_.get(); }

    friend bool operator==(const Space& a, const Space& b)
    {
        return a.ptr_ == b.ptr_ || a.ptr_->text() == b.ptr_->text();
    }
    friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }

    /// Exponents of the fundamental-class monomial.
    Exponents fundamental() const
    {
        Exponents e;
        for (const auto& g : ptr_->generators()) {
            e.push_back(g.max_exponent);
        }
        return e;
    }

    int degree(const Exponents& e) const
    {
        int d = 0;
        const auto& gens = ptr_->generators();
        for (std::size_t i = 0; i < e.size(); ++i) {
            d += e[i] * gens[i].degree;
        }
        return d;
    }

    /// Number of monomials in the reduced basis.
    std::size_t basis_size() const
    {
        std::size_t n = 1;
        for (const auto& g : ptr_->generators()) {
            n *= static_cast<std::size_t>(g.max_exponent + 1);
        }
        return n;
    }

    /// All reduced monomials in lexicographic exponent order.
    std::vector<Exponents> basis() const
    {
        const auto& gens = ptr_->generators();
        std::vector<Exponents> out;
        Exponents e(gens.size(), 0);
        while (true) {
            out.push_back(e);
            std::size_t i = gens.size();
            while (i > 0) {
                --i;
                if (e[i] < gens[i].max_exponent) {
                    ++e[i];
                    break;
                }
                e[i] = 0;
                if (i == 0) {
                    return out;
                }
            }
            if (gens.empty()) {
                return out;
            }
        }
    }

    std::string monomial_text(const Exponents& e) const
    {
        std::string s;
        const auto& gens = ptr_->generators();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!s.empty()) {
                s += "*";
            }
            s += gens[i].name;
            if (e[i] > 1) {
                s += "^" + std::to_string(e[i]);
            }
        }
        return s.empty() ? "1" : s;
    }

    const std::string& text() const { return ptr_->text(); }

private:
    explicit Space(std::shared_ptr<const ModelSpace> p) : ptr_(std::move(p)) {}

    template <class Leaf>
    static void collect_leaves(const Space& s, std::vector<Leaf>& leaves, std::size_t& leaf_index,
                               std::vector<Generator>& gens)
    {
        if (s->kind() == SpaceKind::Product) {
            for (const auto& f : s->factors()) {
                collect_leaves(f, leaves, leaf_index, gens);
            }
            return;
        }
        for (const auto& g : s->generators()) {
            // base name of a leaf generator is its name inside the leaf
            leaves.push_back({g.name, leaf_index});
            gens.push_back(g);
        }
        ++leaf_index;
    }

    std::shared_ptr<const ModelSpace> ptr_;
};

} // namespace kcharge
