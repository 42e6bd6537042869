#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>

#include "jacobi/diagram.hpp"

namespace jacobi {

using Rational = mpq_class;

Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& q);

// q reduced into [0, sub) for sub in {1/2, 1}; sub = 0 means no reduction.
Rational reduce_mod_subgroup(const Rational& q, const Rational& sub);

// Degree-<=1 polynomial over Q in unknowns a1..a7 (for the Y cobordism solve).
struct Affine {
    Rational c0;
    std::array<Rational, 7> a{};

    Affine() = default;
    Affine(const Rational& q) : c0(q) {}
    static Affine unknown(int i, const Rational& coef = 1) {
        Affine x;
        x.a.at(i - 1) = coef;
        return x;
    }
    bool is_constant() const {
        for (auto& c : a)
            if (c != 0) return false;
        return true;
    }
    bool operator==(const Affine&) const = default;
    Affine& operator+=(const Affine& o) {
        c0 += o.c0;
        for (int i = 0; i < 7; ++i) a[i] += o.a[i];
        return *this;
    }
    Affine operator-() const {
        Affine r;
        r.c0 = -c0;
        for (int i = 0; i < 7; ++i) r.a[i] = -a[i];
        return r;
    }
    friend Affine operator*(const Affine& x, const Affine& y) {
        if (!x.is_constant() && !y.is_constant())
            throw std::runtime_error("product of two non-constant affine coefficients");
        const Affine& v = x.is_constant() ? y : x;
        const Rational& c = x.is_constant() ? x.c0 : y.c0;
        Affine r;
        r.c0 = v.c0 * c;
        for (int i = 0; i < 7; ++i) r.a[i] = v.a[i] * c;
        return r;
    }
    std::string str() const;
};

inline bool coeff_is_zero(const Rational& q) { return q == 0; }
inline bool coeff_is_zero(const Affine& x) { return x.c0 == 0 && x.is_constant(); }

// Finite formal sum of canonical diagrams.  AS-symmetric classes satisfy
// 2J = 0, so over divisible coefficient groups (Q and its quotients) they
// vanish and are dropped on insertion.
template <class R>
struct LinComb {
    std::map<CanonicalDiagram, R> terms;

    void add(const CanonicalDiagram& key, const R& coef) {
        if (key.as_symmetric) return;
        if (coeff_is_zero(coef)) return;
        auto [it, fresh] = terms.emplace(key, coef);
        if (!fresh) {
            it->second += coef;
            if (coeff_is_zero(it->second)) terms.erase(it);
        }
    }
    void add(const Diagram& d, const R& coef) {
        if (d.has_self_loop()) return;
        auto c = canonicalize(d);
        add(c.canon, c.sign < 0 ? static_cast<R>(-coef) : coef);
    }
    void add(const LinComb& o, const R& scale) {
        for (auto& [k, v] : o.terms) add(k, static_cast<R>(v * scale));
    }
    LinComb& operator+=(const LinComb& o) {
        for (auto& [k, v] : o.terms) add(k, v);
        return *this;
    }
    friend LinComb operator-(const LinComb& x, const LinComb& y) {
        LinComb r = x;
        for (auto& [k, v] : y.terms) r.add(k, static_cast<R>(-v));
        return r;
    }
    bool empty() const { return terms.empty(); }
    size_t size() const { return terms.size(); }
};

using QComb = LinComb<Rational>;

}  // namespace jacobi
