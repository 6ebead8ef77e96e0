#pragma once

#include <algorithm>
#include <cassert>
#include <iostream>
#include <string>
#include <vector>

#include "intersective/bigint.hpp"
#include "intersective/errors.hpp"
#include "intersective/rational.hpp"

namespace intersective {

// Exact univariate polynomial over Z, coefficients stored ascending.
// The zero polynomial has an empty coefficient vector and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(BigInt v) {
        std::vector<BigInt> c;
        c.push_back(std::move(v));
        return IntPoly(std::move(c));
    }
    static IntPoly monomial(BigInt coeff, size_t deg) {
        std::vector<BigInt> c(deg + 1, BigInt(0));
        c[deg] = std::move(coeff);
        return IntPoly(std::move(c));
    }
    // x - r
    static IntPoly linear_root(const BigInt& r) { return IntPoly({0, 1}) - constant(r); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    const BigInt& leading() const {
        static const BigInt z(0);
        return c_.empty() ? z : c_.back();
    }
    const BigInt& coeff(size_t i) const {
        static const BigInt z(0);
        return i < c_.size() ? c_[i] : z;
    }
    const std::vector<BigInt>& coeffs() const { return c_; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(r));
    }
    IntPoly operator-() const {
        std::vector<BigInt> r(c_);
        for (auto& v : r) v = -v;
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const BigInt& s) {
        std::vector<BigInt> r(a.c_);
        for (auto& v : r) v *= s;
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const BigInt& s, const IntPoly& a) { return a * s; }

    IntPoly pow(unsigned e) const {
        IntPoly r = constant(BigInt(1));
        IntPoly base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<BigInt> r(c_.size() - 1, BigInt(0));
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * BigInt(static_cast<long>(i));
        return IntPoly(std::move(r));
    }

    BigInt evaluate(const BigInt& x) const {
        BigInt r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    Rational evaluate(const Rational& x) const {
        Rational r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + Rational(c_[i]);
        return r;
    }

    // f(x + s), exact Taylor shift (iterated synthetic division).
    IntPoly shift(const BigInt& s) const {
        if (s.is_zero() || is_zero()) return *this;
        std::vector<BigInt> r(c_);
        size_t n = r.size();
        for (size_t i = 0; i + 1 < n; ++i)
            for (size_t j = n - 1; j >= 1 && j >= i + 1; --j) r[j - 1] += s * r[j];
        return IntPoly(std::move(r));
    }

    // f(s * x)
    IntPoly scale_arg(const BigInt& s) const {
        std::vector<BigInt> r(c_);
        BigInt pw(1);
        for (size_t i = 0; i < r.size(); ++i) {
            r[i] *= pw;
            pw *= s;
        }
        return IntPoly(std::move(r));
    }

    // x^deg * f(1/x)
    IntPoly reverse() const {
        std::vector<BigInt> r(c_.rbegin(), c_.rend());
        return IntPoly(std::move(r));
    }

    // gcd of coefficients, nonnegative; 0 for the zero polynomial.
    BigInt content() const {
        BigInt g(0);
        for (const auto& v : c_) g = BigInt::gcd(g, v);
        return g;
    }

    // content-free with positive leading coefficient
    IntPoly primitive_part() const {
        if (is_zero()) return *this;
        BigInt g = content();
        if (leading().sign() < 0) g = -g;
        std::vector<BigInt> r(c_);
        for (auto& v : r) v = v.divexact(g);
        return IntPoly(std::move(r));
    }

    // Number of trailing zero coefficients (multiplicity of the root 0).
    unsigned trailing_zero_count() const {
        unsigned k = 0;
        while (k < c_.size() && c_[k].is_zero()) ++k;
        return is_zero() ? 0 : k;
    }

    // f / x^k, requires x^k | f
    IntPoly strip_x_power(unsigned k) const {
        if (k == 0) return *this;
        assert(trailing_zero_count() >= k);
        std::vector<BigInt> r(c_.begin() + k, c_.end());
        return IntPoly(std::move(r));
    }

    // Exact division; throws if the division is not exact over Z.
    IntPoly divexact(const IntPoly& d) const {
        IntPoly q, r;
        if (!try_divide(*this, d, q, r) || !r.is_zero())
            throw std::domain_error("IntPoly: inexact division");
        return q;
    }

    bool divisible_by(const IntPoly& d) const {
        IntPoly q, r;
        return try_divide(*this, d, q, r) && r.is_zero();
    }

    // Long division over Q performed in Z; returns false if a coefficient
    // quotient fails to be integral (so a/d is not a Z[x] division).
    static bool try_divide(const IntPoly& a, const IntPoly& d, IntPoly& q, IntPoly& r) {
        if (d.is_zero()) throw std::domain_error("IntPoly: division by zero polynomial");
        std::vector<BigInt> rem(a.c_);
        std::vector<BigInt> quo;
        int dd = d.degree();
        if (a.degree() >= dd) quo.assign(a.degree() - dd + 1, BigInt(0));
        for (int i = a.degree(); i >= dd; --i) {
            BigInt& lead = rem[i];
            if (lead.is_zero()) continue;
            if (!lead.divisible_by(d.leading())) return false;
            BigInt c = lead.divexact(d.leading());
            quo[i - dd] = c;
            for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= c * d.coeff(j);
        }
        q = IntPoly(std::move(quo));
        r = IntPoly(std::move(rem));
        return true;
    }

    // Pseudo-remainder: lc(d)^(deg a - deg d + 1) * a = q*d + prem.
    static IntPoly pseudo_rem(const IntPoly& a, const IntPoly& d) {
        if (d.is_zero()) throw std::domain_error("IntPoly: pseudo-division by zero");
        IntPoly r = a;
        int dd = d.degree();
        int e = a.degree() - dd + 1;
        if (e <= 0) return a;
        const BigInt& lc = d.leading();
        while (!r.is_zero() && r.degree() >= dd) {
            IntPoly t = IntPoly::monomial(r.leading(), static_cast<size_t>(r.degree() - dd));
            r = r * lc - t * d;
            --e;
        }
        // Normalize so the full power of lc was applied.
        BigInt scale = lc.pow(static_cast<unsigned long>(std::max(e, 0)));
        return r * scale;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            BigInt v = c_[i];
            if (!s.empty()) {
                s += (v.sign() < 0) ? " - " : " + ";
                if (v.sign() < 0) v = -v;
            }
            if (i == 0 || !(v.is_one() || v == BigInt(-1))) {
                s += v.to_string();
                if (i > 0) s += "*";
            } else if (v == BigInt(-1)) {
                s += "-";
            }
            if (i > 0) {
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntPoly& f) { return os << f.to_string(); }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

// Subresultant PRS resultant (Cohen, Alg. 3.3.7); equals the determinant of
// the Sylvester matrix of f and g.
inline BigInt resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero())
        throw std::domain_error("resultant: inputs must be nonzero");
    if (f.is_constant() && g.is_constant()) return BigInt(1);
    if (f.is_constant()) return f.leading().pow(static_cast<unsigned long>(g.degree()));
    if (g.is_constant()) return g.leading().pow(static_cast<unsigned long>(f.degree()));

    IntPoly a = f, b = g;
    BigInt ca = a.content();
    BigInt cb = b.content();
    a = a.divexact(IntPoly::constant(ca));
    b = b.divexact(IntPoly::constant(cb));
    BigInt t = ca.pow(static_cast<unsigned long>(b.degree())) *
               cb.pow(static_cast<unsigned long>(a.degree()));
    int s = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() % 2) && (b.degree() % 2)) s = -s;
        std::swap(a, b);
    }
    BigInt gg(1), h(1);
    while (b.degree() > 0) {
        int delta = a.degree() - b.degree();
        if ((a.degree() % 2) && (b.degree() % 2)) s = -s;
        IntPoly r = IntPoly::pseudo_rem(a, b);
        a = b;
        BigInt denom = gg * h.pow(static_cast<unsigned long>(delta));
        b = r.divexact(IntPoly::constant(denom));
        gg = a.leading();
        // h <- h^(1-delta) * g^delta, exact by the subresultant theory
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gg;
        } else {
            h = gg.pow(static_cast<unsigned long>(delta))
                    .divexact(h.pow(static_cast<unsigned long>(delta - 1)));
        }
    }
    if (b.is_zero()) return BigInt(0);
    // deg b == 0 and deg a >= 1 here
    int da = a.degree();
    BigInt res;
    if (da == 1) {
        res = b.leading();
    } else {
        res = b.leading().pow(static_cast<unsigned long>(da))
                  .divexact(h.pow(static_cast<unsigned long>(da - 1)));
    }
    return BigInt(s) * t * res;
}

// disc(f) = (-1)^(n(n-1)/2) * res(f, f') / lc(f)
inline BigInt discriminant(const IntPoly& f) {
    if (f.degree() < 1) throw std::domain_error("discriminant: need deg >= 1");
    if (f.degree() == 1) return BigInt(1);
    BigInt r = resultant(f, f.derivative());
    BigInt d = r.divexact(f.leading());
    long n = f.degree();
    if (((n * (n - 1)) / 2) % 2) d = -d;
    return d;
}

// gcd over Z via the subresultant PRS; result is primitive with positive
// leading coefficient (times the content gcd).
inline IntPoly poly_gcd(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero()) return g.leading().sign() < 0 ? -g : g;
    if (g.is_zero()) return f.leading().sign() < 0 ? -f : f;
    BigInt cont = BigInt::gcd(f.content(), g.content());
    IntPoly a = f.primitive_part(), b = g.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = IntPoly::pseudo_rem(a, b);
        a = b;
        b = r.is_zero() ? IntPoly() : r.primitive_part();
    }
    if (a.degree() == 0) return IntPoly::constant(cont);
    return a * cont;
}

// Yun's squarefree decomposition; returns [(g_i, i)] with f = content * prod g_i^i.
inline std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<IntPoly, unsigned>> out;
    IntPoly p = f.primitive_part();
    if (p.degree() == 0) return out;
    IntPoly d = p.derivative();
    IntPoly g = poly_gcd(p, d);
    if (g.degree() == 0) {
        out.emplace_back(p, 1);
        return out;
    }
    IntPoly w = p.divexact(g);
    IntPoly y = d.divexact(g);
    IntPoly z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() > 0) {
        IntPoly gi = poly_gcd(w, z);
        if (gi.degree() > 0) out.emplace_back(gi.primitive_part(), i);
        w = w.divexact(gi);
        y = z.divexact(gi);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

// Product of the distinct irreducible factors, primitive, positive lead.
inline IntPoly squarefree_part(const IntPoly& f) {
    IntPoly p = f.primitive_part();
    if (p.degree() <= 0) return p;
    IntPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    return p.divexact(g).primitive_part();
}

} // namespace intersective
