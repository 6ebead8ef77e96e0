#pragma once

#include <vector>

#include "intersective/arith.hpp"
#include "intersective/bigint.hpp"
#include "intersective/intpoly.hpp"
#include "intersective/rational.hpp"

namespace intersective {

// Univariate polynomial with rational coefficients; thin companion to
// IntPoly for the few places exact rational data enters (published
// polynomials with rational coefficients, p-integral reductions).
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
    explicit RatPoly(const IntPoly& f) {
        for (const auto& v : f.coeffs()) c_.emplace_back(v);
        normalize();
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_monic() const { return !c_.empty() && c_.back() == Rational(1); }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return RatPoly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const RatPoly& a, const Rational& s) {
        std::vector<Rational> r(a.c_);
        for (auto& v : r) v *= s;
        return RatPoly(std::move(r));
    }

    Rational evaluate(const Rational& x) const {
        Rational acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    bool is_integral() const {
        for (const auto& v : c_)
            if (!v.is_integer()) return false;
        return true;
    }

    IntPoly to_intpoly() const {
        std::vector<BigInt> r;
        for (const auto& v : c_) {
            if (!v.is_integer()) throw std::domain_error("RatPoly: non-integer coefficient");
            r.push_back(v.num());
        }
        return IntPoly(std::move(r));
    }

    // Minimal lambda >= 1 with lambda^n * f(x/lambda) in Z[x]; requires f
    // monic. Returns the rescaled integer polynomial and lambda.
    std::pair<IntPoly, BigInt> monic_integer_rescale() const {
        if (!is_monic()) throw std::domain_error("RatPoly: rescale needs a monic input");
        size_t n = static_cast<size_t>(degree());
        // lambda = prod q^max_i ceil(v_q(den_i) / (n - i))
        BigInt lambda(1);
        std::vector<std::pair<BigInt, unsigned>> lam;
        for (size_t i = 0; i < n; ++i) {
            BigInt d = c_[i].den();
            if (d.is_one()) continue;
            auto fac = factor_integer(d);
            for (const auto& [q, e] : fac.factors) {
                unsigned need = (e + static_cast<unsigned>(n - i) - 1) / static_cast<unsigned>(n - i);
                bool found = false;
                for (auto& [lq, le] : lam) {
                    if (lq == q) {
                        le = std::max(le, need);
                        found = true;
                    }
                }
                if (!found) lam.emplace_back(q, need);
            }
        }
        for (const auto& [q, e] : lam) lambda *= q.pow(e);
        std::vector<BigInt> out(n + 1);
        BigInt pw(1);
        for (size_t i = n + 1; i-- > 0;) {
            Rational v = c_[i] * Rational(pw);
            if (!v.is_integer()) throw std::logic_error("RatPoly: rescale failed");
            out[i] = v.num();
            pw *= lambda;
        }
        return {IntPoly(std::move(out)), lambda};
    }

    // Reduction mod p of a p-integral polynomial (every coefficient has
    // nonnegative p-valuation); returns coefficients in [0, p).
    IntPoly reduce_mod(const BigInt& p) const {
        std::vector<BigInt> r;
        for (const auto& v : c_) {
            BigInt den = v.den();
            if (den.divisible_by(p))
                throw std::domain_error("RatPoly: coefficient not p-integral");
            BigInt inv = den.invmod(p);
            r.push_back((v.num().mod_positive(p) * inv).mod_positive(p));
        }
        return IntPoly(std::move(r));
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

} // namespace intersective
