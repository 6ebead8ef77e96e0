#pragma once

#include <gmp.h>

#include <iostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "intersective/bigint.hpp"

namespace intersective {

// Exact rational number, always reduced, denominator always positive.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long v) {
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rational(int v) : Rational(static_cast<long>(v)) {}
    Rational(const BigInt& n) {
        mpq_init(q_);
        set_num_den(n, BigInt(1));
    }
    Rational(const BigInt& num, const BigInt& den) {
        mpq_init(q_);
        set_num_den(num, den);
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    // Accepts "p" or "p/q".
    explicit Rational(std::string_view s) {
        mpq_init(q_);
        auto slash = s.find('/');
        if (slash == std::string_view::npos) {
            set_num_den(BigInt(s), BigInt(1));
        } else {
            set_num_den(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        }
    }

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    BigInt num() const {
        BigInt n(0);
        std::string s = num_string();
        return BigInt(s);
    }
    BigInt den() const { return BigInt(den_string()); }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    int sign() const { return mpq_sgn(q_); }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        Rational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    Rational operator-() const {
        Rational r;
        mpq_neg(r.q_, q_);
        return r;
    }
    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    // v_p(this) as a signed integer; this must be nonzero.
    long valuation(const BigInt& p) const {
        if (is_zero()) throw std::domain_error("Rational: valuation of zero");
        return static_cast<long>(BigInt::valuation(num(), p)) -
               static_cast<long>(BigInt::valuation(den(), p));
    }

    std::string to_string() const {
        if (is_integer()) return num_string();
        return num_string() + "/" + den_string();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

private:
    void set_num_den(const BigInt& num, const BigInt& den) {
        if (den.is_zero()) throw std::domain_error("Rational: zero denominator");
        // Route through strings to avoid exposing BigInt internals.
        std::string n = num.to_string(), d = den.to_string();
        mpz_set_str(mpq_numref(q_), n.c_str(), 10);
        mpz_set_str(mpq_denref(q_), d.c_str(), 10);
        mpq_canonicalize(q_);
    }
    std::string num_string() const {
        std::vector<char> buf(mpz_sizeinbase(mpq_numref(q_), 10) + 2);
        mpz_get_str(buf.data(), 10, mpq_numref(q_));
        return std::string(buf.data());
    }
    std::string den_string() const {
        std::vector<char> buf(mpz_sizeinbase(mpq_denref(q_), 10) + 2);
        mpz_get_str(buf.data(), 10, mpq_denref(q_));
        return std::string(buf.data());
    }

    mpq_t q_;
};

} // namespace intersective
