#pragma once

#include <gmp.h>

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace intersective {

// Arbitrary-precision signed integer with value semantics.
//
// Backed by GMP's mpz, which maintains the canonical form this library
// relies on: no leading zero limbs, zero carries no sign. Decimal string
// round-trips are exact; all file formats serialize integers as decimal
// strings.
class BigInt {
public:
    BigInt() { mpz_init(z_); }

    BigInt(int v) { mpz_init_set_si(z_, v); }
    BigInt(long v) { mpz_init_set_si(z_, v); }
    BigInt(long long v) {
        mpz_init(z_);
        set_ll(v);
    }
    BigInt(unsigned int v) { mpz_init_set_ui(z_, v); }
    BigInt(unsigned long v) { mpz_init_set_ui(z_, v); }
    BigInt(unsigned long long v) {
        mpz_init(z_);
        set_ull(v);
    }

    explicit BigInt(std::string_view decimal) {
        mpz_init(z_);
        std::string s(decimal);
        if (s.empty() || mpz_set_str(z_, s.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw std::invalid_argument("BigInt: bad decimal string '" + s + "'");
        }
    }

    BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    // -- queries ---------------------------------------------------------

    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
    bool is_odd() const { return mpz_odd_p(z_) != 0; }
    bool is_even() const { return mpz_even_p(z_) != 0; }
    int sign() const { return mpz_sgn(z_); }

    bool fits_slong() const { return mpz_fits_slong_p(z_) != 0; }
    long to_slong() const {
        if (!fits_slong()) throw std::overflow_error("BigInt: does not fit long");
        return mpz_get_si(z_);
    }
    unsigned long to_ulong() const {
        if (sign() < 0 || !mpz_fits_ulong_p(z_))
            throw std::overflow_error("BigInt: does not fit unsigned long");
        return mpz_get_ui(z_);
    }
    double to_double() const { return mpz_get_d(z_); }

    size_t bit_length() const { return is_zero() ? 0 : mpz_sizeinbase(z_, 2); }

    std::string to_string() const {
        std::vector<char> buf(mpz_sizeinbase(z_, 10) + 2);
        mpz_get_str(buf.data(), 10, z_);
        return std::string(buf.data());
    }

    // -- arithmetic ------------------------------------------------------

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_add(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_sub(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_mul(r.z_, a.z_, b.z_);
        return r;
    }
    // Truncated division, C semantics: (-7)/2 == -3, (-7)%2 == -1.
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt r;
        mpz_tdiv_q(r.z_, a.z_, b.z_);
        return r;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt r;
        mpz_tdiv_r(r.z_, a.z_, b.z_);
        return r;
    }
    BigInt operator-() const {
        BigInt r;
        mpz_neg(r.z_, z_);
        return r;
    }

    BigInt& operator+=(const BigInt& o) {
        mpz_add(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator-=(const BigInt& o) {
        mpz_sub(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator*=(const BigInt& o) {
        mpz_mul(z_, z_, o.z_);
        return *this;
    }
    BigInt& operator/=(const BigInt& o) { return *this = *this / o; }
    BigInt& operator%=(const BigInt& o) { return *this = *this % o; }

    friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    friend bool operator==(const BigInt& a, long b) { return mpz_cmp_si(a.z_, b) == 0; }
    friend bool operator!=(const BigInt& a, long b) { return mpz_cmp_si(a.z_, b) != 0; }
    friend bool operator<(const BigInt& a, long b) { return mpz_cmp_si(a.z_, b) < 0; }
    friend bool operator>(const BigInt& a, long b) { return mpz_cmp_si(a.z_, b) > 0; }
    friend bool operator<=(const BigInt& a, long b) { return mpz_cmp_si(a.z_, b) <= 0; }
    friend bool operator>=(const BigInt& a, long b) { return mpz_cmp_si(a.z_, b) >= 0; }

    BigInt abs() const {
        BigInt r;
        mpz_abs(r.z_, z_);
        return r;
    }

    // Quotient and remainder with truncation toward zero.
    static void tdiv_qr(BigInt& q, BigInt& r, const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        mpz_tdiv_qr(q.z_, r.z_, a.z_, b.z_);
    }

    // Remainder in [0, |m|).
    BigInt mod_positive(const BigInt& m) const {
        if (m.is_zero()) throw std::domain_error("BigInt: zero modulus");
        BigInt r;
        mpz_mod(r.z_, z_, m.z_);
        return r;
    }

    // Remainder in (-m/2, m/2], m > 0.
    BigInt symmetric_mod(const BigInt& m) const {
        BigInt r = mod_positive(m);
        BigInt twice = r + r;
        if (twice > m) r -= m;
        return r;
    }

    bool divisible_by(const BigInt& d) const {
        if (d.is_zero()) return is_zero();
        return mpz_divisible_p(z_, d.z_) != 0;
    }

    // Exact division; caller guarantees divisibility.
    BigInt divexact(const BigInt& d) const {
        if (d.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt r;
        mpz_divexact(r.z_, z_, d.z_);
        return r;
    }

    static BigInt gcd(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_gcd(r.z_, a.z_, b.z_);
        return r;
    }

    static BigInt lcm(const BigInt& a, const BigInt& b) {
        BigInt r;
        mpz_lcm(r.z_, a.z_, b.z_);
        return r;
    }

    // g = gcd(a,b) = a*s + b*t
    static BigInt gcdext(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
        BigInt g;
        mpz_gcdext(g.z_, s.z_, t.z_, a.z_, b.z_);
        return g;
    }

    // Inverse of *this modulo m; throws if not invertible.
    BigInt invmod(const BigInt& m) const {
        BigInt r;
        if (mpz_invert(r.z_, z_, m.z_) == 0)
            throw std::domain_error("BigInt: not invertible mod " + m.to_string());
        return r;
    }

    BigInt pow(unsigned long e) const {
        BigInt r;
        mpz_pow_ui(r.z_, z_, e);
        return r;
    }

    static BigInt pow2(size_t e) {
        BigInt r;
        mpz_setbit(r.z_, static_cast<mp_bitcnt_t>(e));
        return r;
    }

    // (this^e) mod m, e >= 0
    BigInt powmod(const BigInt& e, const BigInt& m) const {
        if (e.sign() < 0) throw std::domain_error("BigInt: negative exponent");
        BigInt r;
        mpz_powm(r.z_, z_, e.z_, m.z_);
        return r;
    }

    // floor(sqrt(n)), n >= 0
    BigInt isqrt() const {
        if (sign() < 0) throw std::domain_error("BigInt: isqrt of negative");
        BigInt r;
        mpz_sqrt(r.z_, z_);
        return r;
    }

    bool is_perfect_square() const { return sign() >= 0 && mpz_perfect_square_p(z_) != 0; }

    // Removes all factors p from n (returns multiplicity; n must be nonzero).
    static unsigned long remove_factor(BigInt& n, const BigInt& p) {
        BigInt out;
        unsigned long k = static_cast<unsigned long>(mpz_remove(out.z_, n.z_, p.z_));
        n = std::move(out);
        return k;
    }

    // v_p(n) for n != 0.
    static unsigned long valuation(const BigInt& n, const BigInt& p) {
        if (n.is_zero()) throw std::domain_error("BigInt: valuation of zero");
        BigInt m = n;
        return remove_factor(m, p);
    }

    bool test_bit(size_t i) const { return mpz_tstbit(z_, static_cast<mp_bitcnt_t>(i)) != 0; }

    size_t hash() const {
        // Fold the limbs; good enough for hash containers.
        size_t h = static_cast<size_t>(mpz_sgn(z_)) + 0x9e3779b97f4a7c15ULL;
        for (size_t i = 0; i < mpz_size(z_); ++i)
            h = h * 1099511628211ULL ^ static_cast<size_t>(mpz_getlimbn(z_, i));
        return h;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

private:
    void set_ll(long long v) {
        if (v >= 0) {
            set_ull(static_cast<unsigned long long>(v));
        } else {
            set_ull(~static_cast<unsigned long long>(v) + 1ULL);
            mpz_neg(z_, z_);
        }
    }
    void set_ull(unsigned long long v) {
        mpz_import(z_, 1, -1, sizeof(v), 0, 0, &v);
    }

    mpz_t z_;
};

inline BigInt abs(const BigInt& a) { return a.abs(); }

} // namespace intersective

namespace std {
template <>
struct hash<intersective::BigInt> {
    size_t operator()(const intersective::BigInt& v) const { return v.hash(); }
};
} // namespace std
