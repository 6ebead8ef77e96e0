#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "intersective/bigint.hpp"
#include "intersective/errors.hpp"

namespace intersective {

// A field type F provides:
//   typename F::Element            value type, regular
//   zero(), one()                  constants
//   add, sub, mul, neg, inv        arithmetic
//   is_zero(a), eq(a, b)           predicates
//   from_int(BigInt)               reduction of an integer
//   size()                         |F| as BigInt
//   characteristic()               p as BigInt
// All field handles are cheap to copy.

// Prime field with machine-word modulus (p < 2^63).
struct Fp {
    using Element = uint64_t;
    uint64_t p;

    explicit Fp(uint64_t prime) : p(prime) {
        if (prime < 2) throw std::domain_error("Fp: modulus must be >= 2");
    }

    Element zero() const { return 0; }
    Element one() const { return p == 1 ? 0 : 1; }
    bool is_zero(Element a) const { return a == 0; }
    bool eq(Element a, Element b) const { return a == b; }

    Element add(Element a, Element b) const {
        uint64_t s = a + b;
        if (s >= p || s < a) s -= p;
        return s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + (p - b); }
    Element neg(Element a) const { return a == 0 ? 0 : p - a; }
    Element mul(Element a, Element b) const {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Element inv(Element a) const {
        if (a == 0) throw std::domain_error("Fp: inverse of zero");
        // Extended Euclid on signed 128-bit intermediates.
        int64_t t = 0, newt = 1;
        int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a);
        while (newr != 0) {
            int64_t q = r / newr;
            int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (r != 1) throw std::domain_error("Fp: modulus not prime or element not invertible");
        if (t < 0) t += static_cast<int64_t>(p);
        return static_cast<uint64_t>(t);
    }
    Element from_int(const BigInt& v) const {
        BigInt r = v.mod_positive(BigInt(static_cast<unsigned long long>(p)));
        return r.to_ulong();
    }
    Element from_uint(uint64_t v) const { return v % p; }
    Element element_from_index(uint64_t i) const { return i % p; }
    BigInt size() const { return BigInt(static_cast<unsigned long long>(p)); }
    BigInt characteristic() const { return size(); }
    BigInt to_int(Element a) const { return BigInt(static_cast<unsigned long long>(a)); }
    template <typename R>
    Element random_element(R& rng) const {
        return rng() % p;
    }
    unsigned extension_degree() const { return 1; }
};

// Prime field with arbitrary-precision modulus; used when certification has
// to look at primes beyond machine range.
struct FpZ {
    using Element = BigInt;
    BigInt p;

    explicit FpZ(BigInt prime) : p(std::move(prime)) {
        if (p < 2) throw std::domain_error("FpZ: modulus must be >= 2");
    }

    Element zero() const { return BigInt(0); }
    Element one() const { return BigInt(1); }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    bool eq(const Element& a, const Element& b) const { return a == b; }

    Element add(const Element& a, const Element& b) const {
        BigInt s = a + b;
        if (s >= p) s -= p;
        return s;
    }
    Element sub(const Element& a, const Element& b) const {
        BigInt s = a - b;
        if (s.sign() < 0) s += p;
        return s;
    }
    Element neg(const Element& a) const { return a.is_zero() ? a : p - a; }
    Element mul(const Element& a, const Element& b) const { return (a * b).mod_positive(p); }
    Element inv(const Element& a) const { return a.invmod(p); }
    Element from_int(const BigInt& v) const { return v.mod_positive(p); }
    Element element_from_index(uint64_t i) const {
        return BigInt(static_cast<unsigned long long>(i)).mod_positive(p);
    }
    BigInt size() const { return p; }
    BigInt characteristic() const { return p; }
    BigInt to_int(const Element& a) const { return a; }
    template <typename R>
    Element random_element(R& rng) const {
        size_t bits = p.bit_length();
        for (;;) {
            BigInt r(0);
            for (size_t got = 0; got < bits; got += 64)
                r = r * BigInt::pow2(64) + BigInt(static_cast<unsigned long long>(rng()));
            r = r.mod_positive(BigInt::pow2(bits));
            if (r < p) return r;
        }
    }
    unsigned extension_degree() const { return 1; }
};

// The deterministic defining irreducible for F_{p^k}: the monic degree-k
// polynomial over F_p whose coefficient tuple (c_0, ..., c_{k-1}), read as
// the base-p integer sum c_i p^i, is smallest among irreducibles.
// Returned ascending, without the leading 1.
std::vector<uint64_t> defining_irreducible(uint64_t p, unsigned k);

// F_{p^k} with full add/mul tables; intended for small q (group
// constructions over F_2 .. F_9 and prime-power factorization tests).
class SmallFq {
public:
    using Element = uint32_t;

    SmallFq(uint64_t p, unsigned k) : tab_(build(p, k)) {}

    Element zero() const { return 0; }
    Element one() const { return 1; }
    bool is_zero(Element a) const { return a == 0; }
    bool eq(Element a, Element b) const { return a == b; }
    Element add(Element a, Element b) const { return tab_->add[a * tab_->q + b]; }
    Element sub(Element a, Element b) const { return tab_->add[a * tab_->q + tab_->neg[b]]; }
    Element neg(Element a) const { return tab_->neg[a]; }
    Element mul(Element a, Element b) const { return tab_->mul[a * tab_->q + b]; }
    Element inv(Element a) const {
        if (a == 0) throw std::domain_error("SmallFq: inverse of zero");
        return tab_->inv[a];
    }
    Element from_int(const BigInt& v) const {
        // Integers reduce into the prime subfield.
        BigInt r = v.mod_positive(BigInt(static_cast<unsigned long long>(tab_->p)));
        return static_cast<Element>(r.to_ulong());
    }
    BigInt size() const { return BigInt(static_cast<unsigned long long>(tab_->q)); }
    BigInt characteristic() const { return BigInt(static_cast<unsigned long long>(tab_->p)); }
    BigInt to_int(Element a) const { return BigInt(static_cast<unsigned long long>(a)); }
    Element element_from_index(uint64_t i) const { return static_cast<Element>(i % tab_->q); }
    template <typename R>
    Element random_element(R& rng) const {
        return static_cast<Element>(rng() % tab_->q);
    }
    unsigned extension_degree() const { return tab_->k; }
    uint64_t order_u() const { return tab_->q; }
    uint64_t char_u() const { return tab_->p; }

    // A fixed multiplicative generator (smallest index that generates F_q^*).
    Element generator() const { return tab_->gen; }

    const std::vector<uint64_t>& modulus() const { return tab_->defining; }

    // Elements are indexed 0..q-1 by their base-p digit vector: the element
    // sum c_i alpha^i has index sum c_i p^i.
    static std::vector<uint32_t> digits(Element a, uint64_t p, unsigned k) {
        std::vector<uint32_t> d(k);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = static_cast<uint32_t>(a % p);
            a = static_cast<Element>(a / p);
        }
        return d;
    }

private:
    struct Tables {
        uint64_t p, q;
        unsigned k;
        std::vector<uint64_t> defining; // ascending, monic lead omitted
        std::vector<Element> add, mul, neg, inv;
        Element gen;
    };

    static std::shared_ptr<const Tables> build(uint64_t p, unsigned k);

    std::shared_ptr<const Tables> tab_;
};

namespace detail {

inline bool fq_vec_is_irreducible(const std::vector<uint64_t>& mod, uint64_t p);

} // namespace detail

inline std::vector<uint64_t> defining_irreducible(uint64_t p, unsigned k) {
    if (k == 0) throw std::domain_error("defining_irreducible: k must be >= 1");
    if (k == 1) return {};
    uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (count > (1ULL << 40)) throw TooLarge("defining_irreducible: field too large");
        count *= p;
    }
    for (uint64_t code = 0; code < count; ++code) {
        std::vector<uint64_t> mod(k);
        uint64_t c = code;
        for (unsigned i = 0; i < k; ++i) {
            mod[i] = c % p;
            c /= p;
        }
        if (detail::fq_vec_is_irreducible(mod, p)) return mod;
    }
    throw std::logic_error("defining_irreducible: no irreducible found");
}

namespace detail {

// Brute-force irreducibility of x^k + sum mod[i] x^i over F_p: no root for
// k <= 3 suffices; otherwise test divisibility by all lower-degree monic
// irreducibles via trial division. Only used for tiny fields.
inline std::vector<uint64_t> fq_poly_mod(std::vector<uint64_t> a,
                                         const std::vector<uint64_t>& m, uint64_t p) {
    size_t k = m.size();
    while (a.size() > k) {
        uint64_t lead = a.back();
        a.pop_back();
        if (lead == 0) continue;
        for (size_t i = 0; i < k; ++i) {
            uint64_t sub = (lead * m[i]) % p;
            size_t pos = a.size() - k + i;
            a[pos] = (a[pos] + p - sub % p) % p;
        }
    }
    return a;
}

inline bool fq_vec_is_irreducible(const std::vector<uint64_t>& mod, uint64_t p) {
    unsigned k = static_cast<unsigned>(mod.size());
    // x^(p^k) == x mod f, and gcd-free of smaller Frobenius fixed fields.
    // For the tiny k used here (k <= 4), trial division by monic polynomials
    // of degree <= k/2 is simplest and exact.
    auto eval = [&](uint64_t x) {
        uint64_t acc = 1; // monic lead
        for (unsigned i = k; i-- > 0;) acc = (acc * x + mod[i]) % p;
        return acc;
    };
    for (uint64_t x = 0; x < p; ++x)
        if (eval(x) == 0) return false;
    if (k <= 3) return true;
    // Trial division by monic degree-d polynomials, 2 <= d <= k/2.
    for (unsigned d = 2; d <= k / 2; ++d) {
        uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
            std::vector<uint64_t> div(d);
            uint64_t c = code;
            for (unsigned i = 0; i < d; ++i) {
                div[i] = c % p;
                c /= p;
            }
            // Remainder of f = x^k + mod by x^d + div.
            std::vector<uint64_t> f(mod);
            f.push_back(1);
            std::vector<uint64_t> r = f;
            while (r.size() > d) {
                uint64_t lead = r.back();
                r.pop_back();
                if (lead == 0) continue;
                for (size_t i = 0; i < d; ++i) {
                    uint64_t sub = (lead * div[i]) % p;
                    size_t pos = r.size() - d + i;
                    r[pos] = (r[pos] + p - sub) % p;
                }
            }
            bool zero = true;
            for (uint64_t v : r)
                if (v != 0) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

} // namespace detail

inline auto SmallFq::build(uint64_t p, unsigned k) -> std::shared_ptr<const Tables> {
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->k = k;
    uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    if (q > (1u << 20)) throw TooLarge("SmallFq: table field too large");
    t->q = q;
    t->defining = defining_irreducible(p, k);

    auto to_digits = [&](uint64_t a) {
        std::vector<uint64_t> d(k);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    };
    auto from_digits = [&](const std::vector<uint64_t>& d) {
        uint64_t a = 0;
        for (unsigned i = k; i-- > 0;) a = a * p + d[i];
        return a;
    };

    t->add.resize(q * q);
    t->mul.resize(q * q);
    t->neg.resize(q);
    t->inv.resize(q, 0);
    for (uint64_t a = 0; a < q; ++a) {
        auto da = to_digits(a);
        std::vector<uint64_t> nd(k);
        for (unsigned i = 0; i < k; ++i) nd[i] = (p - da[i]) % p;
        t->neg[a] = static_cast<Element>(from_digits(nd));
        for (uint64_t b = 0; b < q; ++b) {
            auto db = to_digits(b);
            std::vector<uint64_t> sd(k);
            for (unsigned i = 0; i < k; ++i) sd[i] = (da[i] + db[i]) % p;
            t->add[a * q + b] = static_cast<Element>(from_digits(sd));
            // polynomial product reduced by the defining irreducible
            std::vector<uint64_t> prod(2 * k - 1, 0);
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            if (k > 1) prod = detail::fq_poly_mod(std::move(prod), t->defining, p);
            prod.resize(k, 0);
            t->mul[a * q + b] = static_cast<Element>(from_digits(prod));
        }
    }
    for (uint64_t a = 1; a < q; ++a)
        for (uint64_t b = 1; b < q; ++b)
            if (t->mul[a * q + b] == 1) t->inv[a] = static_cast<Element>(b);

    t->gen = 0;
    for (uint64_t a = 1; a < q; ++a) {
        uint64_t ord = 1;
        Element x = static_cast<Element>(a);
        while (x != 1) {
            x = t->mul[x * q + a];
            ++ord;
        }
        if (ord == q - 1) {
            t->gen = static_cast<Element>(a);
            break;
        }
    }
    return t;
}

} // namespace intersective
