#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "intersective/arith.hpp"
#include "intersective/bigint.hpp"
#include "intersective/errors.hpp"
#include "intersective/finite_field.hpp"
#include "intersective/intpoly.hpp"

namespace intersective {

// Univariate polynomial over a finite field F (see finite_field.hpp for the
// field interface). Coefficients ascending, normalized.
template <typename F>
class FieldPoly {
public:
    using E = typename F::Element;

    explicit FieldPoly(const F& f) : field_(f) {}
    FieldPoly(const F& f, std::vector<E> coeffs) : field_(f), c_(std::move(coeffs)) { normalize(); }

    static FieldPoly zero(const F& f) { return FieldPoly(f); }
    static FieldPoly constant(const F& f, E v) {
        FieldPoly r(f);
        r.c_.push_back(v);
        r.normalize();
        return r;
    }
    static FieldPoly x(const F& f) {
        FieldPoly r(f);
        r.c_ = {f.zero(), f.one()};
        return r;
    }
    static FieldPoly monomial(const F& f, E coeff, size_t deg) {
        FieldPoly r(f);
        r.c_.assign(deg + 1, f.zero());
        r.c_[deg] = coeff;
        r.normalize();
        return r;
    }

    static FieldPoly from_intpoly(const F& f, const IntPoly& g) {
        FieldPoly r(f);
        r.c_.reserve(g.coeffs().size());
        for (const auto& v : g.coeffs()) r.c_.push_back(f.from_int(v));
        r.normalize();
        return r;
    }

    const F& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && field_.eq(c_[0], field_.one()); }
    E leading() const { return c_.empty() ? field_.zero() : c_.back(); }
    E coeff(size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    const std::vector<E>& coeffs() const { return c_; }

    bool equals(const FieldPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!field_.eq(c_[i], o.c_[i])) return false;
        return true;
    }

    FieldPoly add(const FieldPoly& o) const {
        FieldPoly r(field_);
        r.c_.assign(std::max(c_.size(), o.c_.size()), field_.zero());
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = field_.add(coeff(i), o.coeff(i));
        r.normalize();
        return r;
    }
    FieldPoly sub(const FieldPoly& o) const {
        FieldPoly r(field_);
        r.c_.assign(std::max(c_.size(), o.c_.size()), field_.zero());
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = field_.sub(coeff(i), o.coeff(i));
        r.normalize();
        return r;
    }
    FieldPoly mul(const FieldPoly& o) const {
        if (is_zero() || o.is_zero()) return FieldPoly(field_);
        FieldPoly r(field_);
        r.c_.assign(c_.size() + o.c_.size() - 1, field_.zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (field_.is_zero(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], o.c_[j]));
        }
        r.normalize();
        return r;
    }
    FieldPoly scale(E s) const {
        FieldPoly r(field_);
        r.c_ = c_;
        for (auto& v : r.c_) v = field_.mul(v, s);
        r.normalize();
        return r;
    }

    FieldPoly make_monic() const {
        if (is_zero()) return *this;
        return scale(field_.inv(leading()));
    }

    // q, r with *this = q * d + r, deg r < deg d
    void divmod(const FieldPoly& d, FieldPoly& q, FieldPoly& r) const {
        if (d.is_zero()) throw std::domain_error("FieldPoly: division by zero");
        q = FieldPoly(field_);
        r = *this;
        int dd = d.degree();
        if (degree() >= dd) q.c_.assign(degree() - dd + 1, field_.zero());
        E invlc = field_.inv(d.leading());
        while (!r.is_zero() && r.degree() >= dd) {
            E c = field_.mul(r.leading(), invlc);
            int shift = r.degree() - dd;
            q.c_[shift] = c;
            // r -= c * x^shift * d
            for (int j = 0; j <= dd; ++j)
                r.c_[shift + j] = field_.sub(r.c_[shift + j], field_.mul(c, d.c_[j]));
            r.normalize();
        }
        q.normalize();
    }
    FieldPoly mod(const FieldPoly& d) const {
        FieldPoly q(field_), r(field_);
        divmod(d, q, r);
        return r;
    }
    FieldPoly div(const FieldPoly& d) const {
        FieldPoly q(field_), r(field_);
        divmod(d, q, r);
        return q;
    }

    static FieldPoly gcd(FieldPoly a, FieldPoly b) {
        while (!b.is_zero()) {
            FieldPoly r = a.mod(b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.make_monic();
    }

    FieldPoly derivative() const {
        FieldPoly r(field_);
        if (c_.size() <= 1) return r;
        r.c_.assign(c_.size() - 1, field_.zero());
        for (size_t i = 1; i < c_.size(); ++i) {
            E m = field_.from_int(BigInt(static_cast<long>(i)));
            r.c_[i - 1] = field_.mul(c_[i], m);
        }
        r.normalize();
        return r;
    }

    E evaluate(E x) const {
        E acc = field_.zero();
        for (size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
        return acc;
    }

    FieldPoly mulmod(const FieldPoly& o, const FieldPoly& m) const { return mul(o).mod(m); }

    // this^e mod m, e >= 0 arbitrary precision
    FieldPoly powmod(const BigInt& e, const FieldPoly& m) const {
        FieldPoly result = constant(field_, field_.one()).mod(m);
        FieldPoly base = this->mod(m);
        size_t bits = e.bit_length();
        for (size_t i = bits; i-- > 0;) {
            result = result.mulmod(result, m);
            if (e.test_bit(i)) result = result.mulmod(base, m);
        }
        return result;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = c_.size(); i-- > 0;) {
            if (field_.is_zero(c_[i])) continue;
            if (!s.empty()) s += " + ";
            s += field_.to_int(c_[i]).to_string();
            if (i > 0) s += "*" + var;
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void normalize() {
        while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
    }

    F field_;
    std::vector<E> c_;
};

// ---------------------------------------------------------------------------
// Factorization over finite fields: squarefree split, then distinct-degree,
// then Cantor–Zassenhaus equal-degree splitting. Deterministic given the
// seed of the supplied generator.
// ---------------------------------------------------------------------------

template <typename F>
struct FieldFactor {
    FieldPoly<F> poly;
    unsigned multiplicity;
};

namespace detail {

// p-th root of an element of F_{p^k}: inverse Frobenius, a^(p^(k-1)).
template <typename F>
typename F::Element pth_root(const F& f, typename F::Element a) {
    unsigned k = f.extension_degree();
    if (k == 1) return a;
    BigInt e = f.characteristic().pow(k - 1);
    // repeated squaring in the field
    typename F::Element r = f.one();
    typename F::Element base = a;
    for (size_t i = 0; i < e.bit_length(); ++i) {
        if (e.test_bit(i)) r = f.mul(r, base);
        base = f.mul(base, base);
    }
    return r;
}

// f(x) with f' = 0 is g(x^p); returns g with coefficients p-th rooted.
template <typename F>
FieldPoly<F> pth_root_poly(const FieldPoly<F>& f) {
    const F& fld = f.field();
    unsigned long p = fld.characteristic().to_ulong();
    std::vector<typename F::Element> out;
    for (size_t i = 0; i <= static_cast<size_t>(f.degree()); i += p)
        out.push_back(pth_root(fld, f.coeff(i)));
    return FieldPoly<F>(fld, std::move(out));
}

} // namespace detail

// Squarefree decomposition in characteristic p.
template <typename F>
std::vector<FieldFactor<F>> squarefree_decomposition(const FieldPoly<F>& input) {
    const F& fld = input.field();
    std::vector<FieldFactor<F>> out;
    FieldPoly<F> f = input.make_monic();
    unsigned e = 1;
    while (f.degree() > 0) {
        FieldPoly<F> g = FieldPoly<F>::gcd(f, f.derivative());
        FieldPoly<F> w = f.div(g);
        unsigned i = 1;
        while (w.degree() > 0) {
            FieldPoly<F> y = FieldPoly<F>::gcd(w, g);
            FieldPoly<F> z = w.div(y);
            if (z.degree() > 0) out.push_back({z, i * e});
            w = y;
            g = g.div(y);
            ++i;
        }
        if (g.degree() > 0) {
            f = detail::pth_root_poly(g);
            e *= static_cast<unsigned>(fld.characteristic().to_ulong());
        } else {
            break;
        }
    }
    return out;
}

// Distinct-degree factorization of a monic squarefree polynomial:
// returns [(product of irreducible factors of degree d, d)].
template <typename F>
std::vector<std::pair<FieldPoly<F>, unsigned>> distinct_degree_split(const FieldPoly<F>& input) {
    const F& fld = input.field();
    std::vector<std::pair<FieldPoly<F>, unsigned>> out;
    FieldPoly<F> f = input.make_monic();
    FieldPoly<F> h = FieldPoly<F>::x(fld).mod(f);
    BigInt q = fld.size();
    unsigned d = 0;
    while (f.degree() > 0 && f.degree() >= 2 * static_cast<int>(d + 1)) {
        ++d;
        h = h.powmod(q, f);
        FieldPoly<F> g = FieldPoly<F>::gcd(h.sub(FieldPoly<F>::x(fld)), f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f.div(g);
            h = h.mod(f);
        }
    }
    if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
    return out;
}

// Equal-degree splitting (Cantor–Zassenhaus) of a monic squarefree product
// of irreducibles all of degree d.
template <typename F>
void equal_degree_split(const FieldPoly<F>& f, unsigned d, Rng& rng,
                        std::vector<FieldPoly<F>>& out) {
    const F& fld = f.field();
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.make_monic());
        return;
    }
    BigInt q = fld.size();
    bool char2 = fld.characteristic() == BigInt(2);
    for (;;) {
        // random polynomial of degree < deg f
        std::vector<typename F::Element> rc(static_cast<size_t>(f.degree()), fld.zero());
        for (auto& v : rc) v = fld.random_element(rng);
        FieldPoly<F> h(fld, std::move(rc));
        if (h.is_zero()) continue;
        FieldPoly<F> g = FieldPoly<F>::gcd(h, f);
        if (g.degree() == 0) {
            if (!char2) {
                BigInt e = (q.pow(d) - BigInt(1)) / BigInt(2);
                FieldPoly<F> t = h.powmod(e, f);
                g = FieldPoly<F>::gcd(t.sub(FieldPoly<F>::constant(fld, fld.one())), f);
            } else {
                // trace map sum_{i=0}^{kd-1} h^(2^i) mod f
                unsigned kd = fld.extension_degree() * d;
                FieldPoly<F> t = h.mod(f);
                FieldPoly<F> acc = t;
                for (unsigned i = 1; i < kd; ++i) {
                    t = t.mulmod(t, f);
                    acc = acc.add(t).mod(f);
                }
                g = FieldPoly<F>::gcd(acc, f);
            }
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f.div(g), d, rng, out);
            return;
        }
    }
}

// Full factorization: monic irreducible factors with multiplicities,
// canonically ordered (degree, then coefficient sequence).
template <typename F>
std::vector<FieldFactor<F>> factor_poly(const FieldPoly<F>& f, Rng& rng) {
    if (f.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
    std::vector<FieldFactor<F>> out;
    if (f.degree() == 0) return out;
    for (const auto& [sq, mult] : squarefree_decomposition(f)) {
        for (const auto& [prod, d] : distinct_degree_split(sq)) {
            std::vector<FieldPoly<F>> irr;
            equal_degree_split(prod, d, rng, irr);
            for (auto& h : irr) out.push_back({h, mult});
        }
    }
    const F& fld = f.field();
    std::sort(out.begin(), out.end(), [&](const FieldFactor<F>& a, const FieldFactor<F>& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        for (int i = 0; i <= a.poly.degree(); ++i) {
            BigInt va = fld.to_int(a.poly.coeff(static_cast<size_t>(i)));
            BigInt vb = fld.to_int(b.poly.coeff(static_cast<size_t>(i)));
            if (va != vb) return va < vb;
        }
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

// Independent irreducibility test (used to cross-check the factorizer):
// f of degree n is irreducible over F_q iff x^(q^n) = x mod f and
// gcd(x^(q^(n/l)) - x, f) = 1 for every prime l | n.
template <typename F>
bool is_irreducible(const FieldPoly<F>& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    const F& fld = f.field();
    BigInt q = fld.size();
    unsigned n = static_cast<unsigned>(f.degree());
    FieldPoly<F> xp = FieldPoly<F>::x(fld);
    FieldPoly<F> h = xp.powmod(q.pow(n), f);
    if (!h.equals(xp.mod(f))) return false;
    for (unsigned l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool prime = true;
        for (unsigned d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        FieldPoly<F> g = xp.powmod(q.pow(n / l), f).sub(xp).mod(f);
        if (FieldPoly<F>::gcd(g, f).degree() != 0) return false;
    }
    return true;
}

// Roots of f in F (each exactly once, regardless of multiplicity).
template <typename F>
std::vector<typename F::Element> field_roots(const FieldPoly<F>& f, Rng& rng) {
    const F& fld = f.field();
    std::vector<typename F::Element> roots;
    if (f.degree() <= 0) return roots;
    // Small fields: direct scan.
    if (fld.size() < BigInt(4096)) {
        unsigned long q = fld.size().to_ulong();
        for (unsigned long i = 0; i < q; ++i) {
            auto x = fld.element_from_index(i);
            if (fld.is_zero(f.evaluate(x))) roots.push_back(x);
        }
        std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
            return fld.to_int(a) < fld.to_int(b);
        });
        return roots;
    }
    // x^q - x splits off the linear part, then equal-degree splitting.
    FieldPoly<F> x = FieldPoly<F>::x(fld);
    FieldPoly<F> sq = f;
    {
        FieldPoly<F> g = FieldPoly<F>::gcd(sq, sq.derivative());
        if (g.degree() > 0) sq = sq.div(g);
    }
    FieldPoly<F> frob = x.powmod(fld.size(), sq);
    FieldPoly<F> lin = FieldPoly<F>::gcd(frob.sub(x), sq);
    if (lin.degree() <= 0) return roots;
    std::vector<FieldPoly<F>> parts;
    equal_degree_split(lin, 1, rng, parts);
    for (const auto& l : parts) {
        // l = x + c, root = -c
        roots.push_back(fld.neg(l.coeff(0)));
    }
    std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
        return fld.to_int(a) < fld.to_int(b);
    });
    return roots;
}

// ---------------------------------------------------------------------------
// Concrete mod-p surface used by the certification pipeline.
// ---------------------------------------------------------------------------

using FpPoly = FieldPoly<Fp>;

struct FactorizationModP {
    uint64_t p = 0;
    uint64_t unit = 1; // leading coefficient of f mod p
    std::vector<std::pair<FpPoly, unsigned>> factors;

    // Degree partition counted with multiplicity: k_i copies of n_i... no,
    // the partition [n_i * k_i] is the caller's business; this is the raw
    // (degree, multiplicity) list.
    std::vector<std::pair<unsigned, unsigned>> degree_multiplicities() const {
        std::vector<std::pair<unsigned, unsigned>> out;
        for (const auto& [f, k] : factors)
            out.emplace_back(static_cast<unsigned>(f.degree()), k);
        return out;
    }

    // Degree partition of a squarefree reduction (all multiplicities 1):
    // the Frobenius cycle type.
    std::vector<unsigned> degree_partition() const {
        std::vector<unsigned> out;
        for (const auto& [f, k] : factors)
            for (unsigned i = 0; i < k; ++i) out.push_back(static_cast<unsigned>(f.degree()));
        std::sort(out.rbegin(), out.rend());
        return out;
    }

    bool is_squarefree() const {
        for (const auto& [f, k] : factors)
            if (k > 1) return false;
        return true;
    }
};

// Factor f mod p (p a machine prime). Throws ZeroModP if f vanishes mod p.
inline FactorizationModP factor_mod_p(const IntPoly& f, uint64_t p, uint64_t seed = 0) {
    Fp fld(p);
    FpPoly fp = FpPoly::from_intpoly(fld, f);
    if (fp.is_zero()) throw ZeroModP("factor_mod_p: polynomial vanishes mod " + std::to_string(p));
    FactorizationModP out;
    out.p = p;
    out.unit = fp.leading();
    Rng rng(seed ^ 0x43616e746f72ULL);
    for (auto& fac : factor_poly(fp, rng)) out.factors.emplace_back(fac.poly, fac.multiplicity);
    return out;
}

// Prime-power variant: factor f over F_{p^k} (table field, small q).
inline std::vector<std::pair<FieldPoly<SmallFq>, unsigned>>
factor_mod_prime_power(const IntPoly& f, uint64_t p, unsigned k, uint64_t seed = 0) {
    SmallFq fld(p, k);
    auto fq = FieldPoly<SmallFq>::from_intpoly(fld, f);
    if (fq.is_zero())
        throw ZeroModP("factor_mod_prime_power: polynomial vanishes mod " + std::to_string(p));
    Rng rng(seed ^ 0x43616e746f72ULL);
    std::vector<std::pair<FieldPoly<SmallFq>, unsigned>> out;
    for (auto& fac : factor_poly(fq, rng)) out.emplace_back(fac.poly, fac.multiplicity);
    return out;
}

} // namespace intersective
