#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "intersective/arith.hpp"
#include "intersective/bigint.hpp"
#include "intersective/errors.hpp"
#include "intersective/fppoly.hpp"
#include "intersective/intpoly.hpp"
#include "intersective/partitions.hpp"

namespace intersective {

// ---------------------------------------------------------------------------
// Hensel lifting of a mod-p factorization to mod p^K, quadratic two-factor
// steps arranged in a binary factor tree.
// ---------------------------------------------------------------------------

namespace detail {

// Polynomial arithmetic mod m (m = p^k), coefficients in [0, m).
inline IntPoly poly_mod(const IntPoly& f, const BigInt& m) {
    std::vector<BigInt> c(f.coeffs());
    for (auto& v : c) v = v.mod_positive(m);
    return IntPoly(std::move(c));
}

inline IntPoly poly_mulmod(const IntPoly& a, const IntPoly& b, const BigInt& m) {
    return poly_mod(a * b, m);
}

// Division with invertible (mod m) leading coefficient of d.
inline void poly_divmod_mod(const IntPoly& a, const IntPoly& d, const BigInt& m,
                            IntPoly& q, IntPoly& r) {
    BigInt inv_lc = d.leading().invmod(m);
    std::vector<BigInt> rem(a.coeffs());
    int dd = d.degree();
    std::vector<BigInt> quo;
    if (a.degree() >= dd) quo.assign(a.degree() - dd + 1, BigInt(0));
    for (int i = a.degree(); i >= dd; --i) {
        BigInt lead = rem[i].mod_positive(m);
        if (lead.is_zero()) {
            rem[i] = BigInt(0);
            continue;
        }
        BigInt c = (lead * inv_lc).mod_positive(m);
        quo[i - dd] = c;
        for (int j = 0; j <= dd; ++j)
            rem[i - dd + j] = (rem[i - dd + j] - c * d.coeff(j)).mod_positive(m);
    }
    q = poly_mod(IntPoly(std::move(quo)), m);
    r = poly_mod(IntPoly(std::move(rem)), m);
}

// One quadratic Hensel step: from f = g*h (mod m) with s*g + t*h = 1 (mod m)
// to the same data mod m^2. g stays monic. (Von zur Gathen & Gerhard 15.10.)
inline void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s, IntPoly& t,
                        const BigInt& m) {
    BigInt m2 = m * m;
    IntPoly e = poly_mod(f - g * h, m2);
    IntPoly q, r;
    poly_divmod_mod(poly_mulmod(s, e, m2), h, m2, q, r);
    IntPoly g1 = poly_mod(g + poly_mulmod(t, e, m2) + poly_mulmod(q, g, m2), m2);
    IntPoly h1 = poly_mod(h + r, m2);
    IntPoly b = poly_mod(poly_mulmod(s, g1, m2) + poly_mulmod(t, h1, m2) - IntPoly({1}), m2);
    IntPoly c, d;
    poly_divmod_mod(poly_mulmod(s, b, m2), h1, m2, c, d);
    IntPoly s1 = poly_mod(IntPoly(s) - d, m2);
    IntPoly t1 = poly_mod(t - poly_mulmod(t, b, m2) - poly_mulmod(c, g1, m2), m2);
    g = g1;
    h = h1;
    s = s1;
    t = t1;
}

// Extended gcd over F_p for the initial Bezout pair.
inline void fp_bezout(const IntPoly& g, const IntPoly& h, uint64_t p, IntPoly& s, IntPoly& t) {
    Fp fld(p);
    FpPoly a = FpPoly::from_intpoly(fld, g);
    FpPoly b = FpPoly::from_intpoly(fld, h);
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(fld, fld.one()), s1 = FpPoly::zero(fld);
    FpPoly t0 = FpPoly::zero(fld), t1 = FpPoly::constant(fld, fld.one());
    while (!r1.is_zero()) {
        FpPoly q(fld), r(fld);
        r0.divmod(r1, q, r);
        FpPoly s2 = s0.sub(q.mul(s1));
        FpPoly t2 = t0.sub(q.mul(t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // r0 = gcd = constant (coprime inputs); normalize to 1
    auto inv = fld.inv(r0.coeff(0));
    auto lift = [&](const FpPoly& fp) {
        std::vector<BigInt> c;
        for (size_t i = 0; i < fp.coeffs().size(); ++i)
            c.push_back(fld.to_int(fld.mul(fp.coeff(i), inv)));
        return IntPoly(std::move(c));
    };
    s = lift(s0);
    t = lift(t0);
}

// Lift the factorization f = lc * prod(factors) (mod p) to mod p^K where
// p^K >= target_modulus; factors monic mod p, f squarefree mod p.
// Returns monic factors mod p^K and the reached modulus.
inline std::pair<std::vector<IntPoly>, BigInt> hensel_lift_tree(
    const IntPoly& f, const std::vector<IntPoly>& factors, uint64_t p,
    const BigInt& target_modulus) {
    BigInt pk(static_cast<unsigned long long>(p));
    BigInt modulus = pk;
    while (modulus < target_modulus) modulus *= modulus;

    // Recursive split: lift f ~ lc*(prod left)*(prod right).
    std::function<std::vector<IntPoly>(const IntPoly&, const std::vector<IntPoly>&)> lift =
        [&](const IntPoly& target, const std::vector<IntPoly>& fs) -> std::vector<IntPoly> {
        if (fs.size() == 1) {
            // target = unit * monic factor mod p^K; return its monic normalization
            IntPoly t = poly_mod(target, modulus);
            BigInt inv_lc = t.leading().invmod(modulus);
            std::vector<BigInt> c(t.coeffs());
            for (auto& v : c) v = (v * inv_lc).mod_positive(modulus);
            return {poly_mod(IntPoly(std::move(c)), modulus)};
        }
        size_t half = fs.size() / 2;
        IntPoly g({1}), h({1});
        for (size_t i = 0; i < half; ++i) g = g * fs[i];
        for (size_t i = half; i < fs.size(); ++i) h = h * fs[i];
        BigInt bp(static_cast<unsigned long long>(p));
        // g absorbs the unit; h stays monic (hensel_step divides by h)
        g = poly_mod(g * target.leading(), bp);
        h = poly_mod(h, bp);
        IntPoly s, t;
        fp_bezout(g, h, p, s, t);
        BigInt m = bp;
        IntPoly gg = g, hh = h, ss = s, tt = t;
        while (m < modulus) {
            hensel_step(target, gg, hh, ss, tt, m);
            m = m * m;
        }
        gg = poly_mod(gg, modulus);
        hh = poly_mod(hh, modulus);
        std::vector<IntPoly> left(fs.begin(), fs.begin() + half);
        std::vector<IntPoly> right(fs.begin() + half, fs.end());
        auto lifted_left = lift(gg, left);
        auto lifted_right = lift(hh, right);
        lifted_left.insert(lifted_left.end(), lifted_right.begin(), lifted_right.end());
        return lifted_left;
    };

    // hensel_step keeps g monic; arrange g = prod(left) monic, h carries lc.
    return {lift(f, factors), modulus};
}

inline IntPoly symmetric_poly_mod(const IntPoly& f, const BigInt& m) {
    std::vector<BigInt> c(f.coeffs());
    for (auto& v : c) v = v.symmetric_mod(m);
    return IntPoly(std::move(c));
}

// Landau–Mignotte style bound: any factor h of f (over Z) with the leading
// coefficient absorbed satisfies |coeff| <= 2^n * |f|_2 * |lc(f)|.
inline BigInt mignotte_bound(const IntPoly& f) {
    BigInt s(0);
    for (const auto& v : f.coeffs()) s += v * v;
    BigInt norm2 = s.isqrt() + BigInt(1);
    return BigInt::pow2(static_cast<size_t>(f.degree()) + 1) * norm2 * f.leading().abs();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Degree partition sieve: every factor-degree multiset of f over Z must be
// refined by the mod-p factor degree partition at any prime of good
// reduction. Intersecting over several primes often proves irreducibility
// outright ({deg f} alone survives).
// ---------------------------------------------------------------------------

inline std::set<Partition> degree_partition_sieve(const IntPoly& f,
                                                  const std::vector<uint64_t>& primes,
                                                  uint64_t seed = 0) {
    if (f.degree() < 1) throw std::domain_error("degree_partition_sieve: need deg >= 1");
    BigInt lc_disc = f.leading() * discriminant(f);
    for (uint64_t p : primes) {
        if (lc_disc.divisible_by(BigInt(static_cast<unsigned long long>(p))))
            throw std::invalid_argument("degree_partition_sieve: prime divides lc*disc");
    }
    unsigned n = static_cast<unsigned>(f.degree());
    std::vector<Partition> candidates = all_partitions(n);
    std::set<Partition> alive(candidates.begin(), candidates.end());
    for (uint64_t p : primes) {
        FactorizationModP fac = factor_mod_p(f, p, seed);
        Partition sample;
        for (auto d : fac.degree_partition()) sample.push_back(d);
        sample = sorted_partition(sample);
        for (auto it = alive.begin(); it != alive.end();) {
            if (!subpartition_check(sample, *it))
                it = alive.erase(it);
            else
                ++it;
        }
    }
    return alive;
}

// ---------------------------------------------------------------------------
// Zassenhaus factorization over Z: good prime, Hensel lift past the
// Landau–Mignotte bound, then subset recombination pruned by the degree
// sieve and trailing-coefficient divisibility.
// ---------------------------------------------------------------------------

namespace detail {

inline uint64_t choose_good_prime(const IntPoly& f) {
    BigInt lc_disc = f.leading() * discriminant(f);
    for (uint64_t p = 3;; p += 2) {
        if (!is_prime(BigInt(static_cast<unsigned long long>(p)))) continue;
        if (!lc_disc.divisible_by(BigInt(static_cast<unsigned long long>(p)))) return p;
        if (p > (1ULL << 40)) throw ResourceExhausted("choose_good_prime: no prime found");
    }
}

// Allowed proper factor degrees from the mod-p degree partitions at a few
// extra primes (subset sums intersected).
inline std::set<unsigned> allowed_degrees(const IntPoly& f, uint64_t skip_prime, uint64_t seed) {
    unsigned n = static_cast<unsigned>(f.degree());
    std::set<unsigned> allowed;
    for (unsigned d = 0; d <= n; ++d) allowed.insert(d);
    BigInt lc_disc = f.leading() * discriminant(f);
    unsigned sampled = 0;
    for (uint64_t p = 3; sampled < 4 && p < 2000; p += 2) {
        if (p == skip_prime || !is_prime(BigInt(static_cast<unsigned long long>(p)))) continue;
        if (lc_disc.divisible_by(BigInt(static_cast<unsigned long long>(p)))) continue;
        ++sampled;
        FactorizationModP fac = factor_mod_p(f, p, seed);
        auto parts = fac.degree_partition();
        // subset sums
        std::vector<char> reach(n + 1, 0);
        reach[0] = 1;
        for (unsigned d : parts)
            for (int i = static_cast<int>(n) - static_cast<int>(d); i >= 0; --i)
                if (reach[i]) reach[i + d] = 1;
        for (auto it = allowed.begin(); it != allowed.end();)
            it = reach[*it] ? std::next(it) : allowed.erase(it);
    }
    return allowed;
}

// Factor a primitive squarefree polynomial with positive leading coefficient
// and nonzero constant term.
inline std::vector<IntPoly> zassenhaus_squarefree(const IntPoly& input, uint64_t seed) {
    std::vector<IntPoly> result;
    IntPoly f = input;
    if (f.degree() == 1) return {f};

    uint64_t p = choose_good_prime(f);
    FactorizationModP fac = factor_mod_p(f, p, seed);
    if (fac.factors.size() == 1) return {f};

    std::vector<IntPoly> modular;
    Fp fld(p);
    for (const auto& [fp, mult] : fac.factors) {
        std::vector<BigInt> c;
        for (size_t i = 0; i < fp.coeffs().size(); ++i) c.push_back(fld.to_int(fp.coeff(i)));
        modular.push_back(IntPoly(std::move(c)));
    }

    BigInt bound = mignotte_bound(f);
    auto [lifted, modulus] = hensel_lift_tree(f, modular, p, bound * BigInt(2) + BigInt(1));

    std::set<unsigned> degs = allowed_degrees(f, p, seed);

    std::vector<bool> used(lifted.size(), false);
    size_t remaining = lifted.size();

    auto try_subset = [&](const std::vector<size_t>& idx) -> bool {
        // quick degree prune
        unsigned dsum = 0;
        for (size_t i : idx) dsum += static_cast<unsigned>(lifted[i].degree());
        if (!degs.count(dsum)) return false;
        // trailing-coefficient prune: lc*prod(const terms) must divide lc*f(0)
        BigInt tc = f.leading();
        for (size_t i : idx) tc = (tc * lifted[i].coeff(0)).symmetric_mod(modulus);
        if (!tc.is_zero()) {
            BigInt target = f.leading() * f.coeff(0);
            if (!target.divisible_by(tc)) return false;
        }
        // full candidate
        IntPoly h = IntPoly::constant(f.leading());
        for (size_t i : idx) h = detail::symmetric_poly_mod(h * lifted[i], modulus);
        h = detail::symmetric_poly_mod(h, modulus);
        IntPoly hp = h.primitive_part();
        if (hp.degree() == 0) return false;
        if (!f.divisible_by(hp)) return false;
        result.push_back(hp);
        f = f.divexact(hp);
        for (size_t i : idx) {
            used[i] = true;
            --remaining;
        }
        return true;
    };

    // subsets of growing size, up to half the live factor count
    for (size_t s = 1; s <= std::max<size_t>(1, remaining / 2); ++s) {
        bool progressed = true;
        while (progressed && s <= remaining / 2) {
            progressed = false;
            std::vector<size_t> live;
            for (size_t i = 0; i < lifted.size(); ++i)
                if (!used[i]) live.push_back(i);
            if (live.size() < s) break;
            std::vector<size_t> pick(s);
            std::function<bool(size_t, size_t)> comb = [&](size_t start, size_t depth) -> bool {
                if (depth == s) {
                    std::vector<size_t> idx;
                    for (size_t j = 0; j < s; ++j) idx.push_back(live[pick[j]]);
                    return try_subset(idx);
                }
                for (size_t i = start; i + (s - depth) <= live.size(); ++i) {
                    pick[depth] = i;
                    if (comb(i + 1, depth + 1)) return true;
                }
                return false;
            };
            if (comb(0, 0)) progressed = true;
        }
    }
    if (f.degree() > 0) result.push_back(f.primitive_part());
    return result;
}

} // namespace detail

// Irreducible factorization over Z: primitive irreducible factors over Q with
// multiplicities (squarefree decomposition first). The content/sign is
// returned as the unit.
struct ZFactorization {
    BigInt unit = BigInt(1); // content with sign
    std::vector<std::pair<IntPoly, unsigned>> factors;

    IntPoly reconstruct() const {
        IntPoly r = IntPoly::constant(unit);
        for (const auto& [f, m] : factors) r = r * f.pow(m);
        return r;
    }
};

inline ZFactorization factor_over_Z(const IntPoly& input, uint64_t seed = 0) {
    if (input.is_zero()) throw std::domain_error("factor_over_Z: zero polynomial");
    ZFactorization out;
    BigInt cont = input.content();
    if (input.leading().sign() < 0) cont = -cont;
    out.unit = cont;
    IntPoly f = input.divexact(IntPoly::constant(cont));
    if (f.degree() == 0) return out;

    // factor out x^k
    unsigned k = f.trailing_zero_count();
    if (k > 0) {
        f = f.strip_x_power(k);
        out.factors.emplace_back(IntPoly({0, 1}), k);
    }
    if (f.degree() == 0) return out;

    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        for (const auto& irr : detail::zassenhaus_squarefree(part, seed))
            out.factors.emplace_back(irr, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
        }
        return a.second < b.second;
    });
    return out;
}

// Irreducibility over Q: degree sieve first (cheap, often conclusive),
// Zassenhaus as the fallback.
inline bool is_irreducible_over_Z(const IntPoly& f, uint64_t seed = 0) {
    if (f.degree() < 1) return false;
    IntPoly p = f.primitive_part();
    if (p.trailing_zero_count() > 0) return p.degree() == 1;
    if (squarefree_part(p).degree() != p.degree()) return false;
    // sieve with a handful of good primes
    BigInt lc_disc = p.leading() * discriminant(p);
    std::vector<uint64_t> good;
    for (uint64_t q = 3; good.size() < 5 && q < 5000; q += 2) {
        if (!is_prime(BigInt(static_cast<unsigned long long>(q)))) continue;
        if (lc_disc.divisible_by(BigInt(static_cast<unsigned long long>(q)))) continue;
        good.push_back(q);
    }
    auto alive = degree_partition_sieve(p, good, seed);
    Partition whole{static_cast<unsigned>(p.degree())};
    if (alive.size() == 1 && *alive.begin() == whole) return true;
    auto fac = factor_over_Z(p, seed);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

} // namespace intersective
