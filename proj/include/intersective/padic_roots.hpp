#pragma once

#include <string>
#include <vector>

#include "intersective/arith.hpp"
#include "intersective/bigint.hpp"
#include "intersective/errors.hpp"
#include "intersective/fppoly.hpp"
#include "intersective/intpoly.hpp"
#include "intersective/newton_polygon.hpp"
#include "intersective/partitions.hpp"

namespace intersective {

// Witness for one distinct root in Z_p: either an exact integer root, or an
// approximation w mod p^k satisfying the Hensel condition
// v_p(f(w)) > 2 v_p(f'(w)), which pins a unique root of f near w.
struct RootWitness {
    BigInt value;           // representative in [0, p^precision)
    unsigned precision = 1; // k in "mod p^k"
    std::string method;     // "hensel" or "rational"
};

struct PadicRootReport {
    BigInt p;
    unsigned distinct_roots = 0;       // distinct roots in Z_p of the squarefree part
    unsigned with_multiplicity = 0;    // counted with multiplicity in f itself
    std::vector<RootWitness> witnesses;
    unsigned refutation_depth = 0;     // residue tree exhausted at this depth when count is 0
    std::string method;                // "hensel" | "rational" | "exhausted"

    bool has_root() const { return distinct_roots > 0; }
};

namespace detail {

// v_p of every coefficient's gcd-power; g must be nonzero.
inline unsigned long poly_min_valuation(const IntPoly& g, const BigInt& p) {
    unsigned long best = 0;
    bool first = true;
    for (const auto& c : g.coeffs()) {
        if (c.is_zero()) continue;
        unsigned long v = BigInt::valuation(c, p);
        if (first || v < best) best = v;
        first = false;
        if (best == 0) break;
    }
    return best;
}

inline IntPoly poly_divide_p_power(const IntPoly& g, const BigInt& p, unsigned long k) {
    if (k == 0) return g;
    BigInt pk = p.pow(k);
    std::vector<BigInt> c(g.coeffs());
    for (auto& v : c)
        if (!v.is_zero()) v = v.divexact(pk);
    return IntPoly(std::move(c));
}

// Roots of g mod p, via direct scan for small p and x^p - x splitting above.
inline std::vector<BigInt> roots_mod_p(const IntPoly& g, const BigInt& p, Rng& rng) {
    std::vector<BigInt> out;
    FpZ fld(p);
    auto gp = FieldPoly<FpZ>::from_intpoly(fld, g);
    if (gp.is_zero()) throw ZeroModP("roots_mod_p: polynomial vanishes mod p");
    for (auto& r : field_roots(gp, rng)) out.push_back(r);
    return out;
}

struct BranchState {
    BigInt x0;       // residue fixed so far
    unsigned scale;  // x = x0 + p^scale * y
};

// Newton refinement in branch coordinates: g satisfies v(g(r)) > 2 v(g'(r)),
// so branch-space Newton converges and drives the x-space valuation of f up
// while v_p(f') stays fixed near the root. Returns a witness w mod p^k with
// v_p(f(w)) > 2 v_p(f'(w)), independently recheckable.
inline RootWitness certify_hensel_witness(const IntPoly& f, const BigInt& p,
                                          const IntPoly& g, const BigInt& r,
                                          const BranchState& st) {
    IntPoly fd = f.derivative();
    IntPoly gd = g.derivative();
    BigInt pscale = p.pow(st.scale);
    BigInt y = r;
    for (int iter = 0; iter < 256; ++iter) {
        BigInt w = st.x0 + pscale * y;
        BigInt fv = f.evaluate(w);
        if (fv.is_zero()) {
            unsigned long k = st.scale + 2;
            return {w.mod_positive(p.pow(k)), static_cast<unsigned>(k), "rational"};
        }
        unsigned long sx = BigInt::valuation(fv, p);
        BigInt fdv = fd.evaluate(w);
        if (!fdv.is_zero()) {
            unsigned long ax = BigInt::valuation(fdv, p);
            // extra margin so nearby integer roots get detected exactly
            if (sx > 2 * ax + 2) {
                unsigned long k = sx + 1;
                BigInt cand = w.symmetric_mod(p.pow(k));
                if (f.evaluate(cand).is_zero())
                    return {cand.mod_positive(p.pow(k)), static_cast<unsigned>(k), "rational"};
                return {w.mod_positive(p.pow(k)), static_cast<unsigned>(k), "hensel"};
            }
        }
        // one more branch-space Newton step
        BigInt gv = g.evaluate(y);
        if (gv.is_zero())
            throw std::logic_error("certify_hensel_witness: inconsistent branch state");
        unsigned long s = BigInt::valuation(gv, p);
        BigInt gdv = gd.evaluate(y);
        unsigned long a = gdv.is_zero() ? s : BigInt::valuation(gdv, p);
        if (s <= 2 * a)
            throw std::logic_error("certify_hensel_witness: Hensel condition lost");
        unsigned long target = 2 * (s - a);
        BigInt pk = p.pow(target);
        BigInt unit = gdv.divexact(p.pow(a));
        BigInt corr = (gv.divexact(p.pow(a)) * unit.invmod(pk)).mod_positive(pk);
        y = y - corr;
    }
    throw std::logic_error("certify_hensel_witness: failed to certify");
}

} // namespace detail

// Count the distinct roots of a monic squarefree integer polynomial in Z_p
// and produce one witness per root. Complete decision procedure: breadth
// first refinement of residues with Hensel certification, depth capped by
// 2 v_p(disc) + 1.
inline PadicRootReport roots_in_Zp_squarefree(const IntPoly& f, const BigInt& p,
                                              uint64_t seed = 0) {
    if (!f.is_monic()) throw NonMonicInput("roots_in_Zp: polynomial must be monic");
    PadicRootReport rep;
    rep.p = p;
    if (f.degree() < 1) {
        rep.method = "exhausted";
        return rep;
    }
    BigInt disc = f.degree() >= 1 ? discriminant(f) : BigInt(1);
    if (disc.is_zero()) throw NotSquarefree("roots_in_Zp: input not squarefree");
    unsigned long d = disc.is_one() || disc == BigInt(-1) ? 0 : BigInt::valuation(disc, p);
    if (d > 10000)
        throw ResourceExhausted("roots_in_Zp: discriminant valuation exceeds 10^4");
    unsigned long depth_cap = 2 * d + 1;
    unsigned long witness_precision = 2 * d + 1;

    Rng rng(seed ^ 0x70616469637aULL);
    unsigned max_depth_seen = 0;

    std::function<void(const IntPoly&, const detail::BranchState&, unsigned long)> walk =
        [&](const IntPoly& g, const detail::BranchState& st, unsigned long depth) {
            if (depth > depth_cap)
                throw ResourceExhausted("roots_in_Zp: refinement exceeded the depth cap");
            max_depth_seen = std::max<unsigned>(max_depth_seen, static_cast<unsigned>(depth));
            IntPoly cur = g;
            for (const BigInt& r : detail::roots_mod_p(cur, p, rng)) {
                IntPoly local = cur;
                BigInt gv = local.evaluate(r);
                if (gv.is_zero()) {
                    // exact root: x = x0 + p^scale * r
                    BigInt root = st.x0 + p.pow(st.scale) * r;
                    rep.distinct_roots += 1;
                    unsigned long prec = witness_precision + st.scale + 1;
                    rep.witnesses.push_back({root.mod_positive(p.pow(prec)),
                                             static_cast<unsigned>(prec), "rational"});
                    // deflate to find further roots sharing this residue
                    local = local.divexact(IntPoly::linear_root(r));
                    gv = local.evaluate(r);
                    if (gv.is_zero())
                        throw NotSquarefree("roots_in_Zp: repeated exact root");
                    if (local.degree() < 1) continue;
                    auto lp = FieldPoly<FpZ>::from_intpoly(FpZ(p), local);
                    if (lp.is_zero() || FpZ(p).is_zero(lp.evaluate(FpZ(p).from_int(r)))) {
                        // residue still alive in the deflated polynomial
                    } else {
                        continue;
                    }
                }
                BigInt gdv = local.derivative().evaluate(r);
                bool simple = !gdv.is_zero() && !gdv.divisible_by(p);
                if (simple) {
                    // classic Hensel: a unit derivative pins exactly one root
                    // in this residue class
                    rep.distinct_roots += 1;
                    rep.witnesses.push_back(detail::certify_hensel_witness(f, p, local, r, st));
                } else {
                    // refine: h(y) = g(r + p y) / p^m
                    IntPoly h = local.shift(r).scale_arg(p);
                    unsigned long m = detail::poly_min_valuation(h, p);
                    h = detail::poly_divide_p_power(h, p, m);
                    detail::BranchState nst{st.x0 + p.pow(st.scale) * r, st.scale + 1};
                    walk(h, nst, depth + 1);
                }
            }
        };

    walk(f, detail::BranchState{BigInt(0), 0}, 0);
    rep.refutation_depth = rep.distinct_roots == 0 ? max_depth_seen + 1 : 0;
    bool any_hensel = false, any_rational = false;
    for (const auto& w : rep.witnesses) {
        if (w.method == "hensel") any_hensel = true;
        if (w.method == "rational") any_rational = true;
    }
    rep.method = rep.distinct_roots == 0 ? "exhausted" : (any_rational && !any_hensel ? "rational" : "hensel");
    return rep;
}

// Public decision procedure for arbitrary monic integer f: the squarefree
// part is analyzed (distinct roots), multiplicities reported separately.
inline PadicRootReport roots_in_Zp(const IntPoly& f, const BigInt& p, uint64_t seed = 0) {
    if (f.is_zero() || !f.is_monic()) throw NonMonicInput("roots_in_Zp: polynomial must be monic");
    PadicRootReport total;
    total.p = p;
    if (f.degree() < 1) {
        total.method = "exhausted";
        return total;
    }
    unsigned strip = f.trailing_zero_count();
    IntPoly g = f.strip_x_power(strip);
    if (strip > 0) {
        total.distinct_roots += 1;
        total.with_multiplicity += strip;
        total.witnesses.push_back({BigInt(0), 1, "rational"});
    }
    unsigned max_depth = 0;
    if (g.degree() >= 1) {
        for (const auto& [part, mult] : squarefree_decomposition(g)) {
            if (part.degree() < 1) continue;
            if (!part.is_monic())
                throw NonMonicInput("roots_in_Zp: squarefree part not monic");
            PadicRootReport r = roots_in_Zp_squarefree(part, p, seed);
            total.distinct_roots += r.distinct_roots;
            total.with_multiplicity += r.distinct_roots * mult;
            for (auto& w : r.witnesses) total.witnesses.push_back(w);
            max_depth = std::max(max_depth, r.refutation_depth);
        }
    }
    total.refutation_depth = total.distinct_roots == 0 ? max_depth : 0;
    bool any_hensel = false, any_rational = false;
    for (const auto& w : total.witnesses) {
        if (w.method == "hensel") any_hensel = true;
        if (w.method == "rational") any_rational = true;
    }
    total.method =
        total.distinct_roots == 0 ? "exhausted" : (any_rational && !any_hensel ? "rational" : "hensel");
    return total;
}

// Re-verification of a witness from its serialized payload alone.
inline bool verify_root_witness(const IntPoly& f, const BigInt& p, const RootWitness& w) {
    BigInt fv = f.evaluate(w.value);
    if (w.method == "rational") {
        if (fv.is_zero()) return true;
        // value is a truncation of an exact root of a squarefree factor
        return BigInt::valuation(fv, p) >= w.precision;
    }
    if (fv.is_zero()) return true;
    BigInt fdv = f.derivative().evaluate(w.value);
    unsigned long s = BigInt::valuation(fv, p);
    unsigned long a = fdv.is_zero() ? s + 1 : BigInt::valuation(fdv, p);
    return s > 2 * a;
}

// ---------------------------------------------------------------------------
// Orbit constraints from a mod-p factorization shape f = prod f_i^{k_i}:
// decomposition-group orbit lengths refine [n_i * k_i]; inertia orbit
// lengths refine [k_i repeated n_i times].
// ---------------------------------------------------------------------------

struct OrbitConstraint {
    Partition decomposition_bound; // multiset [n_i * k_i]
    Partition inertia_bound;       // multiset [k_i, ..., k_i] (n_i times)
};

inline OrbitConstraint orbit_constraints(const FactorizationModP& fac) {
    OrbitConstraint oc;
    for (const auto& [f, k] : fac.factors) {
        unsigned n = static_cast<unsigned>(f.degree());
        oc.decomposition_bound.push_back(n * k);
        for (unsigned i = 0; i < n; ++i) oc.inertia_bound.push_back(k);
    }
    oc.decomposition_bound = sorted_partition(oc.decomposition_bound);
    oc.inertia_bound = sorted_partition(oc.inertia_bound);
    return oc;
}

} // namespace intersective
