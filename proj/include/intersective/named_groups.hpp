#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "intersective/arith.hpp"
#include "intersective/covering.hpp"
#include "intersective/errors.hpp"
#include "intersective/finite_field.hpp"
#include "intersective/permgroup.hpp"

namespace intersective {

// A constructed group together with its two covering subgroups and
// the two permutation actions the certification pipeline matches against
// polynomial factors (by degree).
struct NamedGroup {
    std::string name;
    // heap-held so Subgroup parent pointers stay valid across moves
    std::shared_ptr<PermGroup> group_ptr;
    Subgroup U1; // point stabilizer in the primary action
    Subgroup U2; // the partner subgroup (Singer normalizer, V:H, ...)
    GroupAction action1; // primary action (degree = group().degree())
    GroupAction action2; // coset action on U2

    const PermGroup& group() const { return *group_ptr; }
};

namespace detail {

// --- projective line machinery over F_q ------------------------------------

// Points of P^1(F_q): 0..q-1 are the field elements, q is infinity.
struct ProjectiveLine {
    SmallFq F;
    unsigned q;
    explicit ProjectiveLine(uint64_t p, unsigned k) : F(p, k), q(static_cast<unsigned>(F.size().to_ulong())) {}

    // Moebius action of an invertible matrix (a b; c d).
    Perm moebius(uint32_t a, uint32_t b, uint32_t c, uint32_t d) const {
        std::vector<uint16_t> img(q + 1);
        for (unsigned x = 0; x <= q; ++x) {
            uint32_t num, den;
            if (x < q) {
                num = F.add(F.mul(a, static_cast<uint32_t>(x)), b);
                den = F.add(F.mul(c, static_cast<uint32_t>(x)), d);
            } else {
                num = a;
                den = c;
            }
            img[x] = F.is_zero(den) ? static_cast<uint16_t>(q)
                                    : static_cast<uint16_t>(F.mul(num, F.inv(den)));
        }
        return Perm(std::move(img));
    }

    // Frobenius x -> x^p on coordinates, as a point permutation.
    Perm frobenius() const {
        std::vector<uint16_t> img(q + 1);
        unsigned long p = F.characteristic().to_ulong();
        for (unsigned x = 0; x < q; ++x) {
            uint32_t y = static_cast<uint32_t>(x);
            uint32_t acc = y;
            for (unsigned long i = 1; i < p; ++i) acc = F.mul(acc, y);
            img[x] = static_cast<uint16_t>(acc);
        }
        img[q] = static_cast<uint16_t>(q);
        return Perm(std::move(img));
    }
};

inline Subgroup point_stabilizer(const PermGroup& G, unsigned point) {
    Subgroup s = subgroup_by_filter(G, [&](const Perm& p) { return p[point] == point; });
    return s;
}

// Normalizer of <sigma> for an element of the requested order; the scan is
// exact and the result's order is asserted by the caller.
inline Subgroup singer_normalizer(const PermGroup& G, unsigned long singer_order) {
    for (uint32_t id = 1; id < G.size(); ++id) {
        if (element_order(G, id) == singer_order) return cyclic_normalizer(G, id);
    }
    throw std::logic_error("singer_normalizer: no element of the requested order");
}

// --- matrix groups over small fields ---------------------------------------

using Mat = std::vector<uint32_t>; // n x n row-major over SmallFq

inline Mat mat_identity(unsigned n) {
    Mat m(n * n, 0);
    for (unsigned i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
}

inline Mat mat_mul(const SmallFq& F, const Mat& A, const Mat& B, unsigned n) {
    Mat out(n * n, 0);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            uint32_t a = A[i * n + k];
            if (F.is_zero(a)) continue;
            for (unsigned j = 0; j < n; ++j)
                out[i * n + j] = F.add(out[i * n + j], F.mul(a, B[k * n + j]));
        }
    return out;
}

inline bool mat_invertible(const SmallFq& F, Mat A, unsigned n) {
    // Gaussian elimination
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = col;
        while (piv < n && F.is_zero(A[piv * n + col])) ++piv;
        if (piv == n) return false;
        if (piv != col)
            for (unsigned j = 0; j < n; ++j) std::swap(A[piv * n + j], A[col * n + j]);
        uint32_t inv = F.inv(A[col * n + col]);
        for (unsigned j = 0; j < n; ++j) A[col * n + j] = F.mul(A[col * n + j], inv);
        for (unsigned r = 0; r < n; ++r) {
            if (r == col || F.is_zero(A[r * n + col])) continue;
            uint32_t f = A[r * n + col];
            for (unsigned j = 0; j < n; ++j)
                A[r * n + j] = F.sub(A[r * n + j], F.mul(f, A[col * n + j]));
        }
    }
    return true;
}

// Enumerate GL_n(q) by closure from transvections and a primitive scaling.
inline std::vector<Mat> enumerate_gl(const SmallFq& F, unsigned n) {
    std::vector<Mat> gens;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            if (i == j) continue;
            Mat t = mat_identity(n);
            t[i * n + j] = 1;
            gens.push_back(t);
        }
    Mat d = mat_identity(n);
    d[0] = F.generator();
    gens.push_back(d);

    std::set<Mat> seen;
    std::deque<Mat> queue;
    Mat id = mat_identity(n);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        Mat cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Mat nxt = mat_mul(F, cur, g, n);
            if (seen.insert(nxt).second) queue.push_back(nxt);
        }
    }
    return std::vector<Mat>(seen.begin(), seen.end());
}

// vector index <-> coordinates over F_q: index = sum v_i q^i
inline Perm affine_perm(const SmallFq& F, unsigned n, const Mat& A,
                        const std::vector<uint32_t>& v) {
    unsigned q = static_cast<unsigned>(F.size().to_ulong());
    unsigned points = 1;
    for (unsigned i = 0; i < n; ++i) points *= q;
    std::vector<uint16_t> img(points);
    std::vector<uint32_t> x(n), y(n);
    for (unsigned idx = 0; idx < points; ++idx) {
        unsigned t = idx;
        for (unsigned i = 0; i < n; ++i) {
            x[i] = t % q;
            t /= q;
        }
        for (unsigned i = 0; i < n; ++i) {
            uint32_t acc = v[i];
            for (unsigned j = 0; j < n; ++j) acc = F.add(acc, F.mul(A[i * n + j], x[j]));
            y[i] = acc;
        }
        unsigned out = 0;
        for (unsigned i = n; i-- > 0;) out = out * q + y[i];
        img[idx] = static_cast<uint16_t>(out);
    }
    return Perm(std::move(img));
}

// Find a small generating set among the supplied permutations: scan pairs
// (then triples) in a fixed order until one generates the target order.
inline std::vector<Perm> thin_generators(unsigned degree, const std::vector<Perm>& cand,
                                         size_t target_order, size_t cap) {
    for (size_t i = 0; i < cand.size(); ++i) {
        if (cand[i].is_identity()) continue;
        for (size_t j = i + 1; j < cand.size(); ++j) {
            std::vector<Perm> pair{cand[i], cand[j]};
            PermGroup t = PermGroup::generate("t", degree, pair, cap);
            if (t.size() == target_order) return pair;
        }
        if (i > 8) break;
    }
    for (size_t i = 0; i + 2 < cand.size() && i < 6; ++i)
        for (size_t j = i + 1; j < cand.size() && j < 24; ++j)
            for (size_t l = j + 1; l < cand.size(); ++l) {
                std::vector<Perm> triple{cand[i], cand[j], cand[l]};
                PermGroup t = PermGroup::generate("t", degree, triple, cap);
                if (t.size() == target_order) return triple;
            }
    return {};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

// PGL_2(q) on the q+1 points of the projective line, with U1 a point
// stabilizer and U2 the normalizer of a Singer cycle (order 2(q+1)).
inline NamedGroup construct_pgl2(uint64_t p, unsigned k, bool psl_only = false,
                                 bool adjoin_frobenius = false) {
    detail::ProjectiveLine pl(p, k);
    unsigned q = pl.q;
    const SmallFq& F = pl.F;
    std::vector<Perm> gens;
    if (!psl_only || p == 2) {
        gens.push_back(pl.moebius(1, 1, 0, 1));                 // x + 1
        gens.push_back(pl.moebius(F.generator(), 0, 0, 1));     // g x
        gens.push_back(pl.moebius(0, 1, 1, 0));                 // 1/x
    } else {
        uint32_t g2 = F.mul(F.generator(), F.generator());
        gens.push_back(pl.moebius(1, 1, 0, 1));                 // x + 1
        gens.push_back(pl.moebius(g2, 0, 0, 1));                // g^2 x
        gens.push_back(pl.moebius(0, F.neg(1), 1, 0));          // -1/x
    }
    if (adjoin_frobenius) gens.push_back(pl.frobenius());

    std::string name = psl_only ? "psl2_" : "pgl2_";
    name += std::to_string(q);
    if (adjoin_frobenius) name = "pgammal2_" + std::to_string(q);

    NamedGroup ng;
    ng.name = name;
    ng.group_ptr = std::make_shared<PermGroup>(PermGroup::generate(name, q + 1, gens));
    size_t expect = static_cast<size_t>(q) * (q - 1) * (q + 1);
    if (psl_only && p != 2) expect /= 2;
    if (adjoin_frobenius) expect *= k;
    if (ng.group().size() != expect)
        throw std::logic_error(name + ": order check failed, got " + std::to_string(ng.group().size()));

    ng.U1 = detail::point_stabilizer(ng.group(), q); // stabilizer of infinity
    ng.U2 = detail::singer_normalizer(ng.group(), q + 1);
    ng.action1 = natural_action(ng.group());
    ng.action2 = coset_action(ng.group(), ng.U2).action;
    return ng;
}

// PSL_3(2) on the 7 points of P^2(F_2); U2 is the Sylow-7 normalizer of
// order 21 and index 8.
inline NamedGroup construct_psl3_2() {
    // points: nonzero vectors of F_2^3, point index = value - 1
    std::vector<Perm> all;
    for (unsigned m = 0; m < 512; ++m) {
        // rows of the matrix as 3-bit values
        unsigned r0 = m & 7, r1 = (m >> 3) & 7, r2 = (m >> 6) & 7;
        // invertible over F_2?
        auto mulvec = [&](unsigned v) {
            unsigned out = 0;
            if (__builtin_parity(r0 & v)) out |= 1;
            if (__builtin_parity(r1 & v)) out |= 2;
            if (__builtin_parity(r2 & v)) out |= 4;
            return out;
        };
        // check rank 3 via images of basis vectors
        unsigned e1 = mulvec(1), e2 = mulvec(2), e4 = mulvec(4);
        unsigned span[8] = {0};
        span[0] = 1;
        unsigned count = 1;
        for (unsigned v : {e1, e2, e4}) {
            std::vector<unsigned> cur;
            for (unsigned s = 0; s < 8; ++s)
                if (span[s]) cur.push_back(s);
            for (unsigned s : cur)
                if (!span[s ^ v]) {
                    span[s ^ v] = 1;
                    ++count;
                }
        }
        if (count != 8) continue;
        std::vector<uint16_t> img(7);
        for (unsigned v = 1; v < 8; ++v) img[v - 1] = static_cast<uint16_t>(mulvec(v) - 1);
        all.emplace_back(std::move(img));
    }
    if (all.size() != 168) throw std::logic_error("psl3_2: matrix enumeration failed");
    std::vector<Perm> gens = detail::thin_generators(7, all, 168, 200);
    if (gens.empty()) throw std::logic_error("psl3_2: no generating pair found");

    NamedGroup ng;
    ng.name = "psl3_2";
    ng.group_ptr = std::make_shared<PermGroup>(PermGroup::generate("psl3_2", 7, gens));
    if (ng.group().size() != 168) throw std::logic_error("psl3_2: order check failed");
    ng.U1 = detail::point_stabilizer(ng.group(), 0);
    ng.U2 = detail::singer_normalizer(ng.group(), 7); // Sylow-7 normalizer, order 21
    if (ng.U2.order() != 21) throw std::logic_error("psl3_2: U2 order check failed");
    ng.action1 = natural_action(ng.group());
    ng.action2 = coset_action(ng.group(), ng.U2).action;
    return ng;
}

// Affine group V : U on q^n points for U = GL_n(q) (or a supplied matrix
// group); U1 stabilizes 0, U2 = V : H with H the stabilizer in U of the
// line <e_1>.
inline NamedGroup construct_affine(uint64_t p, unsigned k, unsigned n, size_t cap = 100000) {
    SmallFq F(p, k);
    unsigned q = static_cast<unsigned>(F.size().to_ulong());
    size_t points = 1;
    for (unsigned i = 0; i < n; ++i) {
        points *= q;
        if (points > 60000) throw TooLarge("construct_affine: too many points");
    }
    auto gl = detail::enumerate_gl(F, n);
    size_t order = points * gl.size();
    if (order > cap) throw TooLarge("construct_affine: group too large");

    std::vector<Perm> gens;
    // translations by basis vectors
    for (unsigned i = 0; i < n; ++i) {
        std::vector<uint32_t> v(n, 0);
        v[i] = 1;
        gens.push_back(detail::affine_perm(F, n, detail::mat_identity(n), v));
    }
    // linear part: all unit transvections plus a primitive scaling
    {
        std::vector<uint32_t> zero(n, 0);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                if (i == j) continue;
                detail::Mat t = detail::mat_identity(n);
                t[i * n + j] = 1;
                gens.push_back(detail::affine_perm(F, n, t, zero));
            }
        detail::Mat d = detail::mat_identity(n);
        d[0] = F.generator();
        gens.push_back(detail::affine_perm(F, n, d, zero));
    }

    std::string name = "agl" + std::to_string(n) + "_" + std::to_string(q);
    NamedGroup ng;
    ng.name = name;
    ng.group_ptr = std::make_shared<PermGroup>(
        PermGroup::generate(name, static_cast<unsigned>(points), gens, cap));
    if (ng.group().size() != order)
        throw std::logic_error(name + ": order check failed, got " + std::to_string(ng.group().size()));

    ng.U1 = detail::point_stabilizer(ng.group(), 0);
    // U2 = V : H, membership test: linear part maps <e_1> to itself
    ng.U2 = subgroup_by_filter(ng.group(), [&](const Perm& perm) {
        // linear part applied to e_1: perm(e_1 + 0) - perm(0), coordinatewise
        unsigned v0 = perm[0];
        unsigned ve1 = perm[1]; // e_1 has index 1
        // subtract v0 from ve1 over F_q coordinates
        unsigned t0 = v0, t1 = ve1;
        std::vector<uint32_t> d(n);
        for (unsigned i = 0; i < n; ++i) {
            uint32_t c0 = t0 % q, c1 = t1 % q;
            t0 /= q;
            t1 /= q;
            d[i] = F.sub(c1, c0);
        }
        // d must be a nonzero multiple of e_1
        if (F.is_zero(d[0])) return false;
        for (unsigned i = 1; i < n; ++i)
            if (!F.is_zero(d[i])) return false;
        return true;
    });
    ng.action1 = natural_action(ng.group());
    ng.action2 = coset_action(ng.group(), ng.U2).action;
    return ng;
}

// M11 on 11 points from the classical generator pair, validated by order and
// 4-transitivity; U2 is an order-660 subgroup (index 12), located by a
// seed-deterministic closure search around a Sylow-11 normalizer.
inline NamedGroup construct_m11(uint64_t seed = 0) {
    Perm a = Perm::from_cycles(11, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}});
    Perm b = Perm::from_cycles(11, {{2, 6, 10, 7}, {3, 9, 4, 5}});
    NamedGroup ng;
    ng.name = "m11";
    ng.group_ptr = std::make_shared<PermGroup>(PermGroup::generate("m11", 11, {a, b}));
    if (ng.group().size() != 7920) throw std::logic_error("m11: order check failed");
    // 4-transitivity: the orbit of an ordered 4-tuple has size 11*10*9*8
    {
        std::set<std::array<uint16_t, 4>> orbit;
        for (const auto& e : ng.group().elements())
            orbit.insert({e[0], e[1], e[2], e[3]});
        if (orbit.size() != 7920) throw std::logic_error("m11: not 4-transitive");
    }
    ng.U1 = detail::point_stabilizer(ng.group(), 0);
    if (ng.U1.order() != 720) throw std::logic_error("m11: U1 order check failed");

    // Sylow-11 normalizer (order 55), then extend to an order-660 subgroup.
    uint32_t sigma = 0;
    for (uint32_t id = 1; id < ng.group().size(); ++id)
        if (element_order(ng.group(), id) == 11) {
            sigma = id;
            break;
        }
    Subgroup nrm = cyclic_normalizer(ng.group(), sigma);
    if (nrm.order() != 55) throw std::logic_error("m11: Sylow-11 normalizer order check failed");
    std::vector<uint32_t> base_gens;
    {
        // two generators of the normalizer: sigma plus an order-5 element
        for (uint32_t id : nrm.ids)
            if (element_order(ng.group(), id) == 5) {
                base_gens = {sigma, id};
                break;
            }
    }
    Rng rng(seed ^ 0x6d313100ULL);
    Subgroup u2;
    for (int tries = 0; tries < 100000; ++tries) {
        uint32_t g = static_cast<uint32_t>(rng() % ng.group().size());
        std::vector<uint32_t> gens = base_gens;
        gens.push_back(g);
        auto ids = closure_ids_bounded(ng.group(), gens, 661);
        if (ids.size() == 660) {
            u2.parent = &ng.group();
            u2.ids = std::move(ids);
            u2.gen_ids = gens;
            break;
        }
    }
    if (u2.order() != 660) throw std::logic_error("m11: order-660 subgroup not found");
    ng.U2 = std::move(u2);
    ng.action1 = natural_action(ng.group());
    ng.action2 = coset_action(ng.group(), ng.U2).action;
    // the degree-12 coset action is 3-transitive
    {
        std::set<std::array<uint16_t, 3>> orbit;
        for (const auto& img : ng.action2.image)
            orbit.insert({img[0], img[1], img[2]});
        if (orbit.size() != 12 * 11 * 10) throw std::logic_error("m11: coset action not 3-transitive");
    }
    return ng;
}

// Name-addressable construction used by the CLI and the certification
// pipeline: pgl2_q, psl2_q, pgammal2_8, psl3_2, m11, agl<n>_<q>.
inline NamedGroup construct_named_group(const std::string& name, uint64_t seed = 0) {
    auto starts = [&](const std::string& p) { return name.rfind(p, 0) == 0; };
    if (name == "psl3_2") return construct_psl3_2();
    if (name == "m11") return construct_m11(seed);
    if (name == "pgammal2_8") return construct_pgl2(2, 3, false, true);
    if (starts("pgl2_") || starts("psl2_")) {
        unsigned q = static_cast<unsigned>(std::stoul(name.substr(5)));
        // q = p^k for small k
        for (uint64_t p : {2, 3, 5, 7, 11, 13}) {
            unsigned k = 0;
            uint64_t t = q;
            while (t % p == 0 && t > 1) {
                t /= p;
                ++k;
            }
            if (t == 1 && k >= 1) {
                if (q > 13 && q != 8 && q != 9 && q != 4)
                    throw TooLarge("construct_named_group: q beyond the supported range");
                return construct_pgl2(p, k, starts("psl2_"), false);
            }
        }
        throw std::invalid_argument("construct_named_group: bad prime power " + name);
    }
    if (starts("agl")) {
        auto us = name.find('_');
        if (us == std::string::npos || us < 4)
            throw std::invalid_argument("construct_named_group: bad affine name " + name);
        unsigned n = static_cast<unsigned>(std::stoul(name.substr(3, us - 3)));
        unsigned q = static_cast<unsigned>(std::stoul(name.substr(us + 1)));
        for (uint64_t p : {2, 3, 5, 7}) {
            unsigned k = 0;
            uint64_t t = q;
            while (t % p == 0 && t > 1) {
                t /= p;
                ++k;
            }
            if (t == 1 && k >= 1) return construct_affine(p, k, n);
        }
        throw std::invalid_argument("construct_named_group: bad affine field " + name);
    }
    if (name == "agsp4_2" || name.rfind("agsp", 0) == 0)
        throw TooLarge("construct_named_group: AGSp4 exceeds the enumeration budget");
    throw std::invalid_argument("construct_named_group: unknown group " + name);
}

} // namespace intersective
