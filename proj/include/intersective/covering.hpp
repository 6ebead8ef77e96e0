#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "intersective/errors.hpp"
#include "intersective/partitions.hpp"
#include "intersective/perm.hpp"
#include "intersective/permgroup.hpp"

namespace intersective {

// ---------------------------------------------------------------------------
// Group actions with per-element images. Degrees stay small (<= a few
// thousand), so the dense representation is the simple and fast choice.
// ---------------------------------------------------------------------------

struct GroupAction {
    unsigned degree = 0;
    std::vector<std::vector<uint16_t>> image; // image[element id][point]

    Partition cycle_type_of(uint32_t id) const {
        Partition p;
        std::vector<bool> seen(degree, false);
        const auto& img = image[id];
        for (unsigned i = 0; i < degree; ++i) {
            if (seen[i]) continue;
            unsigned len = 0;
            unsigned j = i;
            while (!seen[j]) {
                seen[j] = true;
                ++len;
                j = img[j];
            }
            p.push_back(len);
        }
        return sorted_partition(p);
    }

    bool fixes_any_point(const std::vector<uint32_t>& subgroup_gens) const {
        for (unsigned pt = 0; pt < degree; ++pt) {
            bool ok = true;
            for (uint32_t g : subgroup_gens)
                if (image[g][pt] != pt) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    }

    // Orbit lengths of the subgroup generated by the given element ids.
    Partition orbit_partition(const std::vector<uint32_t>& subgroup_gens) const {
        std::vector<int> comp(degree, -1);
        Partition out;
        for (unsigned s = 0; s < degree; ++s) {
            if (comp[s] >= 0) continue;
            int c = static_cast<int>(out.size());
            unsigned size = 0;
            std::deque<unsigned> q{s};
            comp[s] = c;
            while (!q.empty()) {
                unsigned cur = q.front();
                q.pop_front();
                ++size;
                for (uint32_t g : subgroup_gens) {
                    unsigned nxt = image[g][cur];
                    if (comp[nxt] < 0) {
                        comp[nxt] = c;
                        q.push_back(nxt);
                    }
                }
            }
            out.push_back(size);
        }
        return sorted_partition(out);
    }
};

// The action of G on its natural points.
inline GroupAction natural_action(const PermGroup& G) {
    GroupAction a;
    a.degree = G.degree();
    a.image.reserve(G.size());
    for (uint32_t id = 0; id < G.size(); ++id) a.image.push_back(G.element(id).images());
    return a;
}

struct CosetAction {
    GroupAction action;
    std::vector<uint32_t> point_reps;  // coset representative element ids
    std::vector<uint32_t> kernel_ids;  // the core of U, sorted
    size_t image_order = 0;
};

// Action of G on the right cosets of U (point 0 is U itself). The kernel is
// the core of U in G.
inline CosetAction coset_action(const PermGroup& G, const Subgroup& U, size_t index_cap = 10000) {
    if (U.parent != &G) throw std::invalid_argument("coset_action: subgroup of a different group");
    size_t index = G.size() / U.order();
    if (index > index_cap) throw TooLarge("coset_action: index exceeds cap");

    // canonical key of coset U*g: the smallest element id in the coset
    auto coset_key = [&](uint32_t g) {
        uint32_t best = 0xffffffffu;
        for (uint32_t u : U.ids) best = std::min(best, G.mul(u, g));
        return best;
    };

    std::vector<uint32_t> reps;
    std::unordered_map<uint32_t, uint16_t> point_of_key;
    reps.push_back(0);
    point_of_key.emplace(coset_key(0), 0);
    // BFS over generator multiplication to enumerate cosets
    std::deque<uint32_t> queue{0};
    std::vector<std::vector<uint16_t>> gen_images; // filled after enumeration
    while (!queue.empty()) {
        uint32_t rep = queue.front();
        queue.pop_front();
        for (uint32_t gi = 0; gi < G.generators().size(); ++gi) {
            int gid = G.index_of(G.generators()[gi]);
            uint32_t nxt = G.mul(rep, static_cast<uint32_t>(gid));
            uint32_t key = coset_key(nxt);
            if (!point_of_key.count(key)) {
                point_of_key.emplace(key, static_cast<uint16_t>(reps.size()));
                reps.push_back(nxt);
                queue.push_back(nxt);
            }
        }
    }
    if (reps.size() != index)
        throw std::logic_error("coset_action: coset count mismatch");

    // generator images on points
    std::vector<uint16_t> idperm(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) idperm[i] = static_cast<uint16_t>(i);
    gen_images.assign(G.generators().size(), idperm);
    for (uint32_t gi = 0; gi < G.generators().size(); ++gi) {
        uint32_t gid = static_cast<uint32_t>(G.index_of(G.generators()[gi]));
        for (size_t pt = 0; pt < reps.size(); ++pt)
            gen_images[gi][pt] = point_of_key.at(coset_key(G.mul(reps[pt], gid)));
    }

    CosetAction out;
    out.action.degree = static_cast<unsigned>(reps.size());
    out.point_reps = reps;
    auto mul_images = [](const std::vector<uint16_t>& a, const std::vector<uint16_t>& b) {
        std::vector<uint16_t> r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
        return r;
    };
    out.action.image = G.extend_homomorphism(idperm, gen_images, mul_images);

    std::set<std::vector<uint16_t>> distinct;
    for (uint32_t id = 0; id < G.size(); ++id) {
        if (out.action.image[id] == idperm) out.kernel_ids.push_back(id);
        distinct.insert(out.action.image[id]);
    }
    out.image_order = distinct.size();
    return out;
}

// ---------------------------------------------------------------------------
// k-covering check with a machine-checkable certificate (Sonn's condition:
// conjugates of the U_i cover G and the simultaneous core is trivial).
// ---------------------------------------------------------------------------

struct CoveringCertificate {
    std::string group_name;
    std::vector<size_t> subgroup_orders;
    bool covered = false;
    bool core_trivial = false;
    std::vector<int> class_assignment;  // class id -> covering subgroup index
    std::vector<uint32_t> class_reps;   // representative element per class
    uint32_t uncovered_element = 0;     // witness when not covered

    bool valid() const { return covered && core_trivial; }
};

// An element lies in a conjugate of U iff its class meets U, so scanning the
// subgroups once and tagging classes decides the covering.
inline CoveringCertificate check_k_covering(const PermGroup& G,
                                            const std::vector<Subgroup>& subgroups) {
    CoveringCertificate cert;
    cert.group_name = G.name();
    for (const auto& U : subgroups) {
        if (U.parent != &G) throw std::invalid_argument("check_k_covering: foreign subgroup");
        if (U.order() >= G.size())
            throw std::invalid_argument("check_k_covering: subgroups must be proper");
        cert.subgroup_orders.push_back(U.order());
    }
    const auto& cls = G.class_of();
    cert.class_reps.assign(G.class_reps().begin(), G.class_reps().end());
    cert.class_assignment.assign(G.class_count(), -1);
    for (size_t i = 0; i < subgroups.size(); ++i) {
        for (uint32_t id : subgroups[i].ids) {
            if (cert.class_assignment[cls[id]] < 0)
                cert.class_assignment[cls[id]] = static_cast<int>(i);
        }
    }
    cert.covered = true;
    for (size_t c = 0; c < cert.class_assignment.size(); ++c) {
        if (cert.class_assignment[c] < 0) {
            cert.covered = false;
            cert.uncovered_element = cert.class_reps[c];
            break;
        }
    }
    // core triviality: intersection of the cores of all U_i
    std::vector<uint32_t> common;
    for (size_t i = 0; i < subgroups.size(); ++i) {
        CosetAction ca = coset_action(G, subgroups[i]);
        std::vector<uint32_t> k = ca.kernel_ids;
        if (i == 0) {
            common = k;
        } else {
            std::vector<uint32_t> merged;
            std::set_intersection(common.begin(), common.end(), k.begin(), k.end(),
                                  std::back_inserter(merged));
            common = merged;
        }
    }
    cert.core_trivial = (common.size() == 1);
    return cert;
}

// Re-verify a certificate by membership rechecks, independent of how the
// assignment was produced.
inline bool verify_covering_certificate(const PermGroup& G,
                                        const std::vector<Subgroup>& subgroups,
                                        const CoveringCertificate& cert) {
    if (!cert.covered) return false;
    const auto& cls = G.class_of();
    if (cert.class_assignment.size() != G.class_count()) return false;
    for (size_t c = 0; c < cert.class_assignment.size(); ++c) {
        int i = cert.class_assignment[c];
        if (i < 0 || static_cast<size_t>(i) >= subgroups.size()) return false;
        bool meets = false;
        for (uint32_t id : subgroups[static_cast<size_t>(i)].ids)
            if (cls[id] == c) {
                meets = true;
                break;
            }
        if (!meets) return false;
    }
    return true;
}

// Naive covering oracle: for every element test membership in some conjugate
// of some U_i. Quadratic; used to cross-check the class-based procedure.
inline bool covered_naive(const PermGroup& G, const std::vector<Subgroup>& subgroups) {
    std::vector<std::vector<bool>> member(subgroups.size(),
                                          std::vector<bool>(G.size(), false));
    for (size_t i = 0; i < subgroups.size(); ++i)
        for (uint32_t id : subgroups[i].ids) member[i][id] = true;
    for (uint32_t e = 0; e < G.size(); ++e) {
        bool ok = false;
        for (uint32_t x = 0; x < G.size() && !ok; ++x) {
            uint32_t c = G.conj(e, x);
            for (size_t i = 0; i < subgroups.size() && !ok; ++i)
                if (member[i][c]) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Metacyclic subgroups: M = <phi, psi> with psi normalizing <phi>. M lies in
// a conjugate of U iff M fixes a point on G/U, and a point is fixed by M iff
// both generators fix it, so the scan never needs subgroup closures.
// ---------------------------------------------------------------------------

struct MetacyclicReport {
    bool all_covered = true;
    // exceptional subgroups, deduplicated up to exact element set
    std::vector<std::vector<uint32_t>> exceptions;
    size_t pairs_scanned = 0;
};

inline MetacyclicReport metacyclic_subgroups_covered(const PermGroup& G, const Subgroup& U1,
                                                     const Subgroup& U2) {
    CosetAction a1 = coset_action(G, U1);
    CosetAction a2 = coset_action(G, U2);

    // fixed-point bitmasks per element and action (degrees <= 128 here)
    auto masks = [&](const CosetAction& ca) {
        std::vector<std::pair<uint64_t, uint64_t>> m(G.size(), {0, 0});
        for (uint32_t id = 0; id < G.size(); ++id) {
            uint64_t lo = 0, hi = 0;
            const auto& img = ca.action.image[id];
            for (unsigned pt = 0; pt < ca.action.degree; ++pt) {
                if (img[pt] != pt) continue;
                if (pt < 64)
                    lo |= (1ULL << pt);
                else if (pt < 128)
                    hi |= (1ULL << (pt - 64));
            }
            m[id] = {lo, hi};
        }
        return m;
    };
    if (a1.action.degree > 128 || a2.action.degree > 128)
        throw TooLarge("metacyclic_subgroups_covered: coset degree beyond mask width");
    auto m1 = masks(a1);
    auto m2 = masks(a2);

    MetacyclicReport rep;
    std::set<std::vector<uint32_t>> seen_exceptions;
    for (uint32_t phi : G.class_reps()) {
        Subgroup n = cyclic_normalizer(G, phi);
        for (uint32_t psi : n.ids) {
            ++rep.pairs_scanned;
            bool in1 = ((m1[phi].first & m1[psi].first) | (m1[phi].second & m1[psi].second)) != 0;
            bool in2 = ((m2[phi].first & m2[psi].first) | (m2[phi].second & m2[psi].second)) != 0;
            if (in1 || in2) continue;
            rep.all_covered = false;
            auto sub = closure_ids(G, {phi, psi});
            if (seen_exceptions.insert(sub).second) rep.exceptions.push_back(sub);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Subgroup enumeration up to conjugacy, bottom-up: cyclic seeds, then
// closure under extension by one element. A restricted mode keeps only
// solvable subgroups below an order bound (for M11's order-144 analysis).
// ---------------------------------------------------------------------------

inline std::vector<uint32_t> derived_subgroup_ids(const PermGroup& G,
                                                  const std::vector<uint32_t>& sub) {
    // normal closure, inside the subgroup, of the commutators of all pairs
    std::vector<uint32_t> comms;
    for (uint32_t a : sub)
        for (uint32_t b : sub) {
            uint32_t c = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b));
            comms.push_back(c);
        }
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return closure_ids(G, comms);
}

inline bool is_solvable_subgroup(const PermGroup& G, std::vector<uint32_t> sub) {
    while (sub.size() > 1) {
        std::vector<uint32_t> d = derived_subgroup_ids(G, sub);
        if (d.size() == sub.size()) return false;
        sub = std::move(d);
    }
    return true;
}

inline bool is_abelian_subgroup(const PermGroup& G, const std::vector<uint32_t>& sub) {
    for (uint32_t a : sub)
        for (uint32_t b : sub)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

inline bool is_cyclic_subgroup(const PermGroup& G, const std::vector<uint32_t>& sub) {
    for (uint32_t a : sub)
        if (element_order(G, a) == sub.size()) return true;
    return false;
}

// Exhaustive metacyclic test: some <phi> normal in M with cyclic quotient.
inline bool is_metacyclic_subgroup(const PermGroup& G, const std::vector<uint32_t>& sub) {
    if (sub.size() == 1 || is_cyclic_subgroup(G, sub)) return true;
    std::vector<bool> in(G.size(), false);
    for (uint32_t x : sub) in[x] = true;
    for (uint32_t phi : sub) {
        if (phi == 0) continue;
        // <phi> normal in sub?
        std::vector<uint32_t> cyc;
        uint32_t cur = phi;
        while (cur != 0) {
            cyc.push_back(cur);
            cur = G.mul(cur, phi);
        }
        cyc.push_back(0);
        std::sort(cyc.begin(), cyc.end());
        bool normal = true;
        for (uint32_t x : sub) {
            if (!std::binary_search(cyc.begin(), cyc.end(), G.conj(phi, x))) {
                normal = false;
                break;
            }
        }
        if (!normal) continue;
        // quotient cyclic? search for psi whose coset powers cover all cosets
        size_t m = sub.size() / cyc.size();
        for (uint32_t psi : sub) {
            // order of psi*<phi> in the quotient
            size_t ord = 1;
            uint32_t acc = psi;
            while (!std::binary_search(cyc.begin(), cyc.end(), acc)) {
                acc = G.mul(acc, psi);
                ++ord;
            }
            if (ord == m) return true;
        }
    }
    return false;
}

inline bool is_dihedral(const PermGroup& G, const std::vector<uint32_t>& sub) {
    size_t n = sub.size();
    if (n % 2 != 0 || n < 4) return false;
    // cyclic subgroup of index 2 plus an inverting involution
    for (uint32_t r : sub) {
        if (element_order(G, r) != n / 2) continue;
        for (uint32_t s : sub) {
            if (element_order(G, s) != 2) continue;
            if (G.conj(r, s) == G.inv(r)) {
                auto c = closure_ids(G, {r, s});
                if (c.size() == n) return true;
            }
        }
    }
    return false;
}

// Isomorphism labels for the specific small groups the analysis reports;
// everything else is labeled by order only.
inline std::string isomorphism_label(const PermGroup& G, const std::vector<uint32_t>& sub) {
    size_t n = sub.size();
    std::map<unsigned long, unsigned> order_counts;
    for (uint32_t x : sub) order_counts[element_order(G, x)]++;
    auto cnt = [&](unsigned long k) {
        auto it = order_counts.find(k);
        return it == order_counts.end() ? 0u : it->second;
    };
    if (is_cyclic_subgroup(G, sub)) return "C" + std::to_string(n);
    bool abelian = is_abelian_subgroup(G, sub);
    if (n == 4 && !abelian) return "order-4?";
    if (n == 4) return "V4";
    if (n == 12 && cnt(2) == 3 && cnt(3) == 8) return "A4";
    if (n == 24 && cnt(2) == 9 && cnt(3) == 8 && cnt(4) == 6) return "S4";
    if (n == 14 && cnt(2) == 7) return "D7";
    if (n == 6 && cnt(2) == 3) return "S3";
    if (n % 2 == 0 && cnt(2) == n / 2 + (n % 4 == 0 ? 1 : 0) && is_dihedral(G, sub))
        return "D" + std::to_string(n / 2);
    if (n == 42 && cnt(2) == 7) {
        // AGL1(7) = F42 has trivial center; C3 x D7 has center C3
        bool center_trivial = true;
        for (uint32_t a : sub) {
            if (a == 0) continue;
            bool central = true;
            for (uint32_t b : sub)
                if (G.mul(a, b) != G.mul(b, a)) {
                    central = false;
                    break;
                }
            if (central) {
                center_trivial = false;
                break;
            }
        }
        if (center_trivial) return "AGL1(7)";
        return "C3xD7";
    }
    if (n == 18 && !abelian && cnt(2) == 3 && cnt(6) > 0) return "C3.C6";
    return "order-" + std::to_string(n);
}

struct SubgroupClassInfo {
    std::vector<uint32_t> rep_ids; // sorted element ids of the class representative
    size_t order = 0;
    bool solvable = false;
    bool metacyclic = false;
    bool covered = false; // contained in a conjugate of U1 or U2
    std::string label;
};

struct SubgroupEnumerationOptions {
    bool solvable_only = false;   // restricted mode
    size_t order_bound = 0;       // 0 = no bound
    size_t full_group_cap = 2000; // full-lattice guard
};

// All subgroups of G up to conjugacy (full mode), or all solvable subgroups
// up to the order bound (restricted mode). U1/U2, when given, drive the
// covered flags via fixed points on the coset spaces.
inline std::vector<SubgroupClassInfo> enumerate_subgroups(
    const PermGroup& G, const Subgroup* U1 = nullptr, const Subgroup* U2 = nullptr,
    SubgroupEnumerationOptions opt = {}) {
    if (!opt.solvable_only && G.size() > opt.full_group_cap)
        throw TooLarge("enumerate_subgroups: full lattice needs |G| <= " +
                       std::to_string(opt.full_group_cap));

    std::vector<std::pair<uint64_t, uint64_t>> m1, m2;
    auto build_masks = [&](const Subgroup& U) {
        CosetAction ca = coset_action(G, U);
        if (ca.action.degree > 128) throw TooLarge("enumerate_subgroups: coset degree > 128");
        std::vector<std::pair<uint64_t, uint64_t>> m(G.size(), {0, 0});
        for (uint32_t id = 0; id < G.size(); ++id) {
            uint64_t lo = 0, hi = 0;
            const auto& img = ca.action.image[id];
            for (unsigned pt = 0; pt < ca.action.degree; ++pt) {
                if (img[pt] != pt) continue;
                if (pt < 64)
                    lo |= (1ULL << pt);
                else
                    hi |= (1ULL << (pt - 64));
            }
            m[id] = {lo, hi};
        }
        return m;
    };
    if (U1) m1 = build_masks(*U1);
    if (U2) m2 = build_masks(*U2);

    auto covered_by = [&](const std::vector<uint32_t>& gens) {
        auto fold = [&](const std::vector<std::pair<uint64_t, uint64_t>>& m) {
            if (m.empty()) return false;
            uint64_t lo = ~0ULL, hi = ~0ULL;
            for (uint32_t g : gens) {
                lo &= m[g].first;
                hi &= m[g].second;
            }
            return (lo | hi) != 0;
        };
        return fold(m1) || fold(m2);
    };

    // dedup store: exact element sets seen (any conjugate), reps kept
    std::set<std::vector<uint32_t>> seen_exact;
    auto mark_orbit = [&](const std::vector<uint32_t>& sub) {
        // conjugacy orbit of the subgroup under generator conjugation
        std::deque<std::vector<uint32_t>> queue{sub};
        seen_exact.insert(sub);
        std::vector<uint32_t> gen_ids;
        for (const auto& g : G.generators()) gen_ids.push_back(static_cast<uint32_t>(G.index_of(g)));
        while (!queue.empty()) {
            auto cur = queue.front();
            queue.pop_front();
            for (uint32_t g : gen_ids) {
                std::vector<uint32_t> img;
                img.reserve(cur.size());
                for (uint32_t x : cur) img.push_back(G.conj(x, g));
                std::sort(img.begin(), img.end());
                if (seen_exact.insert(img).second) queue.push_back(img);
            }
        }
    };

    struct Item {
        std::vector<uint32_t> ids;
        std::vector<uint32_t> gens;
    };
    std::vector<Item> reps;

    auto admit = [&](std::vector<uint32_t> ids, std::vector<uint32_t> gens) {
        if (ids.empty()) return; // closure aborted on the bound
        if (opt.order_bound && ids.size() > opt.order_bound) return;
        if (seen_exact.count(ids)) return;
        if (opt.solvable_only && !is_solvable_subgroup(G, ids)) return;
        mark_orbit(ids);
        reps.push_back({std::move(ids), std::move(gens)});
    };

    // cyclic seeds
    for (uint32_t e : G.class_reps()) {
        std::vector<uint32_t> cyc{0};
        uint32_t cur = e;
        while (cur != 0) {
            cyc.push_back(cur);
            cur = G.mul(cur, e);
        }
        std::sort(cyc.begin(), cyc.end());
        admit(std::move(cyc), {e});
    }

    // extension closure; <H, g> = <H, h*g> for h in H, so one representative
    // per right coset H*g suffices
    for (size_t i = 0; i < reps.size(); ++i) {
        Item item = reps[i]; // copy: reps grows
        std::vector<bool> done(G.size(), false);
        for (uint32_t x : item.ids) done[x] = true;
        for (uint32_t g = 1; g < G.size(); ++g) {
            if (done[g]) continue;
            for (uint32_t h : item.ids) done[G.mul(h, g)] = true;
            std::vector<uint32_t> gens = item.gens;
            gens.push_back(g);
            size_t bound = opt.order_bound ? opt.order_bound + 1 : G.size() + 1;
            auto ids = closure_ids_bounded(G, gens, bound);
            admit(std::move(ids), std::move(gens));
        }
    }

    std::vector<SubgroupClassInfo> out;
    for (const auto& item : reps) {
        SubgroupClassInfo info;
        info.rep_ids = item.ids;
        info.order = item.ids.size();
        info.solvable = opt.solvable_only ? true : is_solvable_subgroup(G, item.ids);
        info.metacyclic = is_metacyclic_subgroup(G, item.ids);
        info.covered = covered_by(item.gens);
        info.label = isomorphism_label(G, item.ids);
        out.push_back(std::move(info));
    }
    std::sort(out.begin(), out.end(), [](const SubgroupClassInfo& a, const SubgroupClassInfo& b) {
        if (a.order != b.order) return a.order < b.order;
        return a.rep_ids < b.rep_ids;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Joint Frobenius fingerprints: the set of (cycle type in action1,
// cycle type in action2) over all elements of G.
// ---------------------------------------------------------------------------

inline std::set<std::pair<Partition, Partition>> cycle_type_pairs(const PermGroup& G,
                                                                  const GroupAction& a1,
                                                                  const GroupAction& a2) {
    std::set<std::pair<Partition, Partition>> out;
    for (uint32_t id = 0; id < G.size(); ++id)
        out.emplace(a1.cycle_type_of(id), a2.cycle_type_of(id));
    return out;
}

inline Partition orbit_partitions_of_subgroup(const Subgroup& U, const GroupAction& action) {
    std::vector<uint32_t> gens = U.gen_ids.empty() ? U.ids : U.gen_ids;
    return action.orbit_partition(gens);
}

} // namespace intersective
