#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "intersective/errors.hpp"
#include "intersective/perm.hpp"

namespace intersective {

// Fully enumerated permutation group (desk scale, order <= ~10^5).
// Element 0 is the identity. Every element records how it was reached from
// the generators (Schreier parent/edge), which lets any homomorphism given
// on generators extend to all elements in O(|G| * degree).
class PermGroup {
public:
    static constexpr uint32_t kNoGen = 0xffffffffu;

    PermGroup() = default;

    static PermGroup generate(std::string name, unsigned degree, std::vector<Perm> gens,
                              size_t cap = 100000) {
        PermGroup g;
        g.name_ = std::move(name);
        g.degree_ = degree;
        g.gens_ = std::move(gens);
        for (const auto& p : g.gens_)
            if (p.degree() != degree) throw std::invalid_argument("PermGroup: degree mismatch");
        g.enumerate(cap);
        return g;
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    unsigned degree() const { return degree_; }
    size_t size() const { return elems_.size(); }
    const std::vector<Perm>& generators() const { return gens_; }
    const Perm& element(uint32_t id) const { return elems_[id]; }
    const std::vector<Perm>& elements() const { return elems_; }

    int index_of(const Perm& p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : static_cast<int>(it->second);
    }
    bool contains(const Perm& p) const { return index_.count(p) != 0; }

    uint32_t mul(uint32_t a, uint32_t b) const {
        auto it = index_.find(elems_[a] * elems_[b]);
        return it->second;
    }
    uint32_t inv(uint32_t a) const { return inverse_[a]; }
    // g conjugated by x: x^-1 g x
    uint32_t conj(uint32_t g, uint32_t x) const {
        auto it = index_.find(elems_[inverse_[x]] * elems_[g] * elems_[x]);
        return it->second;
    }

    // Schreier data: parent element and generator index for each element.
    uint32_t schreier_parent(uint32_t id) const { return schreier_[id].first; }
    uint32_t schreier_gen(uint32_t id) const { return schreier_[id].second; }

    // Extend a homomorphism defined on the generators to every element.
    // mul(a, b) must implement "a then b" composition in the image.
    template <typename ImageT, typename MulFn>
    std::vector<ImageT> extend_homomorphism(const ImageT& identity,
                                            const std::vector<ImageT>& gen_images,
                                            MulFn mul_images) const {
        std::vector<ImageT> out(elems_.size(), identity);
        for (uint32_t id = 1; id < elems_.size(); ++id) {
            out[id] = mul_images(out[schreier_[id].first], gen_images[schreier_[id].second]);
        }
        return out;
    }

    // --- conjugacy classes (lazy) ---------------------------------------

    const std::vector<uint32_t>& class_of() const {
        ensure_classes();
        return class_of_;
    }
    const std::vector<uint32_t>& class_reps() const {
        ensure_classes();
        return class_reps_;
    }
    size_t class_count() const {
        ensure_classes();
        return class_reps_.size();
    }
    std::vector<size_t> class_sizes() const {
        ensure_classes();
        std::vector<size_t> out(class_reps_.size(), 0);
        for (uint32_t c : class_of_) ++out[c];
        return out;
    }

private:
    void enumerate(size_t cap) {
        Perm id = Perm::identity(degree_);
        elems_.push_back(id);
        index_.emplace(id, 0);
        schreier_.emplace_back(0, kNoGen);
        std::deque<uint32_t> queue{0};
        while (!queue.empty()) {
            uint32_t cur = queue.front();
            queue.pop_front();
            for (uint32_t gi = 0; gi < gens_.size(); ++gi) {
                Perm next = elems_[cur] * gens_[gi];
                auto it = index_.find(next);
                if (it != index_.end()) continue;
                if (elems_.size() >= cap)
                    throw TooLarge("PermGroup: enumeration exceeds cap of " + std::to_string(cap));
                uint32_t nid = static_cast<uint32_t>(elems_.size());
                index_.emplace(next, nid);
                elems_.push_back(std::move(next));
                schreier_.emplace_back(cur, gi);
                queue.push_back(nid);
            }
        }
        inverse_.resize(elems_.size());
        for (uint32_t i = 0; i < elems_.size(); ++i)
            inverse_[i] = static_cast<uint32_t>(index_.find(elems_[i].inverse())->second);
    }

    void ensure_classes() const {
        if (!class_of_.empty() || elems_.empty()) return;
        class_of_.assign(elems_.size(), 0xffffffffu);
        for (uint32_t e = 0; e < elems_.size(); ++e) {
            if (class_of_[e] != 0xffffffffu) continue;
            uint32_t cls = static_cast<uint32_t>(class_reps_.size());
            class_reps_.push_back(e);
            std::deque<uint32_t> queue{e};
            class_of_[e] = cls;
            while (!queue.empty()) {
                uint32_t cur = queue.front();
                queue.pop_front();
                for (uint32_t gi = 0; gi < gens_.size(); ++gi) {
                    // conjugate by generator: g^-1 cur g
                    const Perm& g = gens_[gi];
                    Perm conj = g.inverse() * elems_[cur] * g;
                    uint32_t id = static_cast<uint32_t>(index_.find(conj)->second);
                    if (class_of_[id] == 0xffffffffu) {
                        class_of_[id] = cls;
                        queue.push_back(id);
                    }
                }
            }
        }
    }

    std::string name_;
    unsigned degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elems_;
    std::unordered_map<Perm, uint32_t, PermHash> index_;
    std::vector<std::pair<uint32_t, uint32_t>> schreier_;
    std::vector<uint32_t> inverse_;
    mutable std::vector<uint32_t> class_of_;
    mutable std::vector<uint32_t> class_reps_;
};

// Subgroup as a sorted element-id subset of an enumerated parent group.
struct Subgroup {
    const PermGroup* parent = nullptr;
    std::vector<uint32_t> ids;     // sorted
    std::vector<uint32_t> gen_ids; // some generating set

    size_t order() const { return ids.size(); }
    bool contains_id(uint32_t id) const {
        return std::binary_search(ids.begin(), ids.end(), id);
    }
};

// Closure of a set of element ids inside the parent group.
inline std::vector<uint32_t> closure_ids(const PermGroup& G, const std::vector<uint32_t>& gen_ids,
                                         size_t cap = 0) {
    if (cap == 0) cap = G.size();
    std::vector<uint32_t> elems{0};
    std::vector<bool> in(G.size(), false);
    in[0] = true;
    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
        uint32_t cur = queue.front();
        queue.pop_front();
        for (uint32_t g : gen_ids) {
            uint32_t nxt = G.mul(cur, g);
            if (!in[nxt]) {
                if (elems.size() >= cap) throw TooLarge("closure_ids: cap exceeded");
                in[nxt] = true;
                elems.push_back(nxt);
                queue.push_back(nxt);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

// Closure with an early-abort bound: returns empty vector if the subgroup
// would exceed max_order.
inline std::vector<uint32_t> closure_ids_bounded(const PermGroup& G,
                                                 const std::vector<uint32_t>& gen_ids,
                                                 size_t max_order) {
    std::vector<uint32_t> elems{0};
    std::vector<bool> in(G.size(), false);
    in[0] = true;
    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
        uint32_t cur = queue.front();
        queue.pop_front();
        for (uint32_t g : gen_ids) {
            uint32_t nxt = G.mul(cur, g);
            if (!in[nxt]) {
                if (elems.size() >= max_order) return {};
                in[nxt] = true;
                elems.push_back(nxt);
                queue.push_back(nxt);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

inline Subgroup subgroup_from_gen_ids(const PermGroup& G, std::vector<uint32_t> gen_ids) {
    Subgroup s;
    s.parent = &G;
    s.gen_ids = gen_ids;
    s.ids = closure_ids(G, gen_ids);
    return s;
}

inline Subgroup subgroup_from_perms(const PermGroup& G, const std::vector<Perm>& gens) {
    std::vector<uint32_t> gen_ids;
    for (const auto& p : gens) {
        int id = G.index_of(p);
        if (id < 0) throw std::invalid_argument("subgroup_from_perms: generator not in group");
        gen_ids.push_back(static_cast<uint32_t>(id));
    }
    return subgroup_from_gen_ids(G, std::move(gen_ids));
}

// Subgroup from a membership predicate over all elements.
template <typename Pred>
Subgroup subgroup_by_filter(const PermGroup& G, Pred pred) {
    Subgroup s;
    s.parent = &G;
    for (uint32_t id = 0; id < G.size(); ++id)
        if (pred(G.element(id))) s.ids.push_back(id);
    std::sort(s.ids.begin(), s.ids.end());
    s.gen_ids = s.ids; // crude generating set, callers may thin it
    return s;
}

// Normalizer of the cyclic group generated by one element.
inline Subgroup cyclic_normalizer(const PermGroup& G, uint32_t gen) {
    std::vector<bool> in_cyc(G.size(), false);
    uint32_t cur = gen;
    while (!in_cyc[cur]) {
        in_cyc[cur] = true;
        cur = G.mul(cur, gen);
    }
    in_cyc[0] = true;
    Subgroup s;
    s.parent = &G;
    for (uint32_t x = 0; x < G.size(); ++x)
        if (in_cyc[G.conj(gen, x)]) s.ids.push_back(x);
    std::sort(s.ids.begin(), s.ids.end());
    s.gen_ids = s.ids;
    return s;
}

// The order of the element with the given id.
inline unsigned long element_order(const PermGroup& G, uint32_t id) {
    return G.element(id).order();
}

} // namespace intersective
