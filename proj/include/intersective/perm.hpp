#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "intersective/partitions.hpp"

namespace intersective {

// Permutation of {0, ..., n-1}. Composition is left-to-right:
// (a * b)(x) = b(a(x)), so conjugation reads g^h = h^-1 * g * h.
class Perm {
public:
    Perm() = default;
    explicit Perm(unsigned n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }
    explicit Perm(std::vector<uint16_t> images) : img_(std::move(images)) {}

    static Perm identity(unsigned n) { return Perm(n); }

    // From a cycle list on 0-based points, e.g. {{0,1,2},{3,4}}.
    static Perm from_cycles(unsigned n, const std::vector<std::vector<uint16_t>>& cycles) {
        Perm p(n);
        for (const auto& cyc : cycles) {
            for (size_t i = 0; i < cyc.size(); ++i)
                p.img_[cyc[i]] = cyc[(i + 1) % cyc.size()];
        }
        return p;
    }

    unsigned degree() const { return static_cast<unsigned>(img_.size()); }
    uint16_t operator[](size_t i) const { return img_[i]; }
    const std::vector<uint16_t>& images() const { return img_; }

    bool is_identity() const {
        for (size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    friend Perm operator*(const Perm& a, const Perm& b) {
        Perm r;
        r.img_.resize(a.img_.size());
        for (size_t i = 0; i < a.img_.size(); ++i) r.img_[i] = b.img_[a.img_[i]];
        return r;
    }

    Perm inverse() const {
        Perm r;
        r.img_.resize(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<uint16_t>(i);
        return r;
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
    friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

    std::vector<std::vector<uint16_t>> cycles(bool include_fixed = false) const {
        std::vector<std::vector<uint16_t>> out;
        std::vector<bool> seen(img_.size(), false);
        for (size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            std::vector<uint16_t> cyc;
            size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                cyc.push_back(static_cast<uint16_t>(j));
                j = img_[j];
            }
            if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
        }
        return out;
    }

    Partition cycle_type() const {
        Partition p;
        std::vector<bool> seen(img_.size(), false);
        for (size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            unsigned len = 0;
            size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                ++len;
                j = img_[j];
            }
            p.push_back(len);
        }
        return sorted_partition(p);
    }

    unsigned long order() const {
        unsigned long o = 1;
        for (unsigned len : cycle_type()) o = std::lcm(o, static_cast<unsigned long>(len));
        return o;
    }

    unsigned count_fixed_points() const {
        unsigned c = 0;
        for (size_t i = 0; i < img_.size(); ++i)
            if (img_[i] == i) ++c;
        return c;
    }

    size_t hash() const {
        size_t h = 1469598103934665603ULL;
        for (uint16_t v : img_) h = (h ^ v) * 1099511628211ULL;
        return h;
    }

    std::string to_string() const {
        auto cyc = cycles();
        if (cyc.empty()) return "()";
        std::string s;
        for (const auto& c : cyc) {
            s += "(";
            for (size_t i = 0; i < c.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(c[i]);
            }
            s += ")";
        }
        return s;
    }

private:
    std::vector<uint16_t> img_;
};

struct PermHash {
    size_t operator()(const Perm& p) const { return p.hash(); }
};

} // namespace intersective
