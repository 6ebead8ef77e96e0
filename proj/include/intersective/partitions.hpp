#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "intersective/errors.hpp"

namespace intersective {

using Partition = std::vector<unsigned>; // parts, kept sorted descending

inline Partition sorted_partition(Partition p) {
    std::sort(p.rbegin(), p.rend());
    return p;
}

inline unsigned partition_sum(const Partition& p) {
    return std::accumulate(p.begin(), p.end(), 0u);
}

// All partitions of n (descending parts). p(28) = 3718, so full enumeration
// stays cheap for every degree this library handles.
inline std::vector<Partition> all_partitions(unsigned n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned rest, unsigned maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    rec(n, n == 0 ? 1 : n);
    return out;
}

namespace detail {

// Can `parts` be split into groups summing to each entry of `targets`?
// Exact cover by subset sums, backtracking on the largest target first.
inline bool tiles(std::vector<unsigned> parts, std::vector<unsigned> targets) {
    std::sort(parts.rbegin(), parts.rend());
    std::sort(targets.rbegin(), targets.rend());
    if (targets.empty()) return parts.empty();
    unsigned t = targets.front();
    targets.erase(targets.begin());
    // choose a subset of parts summing to t; recurse on the rest
    std::function<bool(size_t, unsigned, std::vector<bool>&)> pick =
        [&](size_t idx, unsigned remaining, std::vector<bool>& used) -> bool {
        if (remaining == 0) {
            std::vector<unsigned> rest;
            for (size_t i = 0; i < parts.size(); ++i)
                if (!used[i]) rest.push_back(parts[i]);
            return tiles(rest, targets);
        }
        for (size_t i = idx; i < parts.size(); ++i) {
            if (used[i] || parts[i] > remaining) continue;
            if (i > 0 && parts[i] == parts[i - 1] && !used[i - 1]) continue; // skip duplicates
            used[i] = true;
            if (pick(i + 1, remaining - parts[i], used)) return true;
            used[i] = false;
        }
        return false;
    };
    std::vector<bool> used(parts.size(), false);
    return pick(0, t, used);
}

} // namespace detail

// True iff `candidate` refines `bound`: each part of `bound` is a disjoint
// sum of parts of `candidate`. Both must have the same total.
inline bool subpartition_check(const Partition& candidate, const Partition& bound) {
    if (partition_sum(candidate) != partition_sum(bound))
        throw SumMismatch("subpartition_check: partitions have different totals");
    return detail::tiles(candidate, bound);
}

} // namespace intersective
