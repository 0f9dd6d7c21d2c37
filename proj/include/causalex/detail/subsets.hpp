#pragma once

#include <algorithm>
#include <vector>

#include "causalex/model.hpp"

namespace causalex::detail {

// All subsets of a sorted pool, sizes ascending, lexicographic within a
// size. The empty set comes first. Pools here are variable sets of at most
// a handful of elements, so materializing is fine.
inline std::vector<std::vector<VarId>> subsets_by_size(const std::vector<VarId>& pool) {
    std::vector<std::vector<VarId>> out;
    const int n = static_cast<int>(pool.size());
    out.push_back({});
    for (int k = 1; k <= n; ++k) {
        std::vector<int> pick(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<VarId> s(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) {
                s[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(pick[i])];
            }
            out.push_back(std::move(s));
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) {
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }
    return out;
}

inline bool is_subset(const std::vector<VarId>& small, const std::vector<VarId>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::vector<VarId> set_minus(const std::vector<VarId>& a, const std::vector<VarId>& b) {
    std::vector<VarId> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<VarId> set_union(const std::vector<VarId>& a, const std::vector<VarId>& b) {
    std::vector<VarId> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace causalex::detail
