/// \file partition_enum.hpp
/// Set-partition enumeration with block-size admissibility.
///
/// The game only ever evaluates coalitions of size 1 or larger than the
/// eavesdropper count K, so every enumeration here restricts block sizes to
/// that admissible set. Partitions are generated from restricted growth
/// strings; for a fixed block count the generation order is lexicographic in
/// the growth string, and callers iterate block counts ascending.

#ifndef COALSEC_PARTITION_ENUM_HPP
#define COALSEC_PARTITION_ENUM_HPP

#include <functional>
#include <vector>

#include "coalsec/coalition.hpp"

namespace coalsec {

inline bool admissible_size(int size, int n_eavesdroppers) {
    return size == 1 || size > n_eavesdroppers;
}

namespace detail {

/// Enumerates partitions of `elements` into exactly `n_blocks` blocks, every
/// block of admissible size. The visitor returns true to stop. Blocks are
/// listed in order of their first element. Returns true if stopped.
inline bool enumerate_fixed_block_partitions(const std::vector<UserId>& elements, int n_blocks,
                                             int n_eavesdroppers,
                                             const std::function<bool(const Collection&)>& visit) {
    const int n = static_cast<int>(elements.size());
    if (n_blocks < 1 || n_blocks > n) return false;
    std::vector<int> block_of(n, 0);
    std::vector<int> block_size(n_blocks, 0);

    std::function<bool(int, int)> recurse = [&](int idx, int used) -> bool {
        if (idx == n) {
            if (used != n_blocks) return false;
            for (int b = 0; b < n_blocks; ++b)
                if (!admissible_size(block_size[b], n_eavesdroppers)) return false;
            Collection blocks;
            blocks.reserve(n_blocks);
            std::vector<std::vector<UserId>> groups(n_blocks);
            for (int i = 0; i < n; ++i) groups[block_of[i]].push_back(elements[i]);
            for (auto& gmembers : groups) blocks.emplace_back(std::move(gmembers));
            return visit(blocks);
        }
        int remaining = n - idx;
        // Every block still below the admissible threshold (size in 2..K)
        // needs that many more elements; blocks not yet opened need one each.
        int deficiency = 0;
        for (int b = 0; b < used; ++b)
            if (block_size[b] >= 2 && block_size[b] <= n_eavesdroppers)
                deficiency += n_eavesdroppers + 1 - block_size[b];
        deficiency += n_blocks - used;
        if (deficiency > remaining) return false;

        int limit = std::min(used + 1, n_blocks);
        for (int b = 0; b < limit; ++b) {
            block_of[idx] = b;
            ++block_size[b];
            bool stopped = recurse(idx + 1, std::max(used, b + 1));
            --block_size[b];
            if (stopped) return true;
        }
        return false;
    };
    return recurse(0, 0);
}

}  // namespace detail

/// Enumerates all ways to break `members` into at least `min_blocks`
/// admissible blocks, fewest blocks first. Visitor returns true to stop
/// (enumeration then ends early); returns whether it was stopped.
inline bool enumerate_admissible_splits(const std::vector<UserId>& members, int n_eavesdroppers,
                                        int min_blocks,
                                        const std::function<bool(const Collection&)>& visit) {
    const int n = static_cast<int>(members.size());
    for (int b = std::max(min_blocks, 1); b <= n; ++b)
        if (detail::enumerate_fixed_block_partitions(members, b, n_eavesdroppers, visit))
            return true;
    return false;
}

/// Enumerates every admissible partition of users 0..n_users-1 (all block
/// counts, fewest first). Visitor returns true to stop.
inline bool enumerate_admissible_partitions(int n_users, int n_eavesdroppers,
                                            const std::function<bool(const Partition&)>& visit) {
    std::vector<UserId> all(n_users);
    for (int i = 0; i < n_users; ++i) all[i] = i;
    return enumerate_admissible_splits(all, n_eavesdroppers, 1, [&](const Collection& blocks) {
        return visit(Partition(blocks));
    });
}

}  // namespace coalsec

#endif  // COALSEC_PARTITION_ENUM_HPP
