/// \file stability.hpp
/// Partition stability checkers.
///
/// A partition is hp-stable when no coalition prefers any admissible
/// break-up of itself and no group of coalitions prefers its union: exactly
/// the fixed points of the merge/split iteration. The stronger c-stability
/// allows arbitrary defections; it rarely exists, and when it does the
/// formation algorithm must land on it from any sweep order. The exhaustive
/// finder below is the oracle for that claim at small network sizes.

#ifndef COALSEC_STABILITY_HPP
#define COALSEC_STABILITY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coalsec/game.hpp"

namespace coalsec {

struct StabilityReport {
    bool dhp_stable = true;
    std::optional<std::string> violated_condition;  ///< witness, present iff unstable
    std::optional<Partition> dc_partition;
    std::optional<bool> algorithm_matches_dc;
};

namespace detail {

/// Visits every subset of >= 2 coalitions of P whose union stays inside the
/// exchange radius and has admissible size; other unions hand someone the
/// sentinel payoff and can never be preferred. Visitor returns true to stop.
/// Decrements *budget per visited subset and throws when it runs out.
inline bool for_each_feasible_coalition_subset(
    const Partition& p, const ChannelState& ch, const SimConfig& cfg, std::uint64_t* budget,
    const std::function<bool(const Collection&, const Coalition&)>& visit) {
    const double d_max = max_exchange_distance(cfg);
    const auto& pool = p.coalitions();
    Collection chosen;
    std::vector<UserId> current;

    std::function<bool(std::size_t)> recurse = [&](std::size_t next) -> bool {
        if (chosen.size() >= 2) {
            if (*budget == 0)
                throw std::runtime_error("is_dhp_stable: instance too large");
            --*budget;
            if (admissible_size(static_cast<int>(current.size()), ch.n_eavesdroppers())) {
                if (visit(chosen, Coalition(current))) return true;
            }
        }
        for (std::size_t idx = next; idx < pool.size(); ++idx) {
            const auto& add = pool[idx].members();
            bool fits = true;
            for (UserId u : add) {
                for (UserId v : current)
                    if (ch.user_dist(u, v) >= d_max) {
                        fits = false;
                        break;
                    }
                if (!fits) break;
                for (UserId w : add)
                    if (w != u && ch.user_dist(u, w) >= d_max) {
                        fits = false;
                        break;
                    }
                if (!fits) break;
            }
            if (!fits) continue;
            chosen.push_back(pool[idx]);
            current.insert(current.end(), add.begin(), add.end());
            if (recurse(idx + 1)) return true;
            current.resize(current.size() - add.size());
            chosen.pop_back();
        }
        return false;
    };
    return recurse(0);
}

}  // namespace detail

/// Checks both hp-stability conditions: (a) no coalition of P admits a
/// Pareto-preferred admissible split; (b) no feasible union of coalitions of
/// P is Pareto-preferred to its constituents. Returns the first witness on
/// failure.
inline StabilityReport is_dhp_stable(const Partition& p, ValueCache& cache) {
    const ChannelState& ch = cache.channel();
    const SimConfig& cfg = cache.config();
    p.validate(ch.n_users());
    StabilityReport report;

    for (const auto& t_i : p.coalitions()) {
        if (t_i.size() == 1) continue;
        if (t_i.size() > cfg.max_split_size)
            throw std::runtime_error("is_dhp_stable: instance too large");
        enumerate_admissible_splits(
            t_i.members(), ch.n_eavesdroppers(), 2, [&](const Collection& blocks) {
                if (!pareto_preferred(blocks, Collection{t_i}, cache)) return false;
                std::string witness = "split: " + t_i.to_string() + " -> ";
                for (const auto& b : blocks) witness += b.to_string();
                witness += " preferred";
                report.dhp_stable = false;
                report.violated_condition = witness;
                return true;
            });
        if (!report.dhp_stable) return report;
    }

    std::uint64_t budget = cfg.max_union_subsets;
    detail::for_each_feasible_coalition_subset(
        p, ch, cfg, &budget, [&](const Collection& subset, const Coalition& merged) {
            if (!pareto_preferred(Collection{merged}, subset, cache)) return false;
            std::string witness = "merge: ";
            for (const auto& c : subset) witness += c.to_string();
            witness += " -> " + merged.to_string() + " preferred";
            report.dhp_stable = false;
            report.violated_condition = witness;
            return true;
        });
    return report;
}

namespace detail {

/// All admissible-size subsets of users 0..n-1 with at least `min_size`
/// members, as coalitions.
inline std::vector<Coalition> admissible_subsets(int n_users, int n_eavesdroppers, int min_size) {
    std::vector<Coalition> out;
    for (std::uint32_t mask = 1; mask < (1u << n_users); ++mask) {
        int size = __builtin_popcount(mask);
        if (size < min_size || !admissible_size(size, n_eavesdroppers)) continue;
        std::vector<UserId> members;
        for (int u = 0; u < n_users; ++u)
            if (mask & (1u << u)) members.push_back(u);
        out.emplace_back(std::move(members));
    }
    return out;
}

/// Condition on the inner structure of each block: every pair of disjoint
/// admissible sub-coalitions must prefer its union.
inline bool dc_block_condition(const Coalition& block, ValueCache& cache) {
    const int k = cache.channel().n_eavesdroppers();
    if (block.size() == 1) return true;
    const auto& members = block.members();
    const int n = block.size();
    bool ok = true;
    for (std::uint32_t mask = 1; mask < (1u << n) && ok; ++mask) {
        int size = __builtin_popcount(static_cast<unsigned>(mask));
        if (size < 2 || !admissible_size(size, k)) continue;
        std::vector<UserId> sub;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(members[i]);
        Coalition united(sub);
        enumerate_admissible_splits(sub, k, 2, [&](const Collection& halves) {
            if (halves.size() != 2) return true;  // only pairwise break-ups matter here
            if (!pareto_preferred(Collection{united}, halves, cache)) {
                ok = false;
                return true;
            }
            return false;
        });
    }
    return ok;
}

/// Condition on cross-block coalitions: every coalition spanning several
/// blocks must be beaten by its projection onto the partition. Coalitions
/// whose projection would contain an inadmissible-size piece lie outside the
/// game's value domain and are skipped.
inline bool dc_projection_condition(const Partition& t, const std::vector<Coalition>& cross_groups,
                                    ValueCache& cache) {
    const int k = cache.channel().n_eavesdroppers();
    for (const auto& g : cross_groups) {
        Collection projection;
        bool evaluable = true;
        for (const auto& block : t.coalitions()) {
            std::vector<UserId> piece;
            for (UserId u : g.members())
                if (block.contains(u)) piece.push_back(u);
            if (piece.empty()) continue;
            if (!admissible_size(static_cast<int>(piece.size()), k)) {
                evaluable = false;
                break;
            }
            projection.emplace_back(std::move(piece));
        }
        if (!evaluable) continue;
        if (projection.size() < 2) continue;  // g sits inside one block: compatible
        if (!pareto_preferred(projection, Collection{g}, cache)) return false;
    }
    return true;
}

/// No admissible coalition may Pareto-improve on what its members earn in
/// the partition; otherwise that group would simply defect.
inline bool dc_no_defection(const std::vector<double>& partition_payoffs,
                            const std::vector<Coalition>& groups, ValueCache& cache) {
    for (const auto& g : groups) {
        const PayoffVector& pv = cache.value(g);
        bool none_worse = true;
        bool some_better = false;
        for (std::size_t i = 0; i < pv.members.size(); ++i) {
            double in_partition = partition_payoffs[pv.members[i]];
            if (pv.values[i].payoff < in_partition) {
                none_worse = false;
                break;
            }
            if (pv.values[i].payoff > in_partition) some_better = true;
        }
        if (none_worse && some_better) return false;
    }
    return true;
}

}  // namespace detail

/// Exhaustively searches for a c-stable partition: a partition whose blocks
/// are internally merge-saturated, which beats every cross-block coalition's
/// projection, and from which no admissible group can profitably defect.
/// Returns the first qualifying partition, or none. Only viable for small
/// networks; throws above the configured user cap.
inline std::optional<Partition> find_dc_stable(ValueCache& cache) {
    const ChannelState& ch = cache.channel();
    const SimConfig& cfg = cache.config();
    const int n = ch.n_users();
    if (n > cfg.max_dc_users)
        throw std::runtime_error("find_dc_stable: instance too large (user cap exceeded)");

    std::vector<Coalition> all_groups = detail::admissible_subsets(n, ch.n_eavesdroppers(), 1);
    std::vector<Coalition> multi_groups;
    for (const auto& g : all_groups)
        if (g.size() >= 2) multi_groups.push_back(g);

    std::optional<Partition> found;
    enumerate_admissible_partitions(n, ch.n_eavesdroppers(), [&](const Partition& t) {
        std::vector<double> payoffs(n);
        for (const auto& block : t.coalitions()) {
            const PayoffVector& pv = cache.value(block);
            for (std::size_t i = 0; i < pv.members.size(); ++i)
                payoffs[pv.members[i]] = pv.values[i].payoff;
        }
        if (!detail::dc_no_defection(payoffs, all_groups, cache)) return false;
        if (!detail::dc_projection_condition(t, multi_groups, cache)) return false;
        for (const auto& block : t.coalitions())
            if (!detail::dc_block_condition(block, cache)) return false;
        found = t;
        return true;
    });
    return found;
}

inline std::string stability_report_to_text(const StabilityReport& r) {
    std::string out = "dhp_stable = ";
    out += r.dhp_stable ? "true" : "false";
    out += '\n';
    if (r.violated_condition) out += "violated = " + *r.violated_condition + '\n';
    if (r.dc_partition) out += "dc_partition = " + r.dc_partition->to_string() + '\n';
    else out += "dc_partition = none\n";
    if (r.algorithm_matches_dc)
        out += std::string("algorithm_matches_dc = ") + (*r.algorithm_matches_dc ? "true" : "false") + '\n';
    return out;
}

}  // namespace coalsec

#endif  // COALSEC_STABILITY_HPP
