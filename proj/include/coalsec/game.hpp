/// \file game.hpp
/// Distributed coalition formation: Pareto-order comparison, neighbor
/// discovery, and the merge/split rules iterated to a stable partition.
///
/// A merge or split is agreed exactly when nobody loses and somebody gains
/// (Pareto order over individual payoffs), so every recorded event is a
/// strict improvement for its participants. All enumeration orders are
/// deterministic; an optional seeded sweep order exists to study order
/// sensitivity.

#ifndef COALSEC_GAME_HPP
#define COALSEC_GAME_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coalsec/channel.hpp"
#include "coalsec/coalition.hpp"
#include "coalsec/format.hpp"
#include "coalsec/partition_enum.hpp"
#include "coalsec/value_cache.hpp"

namespace coalsec {

// ---------------------------------------------------------------------------
// Pareto order

/// True iff a >= b everywhere with at least one strict improvement. The
/// sentinel payoff compares below every finite value; two sentinels compare
/// equal.
inline bool pareto_dominates(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("pareto_dominates: length mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strict = true;
    }
    return strict;
}

/// Payoff of every player of `players` under the given collection, aligned
/// with `players` (which must be exactly the collection's player set).
inline std::vector<double> payoffs_for(const std::vector<UserId>& players, const Collection& c,
                                       ValueCache& cache) {
    std::vector<double> out(players.size());
    for (const auto& s : c) {
        const PayoffVector& pv = cache.value(s);
        for (std::size_t i = 0; i < pv.members.size(); ++i) {
            auto it = std::lower_bound(players.begin(), players.end(), pv.members[i]);
            if (it == players.end() || *it != pv.members[i])
                throw std::invalid_argument("payoffs_for: player set mismatch");
            out[static_cast<std::size_t>(it - players.begin())] = pv.values[i].payoff;
        }
    }
    return out;
}

/// Pareto order over two collections partitioning the same player subset.
inline bool pareto_preferred(const Collection& r, const Collection& s, ValueCache& cache) {
    std::vector<UserId> players_r = players_of(r);
    std::vector<UserId> players_s = players_of(s);
    if (players_r != players_s)
        throw std::invalid_argument("pareto_preferred: collections cover different players");
    return pareto_dominates(payoffs_for(players_r, r, cache), payoffs_for(players_r, s, cache));
}

// ---------------------------------------------------------------------------
// Geometry of cooperation

/// True iff every pairwise distance among the union's members stays strictly
/// inside the exchange radius, i.e. every member could still broadcast to
/// its farthest partner within the slot budget.
inline bool union_within_exchange_range(const std::vector<const Coalition*>& parts,
                                        const ChannelState& ch, double d_max) {
    for (std::size_t a = 0; a < parts.size(); ++a) {
        const auto& ma = parts[a]->members();
        for (std::size_t i = 0; i < ma.size(); ++i) {
            for (std::size_t j = i + 1; j < ma.size(); ++j)
                if (ch.user_dist(ma[i], ma[j]) >= d_max) return false;
            for (std::size_t b = a + 1; b < parts.size(); ++b)
                for (UserId u : parts[b]->members())
                    if (ch.user_dist(ma[i], u) >= d_max) return false;
        }
    }
    return true;
}

/// Coalitions of P (other than T_i) whose merger with T_i would keep every
/// member's exchange power under the slot budget.
inline Collection discover_neighbors(const Coalition& t_i, const Partition& p,
                                     const ChannelState& ch, const SimConfig& cfg) {
    const double d_max = max_exchange_distance(cfg);
    Collection neighbors;
    for (const auto& t_j : p.coalitions()) {
        if (t_j == t_i) continue;
        if (union_within_exchange_range({&t_i, &t_j}, ch, d_max)) neighbors.push_back(t_j);
    }
    return neighbors;
}

// ---------------------------------------------------------------------------
// Formation trace

struct TraceEvent {
    enum class Type { Merge, Split };
    int round = 0;
    Type type = Type::Merge;
    Collection before;
    Collection after;
    std::vector<UserId> players;       ///< sorted union of the actors' members
    std::vector<double> payoff_before; ///< aligned with players
    std::vector<double> payoff_after;
};

using FormationTrace = std::vector<TraceEvent>;

inline std::string to_log_line(const TraceEvent& e) {
    std::string line = "round=" + std::to_string(e.round);
    line += e.type == TraceEvent::Type::Merge ? " type=merge" : " type=split";
    line += " before=";
    for (const auto& c : e.before) line += c.to_string();
    line += " after=";
    for (const auto& c : e.after) line += c.to_string();
    line += " players=" + join_ints(e.players);
    line += " payoff_before=" + join_doubles(e.payoff_before);
    line += " payoff_after=" + join_doubles(e.payoff_after);
    return line;
}

inline std::string trace_to_log(const FormationTrace& trace) {
    std::string out;
    for (const auto& e : trace) {
        out += to_log_line(e);
        out += '\n';
    }
    return out;
}

/// Applies the trace's events to the initial partition; the result must be
/// the engine's final partition.
inline Partition replay_trace(Partition initial, const FormationTrace& trace) {
    for (const auto& e : trace) initial.replace(e.before, e.after);
    return initial;
}

namespace detail {

inline TraceEvent make_event(int round, TraceEvent::Type type, Collection before,
                             Collection after, ValueCache& cache) {
    TraceEvent e;
    e.round = round;
    e.type = type;
    e.before = std::move(before);
    e.after = std::move(after);
    e.players = players_of(e.before);
    e.payoff_before = payoffs_for(e.players, e.before, cache);
    e.payoff_after = payoffs_for(e.players, e.after, cache);
    return e;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Merge rule

namespace detail {

struct MergeCandidate {
    Coalition merged;
    std::vector<std::size_t> neighbor_indices;
};

/// All unions of `base` with non-empty subsets of `neighbors` that stay
/// inside the exchange radius and exceed the eavesdropper count. Recursion
/// prunes on the union's pairwise distances, which is exact: any union
/// beyond the radius hands some member the sentinel payoff and can never be
/// preferred.
inline std::vector<MergeCandidate> feasible_merge_candidates(const Coalition& base,
                                                             const Collection& neighbors,
                                                             const ChannelState& ch,
                                                             const SimConfig& cfg,
                                                             std::uint64_t* budget) {
    const double d_max = max_exchange_distance(cfg);
    std::vector<MergeCandidate> candidates;
    if (!union_within_exchange_range({&base}, ch, d_max)) return candidates;

    std::vector<UserId> current(base.members());
    std::vector<std::size_t> chosen;

    std::function<void(std::size_t)> recurse = [&](std::size_t next) {
        if (!chosen.empty()) {
            if (*budget == 0)
                throw std::runtime_error("merge enumeration: instance too large");
            --*budget;
            if (admissible_size(static_cast<int>(current.size()), ch.n_eavesdroppers()) &&
                current.size() > base.members().size()) {
                MergeCandidate cand;
                cand.merged = Coalition(current);
                cand.neighbor_indices = chosen;
                candidates.push_back(std::move(cand));
            }
        }
        for (std::size_t idx = next; idx < neighbors.size(); ++idx) {
            const auto& add = neighbors[idx].members();
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
            chosen.push_back(idx);
            current.insert(current.end(), add.begin(), add.end());
            recurse(idx + 1);
            current.resize(current.size() - add.size());
            chosen.pop_back();
        }
    };
    recurse(0);

    std::sort(candidates.begin(), candidates.end(),
              [](const MergeCandidate& a, const MergeCandidate& b) {
                  if (a.merged.size() != b.merged.size()) return a.merged.size() < b.merged.size();
                  return a.merged.members() < b.merged.members();
              });
    return candidates;
}

}  // namespace detail

/// Merge rule for coalition T_i: enumerate the feasible unions with
/// discovered neighbors (smallest first, then lexicographic), form the first
/// one every participant agrees to, and continue from the merged coalition
/// until no merge applies. Returns the updated partition and whether any
/// merge occurred.
inline std::pair<Partition, bool> try_merge(const Coalition& t_i, const Partition& p,
                                            ValueCache& cache, FormationTrace* trace = nullptr,
                                            int round = 0) {
    if (!p.contains(t_i)) throw std::invalid_argument("try_merge: coalition not in partition");
    Partition current = p;
    Coalition actor = t_i;
    bool changed = false;
    std::uint64_t budget = cache.config().max_union_subsets;

    for (;;) {
        Collection neighbors = discover_neighbors(actor, current, cache.channel(), cache.config());
        if (neighbors.empty()) break;
        auto candidates =
            detail::feasible_merge_candidates(actor, neighbors, cache.channel(), cache.config(), &budget);
        bool merged_this_pass = false;
        for (const auto& cand : candidates) {
            Collection constituents{actor};
            for (std::size_t idx : cand.neighbor_indices) constituents.push_back(neighbors[idx]);
            Collection merged_form{cand.merged};
            if (pareto_preferred(merged_form, constituents, cache)) {
                if (trace)
                    trace->push_back(detail::make_event(round, TraceEvent::Type::Merge,
                                                        constituents, merged_form, cache));
                current.replace(constituents, merged_form);
                actor = cand.merged;
                changed = true;
                merged_this_pass = true;
                break;
            }
        }
        if (!merged_this_pass) break;
    }
    return {std::move(current), changed};
}

// ---------------------------------------------------------------------------
// Split rule

/// Split rule for coalition S: enumerate admissible break-ups (fewest blocks
/// first, then lexicographic) and return the first one every member agrees
/// to; singletons return unchanged.
inline std::pair<Collection, bool> try_split(const Coalition& s, ValueCache& cache,
                                             FormationTrace* trace = nullptr, int round = 0) {
    if (s.size() == 1) return {Collection{s}, false};
    if (!admissible_size(s.size(), cache.channel().n_eavesdroppers()))
        throw std::invalid_argument("try_split: size violates Remark 1");
    if (s.size() > cache.config().max_split_size)
        throw std::runtime_error("try_split: coalition exceeds split enumeration cap");

    Collection result{s};
    bool changed = false;
    enumerate_admissible_splits(
        s.members(), cache.channel().n_eavesdroppers(), 2, [&](const Collection& blocks) {
            if (!pareto_preferred(blocks, Collection{s}, cache)) return false;
            if (trace)
                trace->push_back(
                    detail::make_event(round, TraceEvent::Type::Split, Collection{s}, blocks, cache));
            result = blocks;
            changed = true;
            return true;
        });
    return {std::move(result), changed};
}

// ---------------------------------------------------------------------------
// Formation engine

struct SweepOrder {
    enum class Kind { LowestMember, Seeded };
    Kind kind = Kind::LowestMember;
    std::uint64_t seed = 0;

    static SweepOrder lowest_member() { return {}; }
    static SweepOrder seeded(std::uint64_t seed) { return {Kind::Seeded, seed}; }
};

struct FormationResult {
    Partition partition;
    FormationTrace trace;
    int sweeps = 0;
};

/// Alternates a merge pass and a split pass over all coalitions until a full
/// sweep changes nothing. Pass order is ascending lowest-member id by
/// default, or a seeded shuffle. Throws after the configured sweep cap; the
/// iteration is guaranteed to terminate, so hitting the cap signals a bug.
inline FormationResult merge_split_until_stable(const Partition& initial, ValueCache& cache,
                                                SweepOrder order = SweepOrder::lowest_member()) {
    Partition current = initial;
    current.validate(cache.channel().n_users());
    FormationResult result;
    std::mt19937_64 order_rng(order.seed);

    auto snapshot_order = [&]() {
        Collection snap = current.coalitions();  // canonical: ascending lowest member
        if (order.kind == SweepOrder::Kind::Seeded)
            std::shuffle(snap.begin(), snap.end(), order_rng);
        return snap;
    };

    for (int sweep = 1; sweep <= cache.config().max_sweeps; ++sweep) {
        bool changed = false;

        for (const auto& c : snapshot_order()) {
            if (!current.contains(c)) continue;  // absorbed earlier in this pass
            auto [next, merged] = try_merge(c, current, cache, &result.trace, sweep);
            if (merged) {
                current = std::move(next);
                changed = true;
            }
        }
        for (const auto& c : snapshot_order()) {
            if (!current.contains(c)) continue;
            auto [blocks, split] = try_split(c, cache, &result.trace, sweep);
            if (split) {
                current.replace({c}, blocks);
                changed = true;
            }
        }

        if (!changed) {
            result.partition = std::move(current);
            result.sweeps = sweep;
            return result;
        }
    }
    throw std::runtime_error("merge_split_until_stable: non-termination (sweep cap exceeded)");
}

struct RoundOutcome {
    Partition partition;
    std::vector<double> payoffs;  ///< realized per-user rate, indexed by user id
    FormationTrace trace;
    int sweeps = 0;
};

/// One full round: neighbor discovery and adaptive formation, then payoff
/// realization with one slot per user inside its final coalition.
inline RoundOutcome run_round(const Partition& initial, ValueCache& cache,
                              SweepOrder order = SweepOrder::lowest_member()) {
    FormationResult formed = merge_split_until_stable(initial, cache, order);
    RoundOutcome outcome;
    outcome.partition = std::move(formed.partition);
    outcome.trace = std::move(formed.trace);
    outcome.sweeps = formed.sweeps;
    outcome.payoffs.assign(cache.channel().n_users(), 0.0);
    for (const auto& c : outcome.partition.coalitions()) {
        const PayoffVector& pv = cache.value(c);
        for (std::size_t i = 0; i < pv.members.size(); ++i)
            outcome.payoffs[pv.members[i]] = pv.values[i].payoff;
    }
    return outcome;
}

}  // namespace coalsec

#endif  // COALSEC_GAME_HPP
