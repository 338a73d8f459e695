/// \file scenario.hpp
/// Experiment orchestration: random drops, Monte Carlo sweeps over the
/// network size, and mobility traces with periodic re-formation.

#ifndef COALSEC_SCENARIO_HPP
#define COALSEC_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "coalsec/game.hpp"
#include "coalsec/stability.hpp"

namespace coalsec {

/// Users, destinations, and eavesdroppers drawn i.i.d. uniform on the square,
/// in that order; users assigned to the nearest destination. Coincident
/// points are re-drawn.
inline Deployment random_deployment(const SimConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    std::uniform_real_distribution<double> coord(0.0, cfg.area_side);
    Deployment dep;
    auto draw_distinct = [&](std::vector<Point>& into, int count,
                             const std::vector<const std::vector<Point>*>& avoid) {
        for (int i = 0; i < count; ++i) {
            for (;;) {
                Point p{coord(rng), coord(rng)};
                bool clash = false;
                for (const auto* group : avoid)
                    for (const auto& q : *group)
                        if (q == p) clash = true;
                for (const auto& q : into)
                    if (q == p) clash = true;
                if (!clash) {
                    into.push_back(p);
                    break;
                }
            }
        }
    };
    draw_distinct(dep.user_pos, cfg.n_users, {});
    draw_distinct(dep.dest_pos, cfg.n_destinations, {&dep.user_pos});
    draw_distinct(dep.eve_pos, cfg.n_eavesdroppers, {&dep.user_pos});
    dep.assignment = nearest_destination_assignment(dep.user_pos, dep.dest_pos);
    return dep;
}

/// Comparative metrics of one drop.
struct MetricsRecord {
    int n_users = 0;
    int drop_index = 0;
    double avg_coop_utility = 0.0;     ///< mean realized per-user rate, final partition
    double avg_noncoop_utility = 0.0;  ///< mean rate with every user standalone
    double improvement_pct = 0.0;      ///< 100*(coop-noncoop)/noncoop when noncoop > 0
    std::map<int, int> coalition_size_histogram;
    int sweeps = 0;
};

/// Everything produced by one drop, for snapshot output and inspection.
struct DropResult {
    Deployment deployment;
    ChannelState channel;
    RoundOutcome outcome;
    std::vector<double> noncoop_payoffs;
    MetricsRecord metrics;
};

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline MetricsRecord metrics_from(const DropResult& drop) {
    MetricsRecord m;
    m.n_users = drop.channel.n_users();
    m.avg_coop_utility = mean_of(drop.outcome.payoffs);
    m.avg_noncoop_utility = mean_of(drop.noncoop_payoffs);
    m.improvement_pct =
        m.avg_noncoop_utility > 0.0
            ? 100.0 * (m.avg_coop_utility - m.avg_noncoop_utility) / m.avg_noncoop_utility
            : 0.0;
    for (const auto& c : drop.outcome.partition.coalitions())
        ++m.coalition_size_histogram[c.size()];
    m.sweeps = drop.outcome.sweeps;
    return m;
}

/// One drop end to end: deployment, channels, formation from the
/// all-singleton start, payoff realization, comparative metrics.
inline DropResult run_drop(const SimConfig& cfg, SweepOrder order = SweepOrder::lowest_member()) {
    cfg.validate();
    std::mt19937_64 rng(cfg.rng_seed);
    DropResult drop;
    drop.deployment = random_deployment(cfg, rng);
    drop.channel = build_channel_state(drop.deployment, cfg, rng);
    ValueCache cache(drop.channel, cfg);
    drop.outcome = run_round(Partition::singletons(cfg.n_users), cache, order);
    drop.noncoop_payoffs.resize(cfg.n_users);
    for (int u = 0; u < cfg.n_users; ++u)
        drop.noncoop_payoffs[u] = noncoop_secrecy_capacity(u, drop.channel, cfg);
    drop.metrics = metrics_from(drop);
    return drop;
}

inline MetricsRecord run_simulation(const SimConfig& cfg) { return run_drop(cfg).metrics; }

/// Aggregated sweep point for one network size.
struct AggregateMetrics {
    int n_users = 0;
    int drops = 0;
    double mean_coop = 0.0;
    double stderr_coop = 0.0;
    double mean_noncoop = 0.0;
    double stderr_noncoop = 0.0;
    double improvement_pct = 0.0;  ///< of the aggregated means
};

inline std::uint64_t derive_drop_seed(std::uint64_t base, int n_users, int drop) {
    // SplitMix64 over a fixed combination; avoids correlated streams across
    // (N, drop) cells while staying reproducible from the base seed.
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(n_users) * 1000003ULL +
                                                      static_cast<std::uint64_t>(drop) + 1ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Mean and standard error of both utilities per network size, over fresh
/// seeded drops. Drop seeds derive from (base seed, N, drop index) only, so
/// results never depend on scheduling.
inline std::vector<AggregateMetrics> sweep(const SimConfig& base_cfg,
                                           const std::vector<int>& n_values, int drops_per_n) {
    if (drops_per_n < 1) throw std::invalid_argument("sweep: drops_per_n must be >= 1");
    std::vector<AggregateMetrics> out;
    for (int n : n_values) {
        SimConfig cfg = base_cfg;
        cfg.n_users = n;
        std::vector<double> coop(drops_per_n), noncoop(drops_per_n);
        for (int d = 0; d < drops_per_n; ++d) {
            cfg.rng_seed = derive_drop_seed(base_cfg.rng_seed, n, d);
            MetricsRecord m = run_simulation(cfg);
            coop[d] = m.avg_coop_utility;
            noncoop[d] = m.avg_noncoop_utility;
        }
        AggregateMetrics agg;
        agg.n_users = n;
        agg.drops = drops_per_n;
        agg.mean_coop = mean_of(coop);
        agg.mean_noncoop = mean_of(noncoop);
        auto stderr_of = [&](const std::vector<double>& v, double mean) {
            if (v.size() < 2) return 0.0;
            double ss = 0.0;
            for (double x : v) ss += (x - mean) * (x - mean);
            return std::sqrt(ss / (static_cast<double>(v.size()) - 1.0) /
                             static_cast<double>(v.size()));
        };
        agg.stderr_coop = stderr_of(coop, agg.mean_coop);
        agg.stderr_noncoop = stderr_of(noncoop, agg.mean_noncoop);
        agg.improvement_pct = agg.mean_noncoop > 0.0
                                  ? 100.0 * (agg.mean_coop - agg.mean_noncoop) / agg.mean_noncoop
                                  : 0.0;
        out.push_back(agg);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mobility

struct Waypoint {
    double time = 0.0;  ///< seconds
    Point pos;
};

/// Piecewise-linear motion for a subset of users, re-formed every `period`
/// seconds. Users without waypoints keep their deployed position.
struct MobilityTrace {
    double period = 1.0;
    std::optional<double> end_time;
    std::map<UserId, std::vector<Waypoint>> waypoints;

    void validate(const SimConfig& cfg) const {
        if (!(period > 0.0)) throw std::invalid_argument("mobility trace: period must be positive");
        for (const auto& [user, wps] : waypoints) {
            if (user < 0 || user >= cfg.n_users)
                throw std::invalid_argument("mobility trace: user id out of range");
            if (wps.empty()) throw std::invalid_argument("mobility trace: empty waypoint list");
            for (std::size_t i = 0; i < wps.size(); ++i) {
                if (i > 0 && !(wps[i].time > wps[i - 1].time))
                    throw std::invalid_argument("mobility trace: waypoint times must increase");
                if (wps[i].pos.x < 0 || wps[i].pos.x > cfg.area_side || wps[i].pos.y < 0 ||
                    wps[i].pos.y > cfg.area_side)
                    throw std::invalid_argument("mobility trace: waypoint outside area");
            }
        }
    }

    double final_time() const {
        double t = 0.0;
        for (const auto& [user, wps] : waypoints) t = std::max(t, wps.back().time);
        if (end_time) t = std::max(t, *end_time);
        return t;
    }

    Point position_at(UserId user, double t, const Point& fallback) const {
        auto it = waypoints.find(user);
        if (it == waypoints.end()) return fallback;
        const auto& wps = it->second;
        if (t <= wps.front().time) return wps.front().pos;
        if (t >= wps.back().time) return wps.back().pos;
        for (std::size_t i = 1; i < wps.size(); ++i) {
            if (t <= wps[i].time) {
                double f = (t - wps[i - 1].time) / (wps[i].time - wps[i - 1].time);
                return Point{wps[i - 1].pos.x + f * (wps[i].pos.x - wps[i - 1].pos.x),
                             wps[i - 1].pos.y + f * (wps[i].pos.y - wps[i - 1].pos.y)};
            }
        }
        return wps.back().pos;
    }
};

struct MobilitySnapshot {
    double time = 0.0;
    Partition partition;
    std::vector<double> payoffs;
    FormationTrace events;  ///< formation events of this instant's re-formation
};

/// Runs the formation phase at every re-formation instant: positions are
/// interpolated, assignments recomputed, channel magnitudes rebuilt (phase
/// offsets persist from the initial draw), and formation restarts from the
/// previous instant's partition.
inline std::vector<MobilitySnapshot> run_mobility(const SimConfig& cfg, const Deployment& initial,
                                                  const MobilityTrace& trace,
                                                  SweepOrder order = SweepOrder::lowest_member()) {
    cfg.validate();
    trace.validate(cfg);
    std::mt19937_64 rng(cfg.rng_seed);
    ChannelState ch0 = build_channel_state(initial, cfg, rng);
    const Eigen::MatrixXd phase_h = ch0.phase_h;
    const Eigen::MatrixXd phase_g = ch0.phase_g;

    std::vector<MobilitySnapshot> series;
    Partition previous = Partition::singletons(cfg.n_users);
    const double t_end = trace.final_time();
    for (double t = 0.0; t <= t_end + 1e-9; t += trace.period) {
        Deployment dep = initial;
        for (int u = 0; u < cfg.n_users; ++u)
            dep.user_pos[u] = trace.position_at(u, t, initial.user_pos[u]);
        dep.assignment = nearest_destination_assignment(dep.user_pos, dep.dest_pos);
        ChannelState ch = build_channel_state_with_phases(dep, cfg, phase_h, phase_g);
        ValueCache cache(ch, cfg);
        RoundOutcome outcome = run_round(previous, cache, order);
        previous = outcome.partition;
        series.push_back(MobilitySnapshot{t, outcome.partition, outcome.payoffs,
                                          std::move(outcome.trace)});
    }
    return series;
}

/// Convenience form: deployment drawn from the config's seed.
inline std::vector<MobilitySnapshot> run_mobility(const SimConfig& cfg, const MobilityTrace& trace,
                                                  SweepOrder order = SweepOrder::lowest_member()) {
    std::mt19937_64 rng(cfg.rng_seed);
    Deployment dep = random_deployment(cfg, rng);
    return run_mobility(cfg, dep, trace, order);
}

// ---------------------------------------------------------------------------
// Trace file format: `period = <s>`, optional `end_time = <s>`, and repeated
// `waypoint = <user> <t> <x> <y>` lines; # comments.

inline MobilityTrace parse_mobility_trace_stream(std::istream& in) {
    MobilityTrace trace;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("trace line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key == "period") {
            trace.period = detail::parse_number(value, key);
        } else if (key == "end_time") {
            trace.end_time = detail::parse_number(value, key);
        } else if (key == "waypoint") {
            std::istringstream fields(value);
            int user;
            double t, x, y;
            if (!(fields >> user >> t >> x >> y))
                throw config_error("trace line " + std::to_string(lineno) +
                                   ": expected 'waypoint = user t x y'");
            trace.waypoints[user].push_back(Waypoint{t, Point{x, y}});
        } else {
            throw config_error("unknown trace key '" + key + "'");
        }
    }
    return trace;
}

inline MobilityTrace parse_mobility_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open trace file '" + path + "'");
    return parse_mobility_trace_stream(in);
}

}  // namespace coalsec

#endif  // COALSEC_SCENARIO_HPP
