/// \file secrecy.hpp
/// Per-coalition physics: secrecy capacities, information-exchange costs,
/// and the nulling beamformer.
///
/// The cooperative protocol for the slot owned by user i splits the slot in
/// two: first i broadcasts its data to its farthest coalition partner, then
/// the whole coalition relays a weighted copy toward i's destination. The
/// weights steer an exact null at every eavesdropper while maximizing the
/// destination SNR under the remaining power budget; both halves of the slot
/// carry the 1/2 rate factor.

#ifndef COALSEC_SECRECY_HPP
#define COALSEC_SECRECY_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "coalsec/channel.hpp"
#include "coalsec/coalition.hpp"
#include "coalsec/config.hpp"

namespace coalsec {

/// Sentinel payoff for members that cannot take part in the cooperative slot
/// (no power left after information exchange, or a singular channel
/// geometry). Compares below every finite payoff; never used in arithmetic.
inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Nulling beamformer for one cooperative slot.
struct BeamformingSolution {
    Eigen::VectorXcd weights;  ///< one weight per coalition member, member order
    double beta = 0.0;         ///< destination amplitude; beta^2 is the received signal power
    double data_power = 0.0;   ///< transmit budget left after information exchange
    bool feasible = false;
};

/// Per-member value breakdown of one coalition.
struct MemberValue {
    double payoff = 0.0;      ///< realized rate, bits/s/Hz, or kNegInfinity
    double gain = 0.0;        ///< secrecy capacity achieved during the member's slot
    double cost = 0.0;        ///< secrecy leaked while broadcasting to partners
    double data_power = 0.0;  ///< watts available for the beamformed transmission
    bool feasible = true;
};

/// Payoffs of one coalition, indexed by member id.
struct PayoffVector {
    std::vector<UserId> members;      ///< sorted
    std::vector<MemberValue> values;  ///< aligned with members

    const MemberValue& value_of(UserId u) const {
        auto it = std::lower_bound(members.begin(), members.end(), u);
        if (it == members.end() || *it != u)
            throw std::invalid_argument("PayoffVector: user not a member");
        return values[static_cast<std::size_t>(it - members.begin())];
    }
    double payoff_of(UserId u) const { return value_of(u).payoff; }
};

/// Secrecy capacity of user i transmitting alone: full slot, full budget.
/// Shannon rate to the assigned destination minus the strongest
/// eavesdropper's rate, clamped at zero.
inline double noncoop_secrecy_capacity(UserId i, const ChannelState& ch, const SimConfig& cfg) {
    const double snr_scale = cfg.slot_power / cfg.noise_power;
    const int m = ch.assignment[i];
    double cap_dest = std::log2(1.0 + snr_scale * std::norm(ch.h(i, m)));
    double cap_eve = 0.0;
    for (int k = 0; k < ch.n_eavesdroppers(); ++k)
        cap_eve = std::max(cap_eve, std::log2(1.0 + snr_scale * std::norm(ch.g(i, k))));
    return positive_part(cap_dest - cap_eve);
}

/// Index of the member of S farthest from i (meaningless for singletons).
inline UserId farthest_member(UserId i, const Coalition& S, const ChannelState& ch) {
    UserId best = i;
    double best_d = -1.0;
    for (UserId j : S.members()) {
        if (j == i) continue;
        double d = ch.user_dist(i, j);
        if (d > best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

/// Power user i spends broadcasting its data to its farthest partner in S at
/// the target exchange SNR. Zero for singletons (nothing to broadcast).
inline double exchange_power(UserId i, const Coalition& S, const ChannelState& ch,
                             const SimConfig& cfg) {
    if (!S.contains(i)) throw std::invalid_argument("exchange_power: user not in coalition");
    if (S.size() == 1) return 0.0;
    UserId far = farthest_member(i, S, ch);
    return cfg.exchange_snr * cfg.noise_power * std::pow(ch.user_dist(i, far), cfg.pathloss_exp);
}

/// Budget left for the beamformed data transmission in i's slot.
inline double remaining_power(UserId i, const Coalition& S, const ChannelState& ch,
                              const SimConfig& cfg) {
    return positive_part(cfg.slot_power - exchange_power(i, S, ch, cfg));
}

namespace detail {

/// Channel matrix of coalition S during user i's slot: row 0 holds each
/// member's gain to i's destination, row 1+k each member's gain to
/// eavesdropper k.
inline Eigen::MatrixXcd slot_channel_matrix(UserId i, const Coalition& S, const ChannelState& ch) {
    const int n = S.size();
    const int k = ch.n_eavesdroppers();
    const int m = ch.assignment[i];
    Eigen::MatrixXcd G(k + 1, n);
    for (int col = 0; col < n; ++col) {
        UserId j = S.members()[static_cast<std::size_t>(col)];
        G(0, col) = ch.h(j, m);
        for (int r = 0; r < k; ++r) G(r + 1, col) = ch.g(j, r);
    }
    return G;
}

}  // namespace detail

/// Weight vector for coalition S relaying user i's data: the minimum-norm
/// direction that nulls every eavesdropper and reaches i's destination,
/// scaled so the transmit power equals the remaining slot budget. The rows
/// of the constraint system are normalized before forming the Gram matrix so
/// that feasibility reflects the geometry of the channels, not their
/// magnitude spread; the resulting weights are algebraically identical.
inline BeamformingSolution beamforming_weights(UserId i, const Coalition& S,
                                               const ChannelState& ch, const SimConfig& cfg) {
    const int k = ch.n_eavesdroppers();
    if (S.size() <= k)
        throw std::invalid_argument("beamforming_weights: coalition too small to null K eavesdroppers");

    BeamformingSolution sol;
    sol.data_power = remaining_power(i, S, ch, cfg);
    sol.weights = Eigen::VectorXcd::Zero(S.size());
    if (sol.data_power <= 0.0) return sol;  // infeasible: budget exhausted by exchange

    Eigen::MatrixXcd G = detail::slot_channel_matrix(i, S, ch);
    Eigen::VectorXd row_norms = G.rowwise().norm();
    for (int r = 0; r < G.rows(); ++r) {
        if (!(row_norms(r) > 0.0)) return sol;  // degenerate zero channel row
        G.row(r) /= row_norms(r);
    }

    Eigen::MatrixXcd gram = G * G.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    if (eig.info() != Eigen::Success) return sol;
    const auto& lambda = eig.eigenvalues();
    double lambda_min = lambda(0);
    double lambda_max = lambda(lambda.size() - 1);
    if (!(lambda_min > 0.0) || lambda_max / lambda_min > cfg.singular_threshold) return sol;

    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(k + 1);
    e(0) = 1.0;
    Eigen::VectorXcd x = eig.eigenvectors() *
                         (lambda.cwiseInverse().asDiagonal() * (eig.eigenvectors().adjoint() * e));
    Eigen::VectorXcd direction = G.adjoint() * x;
    double dir_norm = direction.norm();
    if (!(dir_norm > 0.0) || !std::isfinite(dir_norm)) return sol;

    sol.weights = std::sqrt(sol.data_power) / dir_norm * direction;
    // Amplitude at the destination: the original (unnormalized) first row
    // applied to the weights; real and positive by construction.
    sol.beta = std::sqrt(sol.data_power) * row_norms(0) / dir_norm;
    sol.feasible = true;
    return sol;
}

/// Signal power delivered to i's destination by weight vector w, evaluated
/// as the quadratic form of the destination's rank-one covariance.
inline double beamformed_destination_power(UserId i, const Coalition& S, const ChannelState& ch,
                                           const Eigen::VectorXcd& w) {
    Eigen::MatrixXcd G = detail::slot_channel_matrix(i, S, ch);
    Eigen::VectorXcd h_stack = G.row(0).adjoint();
    Eigen::MatrixXcd cov = h_stack * h_stack.adjoint();
    return (w.adjoint() * cov * w)(0, 0).real();
}

/// Secrecy capacity of user i's slot under cooperative relaying by S; the
/// eavesdroppers are nulled exactly, so only the destination SNR remains.
/// Half the slot is spent on information exchange, hence the 1/2 factor.
/// Empty when the beamformer is infeasible.
inline std::optional<double> coop_secrecy_capacity(UserId i, const Coalition& S,
                                                   const ChannelState& ch, const SimConfig& cfg) {
    BeamformingSolution sol = beamforming_weights(i, S, ch, cfg);
    if (!sol.feasible) return std::nullopt;
    double received = beamformed_destination_power(i, S, ch, sol.weights);
    return 0.5 * std::log2(1.0 + received / cfg.noise_power);
}

/// Secrecy lost while user i broadcasts its data to its farthest partner:
/// the strongest eavesdropper's rate during that broadcast. Zero for
/// singletons.
inline double exchange_leakage_cost(UserId i, const Coalition& S, const ChannelState& ch,
                                    const SimConfig& cfg) {
    if (!S.contains(i)) throw std::invalid_argument("exchange_leakage_cost: user not in coalition");
    if (S.size() == 1) return 0.0;
    double broadcast_power = exchange_power(i, S, ch, cfg);
    double worst = 0.0;
    for (int k = 0; k < ch.n_eavesdroppers(); ++k) {
        double rate = 0.5 * std::log2(1.0 + broadcast_power * std::norm(ch.g(i, k)) / cfg.noise_power);
        worst = std::max(worst, rate);
    }
    return worst;
}

/// Value of coalition S: one payoff per member. Singletons earn the
/// non-cooperative capacity; larger coalitions must exceed the eavesdropper
/// count, and each member's slot pays the exchange costs. Members whose
/// budget is exhausted, or whose slot has a singular channel geometry, get
/// the sentinel payoff.
inline PayoffVector coalition_value(const Coalition& S, const ChannelState& ch,
                                    const SimConfig& cfg) {
    const int k = ch.n_eavesdroppers();
    PayoffVector pv;
    pv.members = S.members();
    pv.values.resize(pv.members.size());

    if (S.size() == 1) {
        MemberValue& v = pv.values[0];
        v.gain = noncoop_secrecy_capacity(pv.members[0], ch, cfg);
        v.cost = 0.0;
        v.data_power = cfg.slot_power;
        v.payoff = v.gain;
        return pv;
    }
    if (S.size() <= k) throw std::invalid_argument("coalition_value: size violates Remark 1");

    for (std::size_t idx = 0; idx < pv.members.size(); ++idx) {
        UserId i = pv.members[idx];
        MemberValue& v = pv.values[idx];
        BeamformingSolution sol = beamforming_weights(i, S, ch, cfg);
        v.data_power = sol.data_power;
        if (!sol.feasible) {
            v.feasible = false;
            v.payoff = kNegInfinity;
            continue;
        }
        double received = beamformed_destination_power(i, S, ch, sol.weights);
        v.gain = 0.5 * std::log2(1.0 + received / cfg.noise_power);
        v.cost = exchange_leakage_cost(i, S, ch, cfg);
        v.payoff = positive_part(v.gain - v.cost);
    }
    return pv;
}

/// The value mapping yields exactly one payoff vector per coalition; this
/// evaluates it and reports that the set is a singleton. Exists as an
/// executable assertion of the game's non-transferable-utility form.
inline bool is_singleton_value_set(const Coalition& S, const ChannelState& ch,
                                   const SimConfig& cfg) {
    PayoffVector pv = coalition_value(S, ch, cfg);
    return pv.members.size() == pv.values.size();
}

}  // namespace coalsec

#endif  // COALSEC_SECRECY_HPP
