/// \file channel.hpp
/// Node deployments and the line-of-sight channel tables derived from them.
///
/// A complex gain between two nodes at distance d is d^(-mu/2) * e^(j*phi),
/// with the phase offset phi drawn once per link. All tables are built up
/// front and treated as immutable; every downstream computation reads them.

#ifndef COALSEC_CHANNEL_HPP
#define COALSEC_CHANNEL_HPP

#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "coalsec/config.hpp"
#include "coalsec/geometry.hpp"

namespace coalsec {

using Complex = std::complex<double>;

/// Node positions plus the user -> destination assignment.
struct Deployment {
    std::vector<Point> user_pos;
    std::vector<Point> dest_pos;
    std::vector<Point> eve_pos;
    std::vector<int> assignment;  ///< destination index per user

    int n_users() const { return static_cast<int>(user_pos.size()); }
    int n_destinations() const { return static_cast<int>(dest_pos.size()); }
    int n_eavesdroppers() const { return static_cast<int>(eve_pos.size()); }
};

/// Assigns every user to its nearest destination, ties broken by lowest index.
inline std::vector<int> nearest_destination_assignment(const std::vector<Point>& users,
                                                       const std::vector<Point>& dests) {
    std::vector<int> assignment(users.size(), 0);
    for (std::size_t i = 0; i < users.size(); ++i) {
        double best = distance(users[i], dests[0]);
        for (std::size_t m = 1; m < dests.size(); ++m) {
            double d = distance(users[i], dests[m]);
            if (d < best) {
                best = d;
                assignment[i] = static_cast<int>(m);
            }
        }
    }
    return assignment;
}

/// Line-of-sight channel gain between two nodes: magnitude d^(-mu/2),
/// rotated by the phase offset phi. Coincident nodes are an error.
inline Complex channel_gain(const Point& a, const Point& b, double pathloss_exp, double phase) {
    double d = distance(a, b);
    if (d == 0.0) throw std::invalid_argument("channel_gain: coincident nodes");
    double magnitude = std::pow(d, -pathloss_exp / 2.0);
    return Complex(magnitude * std::cos(phase), magnitude * std::sin(phase));
}

/// Largest user-to-user distance at which the information-exchange power
/// still fits the slot budget: the power cost reaches slot_power exactly at
/// this distance, so cooperation candidates must lie strictly inside it.
inline double max_exchange_distance(const SimConfig& cfg) {
    cfg.validate();
    return std::pow(cfg.slot_power / (cfg.exchange_snr * cfg.noise_power), 1.0 / cfg.pathloss_exp);
}

/// All channel quantities of one drop, tabulated once.
struct ChannelState {
    Eigen::MatrixXcd h;        ///< user x destination complex gains
    Eigen::MatrixXcd g;        ///< user x eavesdropper complex gains
    Eigen::MatrixXd q;         ///< user x user path gain 1/d^mu (diagonal: +inf, never read)
    Eigen::MatrixXd user_dist; ///< user x user distances (diagonal 0)
    Eigen::MatrixXd phase_h;   ///< drawn phase offsets, user x destination
    Eigen::MatrixXd phase_g;   ///< drawn phase offsets, user x eavesdropper
    std::vector<int> assignment;

    int n_users() const { return static_cast<int>(h.rows()); }
    int n_destinations() const { return static_cast<int>(h.cols()); }
    int n_eavesdroppers() const { return static_cast<int>(g.cols()); }
};

/// Tabulates the channel state for given positions while reusing existing
/// phase offsets. Lets mobility rebuild magnitudes from new distances without
/// re-rolling the phases.
inline ChannelState build_channel_state_with_phases(const Deployment& dep, const SimConfig& cfg,
                                                    const Eigen::MatrixXd& phase_h,
                                                    const Eigen::MatrixXd& phase_g) {
    cfg.validate();
    const int n = dep.n_users();
    const int m = dep.n_destinations();
    const int k = dep.n_eavesdroppers();
    if (static_cast<int>(dep.assignment.size()) != n)
        throw std::invalid_argument("build_channel_state: assignment size mismatch");
    if (phase_h.rows() != n || phase_h.cols() != m || phase_g.rows() != n || phase_g.cols() != k)
        throw std::invalid_argument("build_channel_state: phase table shape mismatch");

    ChannelState ch;
    ch.phase_h = phase_h;
    ch.phase_g = phase_g;
    ch.assignment = dep.assignment;
    ch.h.resize(n, m);
    ch.g.resize(n, k);
    ch.q.resize(n, n);
    ch.user_dist.resize(n, n);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            if (dep.user_pos[i] == dep.dest_pos[j])
                throw std::invalid_argument("build_channel_state: coincident user/destination");
            ch.h(i, j) = channel_gain(dep.user_pos[i], dep.dest_pos[j], cfg.pathloss_exp, phase_h(i, j));
        }
        for (int j = 0; j < k; ++j) {
            if (dep.user_pos[i] == dep.eve_pos[j])
                throw std::invalid_argument("build_channel_state: coincident user/eavesdropper");
            ch.g(i, j) = channel_gain(dep.user_pos[i], dep.eve_pos[j], cfg.pathloss_exp, phase_g(i, j));
        }
    }
    for (int i = 0; i < n; ++i) {
        ch.q(i, i) = std::numeric_limits<double>::infinity();
        ch.user_dist(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            double d = distance(dep.user_pos[i], dep.user_pos[j]);
            if (d == 0.0) throw std::invalid_argument("build_channel_state: coincident users");
            ch.user_dist(i, j) = ch.user_dist(j, i) = d;
            ch.q(i, j) = ch.q(j, i) = std::pow(d, -cfg.pathloss_exp);
        }
    }
    return ch;
}

/// Draws fresh phase offsets (uniform on [0, 2pi), user-destination links
/// first, then user-eavesdropper links) and tabulates the channel state.
/// Deterministic given the generator state.
inline ChannelState build_channel_state(const Deployment& dep, const SimConfig& cfg,
                                        std::mt19937_64& rng) {
    const int n = dep.n_users();
    const int m = dep.n_destinations();
    const int k = dep.n_eavesdroppers();
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * M_PI);
    Eigen::MatrixXd phase_h(n, m), phase_g(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) phase_h(i, j) = phase_dist(rng);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) phase_g(i, j) = phase_dist(rng);
    return build_channel_state_with_phases(dep, cfg, phase_h, phase_g);
}

}  // namespace coalsec

#endif  // COALSEC_CHANNEL_HPP
