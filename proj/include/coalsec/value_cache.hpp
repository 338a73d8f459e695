/// \file value_cache.hpp

#ifndef COALSEC_VALUE_CACHE_HPP
#define COALSEC_VALUE_CACHE_HPP

#include <map>
#include <vector>

#include "coalsec/secrecy.hpp"

namespace coalsec {

/// Memoizing view of coalition_value over one fixed channel state. The
/// formation engine and the stability checkers evaluate the same coalitions
/// many times; values depend only on the member set, so they are computed
/// once. Single-threaded use per instance.
class ValueCache {
public:
    ValueCache(const ChannelState& ch, const SimConfig& cfg) : ch_(ch), cfg_(cfg) {}

    const PayoffVector& value(const Coalition& S) {
        auto it = cache_.find(S.members());
        if (it != cache_.end()) return it->second;
        auto [ins, ok] = cache_.emplace(S.members(), coalition_value(S, ch_, cfg_));
        return ins->second;
    }

    double payoff(UserId u, const Coalition& S) { return value(S).payoff_of(u); }

    const ChannelState& channel() const { return ch_; }
    const SimConfig& config() const { return cfg_; }
    std::size_t evaluations() const { return cache_.size(); }

private:
    const ChannelState& ch_;
    const SimConfig& cfg_;
    std::map<std::vector<UserId>, PayoffVector> cache_;
};

}  // namespace coalsec

#endif  // COALSEC_VALUE_CACHE_HPP
