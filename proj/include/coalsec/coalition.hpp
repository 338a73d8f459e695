/// \file coalition.hpp
/// Coalitions, partitions, and collections of users.

#ifndef COALSEC_COALITION_HPP
#define COALSEC_COALITION_HPP

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace coalsec {

using UserId = int;

/// A non-empty set of user ids, kept sorted and duplicate-free.
class Coalition {
public:
    Coalition() = default;
    explicit Coalition(std::vector<UserId> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
        if (members_.empty()) throw std::invalid_argument("Coalition: empty member set");
    }
    Coalition(std::initializer_list<UserId> members)
        : Coalition(std::vector<UserId>(members)) {}

    const std::vector<UserId>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    UserId lowest() const { return members_.front(); }
    bool contains(UserId u) const {
        return std::binary_search(members_.begin(), members_.end(), u);
    }

    friend bool operator==(const Coalition& a, const Coalition& b) {
        return a.members_ == b.members_;
    }
    friend bool operator<(const Coalition& a, const Coalition& b) {
        return a.members_ < b.members_;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i) os << ',';
            os << members_[i];
        }
        os << '}';
        return os.str();
    }

private:
    std::vector<UserId> members_;
};

inline Coalition merge_coalitions(const std::vector<Coalition>& parts) {
    std::vector<UserId> all;
    for (const auto& c : parts) all.insert(all.end(), c.members().begin(), c.members().end());
    return Coalition(std::move(all));
}

/// Disjoint coalitions over a stated player subset (not necessarily all users).
using Collection = std::vector<Coalition>;

inline std::vector<UserId> players_of(const Collection& c) {
    std::vector<UserId> all;
    for (const auto& s : c) all.insert(all.end(), s.members().begin(), s.members().end());
    std::sort(all.begin(), all.end());
    return all;
}

/// Disjoint coalitions covering all users 0..n-1, kept sorted by lowest member.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<Coalition> coalitions) : coalitions_(std::move(coalitions)) {
        canonicalize();
    }

    static Partition singletons(int n_users) {
        std::vector<Coalition> cs;
        cs.reserve(n_users);
        for (UserId u = 0; u < n_users; ++u) cs.push_back(Coalition{u});
        return Partition(std::move(cs));
    }

    const std::vector<Coalition>& coalitions() const { return coalitions_; }
    int size() const { return static_cast<int>(coalitions_.size()); }

    int n_players() const {
        int n = 0;
        for (const auto& c : coalitions_) n += c.size();
        return n;
    }

    const Coalition& coalition_of(UserId u) const {
        for (const auto& c : coalitions_)
            if (c.contains(u)) return c;
        throw std::invalid_argument("Partition: user not covered");
    }

    bool contains(const Coalition& c) const {
        return std::find(coalitions_.begin(), coalitions_.end(), c) != coalitions_.end();
    }

    /// Replaces the given coalitions by their replacements; throws if any of
    /// `out` is absent. Result is re-canonicalized.
    void replace(const std::vector<Coalition>& out, const std::vector<Coalition>& in) {
        for (const auto& c : out) {
            auto it = std::find(coalitions_.begin(), coalitions_.end(), c);
            if (it == coalitions_.end())
                throw std::invalid_argument("Partition::replace: coalition not present");
            coalitions_.erase(it);
        }
        coalitions_.insert(coalitions_.end(), in.begin(), in.end());
        canonicalize();
    }

    /// Checks disjointness and coverage of users 0..n_users-1.
    void validate(int n_users) const {
        std::vector<char> seen(n_users, 0);
        for (const auto& c : coalitions_) {
            for (UserId u : c.members()) {
                if (u < 0 || u >= n_users)
                    throw std::invalid_argument("Partition: user id out of range");
                if (seen[u]) throw std::invalid_argument("Partition: coalitions not disjoint");
                seen[u] = 1;
            }
        }
        if (std::accumulate(seen.begin(), seen.end(), 0) != n_users)
            throw std::invalid_argument("Partition: does not span all users");
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.coalitions_ == b.coalitions_;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& c : coalitions_) s += c.to_string();
        return s;
    }

private:
    void canonicalize() {
        std::sort(coalitions_.begin(), coalitions_.end(),
                  [](const Coalition& a, const Coalition& b) { return a.lowest() < b.lowest(); });
    }

    std::vector<Coalition> coalitions_;
};

}  // namespace coalsec

#endif  // COALSEC_COALITION_HPP
