#pragma once

// Deterministic stable-marriage primitives. Agents are identified by their
// index within their side; every order lists candidate indices of the
// opposite side, best first.

#include "usm/errors.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace usm {

enum class Side { Men, Women };

constexpr Side other(Side s) { return s == Side::Men ? Side::Women : Side::Men; }

std::string to_string(Side s);

struct AgentId {
    Side side = Side::Men;
    int index = 0;

    friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

/// Strict preference list, best first. May omit candidates (incomplete list).
using LinearOrder = std::vector<int>;

/// Preference list with ties: each tier is a set of equally ranked candidates.
using WeakOrder = std::vector<std::vector<int>>;

constexpr int kUnmatched = -1;
constexpr int kUnranked = 1 << 28;

/// One realization of every agent's strict preferences.
///
/// Construction validates the orders and enforces mutual acceptability: if w
/// is absent from m's list then m is dropped from w's list, and vice versa.
class Profile {
  public:
    Profile() = default;
    Profile(std::vector<LinearOrder> men, std::vector<LinearOrder> women);

    int n_men() const { return static_cast<int>(men_.size()); }
    int n_women() const { return static_cast<int>(women_.size()); }
    int size(Side s) const { return s == Side::Men ? n_men() : n_women(); }

    const LinearOrder& order(Side s, int agent) const { return s == Side::Men ? men_[agent] : women_[agent]; }
    const std::vector<LinearOrder>& orders(Side s) const { return s == Side::Men ? men_ : women_; }

    /// Position of `candidate` in the agent's list, or kUnranked.
    int rank(Side s, int agent, int candidate) const
    {
        const auto& table = s == Side::Men ? men_rank_ : women_rank_;
        return table[static_cast<size_t>(agent) * static_cast<size_t>(size(other(s))) + candidate];
    }

    bool acceptable(int man, int woman) const { return rank(Side::Men, man, woman) != kUnranked; }

    /// True iff `a` is strictly better than `b` for the agent. `b` may be
    /// kUnmatched, which ranks below every acceptable candidate; an
    /// unmatched `a` is never preferred.
    bool prefers(Side s, int agent, int a, int b) const
    {
        if (a == kUnmatched)
            return false;
        int ra = rank(s, agent, a);
        if (ra == kUnranked)
            return false;
        return b == kUnmatched || ra < rank(s, agent, b);
    }

    bool is_complete() const;

    friend bool operator==(const Profile& a, const Profile& b) { return a.men_ == b.men_ && a.women_ == b.women_; }

  private:
    std::vector<LinearOrder> men_;
    std::vector<LinearOrder> women_;
    std::vector<int> men_rank_;
    std::vector<int> women_rank_;
};

/// Injective partial pairing of men and women.
class Matching {
  public:
    Matching() = default;
    Matching(int n_men, int n_women);

    /// Throws InvalidInput on out-of-range agents or agents used twice.
    static Matching from_pairs(int n_men, int n_women, const std::vector<std::pair<int, int>>& pairs);

    int n_men() const { return static_cast<int>(man_.size()); }
    int n_women() const { return static_cast<int>(woman_.size()); }

    int partner_of_man(int m) const { return man_[m]; }
    int partner_of_woman(int w) const { return woman_[w]; }
    int partner(Side s, int agent) const { return s == Side::Men ? man_[agent] : woman_[agent]; }

    /// Pairs m with w, dissolving any previous pairs of either.
    void match(int m, int w);
    void unmatch_man(int m);

    /// Pairs sorted by man index.
    std::vector<std::pair<int, int>> pairs() const;
    int size() const;
    bool is_perfect() const;

    friend bool operator==(const Matching&, const Matching&) = default;
    /// Lexicographic on the men's partner sequence.
    friend auto operator<=>(const Matching& a, const Matching& b) { return a.man_ <=> b.man_; }

  private:
    std::vector<int> man_;
    std::vector<int> woman_;
};

/// Strict pair (man, woman).
using Pair = std::pair<int, int>;

/// Validates that the matching fits the profile and pairs only mutually
/// acceptable agents. Throws InvalidInput otherwise.
void check_matching(const Profile& profile, const Matching& matching);

bool is_stable(const Profile& profile, const Matching& matching);
std::vector<Pair> blocking_pairs(const Profile& profile, const Matching& matching);

/// Deferred acceptance with `proposing` as the proposing side.
Matching gale_shapley(const Profile& profile, Side proposing);

/// All stable matchings in ascending lexicographic order. Small instances are
/// enumerated by brute force, larger ones by rotation elimination starting
/// from the man-optimal matching.
std::vector<Matching> enumerate_stable_matchings(const Profile& profile, const Limits& limits = {});

/// Same result by filtering every matching over acceptable pairs.
std::vector<Matching> enumerate_stable_matchings_brute_force(const Profile& profile, const Limits& limits = {});
/// Same result by rotation elimination.
std::vector<Matching> enumerate_stable_matchings_rotations(const Profile& profile, const Limits& limits = {});

/// Weak preferences of every agent. Mutual acceptability enforced as in Profile.
class WeakProfile {
  public:
    WeakProfile() = default;
    WeakProfile(std::vector<WeakOrder> men, std::vector<WeakOrder> women);

    int n_men() const { return static_cast<int>(men_.size()); }
    int n_women() const { return static_cast<int>(women_.size()); }
    int size(Side s) const { return s == Side::Men ? n_men() : n_women(); }

    const WeakOrder& order(Side s, int agent) const { return s == Side::Men ? men_[agent] : women_[agent]; }
    const std::vector<WeakOrder>& orders(Side s) const { return s == Side::Men ? men_ : women_; }

    /// Tier index of `candidate`, or kUnranked.
    int tier(Side s, int agent, int candidate) const
    {
        const auto& table = s == Side::Men ? men_tier_ : women_tier_;
        return table[static_cast<size_t>(agent) * static_cast<size_t>(size(other(s))) + candidate];
    }

    bool acceptable(int man, int woman) const { return tier(Side::Men, man, woman) != kUnranked; }

    /// Strictly better tier; `b` may be kUnmatched.
    bool prefers(Side s, int agent, int a, int b) const
    {
        if (a == kUnmatched)
            return false;
        int ta = tier(s, agent, a);
        if (ta == kUnranked)
            return false;
        return b == kUnmatched || ta < tier(s, agent, b);
    }

    friend bool operator==(const WeakProfile& a, const WeakProfile& b)
    {
        return a.men_ == b.men_ && a.women_ == b.women_;
    }

  private:
    std::vector<WeakOrder> men_;
    std::vector<WeakOrder> women_;
    std::vector<int> men_tier_;
    std::vector<int> women_tier_;
};

void check_matching(const WeakProfile& profile, const Matching& matching);

/// No unmatched acceptable pair strictly prefers each other.
bool is_weakly_stable(const WeakProfile& profile, const Matching& matching);

} // namespace usm
