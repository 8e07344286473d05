#pragma once

// The three preference-uncertainty models and the operations shared by the
// algorithmic modules: certainly-preferred relations, model conversions,
// profile sampling and the incomplete-to-complete list transformation.

#include "usm/core.hpp"
#include "usm/errors.hpp"
#include "usm/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace usm {

struct WeightedOrder {
    LinearOrder order;
    Rational weight;

    friend bool operator==(const WeightedOrder&, const WeightedOrder&) = default;
};

/// Distribution over strict lists for one agent.
using Lottery = std::vector<WeightedOrder>;

struct LotteryModel {
    std::vector<Lottery> men;
    std::vector<Lottery> women;
};

struct CompactModel {
    std::vector<WeakOrder> men;
    std::vector<WeakOrder> women;
};

struct WeightedProfile {
    Profile profile;
    Rational weight;
};

struct JointModel {
    std::vector<WeightedProfile> profiles;
};

enum class ModelKind { Lottery, Compact, Joint };

std::string to_string(ModelKind kind);

/// A stable-marriage instance with uncertain preferences.
///
/// The factories validate and normalize the payload: zero-weight entries are
/// dropped, duplicate orders (lottery) or profiles (joint) are merged by
/// summing weights, weights must be positive and sum to exactly one, and
/// acceptability is made mutual. Acceptability is a property of the instance,
/// identical in every realization.
class Instance {
  public:
    static Instance lottery(int n_men, int n_women, LotteryModel model);
    static Instance compact(int n_men, int n_women, CompactModel model);
    static Instance joint(int n_men, int n_women, JointModel model);

    int n_men() const { return n_men_; }
    int n_women() const { return n_women_; }
    int size(Side s) const { return s == Side::Men ? n_men_ : n_women_; }

    ModelKind kind() const;
    bool independent() const { return kind() != ModelKind::Joint; }

    const LotteryModel& lottery() const;
    const WeakProfile& compact() const;
    const JointModel& joint() const;

    bool acceptable(int man, int woman) const { return accept_[static_cast<size_t>(man) * n_women_ + woman] != 0; }
    /// Acceptable candidates of an agent in ascending index order.
    std::vector<int> acceptable_list(Side s, int agent) const;
    bool is_complete() const;

    const std::vector<std::string>& names(Side s) const { return s == Side::Men ? men_names_ : women_names_; }
    const std::string& name(Side s, int agent) const { return names(s)[static_cast<size_t>(agent)]; }
    /// Replaces agent names; they must be unique across both sides.
    void set_names(std::vector<std::string> men, std::vector<std::string> women);

  private:
    Instance() = default;
    void finish();

    int n_men_ = 0;
    int n_women_ = 0;
    std::variant<LotteryModel, WeakProfile, JointModel> model_;
    std::vector<char> accept_;
    std::vector<std::string> men_names_;
    std::vector<std::string> women_names_;
};

/// Throws InvalidInput unless the matching fits the instance and pairs only
/// mutually acceptable agents.
void check_matching(const Instance& instance, const Matching& matching);

/// Strict relation over an agent's candidates: before(b, c) means b is
/// ranked above c. Construction checks irreflexivity, antisymmetry and
/// transitivity.
class PartialOrder {
  public:
    PartialOrder() = default;
    PartialOrder(AgentId owner, int n_candidates, const std::vector<std::pair<int, int>>& strictly_before);

    AgentId owner() const { return owner_; }
    int n_candidates() const { return n_; }
    bool before(int b, int c) const { return rel_[static_cast<size_t>(b) * n_ + c] != 0; }
    std::vector<std::pair<int, int>> pairs() const;
    /// True iff the relation is a total order on `candidates`.
    bool is_total_on(const std::vector<int>& candidates) const;

    friend bool operator==(const PartialOrder& a, const PartialOrder& b) { return a.n_ == b.n_ && a.rel_ == b.rel_; }

  private:
    AgentId owner_;
    int n_ = 0;
    std::vector<char> rel_;
};

/// b is certainly preferred over c iff every realization with positive
/// probability ranks b above c.
PartialOrder certainly_preferred(const Instance& instance, AgentId agent);

/// The candidate together with every candidate certainly preferred over it.
std::vector<int> dominance_set(const Instance& instance, AgentId agent, int candidate);

/// An agent is certain iff its certainly-preferred relation totally orders its
/// acceptable candidates. For the joint model this is an interpretation: the
/// agent's order is the same in every profile.
bool is_certain(const Instance& instance, AgentId agent);
/// The agent's single possible order, if it is certain.
std::optional<LinearOrder> certain_order(const Instance& instance, AgentId agent);
/// Every agent on `side` is certain.
bool side_certain(const Instance& instance, Side side);

/// Uniform lottery over all linear extensions of each weak order.
LotteryModel expand_compact_to_lottery(const WeakProfile& compact, const Limits& limits = {});
Instance expand_compact_to_lottery(const Instance& instance, const Limits& limits = {});

/// Product distribution over whole profiles.
Instance lottery_to_joint(const Instance& instance, const Limits& limits = {});

/// The possible orders of one agent of an independent model with their
/// probabilities (compact weak orders are expanded).
Lottery agent_support(const Instance& instance, AgentId agent, const Limits& limits = {});

/// Number of realizations an exhaustive enumeration visits, saturating at
/// `cap + 1`.
long long realization_count(const Instance& instance, long long cap);

/// Deterministic 64-bit generator with portable helper distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform double in [0, 1) from 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

  private:
    std::mt19937_64 engine_;
};

/// Draws one realization: independent per-agent draws (lottery), independent
/// uniform tie-breaking (compact), or one profile by weight (joint).
Profile sample_profile(const Instance& instance, Rng& rng);

/// Bookkeeping of the complete-list transformation.
struct Padding {
    int original_men = 0;
    int original_women = 0;
    int size = 0;
    /// Acceptability in the original instance, original_men x original_women.
    std::vector<char> acceptable;

    bool original_acceptable(int m, int w) const
    {
        return m < original_men && w < original_women &&
               acceptable[static_cast<size_t>(m) * original_women + w] != 0;
    }
    bool trivial() const;
};

struct CompletedInstance {
    Instance instance;
    Padding padding;
};

/// Pads the short side with new agents and appends every previously
/// unacceptable candidate, in ascending index order, to the tail of every
/// order of every realization. Stability probabilities carry over through
/// lift_matching.
CompletedInstance complete_instance(const Instance& instance);

/// Extends a matching of the original instance: agents left single are paired
/// in mutually increasing index order. If two single agents find each other
/// acceptable the matching is unstable in every realization; it is then
/// embedded unchanged, which keeps its probability at zero.
Matching lift_matching(const Matching& matching, const Padding& padding);
/// Drops every pair that was not acceptable in the original instance.
Matching restrict_matching(const Matching& matching, const Padding& padding);

/// Exchanges the roles of men and women.
Instance swap_sides(const Instance& instance);
Matching swap_sides(const Matching& matching);

} // namespace usm
