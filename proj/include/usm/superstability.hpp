#pragma once

// Certain stability and super-stable matchings over partially ordered lists.

#include "usm/models.hpp"

#include <optional>
#include <vector>

namespace usm {

/// Stable marriage instance whose agents rank candidates by partial orders.
/// Incomparable candidates count as tied for super-stability.
class SmpInstance {
  public:
    SmpInstance(int n_men, int n_women, std::vector<PartialOrder> men, std::vector<PartialOrder> women,
                std::vector<char> acceptable);

    /// Certainly-preferred relations of every agent of an instance.
    static SmpInstance from_instance(const Instance& instance);

    int n_men() const { return n_men_; }
    int n_women() const { return n_women_; }
    bool acceptable(int m, int w) const { return accept_[static_cast<size_t>(m) * n_women_ + w] != 0; }
    const PartialOrder& order(Side s, int agent) const { return s == Side::Men ? men_[agent] : women_[agent]; }

    /// True iff agent strictly prefers a over b; b may be kUnmatched.
    bool prefers(Side s, int agent, int a, int b) const
    {
        if (a == kUnmatched)
            return false;
        return b == kUnmatched || order(s, agent).before(a, b);
    }

  private:
    int n_men_;
    int n_women_;
    std::vector<PartialOrder> men_;
    std::vector<PartialOrder> women_;
    std::vector<char> accept_;
};

/// (m, w) is acceptable, not matched together, and neither agent strictly
/// prefers its partner (a single agent has nobody to prefer).
bool is_very_weakly_blocking(const SmpInstance& smp, const Matching& matching, int m, int w);
bool is_super_stable(const SmpInstance& smp, const Matching& matching);

/// A super-stable matching, or nothing if none exists.
///
/// Proposal-and-deletion from both sides: whenever no remaining partner of an
/// agent beats candidate c, the agent cannot do better than c, so c keeps only
/// the agent and partners c strictly prefers to it. This also applies to pairs
/// already deleted, which still have to be non-blocking. At the fixpoint every
/// man's maximal remaining woman gives the only candidate, which is verified.
std::optional<Matching> super_stable_matching(const SmpInstance& smp);

/// Very weak blocking with respect to the certainly-preferred relations.
/// Rejects joint instances and pairs that are matched together.
bool is_very_weakly_blocking(const Instance& instance, const Matching& matching, Pair pair);

/// Stable in every realization with positive probability.
bool is_certainly_stable(const Instance& instance, const Matching& matching);

/// A certainly stable matching if one exists. Independent models reduce to a
/// super-stable matching of the certainly-preferred relations; joint
/// instances intersect the stable sets of their profiles.
std::optional<Matching> exists_certainly_stable_matching(const Instance& instance, const Limits& limits = {});

} // namespace usm
