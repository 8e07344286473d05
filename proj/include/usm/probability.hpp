#pragma once

// Stability probability of a matching, the probability-one and non-zero
// decision problems, and a Hoeffding-sized Monte Carlo estimator.

#include "usm/models.hpp"
#include "usm/twosat.hpp"

#include <optional>
#include <vector>

namespace usm {

/// Exact probability through the cheapest applicable route: joint sum,
/// one-side-certain product, then exhaustive enumeration.
Rational stability_probability(const Instance& instance, const Matching& matching, const Limits& limits = {});

/// Sum of the weights of the profiles in which the matching is stable.
Rational stability_probability_joint(const Instance& instance, const Matching& matching);

/// Lottery instance whose men or women all have a single order. Each pair
/// involves exactly one uncertain agent, so the probability is the product of
/// the per-agent probabilities of not blocking.
Rational stability_probability_lottery_one_side_certain(const Instance& instance, const Matching& matching);

/// Compact instance with one side free of ties. An uncertain agent a blocks
/// nobody iff its partner comes first among the k tied candidates that want
/// a, which happens with probability 1/(k+1); a wanting candidate in a better
/// tier makes the probability zero.
Rational stability_probability_compact_one_side_certain(const Instance& instance, const Matching& matching);

/// Exhaustive enumeration of all realizations; capped by limits.realizations.
Rational stability_probability_exact(const Instance& instance, const Matching& matching, const Limits& limits = {});

struct ProbabilityEstimate {
    Rational estimate;
    Rational epsilon;
    Rational delta;
    long long samples = 0;
};

/// ceil(ln(2/delta) / (2 epsilon^2)).
long long hoeffding_samples(const Rational& epsilon, const Rational& delta);

/// Additive estimate within epsilon of the truth with probability at least
/// 1 - delta. epsilon and delta must lie in (0, 1).
ProbabilityEstimate estimate_stability_probability(const Instance& instance, const Matching& matching,
                                                   const Rational& epsilon, const Rational& delta, Rng& rng);

bool is_stability_probability_one(const Instance& instance, const Matching& matching);

struct NonZeroResult {
    bool nonzero = false;
    /// A positive-probability realization in which the matching is stable.
    std::optional<Profile> witness;
};

/// Compact: weak stability. Joint: profile scan. Lottery with at most two
/// orders per agent: 2SAT. Other lotteries: backtracking bounded by
/// limits.search_nodes.
NonZeroResult is_stability_probability_nonzero(const Instance& instance, const Matching& matching,
                                               const Limits& limits = {});

/// 2-CNF whose models are the realizations in which the matching is stable.
/// Variable var_of[agent][i] selects order i of the agent, where agents are
/// numbered men first, then women.
struct NonZeroFormula {
    TwoSatInstance formula;
    std::vector<std::vector<int>> var_of;
};

NonZeroFormula build_nonzero_2sat(const Instance& instance, const Matching& matching);

/// General lottery non-zero check by backtracking (also used for at most two
/// orders per agent when asked explicitly).
NonZeroResult nonzero_by_search(const Instance& instance, const Matching& matching, const Limits& limits = {});

} // namespace usm
