#pragma once

// Matchings with the highest stability probability.

#include "usm/models.hpp"

namespace usm {

struct MostStableResult {
    Matching matching;
    Rational probability;
    /// Candidate matchings whose probability was computed.
    long long examined = 0;
    /// Every partial matching of the uncertain agents was ruled out; the
    /// returned matching then has probability zero.
    bool all_excluded = false;
};

/// Polynomial search for instances whose uncertain agents all sit on
/// `uncertain_side` while the other side is certain. Every injective
/// assignment of the uncertain agents is extended by the woman-optimal stable
/// matching of the remaining agents after pruning, and the best extension is
/// kept (first found wins ties). Throws PreconditionViolation if the other
/// side has uncertain agents and ResourceLimit above limits.uncertain_agents.
MostStableResult most_stable_constant_uncertain(const Instance& instance, Side uncertain_side,
                                                const Limits& limits = {});

/// Exhaustive argmax over all matchings (perfect ones for complete
/// instances) scored by exact enumeration; ties go to the lexicographically
/// smallest matching. Larger side capped by limits.brute_force_agents.
MostStableResult most_stable_brute_force(const Instance& instance, const Limits& limits = {});

/// Agents whose preferences are not certain.
std::vector<int> uncertain_agents(const Instance& instance, Side side);

} // namespace usm
