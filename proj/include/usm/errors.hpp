#pragma once

#include <stdexcept>
#include <string>

namespace usm {

/// Malformed or inconsistent input: bad instance, matching referencing
/// unknown agents, weights that do not sum to one, ...
class InvalidInput : public std::invalid_argument {
  public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// An exponential path would exceed its configured cap.
class ResourceLimit : public std::runtime_error {
  public:
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

/// The caller asked an operation outside its contract (e.g. the
/// one-side-certain routine on a two-sided uncertain instance).
class PreconditionViolation : public std::logic_error {
  public:
    explicit PreconditionViolation(const std::string& what) : std::logic_error(what) {}
};

/// Caps for the exponential code paths. Defaults are desk-scale.
struct Limits {
    /// Realizations enumerated by exact probability / model expansion.
    long long realizations = 1'000'000;
    /// Stable matchings enumerated for a single profile.
    long long stable_matchings = 1'000'000;
    /// Search nodes of the general-lottery non-zero backtracking.
    long long search_nodes = 50'000'000;
    /// Largest side size accepted by the brute-force optimizer.
    int brute_force_agents = 7;
    /// Largest number of uncertain agents for the constant-uncertain optimizer.
    int uncertain_agents = 4;
};

} // namespace usm
