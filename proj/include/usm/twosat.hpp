#pragma once

// 2-CNF satisfiability via the implication graph and strongly connected
// components.

#include <optional>
#include <vector>

namespace usm {

struct Literal {
    int var = 0;
    bool positive = true;

    Literal operator!() const { return {var, !positive}; }
    friend bool operator==(const Literal&, const Literal&) = default;
};

struct TwoSatClause {
    Literal a;
    Literal b;
};

class TwoSatInstance {
  public:
    explicit TwoSatInstance(int n_vars = 0);

    int n_vars() const { return n_vars_; }
    int add_var() { return n_vars_++; }
    /// Throws InvalidInput on unknown variables.
    void add_clause(Literal a, Literal b);
    void add_unit(Literal a) { add_clause(a, a); }
    const std::vector<TwoSatClause>& clauses() const { return clauses_; }

  private:
    int n_vars_;
    std::vector<TwoSatClause> clauses_;
};

/// A satisfying assignment, or nothing. Linear in the formula size.
std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& formula);

bool satisfies(const TwoSatInstance& formula, const std::vector<bool>& assignment);

} // namespace usm
