#include "usm/twosat.hpp"

#include "usm/errors.hpp"

#include <algorithm>

namespace usm {

TwoSatInstance::TwoSatInstance(int n_vars) : n_vars_(n_vars)
{
    if (n_vars < 0)
        throw InvalidInput("negative variable count");
}

void TwoSatInstance::add_clause(Literal a, Literal b)
{
    if (a.var < 0 || a.var >= n_vars_ || b.var < 0 || b.var >= n_vars_)
        throw InvalidInput("clause references an unknown variable");
    clauses_.push_back({a, b});
}

namespace {

int node(Literal l) { return 2 * l.var + (l.positive ? 0 : 1); }

} // namespace

std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& formula)
{
    const int n = 2 * formula.n_vars();
    // CSR adjacency of the implication graph: (a or b) gives !a -> b, !b -> a.
    std::vector<int> start(static_cast<size_t>(n) + 1, 0);
    for (const auto& c : formula.clauses()) {
        ++start[node(!c.a) + 1];
        ++start[node(!c.b) + 1];
    }
    for (int i = 0; i < n; ++i)
        start[i + 1] += start[i];
    std::vector<int> adj(static_cast<size_t>(start[n]));
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (const auto& c : formula.clauses()) {
        adj[fill[node(!c.a)]++] = node(c.b);
        adj[fill[node(!c.b)]++] = node(c.a);
    }

    // Iterative Tarjan. Components are numbered in reverse topological order.
    std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0), comp(static_cast<size_t>(n), -1);
    std::vector<int> stack, call, edge_pos(static_cast<size_t>(n), 0);
    std::vector<char> on_stack(static_cast<size_t>(n), 0);
    int counter = 0, n_comp = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1)
            continue;
        call.push_back(root);
        while (!call.empty()) {
            int v = call.back();
            if (index[v] == -1) {
                index[v] = low[v] = counter++;
                edge_pos[v] = start[v];
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (edge_pos[v] < start[v + 1]) {
                int u = adj[edge_pos[v]++];
                if (index[u] == -1)
                    call.push_back(u);
                else if (on_stack[u])
                    low[v] = std::min(low[v], index[u]);
                continue;
            }
            if (low[v] == index[v]) {
                int u;
                do {
                    u = stack.back();
                    stack.pop_back();
                    on_stack[u] = 0;
                    comp[u] = n_comp;
                } while (u != v);
                ++n_comp;
            }
            call.pop_back();
            if (!call.empty())
                low[call.back()] = std::min(low[call.back()], low[v]);
        }
    }

    std::vector<bool> assignment(static_cast<size_t>(formula.n_vars()));
    for (int x = 0; x < formula.n_vars(); ++x) {
        int pos = comp[2 * x], neg = comp[2 * x + 1];
        if (pos == neg)
            return std::nullopt;
        assignment[x] = pos < neg;
    }
    return assignment;
}

bool satisfies(const TwoSatInstance& formula, const std::vector<bool>& assignment)
{
    auto value = [&](Literal l) { return assignment[l.var] == l.positive; };
    return std::all_of(formula.clauses().begin(), formula.clauses().end(),
                       [&](const TwoSatClause& c) { return value(c.a) || value(c.b); });
}

} // namespace usm
