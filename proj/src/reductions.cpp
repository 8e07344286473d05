#include "usm/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace usm {

namespace {

// `head` followed by every other index below `n`, ascending.
LinearOrder with_rest(LinearOrder head, int n)
{
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int c : head)
        seen[c] = 1;
    for (int c = 0; c < n; ++c)
        if (!seen[c])
            head.push_back(c);
    return head;
}

Lottery certain(LinearOrder order)
{
    return {{std::move(order), Rational(1)}};
}

} // namespace

GeneratedInstance x3c_to_lottery(const X3cInstance& problem)
{
    if (problem.universe <= 0 || problem.universe % 3 != 0)
        throw InvalidInput("universe size must be a positive multiple of 3");
    if (problem.triples.empty())
        throw InvalidInput("at least one triple is required");
    std::vector<std::array<int, 3>> triples;
    for (auto t : problem.triples) {
        std::sort(t.begin(), t.end());
        if (t[0] < 0 || t[2] >= problem.universe || t[0] == t[1] || t[1] == t[2])
            throw InvalidInput("triples need three distinct elements of the universe");
        triples.push_back(t);
    }

    const int n = problem.universe / 3;
    const int size = 4 * n;
    auto element = [n](int j) { return n + j; };

    LotteryModel model;
    model.men.resize(static_cast<size_t>(size));
    model.women.resize(static_cast<size_t>(size));
    for (int i = 0; i < n; ++i)
        model.men[i] = certain(with_rest({i}, size));
    for (int j = 0; j < problem.universe; ++j)
        model.women[element(j)] = certain(with_rest({element(j)}, size));

    const Rational per_triple(1, static_cast<long long>(triples.size()));
    for (int i = 0; i < n; ++i)
        for (const auto& t : triples)
            model.women[i].push_back({with_rest({element(t[0]), element(t[1]), element(t[2]), i}, size), per_triple});

    // Element j picks the set-agent k it is willing to be covered by.
    const Rational per_choice(1, n);
    for (int j = 0; j < problem.universe; ++j) {
        for (int k = 0; k < n; ++k) {
            LinearOrder order;
            for (int i = 0; i < n; ++i)
                if (i != k)
                    order.push_back(i);
            order.push_back(element(j));
            order.push_back(k);
            model.men[element(j)].push_back({with_rest(std::move(order), size), per_choice});
        }
    }

    Matching mu(size, size);
    for (int a = 0; a < size; ++a)
        mu.match(a, a);
    return {Instance::lottery(size, size, std::move(model)), mu};
}

GeneratedInstance count2sat_to_lottery(const TwoSatInstance& formula)
{
    const int n = formula.n_vars();
    const int copies = 2 * n; // x copies on the men's side, y copies on the women's
    const int size = 2 * copies;
    auto first_copy = [](int var) { return 2 * var; };
    auto second_copy = [](int var) { return 2 * var + 1; };

    // blocked[x][y][side] holds the truth values of that side's agent under
    // which x and y prefer each other to their partners.
    std::vector<std::array<std::set<int>, 2>> blocked(static_cast<size_t>(copies * copies));
    std::vector<char> used(static_cast<size_t>(copies * copies), 0);
    auto forbid = [&](int x, int y, std::set<int> x_values, std::set<int> y_values) {
        auto& cell = blocked[static_cast<size_t>(x) * copies + y];
        cell[0] = std::move(x_values);
        cell[1] = std::move(y_values);
        used[static_cast<size_t>(x) * copies + y] = 1;
    };

    std::vector<std::set<int>> allowed(static_cast<size_t>(n), std::set<int>{0, 1});
    std::set<std::pair<std::pair<int, bool>, std::pair<int, bool>>> binary;
    for (const auto& c : formula.clauses()) {
        if (c.a.var == c.b.var) {
            if (c.a.positive == c.b.positive)
                allowed[c.a.var].erase(c.a.positive ? 0 : 1);
            continue; // the other case is a tautology
        }
        auto a = std::make_pair(c.a.var, c.a.positive);
        auto b = std::make_pair(c.b.var, c.b.positive);
        binary.insert(std::minmax(a, b));
    }

    for (int v = 0; v < n; ++v) {
        // first x -> first y, carrying the unit restrictions
        const auto& ok = allowed[v];
        if (ok.size() == 2)
            forbid(first_copy(v), first_copy(v), {1}, {0});
        else if (ok.count(1))
            forbid(first_copy(v), first_copy(v), {0, 1}, {0});
        else if (ok.count(0))
            forbid(first_copy(v), first_copy(v), {1}, {0, 1});
        else
            forbid(first_copy(v), first_copy(v), {0, 1}, {0, 1});
        forbid(second_copy(v), first_copy(v), {0}, {1}); // first y -> second x
        forbid(second_copy(v), second_copy(v), {1}, {0}); // second x -> second y
        forbid(first_copy(v), second_copy(v), {0}, {1}); // second y -> first x
    }

    for (const auto& [a, b] : binary) {
        // The clause fails exactly when both literals are false.
        const int false_a = a.second ? 0 : 1;
        const int false_b = b.second ? 0 : 1;
        bool placed = false;
        for (int first = 0; first < 2 && !placed; ++first) {
            auto [p, fp] = first == 0 ? std::pair{a.first, false_a} : std::pair{b.first, false_b};
            auto [q, fq] = first == 0 ? std::pair{b.first, false_b} : std::pair{a.first, false_a};
            for (int x : {first_copy(p), second_copy(p)}) {
                for (int y : {first_copy(q), second_copy(q)}) {
                    if (!placed && !used[static_cast<size_t>(x) * copies + y]) {
                        forbid(x, y, {fp}, {fq});
                        placed = true;
                    }
                }
            }
        }
    }

    // Men: x copies 0..copies-1, then their anchors. Women: y copies, then
    // the x copies' partners.
    LotteryModel model;
    model.men.resize(static_cast<size_t>(size));
    model.women.resize(static_cast<size_t>(size));
    auto build = [&](int agent, int side) {
        Lottery lot;
        for (int value = 0; value < 2; ++value) {
            LinearOrder top, tail;
            for (int other = 0; other < copies; ++other) {
                const auto& cell = side == 0 ? blocked[static_cast<size_t>(agent) * copies + other]
                                             : blocked[static_cast<size_t>(other) * copies + agent];
                (cell[side].count(value) ? top : tail).push_back(other);
            }
            for (int partner = copies; partner < size; ++partner)
                top.push_back(partner);
            top.insert(top.end(), tail.begin(), tail.end());
            lot.push_back({std::move(top), Rational(1, 2)});
        }
        return lot;
    };
    for (int k = 0; k < copies; ++k) {
        model.men[k] = build(k, 0);
        model.women[k] = build(k, 1);
        model.men[copies + k] = certain(with_rest({k}, size));
        model.women[copies + k] = certain(with_rest({k}, size));
    }

    Matching mu(size, size);
    for (int k = 0; k < copies; ++k) {
        mu.match(k, copies + k);
        mu.match(copies + k, k);
    }
    return {Instance::lottery(size, size, std::move(model)), mu};
}

namespace {

struct Block {
    // Within-block orders; inserted foreign agents use index -1.
    std::array<LinearOrder, 3> men;
    std::array<LinearOrder, 3> women;
};

void check_graph(const Graph& graph)
{
    if (graph.vertices <= 0)
        throw InvalidInput("graph needs at least one vertex");
    for (auto [a, b] : graph.edges) {
        if (a < 0 || b < 0 || a >= graph.vertices || b >= graph.vertices)
            throw InvalidInput("edge endpoint out of range");
        if (a == b)
            throw InvalidInput("self-loops are not allowed");
    }
}

std::vector<std::pair<int, int>> normalized_edges(const Graph& graph)
{
    std::set<std::pair<int, int>> edges;
    for (auto [a, b] : graph.edges)
        edges.insert(std::minmax(a, b));
    return {edges.begin(), edges.end()};
}

} // namespace

Instance three_color_to_joint(const Graph& graph)
{
    check_graph(graph);
    const auto edges = normalized_edges(graph);
    const int n = 3 * graph.vertices;
    auto agent = [](int v, int j) { return 3 * v + j; };

    std::vector<LinearOrder> base_men(static_cast<size_t>(n)), base_women(static_cast<size_t>(n));
    for (int v = 0; v < graph.vertices; ++v) {
        for (int j = 0; j < 3; ++j) {
            base_men[agent(v, j)] = with_rest({agent(v, j), agent(v, (j + 1) % 3), agent(v, (j + 2) % 3)}, n);
            base_women[agent(v, j)] = with_rest({agent(v, (j + 1) % 3), agent(v, (j + 2) % 3), agent(v, j)}, n);
        }
    }

    std::vector<Profile> profiles{Profile(base_men, base_women)};
    for (auto [u, v] : edges) {
        for (int color = 0; color < 3; ++color) {
            // Template for the middle color; the others shift u's women and
            // v's men cyclically.
            const int shift_u = color - 1;
            const int shift_v = 1 - color;
            auto uw = [&](int j) { return agent(u, ((j + shift_u) % 3 + 3) % 3); };
            auto vm = [&](int j) { return agent(v, ((j + shift_v) % 3 + 3) % 3); };
            auto um = [&](int j) { return agent(u, j); };
            auto vw = [&](int j) { return agent(v, j); };

            auto men = base_men;
            auto women = base_women;
            men[um(0)] = with_rest({uw(0), uw(2), vw(0), uw(1)}, n);
            men[um(1)] = with_rest({uw(1), uw(0), uw(2)}, n);
            men[um(2)] = with_rest({uw(2), uw(1), uw(0)}, n);
            women[uw(0)] = with_rest({um(2), um(1), um(0)}, n);
            women[uw(1)] = with_rest({um(0), um(2), um(1)}, n);
            women[uw(2)] = with_rest({um(1), um(0), um(2)}, n);

            men[vm(0)] = with_rest({vw(1), vw(2), vw(0)}, n);
            men[vm(1)] = with_rest({vw(2), vw(0), vw(1)}, n);
            men[vm(2)] = with_rest({vw(0), vw(1), vw(2)}, n);
            women[vw(0)] = with_rest({vm(0), vm(1), um(0), vm(2)}, n);
            women[vw(1)] = with_rest({vm(1), vm(2), vm(0)}, n);
            women[vw(2)] = with_rest({vm(2), vm(0), vm(1)}, n);
            profiles.emplace_back(std::move(men), std::move(women));
        }
    }

    JointModel model;
    const Rational weight(1, static_cast<long long>(profiles.size()));
    for (auto& p : profiles)
        model.profiles.push_back({std::move(p), weight});
    return Instance::joint(n, n, std::move(model));
}

Matching coloring_matching(const Graph& graph, const std::vector<int>& coloring)
{
    check_graph(graph);
    if (static_cast<int>(coloring.size()) != graph.vertices)
        throw InvalidInput("coloring must assign every vertex");
    const int n = 3 * graph.vertices;
    Matching mu(n, n);
    for (int v = 0; v < graph.vertices; ++v) {
        if (coloring[v] < 0 || coloring[v] > 2)
            throw InvalidInput("colors are 0, 1 and 2");
        for (int j = 0; j < 3; ++j)
            mu.match(3 * v + j, 3 * v + (j + coloring[v]) % 3);
    }
    return mu;
}

} // namespace usm
