#include "oracles.hpp"
#include "usm/probability.hpp"
#include "usm/reductions.hpp"
#include "usm/superstability.hpp"

#include <doctest.h>

#include <functional>
#include <numeric>

using namespace usm;

namespace {

TwoSatInstance to_formula(int n, const std::vector<std::pair<int, int>>& dimacs)
{
    TwoSatInstance f(n);
    auto lit = [](int d) { return Literal{std::abs(d) - 1, d > 0}; };
    for (auto [a, b] : dimacs)
        f.add_clause(lit(a), lit(b));
    return f;
}

Rational count_identity(int n, long long models)
{
    return Rational(models) / Rational::pow2(static_cast<unsigned>(4 * n));
}

std::vector<int> some_coloring(const Graph& g)
{
    std::vector<int> color(static_cast<size_t>(g.vertices), -1);
    std::function<bool(int)> rec = [&](int v) {
        if (v == g.vertices)
            return true;
        for (int c = 0; c < 3; ++c) {
            bool ok = true;
            for (auto [a, b] : g.edges)
                if ((a == v && color[b] == c) || (b == v && color[a] == c))
                    ok = false;
            if (ok) {
                color[v] = c;
                if (rec(v + 1))
                    return true;
            }
        }
        color[v] = -1;
        return false;
    };
    rec(0);
    return color;
}

} // namespace

TEST_CASE("exact cover generator")
{
    SUBCASE("single triple")
    {
        auto g = x3c_to_lottery({3, {{0, 1, 2}}});
        CHECK(g.instance.n_men() == 4);
        CHECK(g.instance.is_complete());
        auto r = is_stability_probability_nonzero(g.instance, g.matching);
        REQUIRE(r.nonzero);
        CHECK(oracle::stable(*r.witness, g.matching));
        CHECK(oracle::probability(g.instance, g.matching) > Rational(0));
    }
    SUBCASE("cover of six elements")
    {
        auto g = x3c_to_lottery({6, {{0, 1, 2}, {0, 1, 3}, {2, 4, 5}}});
        auto r = is_stability_probability_nonzero(g.instance, g.matching);
        REQUIRE(r.nonzero);
        CHECK(oracle::stable(*r.witness, g.matching));
    }
    SUBCASE("no cover")
    {
        auto g = x3c_to_lottery({6, {{0, 1, 2}, {0, 3, 4}, {1, 4, 5}}});
        CHECK_FALSE(is_stability_probability_nonzero(g.instance, g.matching).nonzero);
    }
    SUBCASE("rejected inputs")
    {
        CHECK_THROWS_AS(x3c_to_lottery({3, {}}), InvalidInput);
        CHECK_THROWS_AS(x3c_to_lottery({4, {{0, 1, 2}}}), InvalidInput);
        CHECK_THROWS_AS(x3c_to_lottery({3, {{0, 0, 1}}}), InvalidInput);
        CHECK_THROWS_AS(x3c_to_lottery({3, {{0, 1, 3}}}), InvalidInput);
    }
}

TEST_CASE("exact cover generator against set-cover search")
{
    oracle::Gen gen(31);
    int yes = 0, no = 0;
    for (int it = 0; it < 120; ++it) {
        int universe = gen.coin() ? 3 : 6;
        int count = gen.range(1, 5);
        std::vector<std::array<int, 3>> triples;
        for (int t = 0; t < count; ++t) {
            std::vector<int> all(static_cast<size_t>(universe));
            std::iota(all.begin(), all.end(), 0);
            auto s = gen.shuffled(all);
            triples.push_back({s[0], s[1], s[2]});
        }
        auto g = x3c_to_lottery({universe, triples});
        bool expected = oracle::has_exact_cover(universe, triples);
        auto r = is_stability_probability_nonzero(g.instance, g.matching);
        INFO("iteration " << it);
        CHECK(r.nonzero == expected);
        if (r.nonzero)
            CHECK(oracle::stable(*r.witness, g.matching));
        if (universe == 3)
            CHECK((oracle::probability(g.instance, g.matching) > Rational(0)) == expected);
        (expected ? yes : no)++;
    }
    CHECK(yes > 10);
    CHECK(no > 10);
}

TEST_CASE("counting generator examples")
{
    auto forced = count2sat_to_lottery(to_formula(1, {{1, 1}}));
    CHECK(stability_probability_exact(forced.instance, forced.matching) == count_identity(1, 1));
    auto empty = count2sat_to_lottery(TwoSatInstance(1));
    CHECK(stability_probability_exact(empty.instance, empty.matching) == count_identity(1, 2));
    auto both = count2sat_to_lottery(to_formula(2, {{1, 2}}));
    CHECK(stability_probability_exact(both.instance, both.matching) == count_identity(2, 3));
    auto contradiction = count2sat_to_lottery(to_formula(1, {{1, 1}, {-1, -1}}));
    CHECK(stability_probability_exact(contradiction.instance, contradiction.matching) == Rational(0));
}

TEST_CASE("counting generator against truth tables")
{
    oracle::Gen gen(8);
    for (int it = 0; it < 150; ++it) {
        int n = gen.range(1, 3);
        int m = gen.range(0, 6);
        std::vector<std::pair<int, int>> clauses;
        for (int c = 0; c < m; ++c) {
            auto lit = [&] { return gen.range(1, n) * (gen.coin() ? 1 : -1); };
            clauses.emplace_back(lit(), lit());
        }
        auto g = count2sat_to_lottery(to_formula(n, clauses));
        long long s = oracle::count_models(n, clauses);
        INFO("iteration " << it);
        CHECK(stability_probability_exact(g.instance, g.matching) == count_identity(n, s));
        for (int a = 0; a < g.instance.n_men(); ++a)
            CHECK(agent_support(g.instance, {Side::Men, a}).size() <= 2);
        auto formula = build_nonzero_2sat(g.instance, g.matching);
        CHECK(solve_2sat(formula.formula).has_value() == (s > 0));
        CHECK(is_stability_probability_nonzero(g.instance, g.matching).nonzero == (s > 0));
    }
}

TEST_CASE("colorability generator")
{
    SUBCASE("single vertex")
    {
        Graph g{1, {}};
        auto inst = three_color_to_joint(g);
        CHECK(exists_certainly_stable_matching(inst).has_value());
        for (int c = 0; c < 3; ++c)
            CHECK(is_certainly_stable(inst, coloring_matching(g, {c})));
    }
    SUBCASE("triangle")
    {
        Graph g{3, {{0, 1}, {1, 2}, {0, 2}}};
        auto inst = three_color_to_joint(g);
        CHECK(inst.joint().profiles.size() == 10);
        CHECK(exists_certainly_stable_matching(inst).has_value());
        CHECK(is_certainly_stable(inst, coloring_matching(g, {0, 1, 2})));
        CHECK_FALSE(is_certainly_stable(inst, coloring_matching(g, {0, 0, 1})));
    }
    SUBCASE("complete graph on four vertices")
    {
        Graph g{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
        CHECK_FALSE(exists_certainly_stable_matching(three_color_to_joint(g)).has_value());
    }
    SUBCASE("rejected inputs")
    {
        CHECK_THROWS_AS(three_color_to_joint({0, {}}), InvalidInput);
        CHECK_THROWS_AS(three_color_to_joint({2, {{1, 1}}}), InvalidInput);
        CHECK_THROWS_AS(three_color_to_joint({2, {{0, 2}}}), InvalidInput);
    }
}

TEST_CASE("colorability generator against coloring search")
{
    oracle::Gen gen(12);
    for (int it = 0; it < 40; ++it) {
        int n = gen.range(1, 5);
        Graph g{n, {}};
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (gen.coin(0.6))
                    g.edges.emplace_back(a, b);
        auto inst = three_color_to_joint(g);
        bool expected = oracle::three_colorable(n, g.edges);
        INFO("iteration " << it);
        auto found = exists_certainly_stable_matching(inst);
        CHECK(found.has_value() == expected);
        if (found)
            CHECK(oracle::probability(inst, *found) == Rational(1));
        if (expected)
            CHECK(is_certainly_stable(inst, coloring_matching(g, some_coloring(g))));
    }
}
