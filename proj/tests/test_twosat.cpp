#include "oracles.hpp"
#include "usm/twosat.hpp"

#include <doctest.h>

using namespace usm;

namespace {

bool truth_table_sat(const TwoSatInstance& f)
{
    for (long long a = 0; a < (1LL << f.n_vars()); ++a) {
        std::vector<bool> v(static_cast<size_t>(f.n_vars()));
        for (int i = 0; i < f.n_vars(); ++i)
            v[i] = (a >> i) & 1;
        if (satisfies(f, v))
            return true;
    }
    return false;
}

TwoSatInstance random_formula(oracle::Gen& gen, int n, int m)
{
    TwoSatInstance f(n);
    for (int i = 0; i < m; ++i)
        f.add_clause({gen.range(0, n - 1), gen.coin()}, {gen.range(0, n - 1), gen.coin()});
    return f;
}

} // namespace

TEST_CASE("unit clause")
{
    TwoSatInstance f(1);
    f.add_unit({0, true});
    auto a = solve_2sat(f);
    REQUIRE(a);
    CHECK((*a)[0]);
}

TEST_CASE("all four clauses over two variables")
{
    TwoSatInstance f(2);
    f.add_clause({0, true}, {1, true});
    f.add_clause({0, false}, {1, true});
    f.add_clause({0, true}, {1, false});
    f.add_clause({0, false}, {1, false});
    CHECK_FALSE(solve_2sat(f));
}

TEST_CASE("empty formula and bad variables")
{
    CHECK(solve_2sat(TwoSatInstance(0)));
    TwoSatInstance f(2);
    CHECK_THROWS_AS(f.add_clause({2, true}, {0, true}), InvalidInput);
}

TEST_CASE("agreement with truth tables")
{
    oracle::Gen gen(41);
    int sat = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        int n = gen.range(1, 15);
        auto f = random_formula(gen, n, gen.range(0, 3 * n));
        auto a = solve_2sat(f);
        REQUIRE(a.has_value() == truth_table_sat(f));
        if (a) {
            REQUIRE(satisfies(f, *a));
            ++sat;
        }
    }
    CHECK(sat > 100);
    CHECK(sat < 900);
}

TEST_CASE("long implication chains")
{
    const int n = 200000;
    TwoSatInstance f(n);
    for (int i = 0; i + 1 < n; ++i)
        f.add_clause({i, false}, {i + 1, true});
    f.add_unit({0, true});
    auto a = solve_2sat(f);
    REQUIRE(a);
    CHECK((*a)[n - 1]);
    f.add_unit({n - 1, false});
    CHECK_FALSE(solve_2sat(f));
}
