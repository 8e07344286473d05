#include "oracles.hpp"
#include "usm/optimization.hpp"
#include "usm/probability.hpp"

#include <doctest.h>

using namespace usm;

namespace {

// Lottery instance where only the first `k` agents of `uncertain` have more
// than one possible order.
Instance few_uncertain_lottery(oracle::Gen& gen, int nm, int nw, int k, Side uncertain, double drop)
{
    auto acc = gen.acceptability(nm, nw, drop);
    LotteryModel model;
    for (int m = 0; m < nm; ++m)
        model.men.push_back(gen.lottery_for(oracle::Gen::candidates(acc, Side::Men, m),
                                            uncertain == Side::Men && m < k ? 3 : 1));
    for (int w = 0; w < nw; ++w)
        model.women.push_back(gen.lottery_for(oracle::Gen::candidates(acc, Side::Women, w),
                                              uncertain == Side::Women && w < k ? 3 : 1));
    return Instance::lottery(nm, nw, model);
}

Instance few_uncertain_compact(oracle::Gen& gen, int nm, int nw, int k, Side uncertain, double drop)
{
    auto acc = gen.acceptability(nm, nw, drop);
    CompactModel model;
    for (int m = 0; m < nm; ++m)
        model.men.push_back(gen.weak(oracle::Gen::candidates(acc, Side::Men, m),
                                     uncertain == Side::Men && m < k ? 0.5 : 0.0));
    for (int w = 0; w < nw; ++w)
        model.women.push_back(gen.weak(oracle::Gen::candidates(acc, Side::Women, w),
                                       uncertain == Side::Women && w < k ? 0.5 : 0.0));
    return Instance::compact(nm, nw, model);
}

Rational oracle_optimum(const Instance& inst)
{
    Rational best(0);
    for (const auto& mu : oracle::all_matchings(inst.n_men(), inst.n_women(),
                                                [&](int m, int w) { return inst.acceptable(m, w); }))
        best = std::max(best, oracle::probability(inst, mu));
    return best;
}

} // namespace

TEST_CASE("certain instance yields a stable matching")
{
    LotteryModel model;
    model.men = {{{{1, 0, 2}, Rational(1)}}, {{{0, 1, 2}, Rational(1)}}, {{{0, 2, 1}, Rational(1)}}};
    model.women = {{{{2, 0, 1}, Rational(1)}}, {{{0, 1, 2}, Rational(1)}}, {{{1, 0, 2}, Rational(1)}}};
    auto inst = Instance::lottery(3, 3, model);
    auto r = most_stable_constant_uncertain(inst, Side::Men);
    CHECK(r.probability == Rational(1));
    CHECK(r.examined == 1);
    CHECK_FALSE(r.all_excluded);
    CHECK(stability_probability(inst, r.matching) == Rational(1));
}

TEST_CASE("example instance")
{
    auto inst = oracle::example_lottery();
    auto brute = most_stable_brute_force(inst);
    CHECK(brute.matching == oracle::mu_identity(2));
    CHECK(brute.probability == Rational(13, 25));
    CHECK(brute.examined == 2);
    CHECK_THROWS_AS(most_stable_constant_uncertain(inst, Side::Men), PreconditionViolation);
}

TEST_CASE("women indifferent between all men")
{
    const int n = 3;
    CompactModel cm;
    for (int m = 0; m < n; ++m) {
        cm.men.push_back({{0}, {1}, {2}});
        cm.women.push_back({{0, 1, 2}});
    }
    auto inst = Instance::compact(n, n, cm);
    auto brute = most_stable_brute_force(inst);
    CHECK(brute.probability == Rational(1, 6));
    CHECK(brute.matching == oracle::mu_identity(n));
    CHECK(brute.examined == 6);

    auto fast = most_stable_constant_uncertain(inst, Side::Women, Limits{.uncertain_agents = 3});
    CHECK(fast.probability == Rational(1, 6));
    CHECK_THROWS_AS(most_stable_constant_uncertain(inst, Side::Women, Limits{.uncertain_agents = 2}), ResourceLimit);
}

TEST_CASE("caps")
{
    oracle::Gen gen(5);
    auto inst = few_uncertain_lottery(gen, 8, 8, 1, Side::Men, 0.0);
    CHECK_THROWS_AS(most_stable_brute_force(inst), ResourceLimit);
    CHECK_NOTHROW(most_stable_constant_uncertain(inst, Side::Men));
}

TEST_CASE("constant-uncertain search matches exhaustive search")
{
    oracle::Gen gen(77);
    int compared = 0;
    for (int it = 0; it < 400; ++it) {
        int nm = gen.range(1, 5);
        int nw = gen.range(1, 5);
        Side side = gen.coin() ? Side::Men : Side::Women;
        int k = gen.range(0, 2);
        double drop = gen.coin() ? 0.0 : 0.3;
        Instance inst = gen.coin() ? few_uncertain_lottery(gen, nm, nw, k, side, drop)
                                   : few_uncertain_compact(gen, nm, nw, k, side, drop);
        if (!uncertain_agents(inst, other(side)).empty())
            continue;
        auto fast = most_stable_constant_uncertain(inst, side);
        auto brute = most_stable_brute_force(inst);
        INFO("iteration " << it);
        CHECK(fast.probability == brute.probability);
        CHECK(stability_probability_exact(inst, fast.matching) == fast.probability);
        CHECK(stability_probability_exact(inst, brute.matching) == brute.probability);
        if (nm * nw <= 12)
            CHECK(brute.probability == oracle_optimum(inst));
        ++compared;
    }
    CHECK(compared > 300);
}

TEST_CASE("joint instance with certain men")
{
    // Men fixed; two women reorder across profiles.
    std::vector<LinearOrder> men = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}};
    JointModel jm;
    jm.profiles.push_back({Profile(men, {{1, 0, 2}, {0, 1, 2}, {2, 1, 0}}), Rational(1, 3)});
    jm.profiles.push_back({Profile(men, {{2, 0, 1}, {1, 0, 2}, {2, 1, 0}}), Rational(2, 3)});
    auto inst = Instance::joint(3, 3, jm);
    CHECK(uncertain_agents(inst, Side::Women) == std::vector<int>{0, 1});
    auto fast = most_stable_constant_uncertain(inst, Side::Women);
    auto brute = most_stable_brute_force(inst);
    CHECK(fast.probability == brute.probability);
    CHECK(brute.probability == oracle_optimum(inst));
}
