#include "oracles.hpp"
#include "usm/models.hpp"

#include <doctest.h>

#include <map>

using namespace usm;

TEST_CASE("rational parsing and rendering")
{
    CHECK(Rational::parse("0.4") == Rational(2, 5));
    CHECK(Rational::parse("13/25").str() == "13/25");
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational(13, 25).decimal() == "0.52");
    CHECK(Rational(1, 3).decimal(5) == "0.33333");
    CHECK(Rational(2, 3).decimal(3) == "0.667");
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), InvalidInput);
    CHECK_THROWS_AS(Rational::parse("abc"), InvalidInput);
    CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidInput);
    CHECK(Rational::pow2(10) == Rational(1024));
}

TEST_CASE("lottery ingest normalizes and validates")
{
    LotteryModel model;
    model.men = {{{{0, 1}, Rational(1, 2)}, {{0, 1}, Rational(1, 2)}, {{1, 0}, Rational(0)}}};
    model.women = {{{{0}, Rational(1)}}, {{{0}, Rational(1)}}};
    auto inst = Instance::lottery(1, 2, model);
    REQUIRE(inst.lottery().men[0].size() == 1);
    CHECK(inst.lottery().men[0][0].weight.is_one());

    LotteryModel bad = model;
    bad.men[0][0].weight = Rational(2, 5);
    CHECK_THROWS_AS(Instance::lottery(1, 2, bad), InvalidInput);

    LotteryModel mixed;
    mixed.men = {{{{0, 1}, Rational(1, 2)}, {{0}, Rational(1, 2)}}};
    mixed.women = {{{{0}, Rational(1)}}, {{{0}, Rational(1)}}};
    CHECK_THROWS_AS(Instance::lottery(1, 2, mixed), InvalidInput);

    LotteryModel negative = model;
    negative.men[0][2].weight = Rational(-1, 2);
    CHECK_THROWS_AS(Instance::lottery(1, 2, negative), InvalidInput);
}

TEST_CASE("joint profiles must share acceptability")
{
    JointModel jm;
    jm.profiles.push_back({Profile({{0, 1}}, {{0}, {0}}), Rational(1, 2)});
    jm.profiles.push_back({Profile({{0}}, {{0}, {0}}), Rational(1, 2)});
    CHECK_THROWS_AS(Instance::joint(1, 2, jm), InvalidInput);
}

TEST_CASE("certainly preferred relation on the example")
{
    auto inst = oracle::example_lottery();
    auto m2 = certainly_preferred(inst, {Side::Men, 1});
    CHECK(m2.pairs() == std::vector<std::pair<int, int>>{{1, 0}});
    CHECK(certainly_preferred(inst, {Side::Men, 0}).pairs().empty());
    CHECK(dominance_set(inst, {Side::Men, 1}, 0) == std::vector<int>{0, 1});
    CHECK(dominance_set(inst, {Side::Men, 1}, 1) == std::vector<int>{1});
    CHECK(dominance_set(inst, {Side::Men, 0}, 1) == std::vector<int>{1});

    auto tied = Instance::compact(2, 2, CompactModel{{{{0, 1}}, {{0}, {1}}}, {{{0, 1}}, {{0, 1}}}});
    CHECK(certainly_preferred(tied, {Side::Men, 0}).pairs().empty());
    CHECK_FALSE(is_certain(tied, {Side::Men, 0}));
    CHECK(is_certain(tied, {Side::Men, 1}));
}

TEST_CASE("partial order validation")
{
    CHECK_THROWS_AS(PartialOrder({}, 3, {{0, 0}}), InvalidInput);
    CHECK_THROWS_AS(PartialOrder({}, 3, {{0, 1}, {1, 0}}), InvalidInput);
    CHECK_THROWS_AS(PartialOrder({}, 3, {{0, 1}, {1, 2}}), InvalidInput);
    CHECK_NOTHROW(PartialOrder({}, 3, {{0, 1}, {1, 2}, {0, 2}}));
}

TEST_CASE("certainly preferred matches a naive intersection and is transitive")
{
    oracle::Gen gen(21);
    for (int iter = 0; iter < 200; ++iter) {
        int n = gen.range(1, 5);
        Instance inst = iter % 3 == 0   ? gen.lottery(n, n, 3, 0.2)
                        : iter % 3 == 1 ? gen.compact(n, n, 0.5, 0.2)
                                        : gen.joint(n, n, gen.range(1, 3), 0.2);
        if (realization_count(inst, 20000) > 20000)
            continue;
        auto reals = oracle::realizations(inst);
        for (Side s : {Side::Men, Side::Women})
            for (int a = 0; a < n; ++a) {
                auto rel = certainly_preferred(inst, {s, a});
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) {
                        bool all = b != c;
                        for (const auto& r : reals) {
                            const auto& order = s == Side::Men ? r.men[a] : r.women[a];
                            int pb = oracle::position(order, b), pc = oracle::position(order, c);
                            if (pb < 0 || pc < 0 || pb > pc)
                                all = false;
                        }
                        REQUIRE(rel.before(b, c) == all);
                    }
            }
        if (inst.kind() == ModelKind::Compact) {
            auto expanded = expand_compact_to_lottery(inst);
            for (Side s : {Side::Men, Side::Women})
                for (int a = 0; a < n; ++a)
                    REQUIRE(certainly_preferred(expanded, {s, a}) == certainly_preferred(inst, {s, a}));
        }
    }
}

TEST_CASE("compact expansion")
{
    auto inst = Instance::compact(3, 3, CompactModel{{{{0, 1}, {2}}, {{0}, {1}, {2}}, {{0}, {1}, {2}}},
                                  {{{0, 1, 2}}, {{0}, {1}, {2}}, {{0}, {1}, {2}}}});
    auto lot = expand_compact_to_lottery(inst);
    CHECK(lot.lottery().men[0].size() == 2);
    CHECK(lot.lottery().men[0][0].weight == Rational(1, 2));
    CHECK(lot.lottery().men[1].size() == 1);
    CHECK(lot.lottery().women[0].size() == 6);
    CHECK(lot.lottery().women[0][3].weight == Rational(1, 6));

    Limits tiny;
    tiny.realizations = 5;
    CHECK_THROWS_AS(expand_compact_to_lottery(inst, tiny), ResourceLimit);
}

TEST_CASE("lottery to joint product")
{
    auto joint = lottery_to_joint(oracle::example_lottery());
    const auto& profiles = joint.joint().profiles;
    REQUIRE(profiles.size() == 4);
    std::vector<Rational> ws;
    Rational total;
    for (const auto& wp : profiles) {
        ws.push_back(wp.weight);
        total += wp.weight;
    }
    CHECK(total.is_one());
    CHECK(ws == std::vector<Rational>{Rational(8, 25), Rational(2, 25), Rational(12, 25), Rational(3, 25)});

    auto certain = Instance::lottery(1, 1, LotteryModel{{{{{0}, Rational(1)}}}, {{{{0}, Rational(1)}}}});
    CHECK(lottery_to_joint(certain).joint().profiles.size() == 1);
}

TEST_CASE("sampling frequencies")
{
    auto inst = oracle::example_lottery();
    Rng rng(5);
    int hits = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        hits += sample_profile(inst, rng).order(Side::Men, 0) == LinearOrder{1, 0};
    CHECK(std::abs(hits / double(draws) - 0.6) < 0.01);

    auto tie = Instance::compact(3, 1, CompactModel{{{{0}}, {{0}}, {{0}}}, {{{0, 1, 2}}}});
    std::map<LinearOrder, int> freq;
    for (int i = 0; i < draws; ++i)
        ++freq[sample_profile(tie, rng).order(Side::Women, 0)];
    CHECK(freq.size() == 6);
    for (const auto& [o, c] : freq)
        CHECK(std::abs(c / double(draws) - 1.0 / 6) < 0.01);

    auto certain = Instance::lottery(1, 1, LotteryModel{{{{{0}, Rational(1)}}}, {{{{0}, Rational(1)}}}});
    CHECK(sample_profile(certain, rng) == Profile({{0}}, {{0}}));
}

TEST_CASE("completion of incomplete lists")
{
    auto complete = oracle::example_lottery();
    auto same = complete_instance(complete);
    CHECK(same.padding.trivial());
    CHECK(same.instance.lottery().men[0] == complete.lottery().men[0]);

    // two men, three women, each man lists one woman
    auto inst = Instance::lottery(2, 3, LotteryModel{{{{{1}, Rational(1)}}, {{{2}, Rational(1)}}},
                                  {{{{}, Rational(1)}}, {{{0}, Rational(1)}}, {{{1}, Rational(1)}}}});
    auto done = complete_instance(inst);
    CHECK(done.instance.n_men() == 3);
    CHECK(done.instance.is_complete());
    CHECK(done.instance.lottery().men[0][0].order == LinearOrder{1, 0, 2});
    CHECK(done.instance.lottery().men[1][0].order == LinearOrder{2, 0, 1});
    CHECK(done.instance.lottery().men[2][0].order == LinearOrder{0, 1, 2});
    CHECK(done.instance.name(Side::Men, 2) == "pad_m1");

    // both singles accept each other: embedded unchanged
    auto empty = Matching(2, 3);
    auto lifted = lift_matching(empty, done.padding);
    CHECK(lifted.size() == 0);
    CHECK(restrict_matching(lifted, done.padding) == empty);

    auto mu = Matching::from_pairs(2, 3, {{0, 1}, {1, 2}});
    CHECK(lift_matching(mu, done.padding).pairs() == std::vector<Pair>{{0, 1}, {1, 2}, {2, 0}});
    CHECK(restrict_matching(lift_matching(mu, done.padding), done.padding) == mu);

    auto lonely = Instance::lottery(1, 2, LotteryModel{{{{{}, Rational(1)}}}, {{{{}, Rational(1)}}, {{{}, Rational(1)}}}});
    auto padded = complete_instance(lonely);
    CHECK(lift_matching(Matching(1, 2), padded.padding).pairs() == std::vector<Pair>{{0, 0}, {1, 1}});
}

TEST_CASE("lift and restrict round trip")
{
    oracle::Gen gen(22);
    for (int iter = 0; iter < 20; ++iter) {
        auto inst = gen.lottery(gen.range(1, 4), gen.range(1, 4), 2, 0.4);
        auto done = complete_instance(inst);
        REQUIRE(done.instance.is_complete());
        for (const auto& mu : oracle::all_matchings(inst.n_men(), inst.n_women(),
                                                    [&](int m, int w) { return inst.acceptable(m, w); })) {
            auto lifted = lift_matching(mu, done.padding);
            REQUIRE(restrict_matching(lifted, done.padding) == mu);
        }
    }
}

TEST_CASE("side swap is an isomorphism")
{
    auto inst = oracle::example_lottery();
    auto swapped = swap_sides(inst);
    CHECK(swapped.lottery().men == inst.lottery().women);
    CHECK(swapped.name(Side::Men, 0) == "w1");
    auto mu = Matching::from_pairs(2, 2, {{0, 1}, {1, 0}});
    CHECK(swap_sides(swap_sides(mu)) == mu);
    CHECK(oracle::probability(inst, mu) == oracle::probability(swapped, swap_sides(mu)));
}

TEST_CASE("realization counts")
{
    CHECK(realization_count(oracle::example_lottery(), 100) == 4);
    auto tie = Instance::compact(3, 1, CompactModel{{{{0}}, {{0}}, {{0}}}, {{{0, 1, 2}}}});
    CHECK(realization_count(tie, 100) == 6);
    CHECK(realization_count(tie, 3) == 4);
}
