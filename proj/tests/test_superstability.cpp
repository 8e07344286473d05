#include "oracles.hpp"
#include "usm/superstability.hpp"

#include <doctest.h>

using namespace usm;

namespace {

struct RandomSmp {
    SmpInstance smp;
    static RandomSmp make(oracle::Gen& gen, int nm, int nw, double drop, double density)
    {
        auto acc = gen.acceptability(nm, nw, drop);
        std::vector<PartialOrder> men, women;
        for (int m = 0; m < nm; ++m)
            men.push_back(oracle::random_partial_order(gen, {Side::Men, m}, nw,
                                                       oracle::Gen::candidates(acc, Side::Men, m), density));
        for (int w = 0; w < nw; ++w)
            women.push_back(oracle::random_partial_order(gen, {Side::Women, w}, nm,
                                                         oracle::Gen::candidates(acc, Side::Women, w), density));
        std::vector<char> flat;
        for (const auto& row : acc)
            flat.insert(flat.end(), row.begin(), row.end());
        return {SmpInstance(nm, nw, men, women, flat)};
    }
};

// Very weak blocking written out from the definition, independent of the library.
bool oracle_super_stable(const SmpInstance& smp, const Matching& mu)
{
    for (int m = 0; m < smp.n_men(); ++m)
        for (int w = 0; w < smp.n_women(); ++w) {
            if (!smp.acceptable(m, w) || mu.partner_of_man(m) == w)
                continue;
            int pm = mu.partner_of_man(m), pw = mu.partner_of_woman(w);
            bool m_better = pm >= 0 && smp.order(Side::Men, m).before(pm, w);
            bool w_better = pw >= 0 && smp.order(Side::Women, w).before(pw, m);
            if (!m_better && !w_better)
                return false;
        }
    return true;
}

} // namespace

TEST_CASE("linear orders: super-stability is stability")
{
    auto inst = Instance::lottery(2, 2, LotteryModel{{{{{1, 0}, Rational(1)}}, {{{1, 0}, Rational(1)}}},
                                                     {{{{0, 1}, Rational(1)}}, {{{0, 1}, Rational(1)}}}});
    auto smp = SmpInstance::from_instance(inst);
    auto mu = super_stable_matching(smp);
    REQUIRE(mu);
    CHECK(*mu == Matching::from_pairs(2, 2, {{0, 1}, {1, 0}}));
    CHECK(*exists_certainly_stable_matching(inst) == *mu);
}

TEST_CASE("full indifference on one side blocks super-stability")
{
    // man 1 cannot compare the women; both women are indifferent between the men
    auto inst = Instance::compact(2, 2, CompactModel{{{{0}, {1}}, {{0, 1}}}, {{{0, 1}}, {{0, 1}}}});
    CHECK_FALSE(super_stable_matching(SmpInstance::from_instance(inst)));
    for (const auto& mu : oracle::all_perfect_matchings(2))
        CHECK_FALSE(is_super_stable(SmpInstance::from_instance(inst), mu));
}

TEST_CASE("example lottery has no certainly stable matching")
{
    auto inst = oracle::example_lottery();
    CHECK_FALSE(exists_certainly_stable_matching(inst));
    auto mu1 = oracle::mu_identity(2);
    auto mu2 = oracle::mu_swapped();
    CHECK_FALSE(is_certainly_stable(inst, mu1));
    CHECK_FALSE(is_certainly_stable(inst, mu2));
    CHECK(is_very_weakly_blocking(inst, mu1, {0, 1}));
    CHECK_THROWS_AS(is_very_weakly_blocking(inst, mu2, {1, 0}), PreconditionViolation);
    CHECK_THROWS_AS(is_very_weakly_blocking(lottery_to_joint(inst), mu1, {0, 1}), PreconditionViolation);

    // m2 certainly prefers his partner w2 over w1
    CHECK_FALSE(is_very_weakly_blocking(inst, mu1, {1, 0}));
}

TEST_CASE("super-stable search agrees with brute force")
{
    oracle::Gen gen(31);
    int found = 0;
    for (int iter = 0; iter < 1500; ++iter) {
        int nm = gen.range(1, 5), nw = iter % 2 ? nm : gen.range(1, 5);
        double drop = iter % 3 == 0 ? 0.0 : 0.3;
        double density = iter % 4 == 0 ? 0.95 : (iter % 4 == 1 ? 0.8 : 0.5);
        auto smp = RandomSmp::make(gen, nm, nw, drop, density).smp;
        bool expected = false;
        for (const auto& mu : oracle::all_matchings(nm, nw, [&](int m, int w) { return smp.acceptable(m, w); }))
            if (oracle_super_stable(smp, mu)) {
                expected = true;
                break;
            }
        auto got = super_stable_matching(smp);
        REQUIRE(got.has_value() == expected);
        if (got) {
            REQUIRE(oracle_super_stable(smp, *got));
            ++found;
        }
    }
    CHECK(found > 100);
}

TEST_CASE("certain stability equals probability one")
{
    oracle::Gen gen(32);
    for (int iter = 0; iter < 300; ++iter) {
        int n = gen.range(1, 4);
        Instance inst = iter % 3 == 0   ? gen.lottery(n, n, 2, 0.2)
                        : iter % 3 == 1 ? gen.compact(n, n, 0.3, 0.2)
                                        : gen.joint(n, n, gen.range(1, 3), 0.2);
        auto all = oracle::all_matchings(n, n, [&](int m, int w) { return inst.acceptable(m, w); });
        bool any = false;
        for (const auto& mu : all) {
            bool one = oracle::probability(inst, mu).is_one();
            REQUIRE(is_certainly_stable(inst, mu) == one);
            any = any || one;
            if (inst.independent()) {
                bool blocked = false;
                for (int m = 0; m < n; ++m)
                    for (int w = 0; w < n; ++w)
                        if (mu.partner_of_man(m) != w && is_very_weakly_blocking(inst, mu, {m, w}))
                            blocked = true;
                REQUIRE(blocked == !one);
            }
        }
        auto found = exists_certainly_stable_matching(inst);
        REQUIRE(found.has_value() == any);
        if (found)
            REQUIRE(is_certainly_stable(inst, *found));
        if (inst.kind() == ModelKind::Lottery)
            REQUIRE(exists_certainly_stable_matching(lottery_to_joint(inst)).has_value() == any);
    }
}
