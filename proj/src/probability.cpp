#include "usm/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace usm {

namespace {

// Per-agent supports with, for every order, the candidates the agent would
// leave its partner for. Agents are numbered men first, then women.
struct Supports {
    int n_men = 0;
    int n_women = 0;
    std::vector<Lottery> lottery;
    std::vector<std::vector<std::vector<char>>> wants;

    int flat(Side s, int agent) const { return s == Side::Men ? agent : n_men + agent; }
    int n_agents() const { return n_men + n_women; }
};

std::vector<char> wanted_candidates(const LinearOrder& order, int n_candidates, int partner)
{
    std::vector<char> out(static_cast<size_t>(n_candidates), 0);
    for (int c : order) {
        if (c == partner)
            break;
        out[c] = 1;
    }
    return out;
}

Supports build_supports(const Instance& instance, const Matching& matching, const Limits& limits)
{
    Supports sup;
    sup.n_men = instance.n_men();
    sup.n_women = instance.n_women();
    for (Side s : {Side::Men, Side::Women})
        for (int a = 0; a < instance.size(s); ++a) {
            auto lot = agent_support(instance, {s, a}, limits);
            std::vector<std::vector<char>> w;
            for (const auto& e : lot)
                w.push_back(wanted_candidates(e.order, instance.size(other(s)), matching.partner(s, a)));
            sup.lottery.push_back(std::move(lot));
            sup.wants.push_back(std::move(w));
        }
    return sup;
}

// Acceptable pairs that are not matched together.
std::vector<Pair> open_pairs(const Instance& instance, const Matching& matching)
{
    std::vector<Pair> out;
    for (int m = 0; m < instance.n_men(); ++m)
        for (int w = 0; w < instance.n_women(); ++w)
            if (instance.acceptable(m, w) && matching.partner_of_man(m) != w)
                out.emplace_back(m, w);
    return out;
}

Profile profile_from_choice(const Supports& sup, const std::vector<int>& choice)
{
    std::vector<LinearOrder> men, women;
    for (int a = 0; a < sup.n_agents(); ++a)
        (a < sup.n_men ? men : women).push_back(sup.lottery[a][choice[a]].order);
    return Profile(std::move(men), std::move(women));
}

void require_probability_parameter(const Rational& value, const char* name)
{
    if (value <= Rational(0) || value >= Rational(1))
        throw InvalidInput(std::string(name) + " must lie strictly between 0 and 1");
}

} // namespace

Rational stability_probability_joint(const Instance& instance, const Matching& matching)
{
    check_matching(instance, matching);
    Rational total;
    for (const auto& wp : instance.joint().profiles)
        if (is_stable(wp.profile, matching))
            total += wp.weight;
    return total;
}

Rational stability_probability_lottery_one_side_certain(const Instance& instance, const Matching& matching)
{
    check_matching(instance, matching);
    if (instance.kind() != ModelKind::Lottery)
        throw PreconditionViolation("expected a lottery instance");
    Side uncertain;
    if (side_certain(instance, Side::Women))
        uncertain = Side::Men;
    else if (side_certain(instance, Side::Men))
        uncertain = Side::Women;
    else
        throw PreconditionViolation("both sides have uncertain agents");

    const Side certain = other(uncertain);
    const auto& lot = instance.lottery();
    const auto& certain_lots = certain == Side::Men ? lot.men : lot.women;
    const auto& uncertain_lots = uncertain == Side::Men ? lot.men : lot.women;

    // wants_back[c][a]: certain agent c would leave its partner for a.
    std::vector<std::vector<char>> wants_back;
    for (int c = 0; c < instance.size(certain); ++c)
        wants_back.push_back(wanted_candidates(certain_lots[c].front().order, instance.size(uncertain),
                                               matching.partner(certain, c)));

    Rational product(1);
    for (int a = 0; a < instance.size(uncertain); ++a) {
        Rational safe;
        for (const auto& e : uncertain_lots[a]) {
            auto wants = wanted_candidates(e.order, instance.size(certain), matching.partner(uncertain, a));
            bool blocks = false;
            for (int c = 0; c < instance.size(certain) && !blocks; ++c)
                blocks = wants[c] && wants_back[c][a];
            if (!blocks)
                safe += e.weight;
        }
        product *= safe;
        if (product.is_zero())
            break;
    }
    return product;
}

Rational stability_probability_compact_one_side_certain(const Instance& instance, const Matching& matching)
{
    check_matching(instance, matching);
    if (instance.kind() != ModelKind::Compact)
        throw PreconditionViolation("expected a compact indifference instance");
    Side uncertain;
    if (side_certain(instance, Side::Men))
        uncertain = Side::Women;
    else if (side_certain(instance, Side::Women))
        uncertain = Side::Men;
    else
        throw PreconditionViolation("both sides have ties");

    const Side certain = other(uncertain);
    const auto& cp = instance.compact();
    Rational product(1);
    for (int a = 0; a < instance.size(uncertain); ++a) {
        const int partner = matching.partner(uncertain, a);
        const int partner_tier = partner == kUnmatched ? kUnranked : cp.tier(uncertain, a, partner);
        long long k = 0;
        for (int c = 0; c < instance.size(certain); ++c) {
            if (c == partner || cp.tier(uncertain, a, c) == kUnranked)
                continue;
            if (!cp.prefers(certain, c, a, matching.partner(certain, c)))
                continue;
            int t = cp.tier(uncertain, a, c);
            if (t < partner_tier)
                return Rational(0);
            if (t == partner_tier)
                ++k;
        }
        product *= Rational(1, k + 1);
    }
    return product;
}

Rational stability_probability_exact(const Instance& instance, const Matching& matching, const Limits& limits)
{
    check_matching(instance, matching);
    if (!instance.independent())
        return stability_probability_joint(instance, matching);
    if (realization_count(instance, limits.realizations) > limits.realizations)
        throw ResourceLimit("realization count exceeds cap of " + std::to_string(limits.realizations));

    const auto sup = build_supports(instance, matching, limits);
    const auto pairs = open_pairs(instance, matching);
    const int n = sup.n_agents();
    std::vector<int> choice(static_cast<size_t>(n), 0);
    // Weight of each prefix of the odometer, so a step only recomputes the tail.
    std::vector<Rational> prefix(static_cast<size_t>(n) + 1);
    prefix[0] = Rational(1);
    for (int a = 0; a < n; ++a)
        prefix[a + 1] = prefix[a] * sup.lottery[a][0].weight;

    Rational total;
    while (true) {
        bool stable = true;
        for (auto [m, w] : pairs) {
            int fw = sup.flat(Side::Women, w);
            if (sup.wants[m][choice[m]][w] && sup.wants[fw][choice[fw]][m]) {
                stable = false;
                break;
            }
        }
        if (stable)
            total += prefix[n];

        int a = n - 1;
        while (a >= 0 && ++choice[a] == static_cast<int>(sup.lottery[a].size()))
            choice[a--] = 0;
        if (a < 0)
            break;
        for (int b = a; b < n; ++b)
            prefix[b + 1] = prefix[b] * sup.lottery[b][choice[b]].weight;
    }
    return total;
}

Rational stability_probability(const Instance& instance, const Matching& matching, const Limits& limits)
{
    switch (instance.kind()) {
    case ModelKind::Joint:
        return stability_probability_joint(instance, matching);
    case ModelKind::Lottery:
        if (side_certain(instance, Side::Men) || side_certain(instance, Side::Women))
            return stability_probability_lottery_one_side_certain(instance, matching);
        break;
    case ModelKind::Compact:
        if (side_certain(instance, Side::Men) || side_certain(instance, Side::Women))
            return stability_probability_compact_one_side_certain(instance, matching);
        break;
    }
    return stability_probability_exact(instance, matching, limits);
}

long long hoeffding_samples(const Rational& epsilon, const Rational& delta)
{
    require_probability_parameter(epsilon, "epsilon");
    require_probability_parameter(delta, "delta");
    const double e = epsilon.to_double();
    const double d = delta.to_double();
    return static_cast<long long>(std::ceil(std::log(2.0 / d) / (2.0 * e * e)));
}

ProbabilityEstimate estimate_stability_probability(const Instance& instance, const Matching& matching,
                                                   const Rational& epsilon, const Rational& delta, Rng& rng)
{
    check_matching(instance, matching);
    const long long n = hoeffding_samples(epsilon, delta);
    long long hits = 0;
    for (long long i = 0; i < n; ++i)
        if (is_stable(sample_profile(instance, rng), matching))
            ++hits;
    return {Rational(hits, n), epsilon, delta, n};
}

bool is_stability_probability_one(const Instance& instance, const Matching& matching)
{
    check_matching(instance, matching);
    switch (instance.kind()) {
    case ModelKind::Joint:
        for (const auto& wp : instance.joint().profiles)
            if (!is_stable(wp.profile, matching))
                return false;
        return true;
    case ModelKind::Lottery: {
        // could_want[a][c]: some order of a ranks c above a's partner.
        const auto& lot = instance.lottery();
        auto could_want = [&](Side s, int a) {
            const auto& lots = s == Side::Men ? lot.men : lot.women;
            std::vector<char> any(static_cast<size_t>(instance.size(other(s))), 0);
            for (const auto& e : lots[a]) {
                for (int c : e.order) {
                    if (c == matching.partner(s, a))
                        break;
                    any[c] = 1;
                }
            }
            return any;
        };
        std::vector<std::vector<char>> women_want;
        for (int w = 0; w < instance.n_women(); ++w)
            women_want.push_back(could_want(Side::Women, w));
        for (int m = 0; m < instance.n_men(); ++m) {
            auto man_wants = could_want(Side::Men, m);
            for (int w = 0; w < instance.n_women(); ++w)
                if (man_wants[w] && women_want[w][m])
                    return false;
        }
        return true;
    }
    case ModelKind::Compact: {
        // Ties broken in favour of the pair.
        const auto& cp = instance.compact();
        auto could_want = [&](Side s, int a, int c) {
            int partner = matching.partner(s, a);
            return partner == kUnmatched || cp.tier(s, a, c) <= cp.tier(s, a, partner);
        };
        for (auto [m, w] : open_pairs(instance, matching))
            if (could_want(Side::Men, m, w) && could_want(Side::Women, w, m))
                return false;
        return true;
    }
    }
    return false;
}

NonZeroFormula build_nonzero_2sat(const Instance& instance, const Matching& matching)
{
    check_matching(instance, matching);
    if (instance.kind() != ModelKind::Lottery)
        throw PreconditionViolation("the 2SAT formulation applies to lottery instances");
    const auto sup = build_supports(instance, matching, {});
    NonZeroFormula out;
    for (int a = 0; a < sup.n_agents(); ++a) {
        const auto k = sup.lottery[a].size();
        if (k > 2)
            throw PreconditionViolation("an agent has more than two possible orders");
        std::vector<int> vars;
        for (size_t i = 0; i < k; ++i)
            vars.push_back(out.formula.add_var());
        if (k == 1) {
            out.formula.add_unit({vars[0], true});
        } else {
            out.formula.add_clause({vars[0], true}, {vars[1], true});
            out.formula.add_clause({vars[0], false}, {vars[1], false});
        }
        out.var_of.push_back(std::move(vars));
    }
    for (auto [m, w] : open_pairs(instance, matching)) {
        int fw = sup.flat(Side::Women, w);
        for (size_t i = 0; i < sup.lottery[m].size(); ++i) {
            if (!sup.wants[m][i][w])
                continue;
            for (size_t j = 0; j < sup.lottery[fw].size(); ++j)
                if (sup.wants[fw][j][m])
                    out.formula.add_clause({out.var_of[m][i], false}, {out.var_of[fw][j], false});
        }
    }
    return out;
}

NonZeroResult nonzero_by_search(const Instance& instance, const Matching& matching, const Limits& limits)
{
    check_matching(instance, matching);
    if (!instance.independent())
        throw PreconditionViolation("search applies to independent models");
    const auto sup = build_supports(instance, matching, limits);
    const int n = sup.n_agents();

    // Opposite-side agents an agent can block with, and its involvement count.
    std::vector<std::vector<int>> neighbours(static_cast<size_t>(n));
    std::vector<long long> involvement(static_cast<size_t>(n), 0);
    for (auto [m, w] : open_pairs(instance, matching)) {
        int fw = sup.flat(Side::Women, w);
        neighbours[m].push_back(fw);
        neighbours[fw].push_back(m);
        for (const auto& wants : sup.wants[m])
            involvement[m] += wants[w];
        for (const auto& wants : sup.wants[fw])
            involvement[fw] += wants[m];
    }
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return involvement[a] > involvement[b]; });

    auto candidate_index = [&](int flat_agent) { return flat_agent < sup.n_men ? flat_agent : flat_agent - sup.n_men; };
    std::vector<int> choice(static_cast<size_t>(n), -1);
    long long nodes = 0;
    auto consistent = [&](int a) {
        for (int b : neighbours[a]) {
            if (choice[b] < 0)
                continue;
            if (sup.wants[a][choice[a]][candidate_index(b)] && sup.wants[b][choice[b]][candidate_index(a)])
                return false;
        }
        return true;
    };

    std::vector<int> next(static_cast<size_t>(n) + 1, 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == n)
            return {true, profile_from_choice(sup, choice)};
        int a = order[depth];
        bool advanced = false;
        while (next[depth] < static_cast<int>(sup.lottery[a].size())) {
            choice[a] = next[depth]++;
            if (++nodes > limits.search_nodes)
                throw ResourceLimit("non-zero search exceeded " + std::to_string(limits.search_nodes) + " nodes");
            if (consistent(a)) {
                advanced = true;
                break;
            }
        }
        if (advanced) {
            ++depth;
            next[depth] = 0;
        } else {
            choice[a] = -1;
            --depth;
        }
    }
    return {false, std::nullopt};
}

NonZeroResult is_stability_probability_nonzero(const Instance& instance, const Matching& matching,
                                               const Limits& limits)
{
    check_matching(instance, matching);
    switch (instance.kind()) {
    case ModelKind::Joint:
        for (const auto& wp : instance.joint().profiles)
            if (is_stable(wp.profile, matching))
                return {true, wp.profile};
        return {false, std::nullopt};
    case ModelKind::Compact: {
        const auto& cp = instance.compact();
        if (!is_weakly_stable(cp, matching))
            return {false, std::nullopt};
        // Each agent puts its partner first within its tie.
        std::vector<LinearOrder> orders[2];
        for (Side s : {Side::Men, Side::Women})
            for (int a = 0; a < instance.size(s); ++a) {
                LinearOrder o;
                for (auto tier : cp.order(s, a)) {
                    std::sort(tier.begin(), tier.end());
                    auto it = std::find(tier.begin(), tier.end(), matching.partner(s, a));
                    if (it != tier.end())
                        std::rotate(tier.begin(), it, it + 1);
                    o.insert(o.end(), tier.begin(), tier.end());
                }
                orders[s == Side::Men ? 0 : 1].push_back(std::move(o));
            }
        return {true, Profile(std::move(orders[0]), std::move(orders[1]))};
    }
    case ModelKind::Lottery:
        break;
    }

    const auto& lot = instance.lottery();
    bool small = true;
    for (const auto* side : {&lot.men, &lot.women})
        for (const auto& l : *side)
            small = small && l.size() <= 2;
    if (!small)
        return nonzero_by_search(instance, matching, limits);

    auto built = build_nonzero_2sat(instance, matching);
    auto assignment = solve_2sat(built.formula);
    if (!assignment)
        return {false, std::nullopt};
    std::vector<LinearOrder> men, women;
    for (size_t a = 0; a < built.var_of.size(); ++a) {
        const auto& vars = built.var_of[a];
        const bool men_side = static_cast<int>(a) < instance.n_men();
        const auto& agent_lot = men_side ? lot.men[a] : lot.women[a - instance.n_men()];
        size_t pick = 0;
        while (!(*assignment)[vars[pick]])
            ++pick;
        (men_side ? men : women).push_back(agent_lot[pick].order);
    }
    return {true, Profile(std::move(men), std::move(women))};
}

} // namespace usm
