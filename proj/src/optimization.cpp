#include "usm/optimization.hpp"

#include "usm/probability.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace usm {

std::vector<int> uncertain_agents(const Instance& instance, Side side)
{
    std::vector<int> out;
    for (int a = 0; a < instance.size(side); ++a)
        if (!is_certain(instance, {side, a}))
            out.push_back(a);
    return out;
}

namespace {

// Orders of the certain agents; uncertain agents get an empty placeholder.
std::vector<LinearOrder> certain_orders(const Instance& instance, Side side)
{
    std::vector<LinearOrder> out;
    for (int a = 0; a < instance.size(side); ++a)
        out.push_back(certain_order(instance, {side, a}).value_or(LinearOrder{}));
    return out;
}

MostStableResult search_complete(const Instance& inst, const Limits& limits)
{
    const int n = inst.n_men();
    const auto uncertain = uncertain_agents(inst, Side::Men);
    const auto men = certain_orders(inst, Side::Men);
    const auto women = certain_orders(inst, Side::Women);
    std::vector<char> is_uncertain(static_cast<size_t>(n), 0);
    for (int x : uncertain)
        is_uncertain[x] = 1;

    auto rank = [](const LinearOrder& order, int c) {
        auto it = std::find(order.begin(), order.end(), c);
        return it == order.end() ? kUnranked : static_cast<int>(it - order.begin());
    };

    MostStableResult best;
    bool have_best = false;
    std::optional<Matching> first_fallback;

    // Injective maps of the uncertain men into the women, lexicographic.
    std::vector<int> image(uncertain.size(), -1);
    std::vector<char> taken(static_cast<size_t>(n), 0);
    std::function<void(size_t)> visit = [&](size_t depth) {
        if (depth < uncertain.size()) {
            for (int w = 0; w < n; ++w) {
                if (taken[w])
                    continue;
                taken[w] = 1;
                image[depth] = w;
                visit(depth + 1);
                taken[w] = 0;
            }
            return;
        }

        Matching partial(n, n);
        for (size_t i = 0; i < uncertain.size(); ++i)
            partial.match(uncertain[i], image[i]);

        // Residual instance: certain men and unassigned women.
        auto residual = [&](const std::vector<LinearOrder>& men_lists) {
            std::vector<LinearOrder> rm(static_cast<size_t>(n)), rw(static_cast<size_t>(n));
            for (int m = 0; m < n; ++m)
                if (!is_uncertain[m])
                    for (int w : men_lists[m])
                        if (!taken[w])
                            rm[m].push_back(w);
            for (int w = 0; w < n; ++w)
                if (!taken[w])
                    for (int m : women[w])
                        if (!is_uncertain[m])
                            rw[w].push_back(m);
            return Profile(std::move(rm), std::move(rw));
        };
        auto extend = [&](const Matching& sub) {
            Matching out = partial;
            for (auto [m, w] : sub.pairs())
                out.match(m, w);
            return out;
        };

        const Matching man_optimal = extend(gale_shapley(residual(men), Side::Men));
        if (!first_fallback)
            first_fallback = man_optimal;

        // A certain man and an assigned woman blocking the man-optimal
        // extension block every extension.
        for (int m = 0; m < n; ++m) {
            if (is_uncertain[m])
                continue;
            for (size_t i = 0; i < uncertain.size(); ++i) {
                int w = image[i];
                bool man_wants = rank(men[m], w) < rank(men[m], man_optimal.partner_of_man(m));
                bool woman_wants = rank(women[w], m) < rank(women[w], uncertain[i]);
                if (rank(men[m], w) != kUnranked && man_wants && woman_wants)
                    return;
            }
        }

        // Drop every woman a certain man ranks below an assigned woman who
        // would take him over her partner.
        std::vector<LinearOrder> truncated = men;
        for (int m = 0; m < n; ++m) {
            if (is_uncertain[m])
                continue;
            int cut = kUnranked;
            for (size_t i = 0; i < uncertain.size(); ++i) {
                int w = image[i];
                if (rank(women[w], m) < rank(women[w], uncertain[i]))
                    cut = std::min(cut, rank(men[m], w));
            }
            if (cut != kUnranked)
                truncated[m].resize(static_cast<size_t>(cut) + 1);
        }

        const Matching candidate = extend(gale_shapley(residual(truncated), Side::Women));
        Rational p = stability_probability(inst, candidate, limits);
        ++best.examined;
        if (!have_best || p > best.probability) {
            best.matching = candidate;
            best.probability = p;
            have_best = true;
        }
    };
    visit(0);

    if (!have_best) {
        best.matching = *first_fallback;
        best.probability = stability_probability(inst, best.matching, limits);
        best.all_excluded = true;
    }
    return best;
}

} // namespace

MostStableResult most_stable_constant_uncertain(const Instance& instance, Side uncertain_side, const Limits& limits)
{
    if (!uncertain_agents(instance, other(uncertain_side)).empty())
        throw PreconditionViolation("the " + to_string(other(uncertain_side)) + " side has uncertain agents");
    const auto k = uncertain_agents(instance, uncertain_side).size();
    if (static_cast<long long>(k) > limits.uncertain_agents)
        throw ResourceLimit(std::to_string(k) + " uncertain agents exceed the cap of " +
                            std::to_string(limits.uncertain_agents));

    auto completed = complete_instance(instance);
    const bool swap = uncertain_side == Side::Women;
    const Instance work = swap ? swap_sides(completed.instance) : completed.instance;

    auto result = search_complete(work, limits);
    Matching m = swap ? swap_sides(result.matching) : result.matching;
    result.matching = restrict_matching(m, completed.padding);
    result.probability = stability_probability(instance, result.matching, limits);
    return result;
}

MostStableResult most_stable_brute_force(const Instance& instance, const Limits& limits)
{
    const int nm = instance.n_men();
    const int nw = instance.n_women();
    if (std::max(nm, nw) > limits.brute_force_agents)
        throw ResourceLimit("brute force is capped at " + std::to_string(limits.brute_force_agents) + " agents per side");

    MostStableResult best;
    bool have_best = false;
    auto consider = [&](const Matching& mu) {
        Rational p = stability_probability_exact(instance, mu, limits);
        ++best.examined;
        if (!have_best || p > best.probability) {
            best.matching = mu;
            best.probability = p;
            have_best = true;
        }
    };

    if (instance.is_complete()) {
        std::vector<int> perm(static_cast<size_t>(nm));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Matching mu(nm, nw);
            for (int m = 0; m < nm; ++m)
                mu.match(m, perm[m]);
            consider(mu);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    // All matchings over acceptable pairs; a single man sorts first.
    Matching cur(nm, nw);
    std::vector<char> used(static_cast<size_t>(nw), 0);
    std::function<void(int)> rec = [&](int m) {
        if (m == nm) {
            consider(cur);
            return;
        }
        rec(m + 1);
        for (int w = 0; w < nw; ++w)
            if (!used[w] && instance.acceptable(m, w)) {
                used[w] = 1;
                cur.match(m, w);
                rec(m + 1);
                cur.unmatch_man(m);
                used[w] = 0;
            }
    };
    rec(0);
    return best;
}

} // namespace usm
