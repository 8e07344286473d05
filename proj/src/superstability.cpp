#include "usm/superstability.hpp"

#include <algorithm>

namespace usm {

SmpInstance::SmpInstance(int n_men, int n_women, std::vector<PartialOrder> men, std::vector<PartialOrder> women,
                         std::vector<char> acceptable)
    : n_men_(n_men), n_women_(n_women), men_(std::move(men)), women_(std::move(women)), accept_(std::move(acceptable))
{
    if (static_cast<int>(men_.size()) != n_men_ || static_cast<int>(women_.size()) != n_women_ ||
        accept_.size() != static_cast<size_t>(n_men_) * n_women_)
        throw InvalidInput("partial-order instance dimensions are inconsistent");
    for (const auto& p : men_)
        if (p.n_candidates() != n_women_)
            throw InvalidInput("man's partial order has the wrong candidate count");
    for (const auto& p : women_)
        if (p.n_candidates() != n_men_)
            throw InvalidInput("woman's partial order has the wrong candidate count");
}

SmpInstance SmpInstance::from_instance(const Instance& instance)
{
    std::vector<PartialOrder> men, women;
    for (int m = 0; m < instance.n_men(); ++m)
        men.push_back(certainly_preferred(instance, {Side::Men, m}));
    for (int w = 0; w < instance.n_women(); ++w)
        women.push_back(certainly_preferred(instance, {Side::Women, w}));
    std::vector<char> acc(static_cast<size_t>(instance.n_men()) * instance.n_women(), 0);
    for (int m = 0; m < instance.n_men(); ++m)
        for (int w = 0; w < instance.n_women(); ++w)
            acc[static_cast<size_t>(m) * instance.n_women() + w] = instance.acceptable(m, w) ? 1 : 0;
    return SmpInstance(instance.n_men(), instance.n_women(), std::move(men), std::move(women), std::move(acc));
}

bool is_very_weakly_blocking(const SmpInstance& smp, const Matching& matching, int m, int w)
{
    if (!smp.acceptable(m, w) || matching.partner_of_man(m) == w)
        return false;
    return !smp.prefers(Side::Men, m, matching.partner_of_man(m), w) &&
           !smp.prefers(Side::Women, w, matching.partner_of_woman(w), m);
}

bool is_super_stable(const SmpInstance& smp, const Matching& matching)
{
    for (int m = 0; m < smp.n_men(); ++m)
        for (int w = 0; w < smp.n_women(); ++w)
            if (is_very_weakly_blocking(smp, matching, m, w))
                return false;
    return true;
}

std::optional<Matching> super_stable_matching(const SmpInstance& smp)
{
    const int nm = smp.n_men();
    const int nw = smp.n_women();
    std::vector<char> present(static_cast<size_t>(nm) * nw, 0);
    auto at = [&](int m, int w) -> char& { return present[static_cast<size_t>(m) * nw + w]; };
    for (int m = 0; m < nm; ++m)
        for (int w = 0; w < nw; ++w)
            at(m, w) = smp.acceptable(m, w) ? 1 : 0;

    // Candidate c is undominated for the agent if no remaining partner beats
    // it. The agent then cannot end up strictly better than c, so c must end
    // up with the agent itself or with somebody c strictly prefers.
    auto undominated = [&](Side s, int agent, int c) {
        const int n_cand = s == Side::Men ? nw : nm;
        for (int d = 0; d < n_cand; ++d) {
            bool remaining = s == Side::Men ? at(agent, d) : at(d, agent);
            if (remaining && smp.prefers(s, agent, d, c))
                return false;
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (Side s : {Side::Men, Side::Women}) {
            const int n_agents = s == Side::Men ? nm : nw;
            const int n_cand = s == Side::Men ? nw : nm;
            for (int a = 0; a < n_agents; ++a)
                for (int c = 0; c < n_cand; ++c) {
                    bool ok = s == Side::Men ? smp.acceptable(a, c) : smp.acceptable(c, a);
                    if (!ok || !undominated(s, a, c))
                        continue;
                    // c keeps only a and candidates it strictly prefers to a
                    for (int d = 0; d < n_agents; ++d) {
                        if (d == a)
                            continue;
                        char& pair = s == Side::Men ? at(d, c) : at(c, d);
                        if (pair && !smp.prefers(other(s), c, d, a)) {
                            pair = 0;
                            changed = true;
                        }
                    }
                }
        }
    }

    Matching candidate(nm, nw);
    for (int m = 0; m < nm; ++m) {
        int head = kUnmatched;
        for (int w = 0; w < nw; ++w)
            if (at(m, w) && undominated(Side::Men, m, w)) {
                if (head != kUnmatched)
                    return std::nullopt;
                head = w;
            }
        if (head == kUnmatched)
            continue;
        if (candidate.partner_of_woman(head) != kUnmatched)
            return std::nullopt;
        candidate.match(m, head);
    }
    if (!is_super_stable(smp, candidate))
        return std::nullopt;
    return candidate;
}

bool is_very_weakly_blocking(const Instance& instance, const Matching& matching, Pair pair)
{
    if (!instance.independent())
        throw PreconditionViolation("very weak blocking characterizes certain stability only for independent models");
    check_matching(instance, matching);
    auto [m, w] = pair;
    if (m < 0 || m >= instance.n_men() || w < 0 || w >= instance.n_women())
        throw InvalidInput("pair references unknown agents");
    if (matching.partner_of_man(m) == w)
        throw PreconditionViolation("pair is matched together");
    if (!instance.acceptable(m, w))
        return false;
    auto mu_m = matching.partner_of_man(m);
    auto mu_w = matching.partner_of_woman(w);
    bool man_safe = mu_m != kUnmatched && certainly_preferred(instance, {Side::Men, m}).before(mu_m, w);
    bool woman_safe = mu_w != kUnmatched && certainly_preferred(instance, {Side::Women, w}).before(mu_w, m);
    return !man_safe && !woman_safe;
}

bool is_certainly_stable(const Instance& instance, const Matching& matching)
{
    check_matching(instance, matching);
    if (!instance.independent()) {
        for (const auto& wp : instance.joint().profiles)
            if (!is_stable(wp.profile, matching))
                return false;
        return true;
    }
    return is_super_stable(SmpInstance::from_instance(instance), matching);
}

std::optional<Matching> exists_certainly_stable_matching(const Instance& instance, const Limits& limits)
{
    if (instance.independent())
        return super_stable_matching(SmpInstance::from_instance(instance));

    const auto& profiles = instance.joint().profiles;
    // A profile whose optimal matchings coincide has a single stable matching.
    const Profile* base = &profiles.front().profile;
    for (const auto& wp : profiles)
        if (gale_shapley(wp.profile, Side::Men) == gale_shapley(wp.profile, Side::Women)) {
            base = &wp.profile;
            break;
        }
    for (const auto& mu : enumerate_stable_matchings(*base, limits)) {
        bool everywhere = std::all_of(profiles.begin(), profiles.end(),
                                      [&](const WeightedProfile& wp) { return is_stable(wp.profile, mu); });
        if (everywhere)
            return mu;
    }
    return std::nullopt;
}

} // namespace usm
