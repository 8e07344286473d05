#include "usm/core.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace usm {

std::string to_string(Side s)
{
    return s == Side::Men ? "men" : "women";
}

namespace {

template <typename Order>
void check_order_entries(const std::vector<Order>& orders, int n_candidates, const char* side)
{
    for (size_t a = 0; a < orders.size(); ++a) {
        std::vector<char> seen(static_cast<size_t>(n_candidates), 0);
        auto visit = [&](int c) {
            if (c < 0 || c >= n_candidates)
                throw InvalidInput(std::string(side) + " " + std::to_string(a) + " lists unknown candidate " +
                                   std::to_string(c));
            if (seen[static_cast<size_t>(c)])
                throw InvalidInput(std::string(side) + " " + std::to_string(a) + " lists candidate " +
                                   std::to_string(c) + " twice");
            seen[static_cast<size_t>(c)] = 1;
        };
        if constexpr (std::is_same_v<Order, LinearOrder>) {
            for (int c : orders[a])
                visit(c);
        } else {
            for (const auto& tier : orders[a]) {
                if (tier.empty())
                    throw InvalidInput(std::string(side) + " " + std::to_string(a) + " has an empty tie");
                for (int c : tier)
                    visit(c);
            }
        }
    }
}

// acceptance[m * nw + w] = 1 iff m lists w and w lists m.
std::vector<char> mutual_acceptance(const std::vector<std::vector<int>>& men_lists,
                                    const std::vector<std::vector<int>>& women_lists)
{
    const size_t nw = women_lists.size();
    std::vector<char> by_man(men_lists.size() * nw, 0);
    for (size_t m = 0; m < men_lists.size(); ++m)
        for (int w : men_lists[m])
            by_man[m * nw + static_cast<size_t>(w)] = 1;
    std::vector<char> both(by_man.size(), 0);
    for (size_t w = 0; w < nw; ++w)
        for (int m : women_lists[w])
            if (by_man[static_cast<size_t>(m) * nw + w])
                both[static_cast<size_t>(m) * nw + w] = 1;
    return both;
}

std::vector<int> flatten(const WeakOrder& order)
{
    std::vector<int> out;
    for (const auto& tier : order)
        out.insert(out.end(), tier.begin(), tier.end());
    return out;
}

} // namespace

Profile::Profile(std::vector<LinearOrder> men, std::vector<LinearOrder> women)
    : men_(std::move(men)), women_(std::move(women))
{
    const int nm = n_men();
    const int nw = n_women();
    check_order_entries(men_, nw, "man");
    check_order_entries(women_, nm, "woman");

    auto ok = mutual_acceptance(men_, women_);
    for (int m = 0; m < nm; ++m)
        std::erase_if(men_[m], [&](int w) { return !ok[static_cast<size_t>(m) * nw + w]; });
    for (int w = 0; w < nw; ++w)
        std::erase_if(women_[w], [&](int m) { return !ok[static_cast<size_t>(m) * nw + w]; });

    men_rank_.assign(static_cast<size_t>(nm) * nw, kUnranked);
    women_rank_.assign(static_cast<size_t>(nw) * nm, kUnranked);
    for (int m = 0; m < nm; ++m)
        for (size_t r = 0; r < men_[m].size(); ++r)
            men_rank_[static_cast<size_t>(m) * nw + men_[m][r]] = static_cast<int>(r);
    for (int w = 0; w < nw; ++w)
        for (size_t r = 0; r < women_[w].size(); ++r)
            women_rank_[static_cast<size_t>(w) * nm + women_[w][r]] = static_cast<int>(r);
}

bool Profile::is_complete() const
{
    for (const auto& o : men_)
        if (static_cast<int>(o.size()) != n_women())
            return false;
    for (const auto& o : women_)
        if (static_cast<int>(o.size()) != n_men())
            return false;
    return true;
}

Matching::Matching(int n_men, int n_women)
    : man_(static_cast<size_t>(n_men), kUnmatched), woman_(static_cast<size_t>(n_women), kUnmatched)
{
}

Matching Matching::from_pairs(int n_men, int n_women, const std::vector<std::pair<int, int>>& pairs)
{
    Matching result(n_men, n_women);
    for (auto [m, w] : pairs) {
        if (m < 0 || m >= n_men)
            throw InvalidInput("matching references unknown man " + std::to_string(m));
        if (w < 0 || w >= n_women)
            throw InvalidInput("matching references unknown woman " + std::to_string(w));
        if (result.man_[m] != kUnmatched)
            throw InvalidInput("man " + std::to_string(m) + " matched twice");
        if (result.woman_[w] != kUnmatched)
            throw InvalidInput("woman " + std::to_string(w) + " matched twice");
        result.man_[m] = w;
        result.woman_[w] = m;
    }
    return result;
}

void Matching::match(int m, int w)
{
    if (man_[m] != kUnmatched)
        woman_[man_[m]] = kUnmatched;
    if (woman_[w] != kUnmatched)
        man_[woman_[w]] = kUnmatched;
    man_[m] = w;
    woman_[w] = m;
}

void Matching::unmatch_man(int m)
{
    if (man_[m] != kUnmatched)
        woman_[man_[m]] = kUnmatched;
    man_[m] = kUnmatched;
}

std::vector<std::pair<int, int>> Matching::pairs() const
{
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m < n_men(); ++m)
        if (man_[m] != kUnmatched)
            out.emplace_back(m, man_[m]);
    return out;
}

int Matching::size() const
{
    return static_cast<int>(std::count_if(man_.begin(), man_.end(), [](int w) { return w != kUnmatched; }));
}

bool Matching::is_perfect() const
{
    return n_men() == n_women() && size() == n_men();
}

void check_matching(const Profile& profile, const Matching& matching)
{
    if (matching.n_men() != profile.n_men() || matching.n_women() != profile.n_women())
        throw InvalidInput("matching dimensions do not match the instance");
    for (auto [m, w] : matching.pairs())
        if (!profile.acceptable(m, w))
            throw InvalidInput("matching pairs man " + std::to_string(m) + " with unacceptable woman " +
                               std::to_string(w));
}

bool is_stable(const Profile& profile, const Matching& matching)
{
    check_matching(profile, matching);
    for (int m = 0; m < profile.n_men(); ++m) {
        const int current = matching.partner_of_man(m);
        for (int w : profile.order(Side::Men, m)) {
            if (w == current)
                break;
            if (profile.prefers(Side::Women, w, m, matching.partner_of_woman(w)))
                return false;
        }
    }
    return true;
}

std::vector<Pair> blocking_pairs(const Profile& profile, const Matching& matching)
{
    check_matching(profile, matching);
    std::vector<Pair> out;
    for (int m = 0; m < profile.n_men(); ++m) {
        const int current = matching.partner_of_man(m);
        for (int w : profile.order(Side::Men, m)) {
            if (w == current)
                break;
            if (profile.prefers(Side::Women, w, m, matching.partner_of_woman(w)))
                out.emplace_back(m, w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Matching gale_shapley(const Profile& profile, Side proposing)
{
    const Side receiving = other(proposing);
    const int n_prop = profile.size(proposing);
    const int n_recv = profile.size(receiving);
    std::vector<int> next(static_cast<size_t>(n_prop), 0);
    std::vector<int> prop_partner(static_cast<size_t>(n_prop), kUnmatched);
    std::vector<int> recv_partner(static_cast<size_t>(n_recv), kUnmatched);

    // Lowest-index free proposer moves first.
    std::deque<int> free;
    for (int a = 0; a < n_prop; ++a)
        free.push_back(a);
    while (!free.empty()) {
        int a = free.front();
        free.pop_front();
        const auto& list = profile.order(proposing, a);
        while (next[a] < static_cast<int>(list.size())) {
            int b = list[static_cast<size_t>(next[a]++)];
            int holder = recv_partner[b];
            if (holder == kUnmatched) {
                recv_partner[b] = a;
                prop_partner[a] = b;
                break;
            }
            if (profile.prefers(receiving, b, a, holder)) {
                recv_partner[b] = a;
                prop_partner[a] = b;
                prop_partner[holder] = kUnmatched;
                free.push_front(holder);
                break;
            }
        }
    }

    Matching result(profile.n_men(), profile.n_women());
    for (int a = 0; a < n_prop; ++a) {
        if (prop_partner[a] == kUnmatched)
            continue;
        if (proposing == Side::Men)
            result.match(a, prop_partner[a]);
        else
            result.match(prop_partner[a], a);
    }
    return result;
}

namespace {

void brute_force_rec(const Profile& profile, int m, Matching& current, std::vector<char>& used,
                     std::vector<Matching>& out, const Limits& limits)
{
    if (m == profile.n_men()) {
        if (is_stable(profile, current)) {
            out.push_back(current);
            if (static_cast<long long>(out.size()) > limits.stable_matchings)
                throw ResourceLimit("stable matching enumeration exceeded cap of " +
                                    std::to_string(limits.stable_matchings));
        }
        return;
    }
    brute_force_rec(profile, m + 1, current, used, out, limits);
    for (int w : profile.order(Side::Men, m)) {
        if (used[w])
            continue;
        used[w] = 1;
        current.match(m, w);
        brute_force_rec(profile, m + 1, current, used, out, limits);
        current.unmatch_man(m);
        used[w] = 0;
    }
}

} // namespace

std::vector<Matching> enumerate_stable_matchings_brute_force(const Profile& profile, const Limits& limits)
{
    std::vector<Matching> out;
    Matching current(profile.n_men(), profile.n_women());
    std::vector<char> used(static_cast<size_t>(profile.n_women()), 0);
    brute_force_rec(profile, 0, current, used, out, limits);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Matching> enumerate_stable_matchings_rotations(const Profile& profile, const Limits& limits)
{
    const int nm = profile.n_men();
    std::set<Matching> seen;
    std::vector<Matching> stack{gale_shapley(profile, Side::Men)};
    seen.insert(stack.front());

    while (!stack.empty()) {
        Matching mu = stack.back();
        stack.pop_back();

        // next[m]: the man whose partner m would move to, or -1 if m cannot move.
        std::vector<int> next(static_cast<size_t>(nm), -1);
        for (int m = 0; m < nm; ++m) {
            int current = mu.partner_of_man(m);
            if (current == kUnmatched)
                continue;
            const auto& list = profile.order(Side::Men, m);
            auto it = std::find(list.begin(), list.end(), current);
            for (++it; it != list.end(); ++it) {
                int w = *it;
                if (profile.prefers(Side::Women, w, m, mu.partner_of_woman(w))) {
                    next[m] = mu.partner_of_woman(w); // -1 when w is single: m is stuck
                    break;
                }
            }
        }

        // Exposed rotations are the cycles of the successor map.
        std::vector<int> state(static_cast<size_t>(nm), 0); // 0 new, 1 on path, 2 done
        for (int start = 0; start < nm; ++start) {
            if (state[start] != 0)
                continue;
            std::vector<int> path;
            int m = start;
            while (m != -1 && state[m] == 0) {
                state[m] = 1;
                path.push_back(m);
                m = next[m];
            }
            if (m != -1 && state[m] == 1) {
                auto cycle_begin = std::find(path.begin(), path.end(), m);
                std::vector<int> cycle(cycle_begin, path.end());
                Matching eliminated = mu;
                std::vector<int> targets;
                for (int cm : cycle)
                    targets.push_back(mu.partner_of_man(next[cm]));
                for (size_t i = 0; i < cycle.size(); ++i)
                    eliminated.unmatch_man(cycle[i]);
                for (size_t i = 0; i < cycle.size(); ++i)
                    eliminated.match(cycle[i], targets[i]);
                if (seen.insert(eliminated).second) {
                    if (static_cast<long long>(seen.size()) > limits.stable_matchings)
                        throw ResourceLimit("stable matching enumeration exceeded cap of " +
                                            std::to_string(limits.stable_matchings));
                    stack.push_back(std::move(eliminated));
                }
            }
            for (int p : path)
                state[p] = 2;
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<Matching> enumerate_stable_matchings(const Profile& profile, const Limits& limits)
{
    if (std::max(profile.n_men(), profile.n_women()) <= 4)
        return enumerate_stable_matchings_brute_force(profile, limits);
    return enumerate_stable_matchings_rotations(profile, limits);
}

WeakProfile::WeakProfile(std::vector<WeakOrder> men, std::vector<WeakOrder> women)
    : men_(std::move(men)), women_(std::move(women))
{
    const int nm = n_men();
    const int nw = n_women();
    check_order_entries(men_, nw, "man");
    check_order_entries(women_, nm, "woman");

    std::vector<std::vector<int>> men_flat, women_flat;
    for (const auto& o : men_)
        men_flat.push_back(flatten(o));
    for (const auto& o : women_)
        women_flat.push_back(flatten(o));
    auto ok = mutual_acceptance(men_flat, women_flat);

    auto prune = [](WeakOrder& order, auto keep) {
        for (auto& tier : order)
            std::erase_if(tier, [&](int c) { return !keep(c); });
        std::erase_if(order, [](const std::vector<int>& t) { return t.empty(); });
    };
    for (int m = 0; m < nm; ++m)
        prune(men_[m], [&](int w) { return ok[static_cast<size_t>(m) * nw + w] != 0; });
    for (int w = 0; w < nw; ++w)
        prune(women_[w], [&](int m) { return ok[static_cast<size_t>(m) * nw + w] != 0; });

    men_tier_.assign(static_cast<size_t>(nm) * nw, kUnranked);
    women_tier_.assign(static_cast<size_t>(nw) * nm, kUnranked);
    for (int m = 0; m < nm; ++m)
        for (size_t t = 0; t < men_[m].size(); ++t)
            for (int w : men_[m][t])
                men_tier_[static_cast<size_t>(m) * nw + w] = static_cast<int>(t);
    for (int w = 0; w < nw; ++w)
        for (size_t t = 0; t < women_[w].size(); ++t)
            for (int m : women_[w][t])
                women_tier_[static_cast<size_t>(w) * nm + m] = static_cast<int>(t);
}

void check_matching(const WeakProfile& profile, const Matching& matching)
{
    if (matching.n_men() != profile.n_men() || matching.n_women() != profile.n_women())
        throw InvalidInput("matching dimensions do not match the instance");
    for (auto [m, w] : matching.pairs())
        if (!profile.acceptable(m, w))
            throw InvalidInput("matching pairs man " + std::to_string(m) + " with unacceptable woman " +
                               std::to_string(w));
}

bool is_weakly_stable(const WeakProfile& profile, const Matching& matching)
{
    check_matching(profile, matching);
    for (int m = 0; m < profile.n_men(); ++m)
        for (int w = 0; w < profile.n_women(); ++w) {
            if (!profile.acceptable(m, w) || matching.partner_of_man(m) == w)
                continue;
            if (profile.prefers(Side::Men, m, w, matching.partner_of_man(m)) &&
                profile.prefers(Side::Women, w, m, matching.partner_of_woman(w)))
                return false;
        }
    return true;
}

} // namespace usm
