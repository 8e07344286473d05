#include "usm/models.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace usm {

std::string to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::Lottery:
        return "lottery";
    case ModelKind::Compact:
        return "compact";
    case ModelKind::Joint:
        return "joint";
    }
    return "?";
}

namespace {

std::string agent_label(Side s, int agent)
{
    return std::string(s == Side::Men ? "man " : "woman ") + std::to_string(agent);
}

void check_linear_order(const LinearOrder& order, int n_candidates, const std::string& who)
{
    std::vector<char> seen(static_cast<size_t>(n_candidates), 0);
    for (int c : order) {
        if (c < 0 || c >= n_candidates)
            throw InvalidInput(who + " lists unknown candidate " + std::to_string(c));
        if (seen[c])
            throw InvalidInput(who + " lists candidate " + std::to_string(c) + " twice");
        seen[c] = 1;
    }
}

// Drops zero weights and merges duplicate orders, keeping first-occurrence order.
Lottery merge_lottery(const Lottery& lottery, const std::string& who)
{
    Lottery merged;
    for (const auto& entry : lottery) {
        if (entry.weight < Rational(0))
            throw InvalidInput(who + " has a negative weight");
        if (entry.weight.is_zero())
            continue;
        auto it = std::find_if(merged.begin(), merged.end(), [&](const WeightedOrder& e) { return e.order == entry.order; });
        if (it == merged.end())
            merged.push_back(entry);
        else
            it->weight += entry.weight;
    }
    return merged;
}

Rational total_weight(const Lottery& lottery)
{
    Rational sum;
    for (const auto& e : lottery)
        sum += e.weight;
    return sum;
}

std::vector<std::string> default_names(const char* prefix, int n)
{
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i + 1));
    return out;
}

long long saturating_mul(long long a, long long b, long long cap)
{
    if (a > cap || b > cap)
        return cap + 1;
    if (b != 0 && a > (cap + 1) / b)
        return cap + 1;
    return std::min(a * b, cap + 1);
}

long long saturating_factorial(long long k, long long cap)
{
    long long f = 1;
    for (long long i = 2; i <= k; ++i)
        f = saturating_mul(f, i, cap);
    return f;
}

// All linear extensions of a weak order in lexicographic tier-by-tier order.
std::vector<LinearOrder> linear_extensions(const WeakOrder& order, long long cap)
{
    long long count = 1;
    for (const auto& tier : order)
        count = saturating_mul(count, saturating_factorial(static_cast<long long>(tier.size()), cap), cap);
    if (count > cap)
        throw ResourceLimit("linear-extension count exceeds cap of " + std::to_string(cap));

    std::vector<LinearOrder> out{LinearOrder{}};
    for (const auto& tier : order) {
        std::vector<int> perm(tier);
        std::sort(perm.begin(), perm.end());
        std::vector<std::vector<int>> perms;
        do
            perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));
        std::vector<LinearOrder> next;
        next.reserve(out.size() * perms.size());
        for (const auto& prefix : out)
            for (const auto& p : perms) {
                LinearOrder o = prefix;
                o.insert(o.end(), p.begin(), p.end());
                next.push_back(std::move(o));
            }
        out = std::move(next);
    }
    return out;
}

long long extension_count(const WeakOrder& order, long long cap)
{
    long long count = 1;
    for (const auto& tier : order)
        count = saturating_mul(count, saturating_factorial(static_cast<long long>(tier.size()), cap), cap);
    return count;
}

} // namespace

ModelKind Instance::kind() const
{
    switch (model_.index()) {
    case 0:
        return ModelKind::Lottery;
    case 1:
        return ModelKind::Compact;
    default:
        return ModelKind::Joint;
    }
}

const LotteryModel& Instance::lottery() const
{
    if (auto p = std::get_if<LotteryModel>(&model_))
        return *p;
    throw PreconditionViolation("instance is not a lottery model");
}

const WeakProfile& Instance::compact() const
{
    if (auto p = std::get_if<WeakProfile>(&model_))
        return *p;
    throw PreconditionViolation("instance is not a compact indifference model");
}

const JointModel& Instance::joint() const
{
    if (auto p = std::get_if<JointModel>(&model_))
        return *p;
    throw PreconditionViolation("instance is not a joint probability model");
}

std::vector<int> Instance::acceptable_list(Side s, int agent) const
{
    std::vector<int> out;
    for (int c = 0; c < size(other(s)); ++c)
        if (s == Side::Men ? acceptable(agent, c) : acceptable(c, agent))
            out.push_back(c);
    return out;
}

bool Instance::is_complete() const
{
    return n_men_ == n_women_ && std::all_of(accept_.begin(), accept_.end(), [](char c) { return c != 0; });
}

void Instance::set_names(std::vector<std::string> men, std::vector<std::string> women)
{
    if (static_cast<int>(men.size()) != n_men_ || static_cast<int>(women.size()) != n_women_)
        throw InvalidInput("name list sizes do not match the instance");
    std::set<std::string> seen;
    for (const auto* list : {&men, &women})
        for (const auto& name : *list) {
            if (name.empty())
                throw InvalidInput("agent names must be non-empty");
            if (!seen.insert(name).second)
                throw InvalidInput("duplicate agent name '" + name + "'");
        }
    men_names_ = std::move(men);
    women_names_ = std::move(women);
}

void Instance::finish()
{
    if (n_men_ <= 0 || n_women_ <= 0)
        throw InvalidInput("both sides must contain at least one agent");
    if (men_names_.empty() && women_names_.empty())
        set_names(default_names("m", n_men_), default_names("w", n_women_));
}

Instance Instance::lottery(int n_men, int n_women, LotteryModel model)
{
    if (static_cast<int>(model.men.size()) != n_men || static_cast<int>(model.women.size()) != n_women)
        throw InvalidInput("lottery payload does not match the agent counts");

    // Per-agent validation and acceptable sets.
    std::vector<std::vector<int>> lists[2];
    for (Side s : {Side::Men, Side::Women}) {
        auto& agents = s == Side::Men ? model.men : model.women;
        const int n_cand = s == Side::Men ? n_women : n_men;
        for (size_t a = 0; a < agents.size(); ++a) {
            const std::string who = agent_label(s, static_cast<int>(a));
            for (const auto& e : agents[a])
                check_linear_order(e.order, n_cand, who);
            agents[a] = merge_lottery(agents[a], who);
            if (agents[a].empty())
                throw InvalidInput(who + " has no preference with positive probability");
            if (!total_weight(agents[a]).is_one())
                throw InvalidInput(who + " has weights summing to " + total_weight(agents[a]).str() + ", not 1");
            std::vector<int> cands(agents[a].front().order);
            std::sort(cands.begin(), cands.end());
            for (const auto& e : agents[a]) {
                std::vector<int> other_cands(e.order);
                std::sort(other_cands.begin(), other_cands.end());
                if (other_cands != cands)
                    throw InvalidInput(who + " lists different candidate sets in different orders");
            }
            lists[s == Side::Men ? 0 : 1].push_back(std::move(cands));
        }
    }

    Instance inst;
    inst.n_men_ = n_men;
    inst.n_women_ = n_women;
    inst.accept_.assign(static_cast<size_t>(n_men) * n_women, 0);
    std::vector<char> woman_lists(static_cast<size_t>(n_men) * n_women, 0);
    for (int w = 0; w < n_women; ++w)
        for (int m : lists[1][w])
            woman_lists[static_cast<size_t>(m) * n_women + w] = 1;
    for (int m = 0; m < n_men; ++m)
        for (int w : lists[0][m])
            inst.accept_[static_cast<size_t>(m) * n_women + w] = woman_lists[static_cast<size_t>(m) * n_women + w];

    for (Side s : {Side::Men, Side::Women}) {
        auto& agents = s == Side::Men ? model.men : model.women;
        for (size_t a = 0; a < agents.size(); ++a) {
            for (auto& e : agents[a])
                std::erase_if(e.order, [&](int c) {
                    return s == Side::Men ? !inst.acceptable(static_cast<int>(a), c)
                                          : !inst.acceptable(c, static_cast<int>(a));
                });
            agents[a] = merge_lottery(agents[a], agent_label(s, static_cast<int>(a)));
        }
    }
    inst.model_ = std::move(model);
    inst.finish();
    return inst;
}

Instance Instance::compact(int n_men, int n_women, CompactModel model)
{
    if (static_cast<int>(model.men.size()) != n_men || static_cast<int>(model.women.size()) != n_women)
        throw InvalidInput("compact payload does not match the agent counts");
    WeakProfile profile(std::move(model.men), std::move(model.women));
    Instance inst;
    inst.n_men_ = n_men;
    inst.n_women_ = n_women;
    inst.accept_.assign(static_cast<size_t>(n_men) * n_women, 0);
    for (int m = 0; m < n_men; ++m)
        for (int w = 0; w < n_women; ++w)
            inst.accept_[static_cast<size_t>(m) * n_women + w] = profile.acceptable(m, w) ? 1 : 0;
    inst.model_ = std::move(profile);
    inst.finish();
    return inst;
}

Instance Instance::joint(int n_men, int n_women, JointModel model)
{
    JointModel merged;
    for (auto& wp : model.profiles) {
        if (wp.profile.n_men() != n_men || wp.profile.n_women() != n_women)
            throw InvalidInput("joint profile does not match the agent counts");
        if (wp.weight < Rational(0))
            throw InvalidInput("joint profile has a negative weight");
        if (wp.weight.is_zero())
            continue;
        auto it = std::find_if(merged.profiles.begin(), merged.profiles.end(),
                               [&](const WeightedProfile& e) { return e.profile == wp.profile; });
        if (it == merged.profiles.end())
            merged.profiles.push_back(std::move(wp));
        else
            it->weight += wp.weight;
    }
    if (merged.profiles.empty())
        throw InvalidInput("joint model needs at least one profile with positive probability");
    Rational sum;
    for (const auto& wp : merged.profiles)
        sum += wp.weight;
    if (!sum.is_one())
        throw InvalidInput("joint profile weights sum to " + sum.str() + ", not 1");

    Instance inst;
    inst.n_men_ = n_men;
    inst.n_women_ = n_women;
    inst.accept_.assign(static_cast<size_t>(n_men) * n_women, 0);
    const Profile& first = merged.profiles.front().profile;
    for (int m = 0; m < n_men; ++m)
        for (int w = 0; w < n_women; ++w)
            inst.accept_[static_cast<size_t>(m) * n_women + w] = first.acceptable(m, w) ? 1 : 0;
    for (const auto& wp : merged.profiles)
        for (int m = 0; m < n_men; ++m)
            for (int w = 0; w < n_women; ++w)
                if (wp.profile.acceptable(m, w) != inst.acceptable(m, w))
                    throw InvalidInput("joint profiles disagree on which pairs are acceptable");
    inst.model_ = std::move(merged);
    inst.finish();
    return inst;
}

void check_matching(const Instance& instance, const Matching& matching)
{
    if (matching.n_men() != instance.n_men() || matching.n_women() != instance.n_women())
        throw InvalidInput("matching dimensions do not match the instance");
    for (auto [m, w] : matching.pairs())
        if (!instance.acceptable(m, w))
            throw InvalidInput("matching pairs " + instance.name(Side::Men, m) + " with unacceptable " +
                               instance.name(Side::Women, w));
}

PartialOrder::PartialOrder(AgentId owner, int n_candidates, const std::vector<std::pair<int, int>>& strictly_before)
    : owner_(owner), n_(n_candidates), rel_(static_cast<size_t>(n_candidates) * n_candidates, 0)
{
    for (auto [b, c] : strictly_before) {
        if (b < 0 || c < 0 || b >= n_ || c >= n_)
            throw InvalidInput("partial order references unknown candidate");
        if (b == c)
            throw InvalidInput("partial order is not irreflexive");
        rel_[static_cast<size_t>(b) * n_ + c] = 1;
    }
    for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) {
            if (!before(b, c))
                continue;
            if (before(c, b))
                throw InvalidInput("partial order is not antisymmetric");
            for (int d = 0; d < n_; ++d)
                if (before(c, d) && !before(b, d))
                    throw InvalidInput("partial order is not transitive");
        }
}

std::vector<std::pair<int, int>> PartialOrder::pairs() const
{
    std::vector<std::pair<int, int>> out;
    for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
            if (before(b, c))
                out.emplace_back(b, c);
    return out;
}

bool PartialOrder::is_total_on(const std::vector<int>& candidates) const
{
    for (size_t i = 0; i < candidates.size(); ++i)
        for (size_t j = i + 1; j < candidates.size(); ++j)
            if (!before(candidates[i], candidates[j]) && !before(candidates[j], candidates[i]))
                return false;
    return true;
}

PartialOrder certainly_preferred(const Instance& instance, AgentId agent)
{
    const int n_cand = instance.size(other(agent.side));
    if (agent.index < 0 || agent.index >= instance.size(agent.side))
        throw InvalidInput("unknown agent");
    std::vector<char> rel(static_cast<size_t>(n_cand) * n_cand, 1);
    auto intersect_linear = [&](const LinearOrder& order) {
        std::vector<int> pos(static_cast<size_t>(n_cand), kUnranked);
        for (size_t r = 0; r < order.size(); ++r)
            pos[order[r]] = static_cast<int>(r);
        for (int b = 0; b < n_cand; ++b)
            for (int c = 0; c < n_cand; ++c)
                if (!(pos[b] != kUnranked && pos[c] != kUnranked && pos[b] < pos[c]))
                    rel[static_cast<size_t>(b) * n_cand + c] = 0;
    };

    switch (instance.kind()) {
    case ModelKind::Lottery: {
        const auto& lot = agent.side == Side::Men ? instance.lottery().men : instance.lottery().women;
        for (const auto& e : lot[agent.index])
            intersect_linear(e.order);
        break;
    }
    case ModelKind::Compact: {
        const auto& cp = instance.compact();
        for (int b = 0; b < n_cand; ++b)
            for (int c = 0; c < n_cand; ++c) {
                int tb = cp.tier(agent.side, agent.index, b);
                int tc = cp.tier(agent.side, agent.index, c);
                rel[static_cast<size_t>(b) * n_cand + c] = (tb != kUnranked && tc != kUnranked && tb < tc) ? 1 : 0;
            }
        break;
    }
    case ModelKind::Joint:
        for (const auto& wp : instance.joint().profiles)
            intersect_linear(wp.profile.order(agent.side, agent.index));
        break;
    }

    std::vector<std::pair<int, int>> pairs;
    for (int b = 0; b < n_cand; ++b)
        for (int c = 0; c < n_cand; ++c)
            if (rel[static_cast<size_t>(b) * n_cand + c])
                pairs.emplace_back(b, c);
    return PartialOrder(agent, n_cand, pairs);
}

std::vector<int> dominance_set(const Instance& instance, AgentId agent, int candidate)
{
    const int n_cand = instance.size(other(agent.side));
    if (candidate < 0 || candidate >= n_cand)
        throw InvalidInput("unknown candidate " + std::to_string(candidate));
    bool ok = agent.side == Side::Men ? instance.acceptable(agent.index, candidate)
                                      : instance.acceptable(candidate, agent.index);
    if (!ok)
        throw InvalidInput("candidate " + std::to_string(candidate) + " is not on the agent's list");
    auto rel = certainly_preferred(instance, agent);
    std::vector<int> out;
    for (int c = 0; c < n_cand; ++c)
        if (c == candidate || rel.before(c, candidate))
            out.push_back(c);
    return out;
}

std::optional<LinearOrder> certain_order(const Instance& instance, AgentId agent)
{
    switch (instance.kind()) {
    case ModelKind::Lottery: {
        const auto& lot = agent.side == Side::Men ? instance.lottery().men : instance.lottery().women;
        if (lot[agent.index].size() == 1)
            return lot[agent.index].front().order;
        return std::nullopt;
    }
    case ModelKind::Compact: {
        const auto& order = instance.compact().order(agent.side, agent.index);
        LinearOrder out;
        for (const auto& tier : order) {
            if (tier.size() != 1)
                return std::nullopt;
            out.push_back(tier.front());
        }
        return out;
    }
    case ModelKind::Joint: {
        const auto& profiles = instance.joint().profiles;
        const auto& first = profiles.front().profile.order(agent.side, agent.index);
        for (const auto& wp : profiles)
            if (wp.profile.order(agent.side, agent.index) != first)
                return std::nullopt;
        return first;
    }
    }
    return std::nullopt;
}

bool is_certain(const Instance& instance, AgentId agent)
{
    return certain_order(instance, agent).has_value();
}

bool side_certain(const Instance& instance, Side side)
{
    for (int a = 0; a < instance.size(side); ++a)
        if (!is_certain(instance, {side, a}))
            return false;
    return true;
}

LotteryModel expand_compact_to_lottery(const WeakProfile& compact, const Limits& limits)
{
    LotteryModel out;
    for (Side s : {Side::Men, Side::Women}) {
        auto& dest = s == Side::Men ? out.men : out.women;
        for (const auto& order : compact.orders(s)) {
            auto exts = linear_extensions(order, limits.realizations);
            Rational w(1, static_cast<long long>(exts.size()));
            Lottery lot;
            for (auto& e : exts)
                lot.push_back({std::move(e), w});
            dest.push_back(std::move(lot));
        }
    }
    return out;
}

Instance expand_compact_to_lottery(const Instance& instance, const Limits& limits)
{
    auto inst = Instance::lottery(instance.n_men(), instance.n_women(),
                                  expand_compact_to_lottery(instance.compact(), limits));
    inst.set_names(instance.names(Side::Men), instance.names(Side::Women));
    return inst;
}

Lottery agent_support(const Instance& instance, AgentId agent, const Limits& limits)
{
    switch (instance.kind()) {
    case ModelKind::Lottery:
        return (agent.side == Side::Men ? instance.lottery().men : instance.lottery().women)[agent.index];
    case ModelKind::Compact: {
        auto exts = linear_extensions(instance.compact().order(agent.side, agent.index), limits.realizations);
        Rational w(1, static_cast<long long>(exts.size()));
        Lottery lot;
        for (auto& e : exts)
            lot.push_back({std::move(e), w});
        return lot;
    }
    case ModelKind::Joint:
        break;
    }
    throw PreconditionViolation("per-agent supports exist only for independent models");
}

long long realization_count(const Instance& instance, long long cap)
{
    long long count = 1;
    switch (instance.kind()) {
    case ModelKind::Lottery:
        for (const auto* side : {&instance.lottery().men, &instance.lottery().women})
            for (const auto& lot : *side)
                count = saturating_mul(count, static_cast<long long>(lot.size()), cap);
        return count;
    case ModelKind::Compact:
        for (Side s : {Side::Men, Side::Women})
            for (const auto& order : instance.compact().orders(s))
                count = saturating_mul(count, extension_count(order, cap), cap);
        return count;
    case ModelKind::Joint:
        return std::min(static_cast<long long>(instance.joint().profiles.size()), cap + 1);
    }
    return count;
}

Instance lottery_to_joint(const Instance& instance, const Limits& limits)
{
    const auto& lot = instance.lottery();
    if (realization_count(instance, limits.realizations) > limits.realizations)
        throw ResourceLimit("product support exceeds cap of " + std::to_string(limits.realizations));

    std::vector<const Lottery*> agents;
    for (const auto& l : lot.men)
        agents.push_back(&l);
    for (const auto& l : lot.women)
        agents.push_back(&l);

    JointModel joint;
    std::vector<size_t> choice(agents.size(), 0);
    while (true) {
        std::vector<LinearOrder> men, women;
        Rational weight(1);
        for (size_t a = 0; a < agents.size(); ++a) {
            const auto& e = (*agents[a])[choice[a]];
            weight *= e.weight;
            (a < lot.men.size() ? men : women).push_back(e.order);
        }
        joint.profiles.push_back({Profile(std::move(men), std::move(women)), weight});

        bool done = true;
        for (size_t a = agents.size(); a-- > 0;) {
            if (++choice[a] < agents[a]->size()) {
                done = false;
                break;
            }
            choice[a] = 0;
        }
        if (done)
            break;
    }
    auto out = Instance::joint(instance.n_men(), instance.n_women(), std::move(joint));
    out.set_names(instance.names(Side::Men), instance.names(Side::Women));
    return out;
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound <= 1)
        return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        std::uint64_t x = engine_();
        if (x >= threshold)
            return x % bound;
    }
}

namespace {

template <typename Range, typename WeightOf>
size_t draw_index(const Range& items, WeightOf weight_of, Rng& rng)
{
    const double u = rng.uniform();
    double cumulative = 0;
    for (size_t i = 0; i < items.size(); ++i) {
        cumulative += weight_of(items[i]).to_double();
        if (u < cumulative)
            return i;
    }
    return items.size() - 1;
}

} // namespace

Profile sample_profile(const Instance& instance, Rng& rng)
{
    switch (instance.kind()) {
    case ModelKind::Lottery: {
        std::vector<LinearOrder> men, women;
        for (const auto& lot : instance.lottery().men)
            men.push_back(lot[draw_index(lot, [](const WeightedOrder& e) { return e.weight; }, rng)].order);
        for (const auto& lot : instance.lottery().women)
            women.push_back(lot[draw_index(lot, [](const WeightedOrder& e) { return e.weight; }, rng)].order);
        return Profile(std::move(men), std::move(women));
    }
    case ModelKind::Compact: {
        std::vector<LinearOrder> orders[2];
        for (Side s : {Side::Men, Side::Women})
            for (const auto& weak : instance.compact().orders(s)) {
                LinearOrder o;
                for (const auto& tier : weak) {
                    std::vector<int> t(tier);
                    std::sort(t.begin(), t.end());
                    for (size_t i = t.size(); i > 1; --i)
                        std::swap(t[i - 1], t[rng.below(i)]);
                    o.insert(o.end(), t.begin(), t.end());
                }
                orders[s == Side::Men ? 0 : 1].push_back(std::move(o));
            }
        return Profile(std::move(orders[0]), std::move(orders[1]));
    }
    case ModelKind::Joint: {
        const auto& profiles = instance.joint().profiles;
        return profiles[draw_index(profiles, [](const WeightedProfile& e) { return e.weight; }, rng)].profile;
    }
    }
    throw PreconditionViolation("unknown model");
}

bool Padding::trivial() const
{
    return original_men == size && original_women == size &&
           std::all_of(acceptable.begin(), acceptable.end(), [](char c) { return c != 0; });
}

namespace {

std::vector<std::string> padded_names(const Instance& instance, Side s, int n)
{
    std::set<std::string> taken(instance.names(Side::Men).begin(), instance.names(Side::Men).end());
    taken.insert(instance.names(Side::Women).begin(), instance.names(Side::Women).end());
    std::vector<std::string> out = instance.names(s);
    int k = 1;
    while (static_cast<int>(out.size()) < n) {
        std::string candidate = std::string(s == Side::Men ? "pad_m" : "pad_w") + std::to_string(k++);
        if (taken.insert(candidate).second)
            out.push_back(candidate);
    }
    return out;
}

} // namespace

CompletedInstance complete_instance(const Instance& instance)
{
    const int nm = instance.n_men();
    const int nw = instance.n_women();
    const int n = std::max(nm, nw);

    Padding padding;
    padding.original_men = nm;
    padding.original_women = nw;
    padding.size = n;
    padding.acceptable.assign(static_cast<size_t>(nm) * nw, 0);
    for (int m = 0; m < nm; ++m)
        for (int w = 0; w < nw; ++w)
            padding.acceptable[static_cast<size_t>(m) * nw + w] = instance.acceptable(m, w) ? 1 : 0;

    // Candidates appended to an agent's list, ascending.
    auto tail = [&](Side s, int agent) {
        std::vector<int> out;
        for (int c = 0; c < n; ++c) {
            bool was_acceptable = s == Side::Men ? padding.original_acceptable(agent, c)
                                                 : padding.original_acceptable(c, agent);
            if (!was_acceptable)
                out.push_back(c);
        }
        return out;
    };
    auto extend = [&](LinearOrder order, Side s, int agent) {
        auto t = tail(s, agent);
        order.insert(order.end(), t.begin(), t.end());
        return order;
    };

    std::optional<Instance> result;
    switch (instance.kind()) {
    case ModelKind::Lottery: {
        LotteryModel lot;
        for (Side s : {Side::Men, Side::Women}) {
            const auto& src = s == Side::Men ? instance.lottery().men : instance.lottery().women;
            auto& dst = s == Side::Men ? lot.men : lot.women;
            for (int a = 0; a < n; ++a) {
                if (a < instance.size(s)) {
                    Lottery l;
                    for (const auto& e : src[a])
                        l.push_back({extend(e.order, s, a), e.weight});
                    dst.push_back(std::move(l));
                } else {
                    dst.push_back({{extend({}, s, a), Rational(1)}});
                }
            }
        }
        result = Instance::lottery(n, n, std::move(lot));
        break;
    }
    case ModelKind::Compact: {
        CompactModel cm;
        for (Side s : {Side::Men, Side::Women}) {
            auto& dst = s == Side::Men ? cm.men : cm.women;
            for (int a = 0; a < n; ++a) {
                WeakOrder w = a < instance.size(s) ? instance.compact().order(s, a) : WeakOrder{};
                for (int c : tail(s, a))
                    w.push_back({c});
                dst.push_back(std::move(w));
            }
        }
        result = Instance::compact(n, n, std::move(cm));
        break;
    }
    case ModelKind::Joint: {
        JointModel jm;
        for (const auto& wp : instance.joint().profiles) {
            std::vector<LinearOrder> orders[2];
            for (Side s : {Side::Men, Side::Women})
                for (int a = 0; a < n; ++a)
                    orders[s == Side::Men ? 0 : 1].push_back(
                        extend(a < instance.size(s) ? wp.profile.order(s, a) : LinearOrder{}, s, a));
            jm.profiles.push_back({Profile(std::move(orders[0]), std::move(orders[1])), wp.weight});
        }
        result = Instance::joint(n, n, std::move(jm));
        break;
    }
    }
    result->set_names(padded_names(instance, Side::Men, n), padded_names(instance, Side::Women, n));
    return {std::move(*result), std::move(padding)};
}

Matching lift_matching(const Matching& matching, const Padding& padding)
{
    if (matching.n_men() != padding.original_men || matching.n_women() != padding.original_women)
        throw InvalidInput("matching does not belong to the original instance");
    Matching out(padding.size, padding.size);
    for (auto [m, w] : matching.pairs())
        out.match(m, w);
    std::vector<int> free_men, free_women;
    for (int m = 0; m < padding.size; ++m)
        if (out.partner_of_man(m) == kUnmatched)
            free_men.push_back(m);
    for (int w = 0; w < padding.size; ++w)
        if (out.partner_of_woman(w) == kUnmatched)
            free_women.push_back(w);
    // Two single agents who accept each other already block in every
    // realization; leaving everybody single keeps that probability at zero.
    for (int m : free_men)
        for (int w : free_women)
            if (padding.original_acceptable(m, w))
                return out;
    for (size_t k = 0; k < free_men.size() && k < free_women.size(); ++k)
        out.match(free_men[k], free_women[k]);
    return out;
}

Matching restrict_matching(const Matching& matching, const Padding& padding)
{
    if (matching.n_men() != padding.size || matching.n_women() != padding.size)
        throw InvalidInput("matching does not belong to the completed instance");
    Matching out(padding.original_men, padding.original_women);
    for (auto [m, w] : matching.pairs())
        if (padding.original_acceptable(m, w))
            out.match(m, w);
    return out;
}

Instance swap_sides(const Instance& instance)
{
    std::optional<Instance> out;
    switch (instance.kind()) {
    case ModelKind::Lottery:
        out = Instance::lottery(instance.n_women(), instance.n_men(),
                                LotteryModel{instance.lottery().women, instance.lottery().men});
        break;
    case ModelKind::Compact:
        out = Instance::compact(instance.n_women(), instance.n_men(),
                                CompactModel{instance.compact().orders(Side::Women), instance.compact().orders(Side::Men)});
        break;
    case ModelKind::Joint: {
        JointModel jm;
        for (const auto& wp : instance.joint().profiles)
            jm.profiles.push_back({Profile(wp.profile.orders(Side::Women), wp.profile.orders(Side::Men)), wp.weight});
        out = Instance::joint(instance.n_women(), instance.n_men(), std::move(jm));
        break;
    }
    }
    out->set_names(instance.names(Side::Women), instance.names(Side::Men));
    return std::move(*out);
}

Matching swap_sides(const Matching& matching)
{
    Matching out(matching.n_women(), matching.n_men());
    for (auto [m, w] : matching.pairs())
        out.match(w, m);
    return out;
}

} // namespace usm
