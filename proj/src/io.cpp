#include "usm/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace usm::io {

namespace {

[[noreturn]] void fail(const std::string& message)
{
    throw InvalidInput(message);
}

const Json& field(const Json& obj, const char* key)
{
    if (!obj.is_object())
        fail(std::string("expected an object holding '") + key + "'");
    auto it = obj.find(key);
    if (it == obj.end())
        fail(std::string("missing field '") + key + "'");
    return *it;
}

const Json& array_of(const Json& value, const std::string& what)
{
    if (!value.is_array())
        fail(what + " must be an array");
    return value;
}

std::string string_of(const Json& value, const std::string& what)
{
    if (!value.is_string())
        fail(what + " must be a string");
    return value.get<std::string>();
}

int int_of(const Json& value, const std::string& what)
{
    if (!value.is_number_integer())
        fail(what + " must be an integer");
    auto v = value.get<long long>();
    if (v < -(1LL << 30) || v > (1LL << 30))
        fail(what + " is out of range");
    return static_cast<int>(v);
}

Rational weight_of(const Json& value)
{
    if (value.is_string())
        return Rational::parse(value.get<std::string>());
    if (value.is_number_integer())
        return Rational(value.get<long long>());
    fail("probabilities must be strings such as \"2/5\" or \"0.4\"");
}

struct Names {
    std::vector<std::string> men;
    std::vector<std::string> women;
    std::map<std::string, AgentId> index;

    AgentId agent(const std::string& name) const
    {
        auto it = index.find(name);
        if (it == index.end())
            fail("unknown agent '" + name + "'");
        return it->second;
    }
    int candidate(const std::string& name, Side expected) const
    {
        auto id = agent(name);
        if (id.side != expected)
            fail("'" + name + "' is on the wrong side");
        return id.index;
    }
    LinearOrder order(const Json& list, Side candidate_side, const std::string& owner) const
    {
        LinearOrder out;
        for (const auto& c : array_of(list, "order of " + owner))
            out.push_back(candidate(string_of(c, "agent name"), candidate_side));
        return out;
    }
    const std::string& name(AgentId id) const
    {
        return id.side == Side::Men ? men[id.index] : women[id.index];
    }
};

Names read_names(const Json& doc)
{
    Names names;
    for (auto [key, side] : {std::pair{"men", Side::Men}, std::pair{"women", Side::Women}}) {
        auto& list = side == Side::Men ? names.men : names.women;
        for (const auto& n : array_of(field(doc, key), key)) {
            auto name = string_of(n, "agent name");
            if (!names.index.emplace(name, AgentId{side, static_cast<int>(list.size())}).second)
                fail("duplicate agent name '" + name + "'");
            list.push_back(name);
        }
    }
    return names;
}

// Per-agent entries of the preferences block, in men-then-women file order.
template <typename Fn>
void for_each_agent(const Json& prefs, const Names& names, Fn&& fn)
{
    if (!prefs.is_object())
        fail("'preferences' must be an object");
    for (const auto& [key, value] : prefs.items())
        names.agent(key);
    for (auto side : {Side::Men, Side::Women}) {
        const auto& list = side == Side::Men ? names.men : names.women;
        for (size_t i = 0; i < list.size(); ++i) {
            auto it = prefs.find(list[i]);
            if (it == prefs.end())
                fail("no preferences for '" + list[i] + "'");
            fn(AgentId{side, static_cast<int>(i)}, *it);
        }
    }
}

Json names_of(const LinearOrder& order, const Instance& instance, Side candidate_side)
{
    Json out = Json::array();
    for (int c : order)
        out.push_back(instance.name(candidate_side, c));
    return out;
}

} // namespace

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

Instance instance_from_json(const Json& doc)
{
    const auto model = string_of(field(doc, "model"), "'model'");
    const Names names = read_names(doc);
    const int nm = static_cast<int>(names.men.size());
    const int nw = static_cast<int>(names.women.size());
    const Json& prefs = field(doc, "preferences");

    auto build = [&]() -> Instance {
        if (model == "lottery") {
            LotteryModel lm;
            lm.men.resize(names.men.size());
            lm.women.resize(names.women.size());
            for_each_agent(prefs, names, [&](AgentId id, const Json& entries) {
                auto& lottery = id.side == Side::Men ? lm.men[id.index] : lm.women[id.index];
                for (const auto& e : array_of(entries, "lottery of " + names.name(id)))
                    lottery.push_back({names.order(field(e, "order"), other(id.side), names.name(id)), weight_of(field(e, "p"))});
            });
            return Instance::lottery(nm, nw, std::move(lm));
        }
        if (model == "compact") {
            CompactModel cm;
            cm.men.resize(names.men.size());
            cm.women.resize(names.women.size());
            for_each_agent(prefs, names, [&](AgentId id, const Json& entry) {
                auto& weak = id.side == Side::Men ? cm.men[id.index] : cm.women[id.index];
                for (const auto& tier : array_of(field(entry, "tiers"), "tiers of " + names.name(id)))
                    weak.push_back(names.order(tier, other(id.side), names.name(id)));
            });
            return Instance::compact(nm, nw, std::move(cm));
        }
        if (model == "joint") {
            JointModel jm;
            for (const auto& p : array_of(field(prefs, "profiles"), "'profiles'")) {
                std::vector<LinearOrder> men(names.men.size()), women(names.women.size());
                for_each_agent(field(p, "orders"), names, [&](AgentId id, const Json& order) {
                    (id.side == Side::Men ? men[id.index] : women[id.index]) =
                        names.order(order, other(id.side), names.name(id));
                });
                jm.profiles.push_back({Profile(std::move(men), std::move(women)), weight_of(field(p, "p"))});
            }
            return Instance::joint(nm, nw, std::move(jm));
        }
        fail("model must be lottery, compact or joint, not '" + model + "'");
    };

    Instance inst = build();
    inst.set_names(names.men, names.women);
    return inst;
}

Json instance_to_json(const Instance& instance)
{
    Json doc;
    doc["model"] = to_string(instance.kind());
    doc["men"] = instance.names(Side::Men);
    doc["women"] = instance.names(Side::Women);
    Json prefs = Json::object();
    auto each_agent = [&](auto&& fn) {
        for (auto side : {Side::Men, Side::Women})
            for (int a = 0; a < instance.size(side); ++a)
                fn(AgentId{side, a}, instance.name(side, a));
    };

    switch (instance.kind()) {
    case ModelKind::Lottery:
        each_agent([&](AgentId id, const std::string& name) {
            const auto& lm = instance.lottery();
            const auto& lottery = id.side == Side::Men ? lm.men[id.index] : lm.women[id.index];
            Json entries = Json::array();
            for (const auto& wo : lottery)
                entries.push_back({{"order", names_of(wo.order, instance, other(id.side))}, {"p", wo.weight.str()}});
            prefs[name] = entries;
        });
        break;
    case ModelKind::Compact:
        each_agent([&](AgentId id, const std::string& name) {
            Json tiers = Json::array();
            for (const auto& tier : instance.compact().order(id.side, id.index))
                tiers.push_back(names_of(tier, instance, other(id.side)));
            prefs[name] = {{"tiers", tiers}};
        });
        break;
    case ModelKind::Joint: {
        Json profiles = Json::array();
        for (const auto& wp : instance.joint().profiles)
            profiles.push_back({{"p", wp.weight.str()}, {"orders", profile_to_json(wp.profile, instance)}});
        prefs["profiles"] = profiles;
        break;
    }
    }
    doc["preferences"] = prefs;
    return doc;
}

Matching matching_from_json(const Json& doc, const Instance& instance)
{
    std::map<std::string, int> men, women;
    for (int m = 0; m < instance.n_men(); ++m)
        men[instance.name(Side::Men, m)] = m;
    for (int w = 0; w < instance.n_women(); ++w)
        women[instance.name(Side::Women, w)] = w;

    std::vector<std::pair<int, int>> pairs;
    for (const auto& p : array_of(field(doc, "pairs"), "'pairs'")) {
        if (!p.is_array() || p.size() != 2)
            fail("each pair must be [man, woman]");
        auto m = men.find(string_of(p[0], "man name"));
        auto w = women.find(string_of(p[1], "woman name"));
        if (m == men.end() || w == women.end())
            fail("pair " + p.dump() + " names an unknown man or woman");
        pairs.emplace_back(m->second, w->second);
    }
    auto mu = Matching::from_pairs(instance.n_men(), instance.n_women(), pairs);
    check_matching(instance, mu);
    return mu;
}

Json matching_to_json(const Matching& matching, const Instance& instance)
{
    Json pairs = Json::array();
    for (auto [m, w] : matching.pairs())
        pairs.push_back({instance.name(Side::Men, m), instance.name(Side::Women, w)});
    return {{"pairs", pairs}};
}

Json profile_to_json(const Profile& profile, const Instance& instance)
{
    Json orders = Json::object();
    for (auto side : {Side::Men, Side::Women})
        for (int a = 0; a < profile.size(side); ++a)
            orders[instance.name(side, a)] = names_of(profile.order(side, a), instance, other(side));
    return orders;
}

X3cInstance x3c_from_json(const Json& doc)
{
    X3cInstance x3c;
    x3c.universe = int_of(field(doc, "universe"), "'universe'");
    for (const auto& t : array_of(field(doc, "triples"), "'triples'")) {
        if (!t.is_array() || t.size() != 3)
            fail("each triple must have three elements");
        x3c.triples.push_back({int_of(t[0], "element"), int_of(t[1], "element"), int_of(t[2], "element")});
    }
    return x3c;
}

TwoSatInstance twosat_from_json(const Json& doc)
{
    int n = int_of(field(doc, "variables"), "'variables'");
    if (n < 0)
        fail("'variables' must be non-negative");
    TwoSatInstance f(n);
    for (const auto& c : array_of(field(doc, "clauses"), "'clauses'")) {
        if (!c.is_array() || c.empty() || c.size() > 2)
            fail("each clause needs one or two literals");
        std::vector<Literal> lits;
        for (const auto& l : c) {
            int d = int_of(l, "literal");
            if (d == 0 || std::abs(d) > n)
                fail("literal " + std::to_string(d) + " is out of range");
            lits.push_back({std::abs(d) - 1, d > 0});
        }
        f.add_clause(lits.front(), lits.back());
    }
    return f;
}

Graph graph_from_json(const Json& doc)
{
    Graph g;
    g.vertices = int_of(field(doc, "vertices"), "'vertices'");
    for (const auto& e : array_of(field(doc, "edges"), "'edges'")) {
        if (!e.is_array() || e.size() != 2)
            fail("each edge must be [u, v]");
        g.edges.emplace_back(int_of(e[0], "vertex"), int_of(e[1], "vertex"));
    }
    return g;
}

Json probability_to_json(const Rational& p)
{
    return {{"exact", p.str()}, {"decimal", p.decimal(15)}};
}

} // namespace usm::io
