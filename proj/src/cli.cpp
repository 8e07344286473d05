#include "usm/cli.hpp"

#include "usm/optimization.hpp"
#include "usm/probability.hpp"
#include "usm/superstability.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>

namespace usm::cli {

std::string to_string(Status status)
{
    switch (status) {
    case Status::Ok:
        return "ok";
    case Status::Infeasible:
        return "infeasible";
    case Status::ResourceLimit:
        return "resource-limit";
    case Status::InvalidInput:
        return "invalid-input";
    }
    return "invalid-input";
}

int exit_code(Status status)
{
    switch (status) {
    case Status::Ok:
        return 0;
    case Status::Infeasible:
        return 1;
    case Status::InvalidInput:
        return 2;
    case Status::ResourceLimit:
        return 3;
    }
    return 2;
}

namespace {

using io::Json;

struct Options {
    bool pretty = false;
    bool json = false;
    long long cap = 0;

    std::string instance;
    std::string matching;
    std::string method = "auto";
    std::string eps = "0.02";
    std::string delta = "0.01";
    std::uint64_t seed = 0;
    std::string algorithm = "constant-uncertain";
    std::string uncertain_side;
    std::string problem;
    std::string output;
    std::string matching_output;
};

Limits limits_for(const Options& opt)
{
    Limits limits;
    long long cap = opt.cap;
    if (cap <= 0)
        if (const char* env = std::getenv("USM_CAP")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end == env || *end != '\0' || v <= 0)
                throw InvalidInput("USM_CAP must be a positive integer");
            cap = v;
        }
    if (cap > 0) {
        limits.realizations = cap;
        limits.stable_matchings = cap;
        limits.search_nodes = cap;
    }
    return limits;
}

void write_file(const std::string& path, const Json& doc)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidInput("cannot write '" + path + "'");
    out << doc.dump(2) << '\n';
}

Instance load_instance(const Options& opt)
{
    return io::instance_from_json(io::read_json_file(opt.instance));
}

Matching load_matching(const Options& opt, const Instance& inst)
{
    return io::matching_from_json(io::read_json_file(opt.matching), inst);
}

CommandResult decision(bool answer, Json payload)
{
    CommandResult r;
    r.status = answer ? Status::Ok : Status::Infeasible;
    r.payload = std::move(payload);
    return r;
}

CommandResult cmd_validate(const Options& opt)
{
    auto inst = load_instance(opt);
    CommandResult r;
    r.payload = {{"valid", true},
                 {"model", to_string(inst.kind())},
                 {"men", inst.n_men()},
                 {"women", inst.n_women()},
                 {"complete", inst.is_complete()}};
    return r;
}

CommandResult cmd_probability(const Options& opt)
{
    auto inst = load_instance(opt);
    auto mu = load_matching(opt, inst);
    auto limits = limits_for(opt);
    CommandResult r;

    if (opt.method == "estimate") {
        Rng rng(opt.seed);
        auto est = estimate_stability_probability(inst, mu, Rational::parse(opt.eps), Rational::parse(opt.delta), rng);
        r.payload = {{"method", "estimate"},
                     {"probability", io::probability_to_json(est.estimate)},
                     {"epsilon", est.epsilon.str()},
                     {"delta", est.delta.str()},
                     {"samples", est.samples},
                     {"seed", opt.seed}};
        return r;
    }

    Rational p;
    std::string method = opt.method;
    if (method == "auto") {
        p = stability_probability(inst, mu, limits);
        if (inst.kind() == ModelKind::Joint)
            method = "joint";
        else if (side_certain(inst, Side::Men) || side_certain(inst, Side::Women))
            method = "one-side";
        else
            method = "exact";
    } else if (method == "exact") {
        p = stability_probability_exact(inst, mu, limits);
    } else if (method == "joint") {
        p = stability_probability_joint(inst, mu);
    } else if (method == "one-side") {
        p = inst.kind() == ModelKind::Compact ? stability_probability_compact_one_side_certain(inst, mu)
                                              : stability_probability_lottery_one_side_certain(inst, mu);
    }
    r.payload = {{"method", method}, {"probability", io::probability_to_json(p)}};
    return r;
}

CommandResult cmd_nonzero(const Options& opt)
{
    auto inst = load_instance(opt);
    auto mu = load_matching(opt, inst);
    auto res = is_stability_probability_nonzero(inst, mu, limits_for(opt));
    Json payload = {{"nonzero", res.nonzero}};
    if (res.witness)
        payload["witness"] = io::profile_to_json(*res.witness, inst);
    return decision(res.nonzero, payload);
}

CommandResult cmd_one(const Options& opt)
{
    auto inst = load_instance(opt);
    auto mu = load_matching(opt, inst);
    bool one = is_stability_probability_one(inst, mu);
    return decision(one, {{"certainly_stable", one}});
}

CommandResult cmd_exists_certain(const Options& opt)
{
    auto inst = load_instance(opt);
    auto found = exists_certainly_stable_matching(inst, limits_for(opt));
    Json payload = {{"exists", found.has_value()}};
    if (found)
        payload["matching"] = io::matching_to_json(*found, inst);
    auto r = decision(found.has_value(), payload);
    if (!found)
        r.diagnostics.push_back("no matching is stable in every realization");
    return r;
}

CommandResult cmd_most_stable(const Options& opt)
{
    auto inst = load_instance(opt);
    auto limits = limits_for(opt);
    MostStableResult best;
    if (opt.algorithm == "brute") {
        best = most_stable_brute_force(inst, limits);
    } else {
        Side side = Side::Men;
        if (opt.uncertain_side == "women")
            side = Side::Women;
        else if (opt.uncertain_side.empty() && uncertain_agents(inst, Side::Men).empty())
            side = Side::Women;
        best = most_stable_constant_uncertain(inst, side, limits);
    }
    CommandResult r;
    r.payload = {{"algorithm", opt.algorithm},
                 {"matching", io::matching_to_json(best.matching, inst)},
                 {"probability", io::probability_to_json(best.probability)},
                 {"examined", best.examined},
                 {"all_excluded", best.all_excluded}};
    return r;
}

CommandResult emit_generated(const Options& opt, const Instance& inst, const Matching* mu)
{
    CommandResult r;
    Json instance = io::instance_to_json(inst);
    r.payload["instance"] = instance;
    r.payload["matching"] = mu ? io::matching_to_json(*mu, inst) : Json(nullptr);
    if (!opt.output.empty())
        write_file(opt.output, instance);
    if (!opt.matching_output.empty()) {
        if (!mu)
            throw InvalidInput("this generator has no designated matching");
        write_file(opt.matching_output, io::matching_to_json(*mu, inst));
    }
    return r;
}

CommandResult cmd_generate(const std::string& kind, const Options& opt)
{
    auto doc = io::read_json_file(opt.problem);
    if (kind == "x3c") {
        auto g = x3c_to_lottery(io::x3c_from_json(doc));
        return emit_generated(opt, g.instance, &g.matching);
    }
    if (kind == "count2sat") {
        auto g = count2sat_to_lottery(io::twosat_from_json(doc));
        return emit_generated(opt, g.instance, &g.matching);
    }
    return emit_generated(opt, three_color_to_joint(io::graph_from_json(doc)), nullptr);
}

CommandResult cmd_complete(const Options& opt)
{
    auto inst = load_instance(opt);
    auto completed = complete_instance(inst);
    CommandResult r;
    Json instance = io::instance_to_json(completed.instance);
    r.payload["instance"] = instance;
    r.payload["padded_agents"] = completed.padding.size * 2 - inst.n_men() - inst.n_women();
    if (!opt.output.empty())
        write_file(opt.output, instance);
    if (!opt.matching.empty()) {
        auto lifted = lift_matching(load_matching(opt, inst), completed.padding);
        r.payload["matching"] = io::matching_to_json(lifted, completed.instance);
        if (!opt.matching_output.empty())
            write_file(opt.matching_output, r.payload["matching"]);
    }
    return r;
}

CommandResult failure(Status status, const std::string& message)
{
    CommandResult r;
    r.status = status;
    r.payload = nullptr;
    r.diagnostics.push_back(message);
    return r;
}

} // namespace

CommandResult run(const std::vector<std::string>& args)
{
    Options opt;
    CLI::App app{"Stable matchings under uncertain preferences", "usm"};
    app.require_subcommand(1);
    app.add_flag("--pretty", opt.pretty, "Indented output");
    app.add_flag("--json", opt.json, "Compact JSON output (default)");
    app.add_option("--cap", opt.cap, "Cap for exhaustive enumerations (default: $USM_CAP or built-in)")
        ->check(CLI::PositiveNumber);

    auto instance_arg = [&](CLI::App* sub) {
        sub->add_option("instance", opt.instance, "Instance JSON file")->required();
    };
    auto matching_arg = [&](CLI::App* sub) {
        sub->add_option("--matching", opt.matching, "Matching JSON file")->required();
    };

    auto* validate = app.add_subcommand("validate", "Check an instance file");
    instance_arg(validate);

    auto* probability = app.add_subcommand("probability", "Probability that a matching is stable");
    instance_arg(probability);
    matching_arg(probability);
    probability->add_option("--method", opt.method)
        ->check(CLI::IsMember({"auto", "exact", "one-side", "joint", "estimate"}));
    probability->add_option("--eps", opt.eps, "Additive error for --method estimate");
    probability->add_option("--delta", opt.delta, "Failure probability for --method estimate");
    probability->add_option("--seed", opt.seed, "Sampler seed");

    auto* nonzero = app.add_subcommand("nonzero", "Is the matching stable with positive probability");
    instance_arg(nonzero);
    matching_arg(nonzero);

    auto* one = app.add_subcommand("one", "Is the matching stable with probability one");
    instance_arg(one);
    matching_arg(one);

    auto* exists = app.add_subcommand("exists-certain", "Find a matching stable in every realization");
    instance_arg(exists);

    auto* most = app.add_subcommand("most-stable", "Matching with the highest stability probability");
    instance_arg(most);
    most->add_option("--algorithm", opt.algorithm)->check(CLI::IsMember({"constant-uncertain", "brute"}));
    most->add_option("--uncertain-side", opt.uncertain_side)->check(CLI::IsMember({"men", "women"}));

    auto* generate = app.add_subcommand("generate", "Build an instance from a problem description");
    generate->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> generators;
    for (const char* kind : {"x3c", "count2sat", "3color"}) {
        auto* g = generate->add_subcommand(kind);
        g->add_option("problem", opt.problem, "Problem JSON file")->required();
        g->add_option("-o,--output", opt.output, "Also write the instance here");
        g->add_option("--matching-output", opt.matching_output, "Also write the designated matching here");
        generators.emplace_back(kind, g);
    }

    auto* complete = app.add_subcommand("complete", "Pad to complete lists on equal sides");
    instance_arg(complete);
    complete->add_option("--matching", opt.matching, "Matching to lift into the padded instance");
    complete->add_option("-o,--output", opt.output, "Also write the instance here");
    complete->add_option("--matching-output", opt.matching_output, "Also write the lifted matching here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        CLI::App* target = &app;
        while (!target->get_subcommands().empty())
            target = target->get_subcommands().front();
        CommandResult r;
        r.usage = target->help();
        return r;
    } catch (const CLI::ParseError& e) {
        return failure(Status::InvalidInput, e.what());
    }

    CommandResult result;
    try {
        if (*validate)
            result = cmd_validate(opt);
        else if (*probability)
            result = cmd_probability(opt);
        else if (*nonzero)
            result = cmd_nonzero(opt);
        else if (*one)
            result = cmd_one(opt);
        else if (*exists)
            result = cmd_exists_certain(opt);
        else if (*most)
            result = cmd_most_stable(opt);
        else if (*complete)
            result = cmd_complete(opt);
        else
            for (auto& [kind, g] : generators)
                if (*g)
                    result = cmd_generate(kind, opt);
    } catch (const InvalidInput& e) {
        result = failure(Status::InvalidInput, e.what());
    } catch (const PreconditionViolation& e) {
        result = failure(Status::InvalidInput, e.what());
    } catch (const ResourceLimit& e) {
        result = failure(Status::ResourceLimit, e.what());
    } catch (const std::bad_alloc&) {
        result = failure(Status::ResourceLimit, "out of memory");
    } catch (const std::exception& e) {
        result = failure(Status::InvalidInput, e.what());
    }
    result.pretty = opt.pretty && !opt.json;
    return result;
}

std::string render(const CommandResult& result)
{
    if (!result.usage.empty())
        return result.usage;
    io::Json doc;
    doc["status"] = to_string(result.status);
    doc["payload"] = result.payload;
    doc["diagnostics"] = result.diagnostics;
    return doc.dump(result.pretty ? 2 : -1);
}

} // namespace usm::cli
