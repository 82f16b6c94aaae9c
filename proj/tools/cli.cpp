#include "cli.hpp"

#include <vcsp/classifier.hpp>
#include <vcsp/core.hpp>
#include <vcsp/errors.hpp>
#include <vcsp/instance.hpp>
#include <vcsp/language_io.hpp>
#include <vcsp/polymorphism.hpp>
#include <vcsp/variety.hpp>
#include <vcsp/weighting.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <ostream>

#ifndef VCSP_VERSION
#define VCSP_VERSION "dev"
#endif

namespace vcsp::cli {

namespace
{
    struct Options
    {
        Budget budget;
        std::uint64_t seed = 1;
        std::string out;
        int arity = 1;
        int exponent = 2;
        std::string congruence;
        std::string ops;
        std::vector<int> subset;
        std::vector<std::string> vars;
        bool idempotent = false;
        bool conservative = false;
        bool solve = false;
        int random_variables = 6;
        int random_clauses = 4;
        std::vector<std::string> inputs;
    };

    struct Outcome
    {
        std::string status = "OK";
        Json input = Json::object();
        Json result = Json::object();
        std::string summary;
        int code = ok;
    };

    auto function_to_json(const CostFunction & f) -> Json
    {
        return language_to_json(Language{f.domain_size, {f}})["cost_functions"][0];
    }

    auto read_json(const std::string & path) -> Json
    {
        try {
            return parse_json(read_text_file(path));
        }
        catch (const ParseError & e) {
            if (e.where().rfind(path, 0) == 0)
                throw;
            throw ParseError(path + (e.where().empty() ? "" : ":" + e.where()), e.message());
        }
    }

    // Re-raises parse errors of an already loaded document with its path.
    template <typename F>
    auto in_file(const std::string & path, F && f) -> decltype(f())
    {
        try {
            return f();
        }
        catch (const ParseError & e) {
            throw ParseError(path + (e.where().empty() ? "" : ":" + e.where()), e.message());
        }
    }

    auto is_language_document(const Json & value) -> bool
    {
        return value.is_object() && value.contains("cost_functions");
    }

    auto assignment_json(const Instance & inst, const Assignment & s) -> Json
    {
        Json result = Json::object();
        for (std::size_t v = 0; v < inst.variables.size(); ++v)
            result[inst.variables[v]] = s[v];
        return result;
    }

    auto check_json(const ImprovementCheck & check) -> Json
    {
        Json result{{"holds", check.holds}};
        if (! check.holds)
            result.update(Json{{"function", check.function}, {"tuples", check.tuples}, {"value", check.value.to_string()}});
        return result;
    }

    auto ops_from_file(const std::string & path, int n) -> std::vector<Operation>
    {
        auto value = read_json(path);
        return in_file(path, [&] {
            std::vector<OperationSet> sets;
            if (value.is_array())
                for (std::size_t i = 0; i < value.size(); ++i)
                    sets.push_back(operation_set_from_json(value[i], json_fields::child("", i)));
            else
                sets.push_back(operation_set_from_json(value));
            std::vector<Operation> ops;
            for (const auto & set : sets) {
                if (set.domain_size != n)
                    throw ParseError("domain_size", "operations are over a different domain");
                ops.insert(ops.end(), set.operations.begin(), set.operations.end());
            }
            return ops;
        });
    }

    auto congruence_domain(const Json & value) -> int
    {
        int count = 0;
        if (value.is_object() && value.contains("classes") && value["classes"].is_array())
            for (const auto & c : value["classes"])
                count += c.is_array() ? static_cast<int>(c.size()) : 0;
        return count;
    }

    auto summary_for(const Verdict & v) -> std::string
    {
        switch (v.status) {
            case Status::NpHard: return "NP-hard";
            case Status::Tractable:
                if (v.core_witness)
                    return "tractable (not a core)";
                if (! v.multimorphism_name.empty())
                    return "tractable via " + v.multimorphism_name;
                return "tractable (" + v.note + ")";
            case Status::ConjecturedTractable: return "conjectured tractable (" + v.note + ")";
            case Status::Unknown: return "unknown: " + v.note;
        }
        return "unknown";
    }

    auto verdict_outcome(const Verdict & v, Outcome & o) -> void
    {
        o.status = to_string(v.status);
        o.result = Json{{"verdict", verdict_to_json(v)}};
        o.summary = summary_for(v);
        o.code = v.status == Status::Unknown ? unknown_or_budget : ok;
    }

    // --- commands -------------------------------------------------------

    auto cmd_solve(const Options & opt) -> Outcome
    {
        auto inst = load_instance(opt.inputs.at(0));
        Outcome o;
        o.input["instance"] = instance_to_json(inst);
        auto r = solve(inst, opt.budget);
        o.result["optimum"] = r.cost.to_string();
        if (r.cost.is_finite())
            o.result["assignment"] = assignment_json(inst, r.assignment);
        o.summary = "optimum " + r.cost.to_string();
        return o;
    }

    auto cmd_express(const Options & opt) -> Outcome
    {
        auto inst = load_instance(opt.inputs.at(0));
        Outcome o;
        o.input["instance"] = instance_to_json(inst);
        if (opt.vars.empty())
            throw StructuralError("--vars lists the variables to express over");
        std::vector<int> projection;
        for (const auto & name : opt.vars)
            projection.push_back(inst.variable(name));
        auto f = express(inst, projection, opt.budget, "expressed");
        o.result["function"] = function_to_json(f);
        o.summary = "expressed a function of arity " + std::to_string(f.arity);
        return o;
    }

    auto cmd_polymorphisms(const Options & opt) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        Outcome o;
        o.input["language"] = language_to_json(l);
        auto pol = enumerate_polymorphisms(l, opt.arity, opt.budget, {.idempotent = opt.idempotent, .conservative = opt.conservative});
        o.result["polymorphisms"] = operation_set_to_json(pol);
        o.summary = std::to_string(pol.size()) + " polymorphisms of arity " + std::to_string(opt.arity);
        return o;
    }

    auto cmd_positive_clone(const Options & opt) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        Outcome o;
        o.input["language"] = language_to_json(l);
        auto report = positive_clone_report(l, opt.arity, opt.budget, {.idempotent = opt.idempotent, .conservative = opt.conservative});
        Json witnesses = Json::array();
        for (const auto & w : report.witnesses)
            witnesses.push_back(weighting_to_json(w));
        o.result = Json{{"polymorphisms", operation_set_to_json(report.pol)}, {"positive_clone", operation_set_to_json(report.plus)},
            {"witnesses", witnesses}};
        o.summary = std::to_string(report.plus.size()) + " of " + std::to_string(report.pol.size()) +
            " polymorphisms of arity " + std::to_string(opt.arity) + " are in the positive clone";
        return o;
    }

    auto cmd_wpol_check(const Options & opt) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        auto wj = read_json(opt.inputs.at(1));
        auto w = in_file(opt.inputs.at(1), [&] { return weighting_from_json(wj, l.domain_size); });
        Outcome o;
        o.input["language"] = language_to_json(l);
        o.input["weighting"] = weighting_to_json(w);
        auto check = is_weighted_polymorphism(w, l);
        o.result["check"] = check_json(check);
        o.summary = check.holds ? "weighted polymorphism" : "not a weighted polymorphism (fails on " + check.function + ")";
        return o;
    }

    auto cmd_indicator(const Options & opt) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        Outcome o;
        o.input["language"] = language_to_json(l);
        auto ind = build_indicator(l, opt.arity, opt.budget);
        Json values = Json::array();
        for (const auto & f : ind.pol.operations)
            values.push_back(Json{{"operation_table", f.table}, {"value", ind.value(f).to_string()}});
        o.result = Json{{"arity", opt.arity}, {"P", format_rational(ind.P)}, {"polymorphisms", operation_set_to_json(ind.pol)},
            {"positive_clone", operation_set_to_json(ind.plus)}, {"values", values}, {"instance", instance_to_json(ind.instance)}};
        o.summary = "indicator of arity " + std::to_string(opt.arity) + " with P = " + format_rational(ind.P);
        return o;
    }

    auto cmd_core(const Options & opt) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        Outcome o;
        o.input["language"] = language_to_json(l);
        auto report = core_report(l, opt.budget);
        auto c = compute_core(l, opt.budget);
        Json witnesses = Json::array();
        for (const auto & f : c.witnesses)
            witnesses.push_back(operation_to_json(f));
        o.result = Json{{"report", core_report_to_json(report)}, {"core", language_to_json(c.core)}, {"subset", c.subset},
            {"chain", c.chain}, {"witnesses", witnesses}};
        if (report.is_core)
            o.summary = "core";
        else {
            std::string elements;
            for (int d : c.subset)
                elements += (elements.empty() ? "" : ",") + std::to_string(d);
            o.summary = "not a core; core on {" + elements + "}";
        }
        return o;
    }

    auto cmd_rigid_core(const Options & opt) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        Outcome o;
        o.input["language"] = language_to_json(l);
        auto rc = rigid_core(l, opt.budget);
        o.result["language"] = language_to_json(rc);
        o.summary = "rigid core with " + std::to_string(rc.functions.size()) + " cost functions";
        return o;
    }

    auto cmd_reduce_rigid(const Options & opt) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        auto inst = load_instance(opt.inputs.at(1));
        Outcome o;
        o.input["language"] = language_to_json(l);
        o.input["instance"] = instance_to_json(inst);
        auto red = reduce_rigid_instance(l, inst, opt.budget);
        o.result = Json{{"instance", instance_to_json(red.instance)}, {"N", function_to_json(red.N)}, {"P", format_rational(red.P)},
            {"Q", red.Q ? Json(format_rational(*red.Q)) : Json(nullptr)}, {"mass", format_rational(red.mass)}, {"copies", red.copies}};
        o.summary = "reduced instance with " + std::to_string(red.copies) + " copies of N";
        if (opt.solve) {
            auto reduced = solve(red.instance, opt.budget);
            auto back = recover_rigid_optimum(red, reduced);
            o.result["reduced_optimum"] = reduced.cost.to_string();
            o.result["optimum"] = back.cost.to_string();
            if (back.cost.is_finite())
                o.result["assignment"] = assignment_json(inst, back.assignment);
            o.summary += "; optimum " + back.cost.to_string();
        }
        return o;
    }

    // Loads the lift input (language or instance) into `o.input`.
    auto lift_input(const std::string & path, Outcome & o) -> std::pair<std::optional<Language>, std::optional<Instance>>
    {
        auto value = read_json(path);
        if (is_language_document(value)) {
            auto l = in_file(path, [&] { return language_from_json(value); });
            o.input["language"] = language_to_json(l);
            return {l, std::nullopt};
        }
        auto inst = load_instance(path);
        o.input["instance"] = instance_to_json(inst);
        return {std::nullopt, inst};
    }

    auto cmd_lift_power(const Options & opt) -> Outcome
    {
        Outcome o;
        auto [l, inst] = lift_input(opt.inputs.at(0), o);
        if (l) {
            auto lifted = power_lift(*l, opt.exponent);
            o.result["language"] = language_to_json(lifted);
            o.summary = "lifted " + std::to_string(lifted.functions.size()) + " cost functions to the domain of size " + std::to_string(lifted.domain_size);
        }
        else {
            auto lifted = power_lift_instance(*inst, opt.exponent);
            o.result["instance"] = instance_to_json(lifted);
            o.summary = "lifted instance with " + std::to_string(lifted.variables.size()) + " variables";
        }
        return o;
    }

    auto cmd_lift_quotient(const Options & opt) -> Outcome
    {
        Outcome o;
        auto [l, inst] = lift_input(opt.inputs.at(0), o);
        if (opt.congruence.empty())
            throw StructuralError("--congruence is required");
        auto cj = read_json(opt.congruence);
        auto cong = in_file(opt.congruence, [&] { return congruence_from_json(cj, congruence_domain(cj)); });
        o.input["congruence"] = congruence_to_json(cong);
        std::vector<Operation> ops;
        if (! opt.ops.empty()) {
            ops = ops_from_file(opt.ops, cong.domain_size);
            o.input["operations"] = Json::array();
            for (const auto & f : ops)
                o.input["operations"].push_back(operation_to_json(f));
        }
        if (l) {
            auto lifted = quotient_lift(*l, cong, ops);
            o.result["language"] = language_to_json(lifted);
            o.summary = "pulled back " + std::to_string(lifted.functions.size()) + " cost functions to the domain of size " + std::to_string(cong.domain_size);
        }
        else {
            cong.check_compatible(ops);
            auto lifted = quotient_lift_instance(*inst, cong);
            o.result["instance"] = instance_to_json(lifted);
            o.summary = "pulled back instance to the domain of size " + std::to_string(cong.domain_size);
        }
        return o;
    }

    auto cmd_lift_sub(const Options & opt) -> Outcome
    {
        Outcome o;
        auto [l, inst] = lift_input(opt.inputs.at(0), o);
        if (opt.subset.empty())
            throw StructuralError("--subset is required");
        auto subset = opt.subset;
        std::sort(subset.begin(), subset.end());
        const int n = l ? l->domain_size : inst->domain_size;
        std::vector<Operation> ops;
        if (! opt.ops.empty()) {
            ops = ops_from_file(opt.ops, n);
            o.input["operations"] = Json::array();
            for (const auto & f : ops)
                o.input["operations"].push_back(operation_to_json(f));
        }
        if (l) {
            auto restricted = subalgebra_restrict(*l, subset, ops);
            o.result["language"] = language_to_json(restricted);
            o.summary = "restricted " + std::to_string(restricted.functions.size()) + " cost functions to " + std::to_string(subset.size()) + " elements";
        }
        else {
            check_subuniverse(subset, ops);
            auto restricted = restrict_instance(*inst, subset);
            o.result["instance"] = instance_to_json(restricted);
            o.summary = "restricted instance to " + std::to_string(subset.size()) + " elements";
        }
        return o;
    }

    auto cmd_classify(const Options & opt, const std::string & criterion) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        Outcome o;
        o.input["language"] = language_to_json(l);
        Verdict v;
        if (criterion == "boolean")
            v = classify_boolean(l, opt.budget);
        else if (criterion == "taylor")
            v = hardness_certificate(l, opt.budget);
        else
            v = classify_conservative(l, opt.budget);
        verdict_outcome(v, o);
        return o;
    }

    auto cmd_reduce_1in3(const Options & opt) -> Outcome
    {
        auto l = load_language(opt.inputs.at(0));
        Outcome o;
        o.input["language"] = language_to_json(l);
        Formula formula;
        if (opt.inputs.size() > 1) {
            auto fj = read_json(opt.inputs[1]);
            formula = in_file(opt.inputs[1], [&] { return formula_from_json(fj); });
        }
        else
            formula = random_formula(opt.random_variables, opt.random_clauses, opt.seed);
        o.input["formula"] = formula_to_json(formula);

        auto v = hardness_certificate(l, opt.budget);
        o.result["verdict"] = verdict_to_json(v);
        if (v.status == Status::Unknown) {
            o.status = "UNKNOWN";
            o.summary = "unknown: " + v.note;
            o.code = unknown_or_budget;
            return o;
        }
        if (v.status != Status::NpHard)
            throw CertificateRequired("no projection-only quotient certificate: the language is " + summary_for(v));
        auto red = reduce_one_in_three(rigid_core(l, opt.budget), v.quotient, formula, opt.budget);
        o.result["relation"] = relation_to_json(red.relation);
        o.result["P"] = format_rational(red.P);
        o.result["target"] = format_rational(red.target);
        o.result["instance"] = instance_to_json(red.instance);
        o.summary = "1-in-3 instance with " + std::to_string(red.instance.constraints.size()) + " constraints and target " +
            format_rational(red.target);
        if (opt.solve) {
            auto r = solve(red.instance, opt.budget);
            bool satisfiable = r.cost == ExtendedRational(red.target);
            o.result["optimum"] = r.cost.to_string();
            o.result["satisfiable"] = satisfiable;
            o.summary += satisfiable ? "; satisfiable" : "; unsatisfiable";
        }
        return o;
    }

    // --- evidence -------------------------------------------------------

    auto rejected(const std::string & message) -> Verification
    {
        return {false, message};
    }

    auto verify_operation_set(const Json & value, const Language & l, bool subset_of_pol) -> std::optional<OperationSet>
    {
        auto set = operation_set_from_json(value);
        if (set.domain_size != l.domain_size)
            return std::nullopt;
        if (subset_of_pol)
            for (const auto & f : set.operations)
                if (! is_polymorphism(f, l))
                    return std::nullopt;
        return set;
    }

    auto verify_document(const Json & doc) -> Verification
    {
        using namespace json_fields;
        if (! doc.is_object() || ! doc.contains("tool") || ! doc.contains("command") || ! doc.contains("result"))
            return rejected("not a result document");
        const auto command = as_string(doc["command"], "command");
        const auto & input = doc.contains("input") ? doc["input"] : Json::object();
        const auto & result = doc["result"];
        const auto status = doc.contains("status") ? as_string(doc["status"], "status") : "OK";
        if (status == "BUDGET_EXCEEDED")
            return {true, "budget note only; nothing to verify"};

        std::optional<Language> l;
        if (input.contains("language"))
            l = language_from_json(input["language"], "input.language");
        std::optional<Instance> inst;
        if (input.contains("instance"))
            inst = instance_from_json(input["instance"], "", "input.instance");

        if (command == "solve") {
            auto optimum = ExtendedRational::parse(as_string(result["optimum"], "result.optimum"));
            if (optimum.is_infinite())
                return {true, "infinite optimum recorded; infeasibility carries no certificate"};
            Assignment s;
            for (const auto & name : inst->variables)
                s.push_back(static_cast<int>(as_int(result["assignment"][name], "result.assignment." + name)));
            if (cost(*inst, s) != optimum)
                return rejected("the assignment does not attain the recorded optimum");
            return {true, "assignment attains the recorded optimum"};
        }
        if (command == "express") {
            auto f = language_from_json(Json{{"domain_size", inst->domain_size}, {"cost_functions", Json::array({result["function"]})}});
            return {true, "expressed function of arity " + std::to_string(f.functions[0].arity) + " is well formed"};
        }
        if (command == "polymorphisms") {
            if (! verify_operation_set(result["polymorphisms"], *l, true))
                return rejected("a listed operation is not a polymorphism");
            return {true, "every listed operation is a polymorphism"};
        }
        if (command == "positive-clone") {
            auto pol = verify_operation_set(result["polymorphisms"], *l, true);
            auto plus = verify_operation_set(result["positive_clone"], *l, false);
            if (! pol || ! plus)
                return rejected("operation sets do not match the language");
            std::vector<Weighting> witnesses;
            for (std::size_t i = 0; i < result["witnesses"].size(); ++i) {
                witnesses.push_back(weighting_from_json(result["witnesses"][i], l->domain_size));
                if (! is_weighted_polymorphism(witnesses.back(), *l).holds)
                    return rejected("a witness is not a weighted polymorphism");
            }
            for (const auto & f : plus->operations) {
                if (! pol->contains(f))
                    return rejected("a positive-clone member is not a polymorphism");
                if (is_projection(f))
                    continue;
                if (std::none_of(witnesses.begin(), witnesses.end(), [&](const Weighting & w) { return sgn(w.weight(f)) > 0; }))
                    return rejected("a positive-clone member has no witness");
            }
            for (const auto & p : projections(l->domain_size, plus->arity).operations)
                if (! plus->contains(p))
                    return rejected("a projection is missing from the positive clone");
            return {true, "every member is witnessed by a verified weighted polymorphism"};
        }
        if (command == "wpol-check") {
            auto w = weighting_from_json(input["weighting"], l->domain_size);
            auto check = check_json(is_weighted_polymorphism(w, *l));
            if (check != result["check"])
                return rejected("the improvement check gives a different outcome");
            return {true, "improvement check reproduced"};
        }
        if (command == "indicator") {
            auto ind = instance_from_json(result["instance"], "", "result.instance");
            auto P = ExtendedRational::parse(as_string(result["P"], "result.P"));
            auto plus = operation_set_from_json(result["positive_clone"]);
            for (const auto & entry : result["values"]) {
                Operation f(l->domain_size, as_int(result["arity"], "result.arity"), entry["operation_table"].get<std::vector<int>>());
                auto v = ExtendedRational::parse(as_string(entry["value"], "result.values"));
                if (cost(ind, f.table) != v)
                    return rejected("a recorded indicator value does not match the instance");
                if (v < P || (v == P) != plus.contains(f))
                    return rejected("indicator values do not separate the positive clone");
            }
            return {true, "indicator values reproduced and separate the positive clone"};
        }
        if (command == "core") {
            auto report = result["report"];
            if (! report["is_core"].get<bool>()) {
                auto f = operation_from_json(report["witness"], l->domain_size);
                auto w = weighting_from_json(report["witness_weighting"], l->domain_size);
                if (is_bijective(f) || sgn(w.weight(f)) <= 0 || ! is_weighted_polymorphism(w, *l).holds)
                    return rejected("the non-core witness does not verify");
            }
            auto subset = result["subset"].get<std::vector<int>>();
            if (language_to_json(restrict_language(*l, subset)) != result["core"])
                return rejected("the core is not the restriction to the recorded subset");
            return {true, report["is_core"].get<bool>() ? "core (no witness to check)" : "non-core witness verified"};
        }
        if (command == "rigid-core") {
            auto rc = language_from_json(result["language"]);
            for (const auto & f : l->functions)
                if (! rc.find(f.name) || *rc.find(f.name) != f)
                    return rejected("the rigid core lost a cost function");
            for (int d = 0; d < l->domain_size; ++d) {
                auto nd = constant_indicator(l->domain_size, d);
                if (std::none_of(rc.functions.begin(), rc.functions.end(), [&](const CostFunction & f) { return f.table == nd.table; }))
                    return rejected("a constant cost function is missing");
            }
            return {true, "contains the language and every constant cost function"};
        }
        if (command == "reduce-rigid") {
            if (result["Q"].is_null())
                return {true, "positive clone equals the unary polymorphisms; one copy of N"};
            auto P = parse_rational(as_string(result["P"], "result.P"));
            auto Q = parse_rational(as_string(result["Q"], "result.Q"));
            auto mass = parse_rational(as_string(result["mass"], "result.mass"));
            if (Q <= P || Rational(static_cast<long>(as_int(result["copies"], "result.copies"))) * (Q - P) <= mass)
                return rejected("too few copies of N for the recorded gap");
            return {true, "copies of N exceed the recorded mass"};
        }
        if (command == "classify boolean" || command == "classify taylor" || command == "classify conservative") {
            auto v = verdict_from_json(result["verdict"], l->domain_size, "result.verdict");
            return verify_verdict(*l, v);
        }
        if (command == "reduce-1in3") {
            auto v = verdict_from_json(result["verdict"], l->domain_size, "result.verdict");
            auto check = verify_verdict(*l, v);
            if (! check.ok || v.status != Status::NpHard)
                return check.ok ? Verification{true, "no reduction recorded"} : check;
            auto relation = relation_from_json(result["relation"], l->domain_size);
            if (relation != one_in_three_relation(*v.quotient))
                return rejected("the relation does not match the certificate");
            return {true, "certificate verified and relation matches"};
        }
        if (command.rfind("lift ", 0) == 0)
            return {true, "transform output; nothing to certify"};
        return rejected("unknown command '" + command + "'");
    }

    auto cmd_verify(const Options & opt) -> Outcome
    {
        auto doc = read_json(opt.inputs.at(0));
        auto check = in_file(opt.inputs.at(0), [&] { return verify_document(doc); });
        Outcome o;
        o.input["document"] = opt.inputs.at(0);
        o.result = Json{{"verified", check.ok}, {"message", check.message},
            {"checked_command", doc.contains("command") ? doc["command"] : Json(nullptr)}};
        o.status = check.ok ? "OK" : "REJECTED";
        o.summary = (check.ok ? "verified: " : "rejected: ") + check.message;
        o.code = check.ok ? ok : input_error;
        return o;
    }

    auto config_json(const Options & opt) -> Json
    {
        return Json{{"budget",
                        {{"assignments", opt.budget.assignments},
                            {"table_cells", opt.budget.table_cells},
                            {"nodes", opt.budget.nodes},
                            {"operations", opt.budget.operations},
                            {"lp_rows", opt.budget.lp_rows}}},
            {"seed", opt.seed},
            {"arity", opt.arity},
            {"exponent", opt.exponent},
            {"congruence", opt.congruence},
            {"ops", opt.ops},
            {"subset", opt.subset},
            {"vars", opt.vars},
            {"idempotent", opt.idempotent},
            {"conservative", opt.conservative},
            {"solve", opt.solve},
            {"random_variables", opt.random_variables},
            {"random_clauses", opt.random_clauses},
            {"inputs", opt.inputs}};
    }
}

auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"Exact algebraic toolkit for valued constraint languages", "vcsp"};
    app.set_version_flag("--version", std::string("vcsp ") + VCSP_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--budget-assignments", opt.budget.assignments, "Cap on brute-force assignments")->check(CLI::PositiveNumber);
    app.add_option("--budget-cells", opt.budget.table_cells, "Cap on table cells of enumerated operations")->check(CLI::PositiveNumber);
    app.add_option("--budget-ops", opt.budget.operations, "Cap on operations in any set")->check(CLI::PositiveNumber);
    app.add_option("--budget-lp-rows", opt.budget.lp_rows, "Cap on rows of any linear program")->check(CLI::PositiveNumber);
    app.add_option("--budget-nodes", opt.budget.nodes, "Cap on backtracking nodes")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "Seed for generated inputs");
    app.add_option("--out", opt.out, "Result file");

    app.add_option("--arity", opt.arity, "Arity of enumerated operations or indicators")->check(CLI::Range(1, 16));
    app.add_option("--exponent", opt.exponent, "Exponent of a power lift")->check(CLI::Range(1, 16));
    app.add_option("--congruence", opt.congruence, "Congruence file");
    app.add_option("--ops", opt.ops, "Operation set file a transform must respect");
    app.add_option("--subset", opt.subset, "Elements of a subuniverse")->delimiter(',');
    app.add_option("--vars", opt.vars, "Variables to express over")->delimiter(',');
    app.add_flag("--idempotent", opt.idempotent, "Only idempotent operations");
    app.add_flag("--conservative", opt.conservative, "Only conservative operations");
    app.add_flag("--solve", opt.solve, "Also solve the produced instance");
    app.add_option("--random-variables", opt.random_variables, "Variables of a generated formula")->check(CLI::Range(1, 64));
    app.add_option("--random-clauses", opt.random_clauses, "Clauses of a generated formula")->check(CLI::Range(0, 1000));

    std::string command;
    auto add = [&](CLI::App * parent, const std::string & name, const std::string & help) {
        auto * sub = parent->add_subcommand(name, help);
        sub->add_option("files", opt.inputs, "Input files");
        sub->fallthrough();
        sub->callback([&command, sub, parent, root = &app] {
            command = (parent == root ? "" : parent->get_name() + " ") + sub->get_name();
        });
        return sub;
    };

    add(&app, "solve", "Exact optimum of an instance");
    add(&app, "express", "Cost function expressed by an instance on --vars");
    add(&app, "polymorphisms", "Polymorphisms of one arity");
    add(&app, "positive-clone", "Positive clone of one arity with witnesses");
    add(&app, "wpol-check", "Checks a weighting file against a language");
    add(&app, "indicator", "Indicator cost function of a core language");
    add(&app, "core", "Core report and core of a language");
    add(&app, "rigid-core", "Language with every constant cost function added");
    add(&app, "reduce-rigid", "Rigid-core instance rewritten over the language");

    auto * lift = app.add_subcommand("lift", "Power, quotient and subalgebra transforms");
    lift->require_subcommand(1);
    lift->fallthrough();
    add(lift, "power", "Lift along a finite power");
    add(lift, "quotient", "Pull back along a congruence");
    add(lift, "sub", "Restrict to a subuniverse");

    auto * classify = app.add_subcommand("classify", "Complexity classification");
    classify->require_subcommand(1);
    classify->fallthrough();
    add(classify, "boolean", "Six-multimorphism criterion on two elements");
    add(classify, "taylor", "Cyclic-operation search with hardness certificate");
    add(classify, "conservative", "STP/MJN criterion for conservative languages");

    add(&app, "reduce-1in3", "One-in-Three reduction from a hardness certificate");
    add(&app, "verify-evidence", "Re-checks a result file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForVersion & e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e, out, err);
        return input_error;
    }

    static const std::map<std::string, std::size_t> arity_of_inputs{{"wpol-check", 2}, {"reduce-rigid", 2}};
    auto wanted = arity_of_inputs.count(command) ? arity_of_inputs.at(command) : 1;
    if (command == "reduce-1in3")
        wanted = opt.inputs.size() == 2 ? 2 : 1;
    if (opt.inputs.size() != wanted) {
        err << "error: " << command << " expects " << wanted << " input file" << (wanted > 1 ? "s" : "") << "\n";
        return input_error;
    }

    static const std::map<std::string, std::function<Outcome(const Options &)>> commands{
        {"solve", cmd_solve},
        {"express", cmd_express},
        {"polymorphisms", cmd_polymorphisms},
        {"positive-clone", cmd_positive_clone},
        {"wpol-check", cmd_wpol_check},
        {"indicator", cmd_indicator},
        {"core", cmd_core},
        {"rigid-core", cmd_rigid_core},
        {"reduce-rigid", cmd_reduce_rigid},
        {"lift power", cmd_lift_power},
        {"lift quotient", cmd_lift_quotient},
        {"lift sub", cmd_lift_sub},
        {"classify boolean", [](const Options & o) { return cmd_classify(o, "boolean"); }},
        {"classify taylor", [](const Options & o) { return cmd_classify(o, "taylor"); }},
        {"classify conservative", [](const Options & o) { return cmd_classify(o, "conservative"); }},
        {"reduce-1in3", cmd_reduce_1in3},
        {"verify-evidence", cmd_verify},
    };

    Outcome outcome;
    try {
        outcome = commands.at(command)(opt);
    }
    catch (const BudgetExceeded & e) {
        outcome.status = "BUDGET_EXCEEDED";
        outcome.result = Json{{"note", e.what()}};
        outcome.summary = std::string("budget exceeded: ") + e.what();
        outcome.code = unknown_or_budget;
    }
    catch (const InternalError & e) {
        err << "internal error: " << e.what() << "\n";
        return internal_failure;
    }
    catch (const ParseError & e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    catch (const Error & e) {
        err << "error: " << opt.inputs.front() << ": " << e.what() << "\n";
        return input_error;
    }

    Json doc{{"tool", {{"name", "vcsp"}, {"version", VCSP_VERSION}}},
        {"command", command},
        {"config", config_json(opt)},
        {"input", outcome.input},
        {"status", outcome.status},
        {"result", outcome.result},
        {"summary", outcome.summary}};
    if (opt.out.empty()) {
        out << dump_json(doc);
        err << outcome.summary << "\n";
    }
    else {
        try {
            write_text_file(opt.out, dump_json(doc));
        }
        catch (const Error & e) {
            err << "error: " << e.what() << "\n";
            return input_error;
        }
        out << outcome.summary << "\n";
    }
    return outcome.code;
}

} // namespace vcsp::cli
