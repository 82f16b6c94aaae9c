// End-to-end acceptance checks.  Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include "cli_runs.hpp"
#include "corpus.hpp"
#include "lp_oracle.hpp"
#include "oracles.hpp"

#include <vcsp/classifier.hpp>
#include <vcsp/core.hpp>
#include <vcsp/errors.hpp>
#include <vcsp/language_io.hpp>
#include <vcsp/linear_system.hpp>
#include <vcsp/polymorphism.hpp>
#include <vcsp/variety.hpp>
#include <vcsp/weighting.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

using namespace vcsp;
using namespace corpus;

namespace
{
    // Every comparison below is exact; these pin the allowed deviation and the
    // corpus sizes.
    const Rational tolerance{0};
    constexpr int boolean_corpus = 200;
    constexpr int lp_systems = 1000;
    constexpr int opt_instances = 100;
    constexpr int core_instances = 50;
    constexpr int rigid_instances = 25;
    constexpr int variety_instances = 25;
    constexpr int cyclic_corpus = 100;
    constexpr int formulas = 20;

    struct Outcome
    {
        bool pass = true;
        std::string detail;
    };

    // Collects failures of one criterion; keeps the first message.
    struct Check
    {
        Outcome outcome;
        auto operator()(bool condition, const std::string & message) -> void
        {
            if (! condition && outcome.pass) {
                outcome.pass = false;
                outcome.detail = message;
            }
        }
    };

    auto exact(const ExtendedRational & a, const ExtendedRational & b) -> bool
    {
        if (a.is_infinite() || b.is_infinite())
            return a == b;
        return abs(a.value() - b.value()) <= tolerance;
    }

    auto crisp_neq() -> CostFunction { return function("ne", 2, 2, {"inf", "0", "0", "inf"}); }

    auto random_core(std::mt19937 & rng, int n, int max_arity = 2) -> Language
    {
        while (true) {
            auto l = random_language(rng, n, 3, max_arity);
            if (core_report(l).is_core)
                return l;
        }
    }

    /// Named Boolean languages; {neq} is the only non-core.
    auto boolean_corpus_languages() -> std::vector<Language>
    {
        return {xor_language(), neq_language(), constants_language(), language(2, {rho_neq(), n0(), n1()}),
            language(2, {rho_xor(), crisp_neq()}), conservative_closure(neq_language()), conservative_closure(xor_language())};
    }

    auto all_optima(const Instance & inst) -> std::pair<ExtendedRational, std::set<Assignment>>
    {
        ExtendedRational best = INF;
        std::set<Assignment> optima;
        Assignment s(inst.variables.size(), 0);
        do {
            auto c = cost(inst, s);
            if (c < best) {
                best = c;
                optima.clear();
            }
            if (c == best && c.is_finite())
                optima.insert(s);
        } while (next_tuple(s, inst.domain_size));
        return {best, optima};
    }

    auto apply(const Operation & f, const std::vector<Assignment> & args) -> Assignment
    {
        Assignment out(args[0].size());
        for (std::size_t v = 0; v < out.size(); ++v) {
            Tuple t;
            for (const auto & a : args)
                t.push_back(a[v]);
            out[v] = f(t);
        }
        return out;
    }

    auto random_system(std::mt19937 & rng, bool constant) -> LinearSystem
    {
        std::uniform_int_distribution<std::size_t> nv(0, 6), nr(0, 10);
        std::uniform_int_distribution<int> coef(-3, 3), kind(0, 2);
        LinearSystem s;
        s.num_vars = nv(rng);
        s.has_free_constant = constant;
        auto rows = nr(rng);
        for (std::size_t j = 0; j < rows; ++j) {
            LinearRow r;
            for (std::size_t i = 0; i < s.num_vars; ++i)
                r.coefficients.emplace_back(coef(rng));
            r.rhs = coef(rng);
            r.kind = kind(rng) == 0 ? RowKind::Eq : RowKind::Geq;
            s.rows.push_back(r);
        }
        return s;
    }

    // 1
    auto triangle() -> Outcome
    {
        Check check;
        Instance t;
        t.domain_size = 2;
        for (auto v : {"a", "b", "c"})
            t.add_variable(v);
        t.add_constraint({0, 1}, rho_xor());
        t.add_constraint({1, 2}, rho_xor());
        t.add_constraint({0, 2}, rho_xor());
        auto r = solve(t);
        check(exact(r.cost, ExtendedRational(1)), "optimum " + r.cost.to_string());
        check(exact(brute_force_optimum(t), ExtendedRational(1)), "brute force disagrees");
        check(exact(cost(t, r.assignment), r.cost), "assignment does not attain the optimum");
        check.outcome.detail = check.outcome.pass ? "optimum 1" : check.outcome.detail;
        return check.outcome;
    }

    // 2
    auto boolean_dichotomy() -> Outcome
    {
        Check check;
        check(classify_boolean(xor_language()).status == Status::NpHard, "xor not NP-hard");
        auto neq = classify_boolean(neq_language());
        check(neq.status == Status::Tractable && neq.multimorphism_name == "<min,max>", "neq not tractable via <min,max>");

        const auto six = boolean_multimorphisms();
        const auto tables = oracles::boolean_multimorphism_tables();
        std::mt19937 rng(2001);
        int languages = 0;
        int hard = 0;
        while (languages < boolean_corpus) {
            auto l = random_core(rng, 2);
            ++languages;
            bool any = false;
            for (std::size_t i = 0; i < six.size(); ++i) {
                bool admitted = ! multimorphism_failure(l, six[i]);
                any = any || admitted;
                check(admitted == oracles::admits(l, tables[i]), six[i].name + " disagrees with the inequality checker");
            }
            auto v = classify_boolean(l);
            check((v.status == Status::NpHard) == ! any, "verdict disagrees with the six checks");
            check(verify_verdict(l, v).ok, "verdict evidence does not verify");
            hard += any ? 0 : 1;
        }
        if (check.outcome.pass)
            check.outcome.detail = std::to_string(languages) + " random cores, " + std::to_string(hard) + " NP-hard";
        return check.outcome;
    }

    // 3
    auto farkas() -> Outcome
    {
        Check check;
        std::mt19937 rng(3003);
        int feasible = 0;
        for (int k = 0; k < lp_systems; ++k) {
            auto s = random_system(rng, k % 4 != 0);
            auto result = solve_farkas(s);
            check(result.index() == 0 || result.index() == 1, "no branch returned");
            bool solved = std::holds_alternative<FarkasSolution>(result);
            if (solved)
                check(satisfies(s, std::get<FarkasSolution>(result)), "solution fails substitution");
            else
                check(certifies(s, std::get<FarkasCertificate>(result)), "certificate fails substitution");
            check(solved == oracle::feasible(s), "disagrees with vertex enumeration on system " + std::to_string(k));
            feasible += solved;
        }
        if (check.outcome.pass)
            check.outcome.detail = std::to_string(lp_systems) + " systems, " + std::to_string(feasible) + " feasible, 100% agreement";
        return check.outcome;
    }

    // 4
    auto positive_clone_closure() -> Outcome
    {
        Check check;
        auto languages = boolean_corpus_languages();
        std::mt19937 rng(4004);
        for (int k = 0; k < 20; ++k)
            languages.push_back(random_language(rng, 2, 3, 2));
        std::size_t compositions = 0;
        for (const auto & l : languages) {
            std::vector<OperationSet> plus{OperationSet{}, positive_clone(l, 1), positive_clone(l, 2)};
            for (int k = 1; k <= 2; ++k)
                for (int m = 1; m <= 2; ++m)
                    for (const auto & f : plus[k].operations) {
                        std::vector<Operation> g(k, plus[m].operations[0]);
                        // every k-tuple of arity-m members
                        std::vector<std::size_t> idx(k, 0);
                        while (true) {
                            for (int i = 0; i < k; ++i)
                                g[i] = plus[m].operations[idx[i]];
                            ++compositions;
                            check(plus[m].contains(superposition(f, g)), "superposition leaves the positive clone");
                            int i = k - 1;
                            while (i >= 0 && ++idx[i] == plus[m].size())
                                idx[i--] = 0;
                            if (i < 0)
                                break;
                        }
                    }
            for (int m = 1; m <= 2; ++m)
                for (const auto & p : projections(2, m).operations)
                    check(plus[m].contains(p), "a projection is missing");
        }
        auto x = positive_clone(xor_language(), 1);
        check(x == OperationSet(2, 1, {Operation(2, 1, {0, 1}), Operation(2, 1, {1, 0})}), "unary positive clone of xor is not {id, Inv}");
        if (check.outcome.pass)
            check.outcome.detail = std::to_string(languages.size()) + " languages, " + std::to_string(compositions) + " superpositions";
        return check.outcome;
    }

    // 5
    auto indicator() -> Outcome
    {
        Check check;
        for (const auto & l : {constants_language(), xor_language()}) {
            auto ind = build_indicator(l, 1);
            auto pol = enumerate_polymorphisms(l, 1);
            std::vector<int> table(2, 0);
            do {
                Operation f(2, 1, table);
                auto v = ind.value(f);
                auto direct = cost(ind.instance, table);
                check(exact(v, direct), "indicator value differs from the instance cost");
                check(v >= ExtendedRational(ind.P), "value below P");
                check(v.is_finite() == is_polymorphism(f, l), "finiteness differs from the polymorphism test");
                bool member = pol.contains(f) && pol_plus_membership(l, f, {}, &pol).member;
                check(exact(v, ExtendedRational(ind.P)) == member, "value P differs from membership");
            } while (next_tuple(table, 2));
        }
        if (check.outcome.pass)
            check.outcome.detail = "{N_0,N_1} and {xor}, all 4 unary tables";
        return check.outcome;
    }

    // 6
    auto core_machinery() -> Outcome
    {
        Check check;
        std::mt19937 rng(6006);
        auto languages = boolean_corpus_languages();
        languages.push_back(language(3, {function("dist", 3, 2, {"0", "1", "2", "1", "0", "1", "2", "1", "0"})}));
        languages.push_back(random_language(rng, 3, 2, 2));

        std::size_t checks = 0;
        for (const auto & l : languages) {
            std::vector<OperationSet> plus{positive_clone(l, 1)};
            if (l.domain_size == 2)
                plus.push_back(positive_clone(l, 2));
            for (int t = 0; t < opt_instances; ++t) {
                auto inst = random_instance(rng, l, 3, 4);
                auto [best, optima] = all_optima(inst);
                if (best.is_infinite())
                    continue;
                std::vector<Assignment> list(optima.begin(), optima.end());
                for (const auto & f : plus[0].operations) {
                    ++checks;
                    check(optima.count(apply(f, {list[0]})), "unary member maps an optimum to a non-optimum");
                }
                if (plus.size() > 1)
                    for (const auto & f : plus[1].operations) {
                        ++checks;
                        check(optima.count(apply(f, {list.front(), list.back()})), "binary member maps optima to a non-optimum");
                    }
            }
        }

        int preserved = 0;
        for (int t = 0; t < core_instances; ++t) {
            auto l = random_language(rng, 2 + t % 2, 3, 2);
            auto c = compute_core(l);
            auto inst = random_instance(rng, l, 4, 4);
            check(exact(brute_force_optimum(inst), brute_force_optimum(restrict_instance(inst, c.subset))), "core changes an optimum");
            preserved += c.subset.size() < static_cast<std::size_t>(l.domain_size);
        }

        for (const auto & l : languages) {
            if (! core_report(l).is_core)
                continue;
            auto rc = rigid_core(l);
            check(enumerate_polymorphisms(rc, 1) == projections(l.domain_size, 1), "rigid core has a unary polymorphism besides id");
        }

        // Case labels: 0 reduced optimum infinite, 1 anchors in the positive
        // clone, 2 anchors outside it.
        std::array<int, 3> cases{};
        auto reduce = [&](const Language & l, const Instance & inst) {
            auto red = reduce_rigid_instance(l, inst);
            auto reduced = solve(red.instance);
            auto back = recover_rigid_optimum(red, reduced);
            check(exact(back.cost, brute_force_optimum(inst)), "reduction changes the optimum");
            if (back.cost.is_finite())
                check(exact(cost(inst, back.assignment), back.cost), "recovered assignment does not attain the optimum");
            if (reduced.cost.is_infinite())
                ++cases[0];
            else {
                Tuple anchors;
                for (int v : red.anchors)
                    anchors.push_back(reduced.assignment[v]);
                ++cases[exact(red.N(anchors), ExtendedRational(red.P)) ? 1 : 2];
            }
        };
        auto x = xor_language();
        auto xc = rigid_core(x);
        for (int t = 0; t < rigid_instances; ++t)
            reduce(x, random_instance(rng, xc, 3, 2 + t % 4));
        auto strict = language(2, {rho_xor(), crisp_neq()});
        auto sc = rigid_core(strict);
        for (int t = 0; t < 5; ++t)
            reduce(strict, random_instance(rng, sc, 2, 3));
        check(cases[0] > 0 && cases[1] > 0 && cases[2] > 0, "not every proof case was exercised");

        if (check.outcome.pass)
            check.outcome.detail = std::to_string(checks) + " optimum checks, " + std::to_string(preserved) + " proper cores, cases " +
                std::to_string(cases[0]) + "/" + std::to_string(cases[1]) + "/" + std::to_string(cases[2]);
        return check.outcome;
    }

    // 7
    auto idempotent_positive_clone() -> Outcome
    {
        Check check;
        std::mt19937 rng(7007);
        std::vector<Language> cores;
        for (const auto & l : boolean_corpus_languages())
            if (core_report(l).is_core)
                cores.push_back(l);
        for (int k = 0; k < 10; ++k)
            cores.push_back(random_core(rng, 2));
        for (const auto & l : cores)
            for (int m = 1; m <= 2; ++m) {
                OperationSet idempotent(l.domain_size, m);
                for (const auto & f : positive_clone(l, m).operations)
                    if (is_idempotent(f))
                        idempotent.insert(f);
                check(idempotent == positive_clone(rigid_core(l), m), "idempotent members differ at arity " + std::to_string(m));
            }
        if (check.outcome.pass)
            check.outcome.detail = std::to_string(cores.size()) + " cores, m = 1, 2";
        return check.outcome;
    }

    // 8
    auto variety() -> Outcome
    {
        Check check;
        std::mt19937 rng(8008);
        for (int k = 0; k < variety_instances; ++k) {
            auto l = random_language(rng, 4, 3, 2);
            auto inst = random_instance(rng, l, 1 + k % 3, 3);
            auto opt = solve(power_lift_instance(inst, 2));
            check(exact(opt.cost, brute_force_optimum(inst)), "power lift changes the optimum");
            check(exact(cost(inst, power_pack_assignment(opt.assignment, 2, 2)), opt.cost), "packed assignment is not optimal");
        }
        auto merge = Congruence::make(3, {{0, 1}, {2}});
        for (int k = 0; k < variety_instances; ++k) {
            auto l = random_language(rng, 2, 3, 2);
            auto inst = random_instance(rng, l, 3, 4);
            auto opt = solve(quotient_lift_instance(inst, merge));
            check(exact(opt.cost, brute_force_optimum(inst)), "quotient lift changes the optimum");
            check(exact(cost(inst, quotient_assignment(opt.assignment, merge)), opt.cost), "quotient assignment is not optimal");
        }
        for (int k = 0; k < variety_instances; ++k) {
            auto l = random_language(rng, 3, 3, 2);
            std::vector<int> s = k % 2 ? std::vector<int>{0, 2} : std::vector<int>{1, 2};
            auto sub = subalgebra_restrict(l, s);
            auto inst = random_instance(rng, sub, 3, 4);
            check(exact(brute_force_optimum(inst), solve(subalgebra_extend_instance(inst, s, 3)).cost), "subalgebra changes the optimum");
        }
        if (check.outcome.pass)
            check.outcome.detail = std::to_string(3 * variety_instances) + " instances";
        return check.outcome;
    }

    // 9
    auto cyclic_equivalence() -> Outcome
    {
        Check check;
        std::mt19937 rng(9009);
        std::array<int, 2> found{};
        for (int k = 0; k < cyclic_corpus; ++k) {
            auto l = random_core(rng, 2);
            for (int m = 2; m <= 3; ++m) {
                auto pol = enumerate_polymorphisms(l, m);
                bool member = false;
                for (const auto & f : pol.operations)
                    if (is_idempotent(f) && is_cyclic(f) && pol_plus_membership(l, f, {}, &pol).member)
                        member = true;
                auto w = find_cyclic_wpol(l, m);
                check(w.has_value() == member, "LP search and membership disagree at arity " + std::to_string(m));
                if (w) {
                    check(is_weighted_polymorphism(*w, l).holds, "cyclic weighting is not a weighted polymorphism");
                    for (const auto & f : w->support())
                        check(is_idempotent(f) && is_cyclic(f), "support is not idempotent cyclic");
                }
                found[m - 2] += member;
            }
        }
        if (check.outcome.pass)
            check.outcome.detail = std::to_string(cyclic_corpus) + " cores, cyclic at m=2: " + std::to_string(found[0]) +
                ", m=3: " + std::to_string(found[1]);
        return check.outcome;
    }

    // 10
    auto hardness_pipeline() -> Outcome
    {
        Check check;
        auto x = xor_language();
        auto v = hardness_certificate(x);
        check(v.status == Status::NpHard, "xor is not NP-hard");
        check(v.quotient.has_value(), "certificate missing");
        check(verify_verdict(x, v).ok, "certificate does not verify");
        if (! check.outcome.pass)
            return check.outcome;
        auto rc = rigid_core(x);
        std::mt19937 rng(10010);
        std::uniform_int_distribution<int> vars(3, 10), clauses(1, 6);
        std::array<int, 2> seen{};
        for (int k = 0; k < formulas; ++k) {
            auto f = random_formula(vars(rng), clauses(rng), rng());
            auto red = reduce_one_in_three(rc, v.quotient, f);
            auto opt = solve(red.instance);
            bool sat = oracles::one_in_three_satisfiable(f);
            check(exact(opt.cost, ExtendedRational(red.target)) == sat, "optimum and SAT oracle disagree");
            check(red.target == red.P * static_cast<long>(f.clauses.size()), "target is not clauses times P");
            ++seen[sat];
        }
        check(seen[0] > 0 && seen[1] > 0, "formulas were all satisfiable or all unsatisfiable");
        if (check.outcome.pass)
            check.outcome.detail = std::to_string(formulas) + " formulas, " + std::to_string(seen[1]) + " satisfiable";
        return check.outcome;
    }

    // 11
    auto determinism() -> Outcome
    {
        Check check;
        auto dir = std::filesystem::temp_directory_path() / ("vcsp_acceptance_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        int k = 0;
        std::set<std::string> commands;
        for (const auto & c : cli_runs::sample_commands()) {
            std::string line;
            for (const auto & a : c.args)
                line += a + " ";
            std::vector<std::string> files;
            for (int run = 0; run < 2; ++run) {
                files.push_back((dir / (std::to_string(k) + "_" + std::to_string(run) + ".json")).string());
                auto args = c.args;
                args.insert(args.end(), {"--out", files.back()});
                auto r = cli_runs::invoke(args);
                check(r.code == c.code, "unexpected exit code for " + line);
            }
            check(read_text_file(files[0]) == read_text_file(files[1]), "output differs for " + line);
            auto stdout1 = cli_runs::invoke(c.args).out;
            check(stdout1 == cli_runs::invoke(c.args).out, "standard output differs for " + line);
            check(stdout1 == read_text_file(files[0]), "standard output differs from the result file for " + line);
            auto v = cli_runs::invoke({"verify-evidence", files[0]});
            check(v.code == 0, "evidence rejected for " + line);
            check(cli_runs::invoke({"verify-evidence", files[0]}).out == v.out, "verification output differs for " + line);
            commands.insert(c.args[0] == "lift" || c.args[0] == "classify" ? c.args[0] + " " + c.args[1] : c.args[0]);
            ++k;
        }
        std::filesystem::remove_all(dir);
        if (check.outcome.pass)
            check.outcome.detail = std::to_string(commands.size() + 1) + " commands over " + std::to_string(k) + " invocations";
        return check.outcome;
    }
}

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"triangle instance over {xor} has optimum 1", triangle},
        {"Boolean dichotomy and six-multimorphism checks", boolean_dichotomy},
        {"Farkas alternative on random systems", farkas},
        {"positive clone closure and unary clone of xor", positive_clone_closure},
        {"unary indicator conditions", indicator},
        {"core machinery", core_machinery},
        {"idempotent positive clone of the rigid core", idempotent_positive_clone},
        {"variety transforms preserve optima", variety},
        {"cyclic weighted polymorphism search", cyclic_equivalence},
        {"hardness certificate and One-in-Three reduction", hardness_pipeline},
        {"deterministic command output", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        }
        catch (const std::exception & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        failed += ! o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " (" << ms
                  << " ms)" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
