#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"

#include <vcsp/errors.hpp>
#include <vcsp/language_io.hpp>
#include <vcsp/variety.hpp>

using namespace vcsp;
using namespace corpus;

TEST_CASE("congruences")
{
    auto c = Congruence::make(3, {{2, 1}, {0}});
    CHECK(c.classes == std::vector<std::vector<int>>{{0}, {1, 2}});
    CHECK(c.class_of(2) == 1);
    CHECK(Congruence::identity(2).classes.size() == 2);
    CHECK_THROWS(Congruence::make(3, {{0, 1}}));
    CHECK_THROWS(Congruence::make(3, {{0, 1}, {1, 2}}));
    CHECK_NOTHROW(c.check_compatible({op(3, 1, {0, 2, 1})}));
    CHECK_THROWS_AS(c.check_compatible({op(3, 1, {1, 0, 2})}), IncompatibleCongruence);
    CHECK(congruence_from_json(congruence_to_json(c), 3) == c);
}

TEST_CASE("packing")
{
    CHECK(integer_root(8, 3) == 2);
    CHECK_THROWS(integer_root(6, 2));
    for (int e = 0; e < 9; ++e)
        CHECK(pack(unpack(e, 3, 2), 3) == e);
    CHECK(unpack(5, 2, 3) == Tuple{1, 0, 1});
}

TEST_CASE("power lifts")
{
    auto same = power_lift(xor_language(), 1);
    CHECK(serialize_language(same) == serialize_language(xor_language()));

    // inequality on four elements read as pairs of bits
    std::vector<std::string> values;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            values.push_back(x == y ? "0" : "1");
    auto neq4 = function("neq4", 4, 2, values);
    auto lifted = power_lift(neq4, 2);
    CHECK(lifted.domain_size == 2);
    CHECK(lifted.arity == 4);
    Tuple t(4, 0);
    do {
        int x = 2 * t[0] + t[1], y = 2 * t[2] + t[3];
        CHECK(lifted(t) == ExtendedRational(x == y ? 0 : 1));
    } while (next_tuple(t, 2));
    CHECK_THROWS(power_lift(neq4, 3));
}

TEST_CASE("power lift preserves optima")
{
    std::mt19937 rng(41);
    for (int k = 0; k < 25; ++k) {
        auto l = random_language(rng, 4, 3, 2);
        auto inst = random_instance(rng, l, 1 + k % 3, 3);
        auto lifted = power_lift_instance(inst, 2);
        CHECK(lifted.variables.size() == 2 * inst.variables.size());
        auto opt = solve(lifted);
        CHECK(opt.cost == brute_force_optimum(inst));
        CHECK(cost(inst, power_pack_assignment(opt.assignment, 2, 2)) == opt.cost);
    }
}

TEST_CASE("quotient lifts")
{
    auto c = Congruence::make(3, {{0}, {1, 2}});
    auto on_classes = language(2, {function("r", 2, 1, {"0", "5"})});
    auto lifted = quotient_lift(on_classes, c);
    CHECK(lifted.functions[0].table == std::vector<ExtendedRational>{0, 5, 5});
    CHECK(serialize_language(quotient_lift(xor_language(), Congruence::identity(2))) == serialize_language(xor_language()));
    CHECK_THROWS_AS(quotient_lift(on_classes, c, {op(3, 1, {0, 1, 0})}), IncompatibleCongruence);
    CHECK_THROWS(quotient_lift(language(3, {function("t", 3, 1, {"0", "1", "2"})}), c));

    std::mt19937 rng(42);
    for (int k = 0; k < 25; ++k) {
        auto l = random_language(rng, 2, 3, 2);
        auto lifted_l = quotient_lift(l, c);
        CHECK(classify_kind(lifted_l) == classify_kind(l));
        auto inst = random_instance(rng, l, 3, 4);
        auto up = quotient_lift_instance(inst, c);
        CHECK(up.domain_size == 3);
        auto opt = solve(up);
        CHECK(opt.cost == brute_force_optimum(inst));
        CHECK(cost(inst, quotient_assignment(opt.assignment, c)) == opt.cost);
    }
}

TEST_CASE("subalgebras")
{
    CHECK(serialize_language(subalgebra_restrict(xor_language(), {0, 1})) == serialize_language(xor_language()));
    auto single = subalgebra_restrict(xor_language(), {0});
    CHECK(single.functions[0].table == std::vector<ExtendedRational>{1});
    CHECK_THROWS_AS(subalgebra_restrict(xor_language(), {0}, {op(2, 1, {1, 0})}), NotASubuniverse);
    CHECK_NOTHROW(check_subuniverse({0, 2}, {op(3, 2, {0, 0, 2, 0, 1, 2, 2, 2, 2})}));

    std::mt19937 rng(43);
    for (int k = 0; k < 25; ++k) {
        auto l = random_language(rng, 3, 3, 2);
        std::vector<int> s = k % 2 ? std::vector<int>{0, 2} : std::vector<int>{1, 2};
        auto sub = subalgebra_restrict(l, s);
        auto inst = random_instance(rng, sub, 3, 4);
        auto ext = subalgebra_extend_instance(inst, s, 3);
        CHECK(brute_force_optimum(inst) == solve(ext).cost);
        CHECK(restrict_instance(ext, s).constraints.size() == inst.constraints.size());
    }
}
