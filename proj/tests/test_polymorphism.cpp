#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"

#include <vcsp/errors.hpp>
#include <vcsp/language_io.hpp>
#include <vcsp/polymorphism.hpp>

#include <set>

using namespace vcsp;
using namespace corpus;

namespace
{
    // Direct definition: f applied column-wise to any m rows of Feas stays in Feas.
    auto preserves(const std::vector<int> & table, int n, int m, const Language & l) -> bool
    {
        for (const auto & rho : l.functions) {
            std::vector<Tuple> rel;
            Tuple t(rho.arity, 0);
            do
                if (rho(t).is_finite())
                    rel.push_back(t);
            while (next_tuple(t, n));
            if (rel.empty())
                continue;
            Tuple pick(m, 0);
            do {
                Tuple image(rho.arity);
                for (int j = 0; j < rho.arity; ++j) {
                    std::size_t index = 0;
                    for (int i = 0; i < m; ++i)
                        index = index * n + rel[pick[i]][j];
                    image[j] = table[index];
                }
                if (rho(image).is_infinite())
                    return false;
            } while (next_tuple(pick, static_cast<int>(rel.size())));
        }
        return true;
    }

    auto oracle(const Language & l, int m) -> std::set<std::vector<int>>
    {
        const int n = l.domain_size;
        std::set<std::vector<int>> result;
        std::vector<int> table(power(n, m), 0);
        do
            if (preserves(table, n, m, l))
                result.insert(table);
        while (next_tuple(table, n));
        return result;
    }

    auto tables(const OperationSet & s) -> std::set<std::vector<int>>
    {
        std::set<std::vector<int>> result;
        for (const auto & f : s.operations)
            result.insert(f.table);
        return result;
    }
}

TEST_CASE("polymorphism examples")
{
    CHECK(enumerate_polymorphisms(xor_language(), 1).size() == 4);
    auto unary = enumerate_polymorphisms(constants_language(), 1);
    REQUIRE(unary.size() == 1);
    CHECK(unary.operations[0] == Operation::projection(2, 1, 0));
    auto binary = enumerate_polymorphisms(constants_language(), 2);
    CHECK(binary.size() == 4);
    for (const auto & f : binary.operations)
        CHECK(is_idempotent(f));
}

TEST_CASE("enumeration agrees with the definition")
{
    std::mt19937 rng(3);
    for (int k = 0; k < 40; ++k) {
        int n = k % 3 == 2 ? 3 : 2;
        int m = n == 3 ? 1 : 1 + k % 3;
        auto l = random_language(rng, n, 2, 2);
        auto pol = enumerate_polymorphisms(l, m);
        CHECK(tables(pol) == oracle(l, m));
        CHECK(std::is_sorted(pol.operations.begin(), pol.operations.end()));
        for (const auto & p : projections(n, m).operations)
            CHECK(pol.contains(p));
        for (const auto & f : pol.operations)
            for (const auto & g : pol.operations)
                if (m == 2)
                    CHECK(pol.contains(superposition(f, {g, Operation::projection(n, 2, 1)})));
        auto idem = enumerate_polymorphisms(l, m, {}, {.idempotent = true});
        for (const auto & f : pol.operations)
            CHECK(idem.contains(f) == is_idempotent(f));
        auto cons = enumerate_polymorphisms(l, m, {}, {.conservative = true});
        for (const auto & f : pol.operations)
            CHECK(cons.contains(f) == is_conservative(f));
    }
}

TEST_CASE("enumeration budget")
{
    Budget b;
    CHECK_THROWS_AS(enumerate_polymorphisms(xor_language(), 5, b), BudgetExceeded);
    b.operations = 10;
    CHECK_THROWS_AS(enumerate_polymorphisms(xor_language(), 2, b), BudgetExceeded);
    b = {};
    b.nodes = 5;
    CHECK_THROWS_AS(enumerate_polymorphisms(xor_language(), 2, b), BudgetExceeded);
}

TEST_CASE("operation predicates")
{
    auto mx = op(2, 2, {0, 1, 1, 1});
    CHECK(is_cyclic(mx));
    CHECK(is_idempotent(mx));
    CHECK(is_conservative(mx));
    CHECK_FALSE(is_projection(mx));
    auto p1 = Operation::projection(2, 2, 0);
    CHECK(is_projection(p1));
    CHECK(projection_coordinate(p1) == 0);
    CHECK_FALSE(is_cyclic(p1));
    auto mn = op(2, 3, {0, 1, 1, 0, 1, 0, 0, 1});
    CHECK(is_minority(mn));
    CHECK_FALSE(is_majority(mn));
    CHECK(is_majority(op(2, 3, {0, 0, 0, 1, 0, 1, 1, 1})));
    CHECK(is_bijective(op(2, 1, {1, 0})));
    CHECK_FALSE(is_bijective(op(2, 1, {0, 0})));
    CHECK_FALSE(is_conservative(op(2, 1, {1, 0})));

    // every Boolean op of arity <= 3, then random ternary ops on {0,1,2}
    for (int m = 1; m <= 3; ++m) {
        std::vector<int> table(power(2, m), 0);
        do {
            Operation f(2, m, table);
            if (is_majority(f) || is_minority(f))
                CHECK(is_idempotent(f));
            if (m == 1)
                CHECK(is_cyclic(f));
        } while (next_tuple(table, 2));
    }
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> v(0, 2);
    for (int k = 0; k < 2000; ++k) {
        std::vector<int> table(27);
        for (auto & x : table)
            x = v(rng);
        Operation f(3, 3, table);
        if (is_majority(f) || is_minority(f))
            CHECK(is_idempotent(f));
    }
}

TEST_CASE("closure under superposition")
{
    auto empty = close_under_superposition({}, 2, 2);
    REQUIRE(empty.size() == 2);
    CHECK(empty[0] == projections(2, 1));
    CHECK(empty[1] == projections(2, 2));

    auto mx = op(2, 2, {0, 1, 1, 1});
    auto with_max = close_under_superposition({mx}, 2, 2);
    CHECK(with_max[1].size() == 3);
    CHECK(with_max[1].contains(mx));

    auto inv = op(2, 1, {1, 0});
    auto with_inv = close_under_superposition({inv}, 2, 1);
    CHECK(with_inv[0].size() == 2);

    // majority generates only itself and projections at arity 2 (idempotent, no binary witness)
    auto maj = op(2, 3, {0, 0, 0, 1, 0, 1, 1, 1});
    auto from_maj = close_under_superposition({maj}, 2, 2);
    CHECK(from_maj[1] == projections(2, 2));
    // min and Inv give nand, hence every Boolean operation
    auto mn = op(2, 2, {0, 0, 0, 1});
    auto full = close_under_superposition({mn, inv}, 2, 2);
    CHECK(full[1].size() == 16);
    for (const auto & f : full[1].operations)
        for (const auto & g : full[1].operations)
            for (const auto & h : full[1].operations)
                CHECK(full[1].contains(superposition(f, {g, h})));
}

TEST_CASE("operation set files")
{
    auto pol = enumerate_polymorphisms(constants_language(), 2);
    auto back = operation_set_from_json(operation_set_to_json(pol));
    CHECK(back == pol);
    CHECK_THROWS_AS(operation_set_from_json(parse_json(R"({"domain_size": 2, "arity": 1, "operations": [[0, 2]]})")), ParseError);
}
