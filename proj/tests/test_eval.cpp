#include "ltlkit/errors.hpp"
#include "ltlkit/eval.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace ltlkit;

namespace {

const Formula p = Formula::var(1);

// One p-state with a self loop.
testsupport::RandomInstance all_p_loop() {
    KripkeModel model(1);
    model.add_edge(0, 0);
    model.set_true(1, 0);
    return {std::move(model), LassoPath{{}, {0}}};
}

// Two states alternating, p true only at state 0.
testsupport::RandomInstance flip_flop() {
    KripkeModel model(2);
    model.add_edge(0, 1);
    model.add_edge(1, 0);
    model.set_true(1, 0);
    return {std::move(model), LassoPath{{}, {0, 1}}};
}

}  // namespace

TEST_CASE("satisfaction clauses on small lassos") {
    auto one = all_p_loop();
    CHECK(eval_lasso(one.model, one.path, Formula::always(p)));

    auto two = flip_flop();
    CHECK(!eval_lasso(two.model, two.path, Formula::next(p)));
    CHECK(eval_lasso(two.model, two.path, Formula::next(Formula::next(p))));
    CHECK(eval_lasso(two.model, two.path, Formula::until(p, Formula::neg(p))));
    CHECK(!eval_lasso(two.model, two.path, Formula::until(Formula::neg(p), Formula::falsum())));
    CHECK(oracle_eval(two.model, two.path, Formula::until(p, Formula::neg(p))));
    CHECK(!oracle_eval(two.model, two.path, Formula::until(Formula::neg(p), Formula::falsum())));

    Formula top_until_top = Formula::until(Formula::truth(), Formula::truth());
    CHECK(eval_lasso(one.model, one.path, top_until_top));
    CHECK(oracle_eval(two.model, two.path, top_until_top));
}

TEST_CASE("eval rejects invalid inputs") {
    KripkeModel bad(2);
    bad.add_edge(0, 1);  // state 1 is a dead end
    CHECK_THROWS_AS(eval_lasso(bad, LassoPath{{}, {0, 1}}, p), SemanticError);

    auto two = flip_flop();
    CHECK_THROWS_AS(eval_lasso(two.model, LassoPath{{}, {0, 0}}, p), SemanticError);
}

TEST_CASE("reduce_closed maps closed formulas to constants") {
    Formula top = Formula::truth();
    Formula bottom = Formula::falsum();
    CHECK(reduce_closed(Formula::until(top, top)));
    CHECK(!reduce_closed(Formula::until(top, bottom)));
    CHECK(reduce_closed(Formula::next(Formula::next(top))));
    CHECK(!reduce_closed(bottom));
    CHECK_THROWS_AS(reduce_closed(p), std::invalid_argument);
    CHECK_THROWS_AS(reduce_closed(Formula::next(p)), std::invalid_argument);
}

TEST_CASE("three evaluation routes agree") {
    std::mt19937 rng(20250101);
    for (int i = 0; i < 400; ++i) {
        auto inst = testsupport::random_instance(rng, 4, 6, 2);
        Formula f = testsupport::random_formula(rng, 8, 2);
        const bool a = eval_lasso(inst.model, inst.path, f);
        const bool b = oracle_eval(inst.model, inst.path, f);
        const bool c = testsupport::stabilize_eval(inst.model, inst.path, f);
        CAPTURE(to_string(f));
        CHECK(a == b);
        CHECK(a == c);
    }
}

TEST_CASE("until expansion law") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 200; ++i) {
        auto inst = testsupport::random_instance(rng, 5, 7, 2);
        Formula a = testsupport::random_formula(rng, 5, 2);
        Formula b = testsupport::random_formula(rng, 5, 2);
        Formula u = Formula::until(a, b);
        Formula expanded = Formula::disj(b, Formula::conj(a, Formula::next(u)));
        CHECK(eval_lasso(inst.model, inst.path, u) == eval_lasso(inst.model, inst.path, expanded));
    }
}

TEST_CASE("next is suffix evaluation") {
    std::mt19937 rng(555);
    for (int i = 0; i < 200; ++i) {
        auto inst = testsupport::random_instance(rng, 5, 7, 2);
        Formula f = testsupport::random_formula(rng, 7, 2);
        auto advanced = testsupport::advance(inst.path);
        CHECK(eval_lasso(inst.model, inst.path, Formula::next(f)) ==
              eval_lasso(inst.model, advanced, f));
    }
}

TEST_CASE("doubling the loop changes nothing, member by member") {
    std::mt19937 rng(777);
    for (int i = 0; i < 100; ++i) {
        auto inst = testsupport::random_instance(rng, 5, 6, 2);
        Formula f = testsupport::random_formula(rng, 8, 2);
        auto doubled = testsupport::double_loop(inst.path);
        for (Formula g : closure(f))
            CHECK(eval_lasso(inst.model, inst.path, g) == eval_lasso(inst.model, doubled, g));
    }
}

TEST_CASE("eventually and always are dual") {
    std::mt19937 rng(888);
    for (int i = 0; i < 200; ++i) {
        auto inst = testsupport::random_instance(rng, 5, 7, 2);
        Formula f = testsupport::random_formula(rng, 7, 2);
        CHECK(eval_lasso(inst.model, inst.path, Formula::eventually(f)) ==
              !eval_lasso(inst.model, inst.path, Formula::always(Formula::neg(f))));
    }
}

TEST_CASE("closed formulas are path independent") {
    std::mt19937 rng(1234);
    for (int i = 0; i < 100; ++i) {
        Formula f = testsupport::random_formula(rng, 9, 0);
        const bool expected = reduce_closed(f);
        for (int trial = 0; trial < 5; ++trial) {
            auto inst = testsupport::random_instance(rng, 4, 5, 1);
            CHECK(eval_lasso(inst.model, inst.path, f) == expected);
        }
    }
}

TEST_CASE("truth table rows cover the whole window") {
    auto two = flip_flop();
    Formula f = Formula::until(p, Formula::neg(p));
    TruthTable table = make_truth_table(two.model, two.path, f);
    CHECK(table.prefix_len == 0);
    CHECK(table.loop_len == 2);
    REQUIRE(table.members.size() == table.rows.size());
    for (const auto& row : table.rows) CHECK(row.size() == 2);
    // p's row: true at position 0, false at position 1.
    CHECK(table.rows[0][0]);
    CHECK(!table.rows[0][1]);
}
