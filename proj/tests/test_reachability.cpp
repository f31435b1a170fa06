#include <gtest/gtest.h>

#include <random>

#include "flslice/core.hpp"
#include "flslice/reachability.hpp"
#include "flslice/surface.hpp"
#include "flslice/trace_json.hpp"
#include "support/support.hpp"

#include <json.hpp>

using namespace flslice;
using flslice::support::parse_or_die;
using flslice::support::read_file;
using flslice::support::sorted_keys;
using flslice::support::state_of;
using flslice::support::term_or_die;

namespace {

Program lenmax() { return parse_or_die(read_file(std::string(FLSLICE_CORPUS_DIR) + "/lenmax.flc")); }

StateSet set_of(const std::vector<State>& ss) {
    StateSet S;
    for (const auto& s : ss) S.put(s);
    return S;
}

std::vector<std::string> keys(const StateSet& S) { return sorted_keys(S.states()); }

}  // namespace

TEST(UnfoldSet, Examples) {
    Program p = lenmax();
    Fresh fresh;
    EXPECT_EQ(sorted_keys(unfold_set(set_of({state_of("main(Len, xs)")}), p, fresh)),
              sorted_keys({state_of("fst(lenmax(xs))")}));
    EXPECT_TRUE(unfold_set(StateSet{}, p, fresh).empty());
}

TEST(Calls, Substitution) {
    Subst s;
    s.bind("w", term_or_die("Pair(len(xs), max(xs))"));
    EXPECT_EQ(sorted_keys(calls(s)), sorted_keys({state_of("len(xs)"), state_of("max(xs)")}));
    EXPECT_TRUE(calls(Subst{}).empty());
}

TEST(Calls, StackContextsBelowRoot) {
    EXPECT_TRUE(calls(Stack{{term_or_die("fst(x)"), "x"}}).empty());
    Stack st{{term_or_die("fst(Pair(x, snd(z)))"), "x"}, {term_or_die("g(y, h(Nil))"), "y"}};
    EXPECT_EQ(sorted_keys(calls(st)), sorted_keys({state_of("snd(z)"), state_of("h(Nil)")}));
}

TEST(MsgStates, PairAgainstVariable) {
    Fresh fresh;
    auto m = msg_states(state_of("fst(Pair(a, b))"), state_of("fst(z)"), fresh);
    EXPECT_TRUE(state_variant(m.gen, state_of("fst(w)")));
    EXPECT_TRUE(m.extra.empty());
}

TEST(MsgStates, Identical) {
    Fresh fresh;
    State s = state_of("len(Cons(a, b))");
    auto m = msg_states(s, s, fresh);
    EXPECT_TRUE(state_variant(m.gen, s));
    EXPECT_TRUE(m.extra.empty());
}

TEST(MsgStates, CallInDisagreement) {
    Fresh fresh;
    auto m = msg_states(state_of("f(len(xs))"), state_of("f(Zero)"), fresh);
    EXPECT_TRUE(state_variant(m.gen, state_of("f(w)")));
    EXPECT_EQ(sorted_keys(m.extra), sorted_keys({state_of("len(xs)")}));
}

TEST(MsgStates, KeepsFirstStack) {
    Fresh fresh;
    auto m = msg_states(state_of("f(Z)", {{"g(x)", "x"}}), state_of("f(Nil)", {{"h(k(a), x)", "x"}}), fresh);
    ASSERT_EQ(m.gen.stack.size(), 1u);
    EXPECT_TRUE(equal(m.gen.stack[0].ctx, term_or_die("g(x)")));
    EXPECT_EQ(sorted_keys(m.extra), sorted_keys({state_of("k(a)"), state_of("h(k(a), x)")}));
}

TEST(Abs, NewFunctionIsAdded) {
    Program p = lenmax();
    Fresh fresh;
    AbstractCtx ctx{p, fresh};
    StateSet S = set_of({state_of("len(xs)")});
    StateSet r = abs_state(S, state_of("max(xs)"), ctx);
    EXPECT_EQ(keys(r), sorted_keys({state_of("len(xs)"), state_of("max(xs)")}));
}

TEST(Abs, ClosedStateIsDropped) {
    Program p = lenmax();
    Fresh fresh;
    AbstractCtx ctx{p, fresh};
    StateSet S = set_of({state_of("len(xs)")});
    EXPECT_EQ(keys(abs_state(S, state_of("len(Cons(y, ys))"), ctx)), keys(S));
}

TEST(Abs, GeneralizesSameFunction) {
    Program p = lenmax();
    Fresh fresh;
    MeasureLog log;
    AbstractCtx ctx{p, fresh, &log};
    StateSet S = set_of({state_of("fst(Pair(a, b))")});
    EXPECT_EQ(keys(abs_state(S, state_of("fst(z)"), ctx)), sorted_keys({state_of("fst(w)")}));
    EXPECT_EQ(log.replacements, 1u);
    EXPECT_EQ(log.increases, 0u);
}

TEST(Abs, VariableAndConstructorStates) {
    Program p = lenmax();
    Fresh fresh;
    AbstractCtx ctx{p, fresh};
    StateSet S = set_of({state_of("len(xs)")});
    EXPECT_EQ(keys(abs_state(S, state_of("v"), ctx)), keys(S));
    EXPECT_EQ(keys(abs_state(S, state_of("Pair(max(xs), Succ(len(ys)))"), ctx)),
              sorted_keys({state_of("len(xs)"), state_of("max(xs)")}));
}

TEST(Abstract, Examples) {
    Program p = lenmax();
    Fresh fresh;
    AbstractCtx ctx{p, fresh};
    StateSet S1 = set_of({state_of("main(Len, xs)"), state_of("lenmax(xs)", {{"fst(x)", "x"}})});
    std::vector<State> U1{state_of("fst(lenmax(xs))"), state_of("Pair(len(xs), max(xs))", {{"fst(x)", "x"}})};
    EXPECT_EQ(keys(abstract_states(S1, U1, ctx)),
              sorted_keys({state_of("main(Len, xs)"), state_of("lenmax(xs)", {{"fst(x)", "x"}}),
                           state_of("fst(Pair(len(xs), max(xs)))")}));
    EXPECT_EQ(keys(abstract_states(S1, {}, ctx)), keys(S1));
    EXPECT_EQ(keys(abstract_states(StateSet{}, {state_of("Succ(len(xs))")}, ctx)), sorted_keys({state_of("len(xs)")}));
}

TEST(Reachable, LenmaxTrace) {
    Program p = lenmax();
    Reachable r = reachable_states(p, term_or_die("main(Len, xs)"), default_fuel(p));
    const auto& it = r.trace.iterations;
    ASSERT_EQ(it.size(), 5u);

    State main0 = state_of("main(Len, xs)");
    State lm = state_of("lenmax(xs)", {{"fst(x)", "x"}});
    State fstp = state_of("fst(Pair(len(xs), max(xs)))");
    State len = state_of("len(xs)");
    State u0 = state_of("fst(lenmax(xs))");
    State u1 = state_of("Pair(len(xs), max(xs))", {{"fst(x)", "x"}});

    EXPECT_EQ(keys(it[0].states), sorted_keys({main0}));
    EXPECT_EQ(keys(it[1].states), sorted_keys({main0, lm}));
    EXPECT_EQ(keys(it[2].states), sorted_keys({main0, lm, fstp}));
    EXPECT_EQ(keys(it[3].states), sorted_keys({main0, lm, fstp, len}));
    EXPECT_EQ(keys(it[4].states), keys(it[3].states));

    EXPECT_EQ(sorted_keys(it[0].unfolded), sorted_keys({u0}));
    EXPECT_EQ(sorted_keys(it[1].unfolded), sorted_keys({u0, u1}));
    EXPECT_EQ(sorted_keys(it[2].unfolded), sorted_keys({u0, u1, len}));
    EXPECT_EQ(sorted_keys(it[3].unfolded),
              sorted_keys({u0, u1, len, state_of("Zero"), state_of("Succ(len(xs))")}));
    EXPECT_EQ(r.trace.measure.increases, 0u);
}

TEST(Reachable, TrivialProgram) {
    Program p = parse_or_die("main(x) = Zero\n");
    Reachable r = reachable_states(p, term_or_die("main(x)"), 10);
    EXPECT_EQ(keys(r.states), sorted_keys({state_of("main(x)")}));
    EXPECT_EQ(r.trace.iterations.size(), 2u);
    EXPECT_EQ(r.trace.fuel_used, 1u);
}

TEST(Reachable, RejectsValueCriterion) {
    Program p = parse_or_die("main(x) = Zero\n");
    EXPECT_THROW(reachable_states(p, term_or_die("Zero"), 10), std::invalid_argument);
}

TEST(Reachable, FuelExhaustion) {
    Program p = lenmax();
    try {
        reachable_states(p, term_or_die("main(Len, xs)"), 2);
        FAIL() << "expected fuel exhaustion";
    } catch (const FuelExhausted& e) {
        EXPECT_EQ(e.trace.fuel_used, 2u);
        EXPECT_FALSE(e.trace.iterations.empty());
    }
}

TEST(Reachable, CriterionClosedAndMonovariant) {
    for (const auto& c : support::load_corpus(FLSLICE_CORPUS_DIR)) {
        if (!c.criterion) continue;
        Reachable r = reachable_states(c.program, *c.criterion, default_fuel(c.program));
        EXPECT_TRUE(state_closed(State{*c.criterion, {}}, r.states)) << c.name;
        std::set<std::string> roots;
        for (const auto& s : r.states.states()) {
            EXPECT_TRUE(is_fun(s.expr));
            EXPECT_TRUE(roots.insert(s.expr->name).second);
        }
    }
}

TEST(Reachable, RandomProgramsTerminateAndCloseCriterion) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 300; ++i) {
        Program p = support::random_program(rng);
        Term c = support::random_criterion(p, rng);
        Reachable r = reachable_states(p, c, default_fuel(p));
        EXPECT_TRUE(state_closed(State{c, {}}, r.states)) << print_program(p) << print_term(c);
        EXPECT_EQ(r.trace.measure.increases, 0u);
        const auto& it = r.trace.iterations;
        ASSERT_GE(it.size(), 2u);
        EXPECT_TRUE(same_modulo_renaming(it[it.size() - 1].states, it[it.size() - 2].states));
    }
}

TEST(Reachable, IterationPairsAreClosed) {
    std::mt19937_64 rng(41);
    std::size_t pairs = 0;
    for (int i = 0; i < 100; ++i) {
        Program p = support::random_program(rng);
        Term c = support::random_criterion(p, rng);
        Fresh fresh;
        Reachable r = reachable_states(p, c, default_fuel(p), fresh);
        for (const auto& step : r.trace.iterations) {
            if (step.unfolded.empty()) continue;
            AbstractCtx ctx{p, fresh};
            StateSet next = abstract_states(step.states, step.unfolded, ctx);
            for (const auto& s : step.states.states()) EXPECT_TRUE(state_closed(s, next)) << state_key(s);
            for (const auto& s : step.unfolded) EXPECT_TRUE(state_closed(s, next)) << state_key(s);
            ++pairs;
        }
    }
    EXPECT_GT(pairs, 100u);
}

TEST(TraceJson, Schema) {
    Program p = lenmax();
    Reachable r = reachable_states(p, term_or_die("main(Len, xs)"), default_fuel(p));
    auto j = nlohmann::json::parse(trace_to_json(r.trace));
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 5u);
    EXPECT_EQ(j[0]["index"], 0);
    EXPECT_EQ(j[0]["states"][0]["expr"], "main(Len, xs)");
    EXPECT_TRUE(j[0]["states"][0]["stack"].empty());
    const auto& lm = j[1]["states"][0];
    EXPECT_EQ(lm["expr"], "lenmax(xs)");
    ASSERT_EQ(lm["stack"].size(), 1u);
    std::string hole = lm["stack"][0]["hole"];
    EXPECT_EQ(lm["stack"][0]["ctx"], "fst(" + hole + ")");
    EXPECT_TRUE(j[1]["unfolded"].is_array());
}
