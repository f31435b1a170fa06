#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "flslice/core.hpp"
#include "flslice/program.hpp"

namespace flslice {

// At most one state per outermost function symbol.
class StateSet {
public:
    const State* find(const std::string& f) const;
    void put(const State& s);  // s must be operation-rooted
    void erase(const std::string& f);
    std::vector<State> states() const;  // ordered by function name
    std::size_t size() const { return by_fun_.size(); }
    bool empty() const { return by_fun_.empty(); }
    // T = { S[t] | <t,S> in this set } plus the bare first components
    // of states with a non-empty stack
    std::vector<Term> closure_terms() const;

private:
    std::map<std::string, State> by_fun_;
};

bool same_modulo_renaming(const StateSet& a, const StateSet& b);
std::vector<std::string> state_keys(const std::vector<State>& states);

// <t,S> closed w.r.t. a state set: S[t] is T-closed.
bool state_closed(const State& s, const StateSet& set);

// calls over a substitution: maximal operation-rooted subterms of its range.
std::vector<State> calls(const Subst& s);
// calls over a stack: maximal operation-rooted subterms of each context
// below its root (the hole is a variable and never contributes).
std::vector<State> calls(const Stack& s);

struct StatesMsg {
    State gen;
    std::vector<State> extra;
};

// (<msg(t1,t2), S1>, calls(s1) u calls(s2) u calls(S2) u {<ctx,[]> | ctx in S2}).
StatesMsg msg_states(const State& s1, const State& s2, Fresh& fresh);

// Per-replacement record of the multiset of first-component depths.
struct MeasureLog {
    std::size_t replacements = 0;
    std::size_t increases = 0;
    std::size_t strict_decreases = 0;
};

struct AbstractCtx {
    const Program& program;
    Fresh& fresh;
    MeasureLog* measure = nullptr;
};

StateSet abs_state(const StateSet& S, const State& s, AbstractCtx& ctx);
StateSet abstract_states(const StateSet& S, const std::vector<State>& news, AbstractCtx& ctx);
std::vector<State> unfold_set(const StateSet& S, const Program& p, Fresh& fresh);

struct Iteration {
    StateSet states;             // S_i
    std::vector<State> unfolded; // S'_i = unfold(S_i); empty for the last entry
};

struct FixpointTrace {
    std::vector<Iteration> iterations;
    std::size_t fuel_used = 0;
    MeasureLog measure;
};

struct FuelExhausted : std::runtime_error {
    FixpointTrace trace;
    explicit FuelExhausted(FixpointTrace t)
        : std::runtime_error("fuel exhausted before reaching a fixpoint"), trace(std::move(t)) {}
};

struct Reachable {
    StateSet states;
    FixpointTrace trace;
};

std::size_t default_fuel(const Program& p);

// Throws std::invalid_argument for a criterion that is not operation-rooted
// and FuelExhausted when the loop does not stabilise within `fuel` iterations.
Reachable reachable_states(const Program& p, const Term& criterion, std::size_t fuel, Fresh& fresh);
Reachable reachable_states(const Program& p, const Term& criterion, std::size_t fuel);

}  // namespace flslice
