#pragma once

#include <string>
#include <vector>

#include "flslice/program.hpp"
#include "flslice/term.hpp"

namespace flslice {

struct Frame {
    Term ctx;
    std::string hole;
};

// Top of stack first.
using Stack = std::vector<Frame>;

struct State {
    Term expr;
    Stack stack;
};

// S[t]: plug t into the top frame, then the next, and so on.
Term stack_apply(const Term& t, const Stack& s);

// Printable key identifying a state modulo renaming.
std::string state_key(const State& s);
bool state_variant(const State& a, const State& b);

struct Generalization {
    Term gen;
    Subst s1, s2;
};

// Most specific generalization (anti-unification) of two Case-free terms.
Generalization msg(const Term& t1, const Term& t2, Fresh& fresh);

// Closedness of e w.r.t. a set of operation-rooted terms.
bool is_closed(const Term& e, const std::vector<Term>& E);

// t' abstracts t: t' is TOP, equal, or the same symbol with abstracting arguments.
bool term_abstracts(const Term& sliced, const Term& orig);

// Expression abstraction; an omitted branch counts as p -> TOP and pattern
// variables may be renamed consistently.
bool expr_abstracts(const Term& sliced, const Term& orig);

struct AbstractionReport {
    bool holds = true;
    std::vector<std::string> violations;
};

// Program abstraction, re-inflating omitted rules to f(xs) = TOP.
AbstractionReport check_abstraction(const Program& slice, const Program& orig);
bool abstraction_holds(const Program& slice, const Program& orig);

}  // namespace flslice
