#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flslice/program.hpp"
#include "flslice/term.hpp"

namespace flslice {

enum class LntRule { Select, Guess, CaseEval, Fun };
const char* rule_name(LntRule r);

struct LntEdge {
    Subst binding;
    Term next;
    LntRule rule;
};

struct StepOutcome {
    enum class Kind { Steps, Suspended, Value, TopReached, MatchFailure };
    Kind kind = Kind::Value;
    std::vector<LntEdge> steps;
};

// One step of the standard calculus at the root of e.
StepOutcome lnt_step(const Term& e, const Program& p, Fresh& fresh);

// Like lnt_step, but a constructor-rooted term with a non-data argument
// steps its leftmost such argument (used to compute full values).
StepOutcome deep_step(const Term& e, const Program& p, Fresh& fresh);

struct Answer {
    Term value;
    Subst subst;
    std::size_t steps = 0;
};

struct EvalLimits {
    std::size_t max_steps = 10000;   // expanded derivation nodes
    std::size_t max_answers = 1000;
    bool deep = false;
};

struct EvalResult {
    std::vector<Answer> answers;
    bool exhausted = true;
    std::size_t suspended_paths = 0;
    std::size_t top_reached_paths = 0;
    std::size_t failed_paths = 0;
    std::size_t steps = 0;
};

// Breadth-first enumeration of derivations; guess alternatives in branch order.
EvalResult lnt_eval(const Term& goal, const Program& p, const EvalLimits& limits);

}  // namespace flslice
