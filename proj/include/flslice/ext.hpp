#pragma once

#include <optional>
#include <vector>

#include "flslice/core.hpp"
#include "flslice/program.hpp"

namespace flslice {

enum class ExtRule { Select, Guess, Flatten, Fun, Replace };
const char* rule_name(ExtRule r);

struct ExtStep {
    ExtRule rule;
    State next;
};

// The flat function: unfold `call`, run select/guess (guess branches
// depth-first, textual order) and stop at the first case whose argument is
// operation-rooted. Returns the demanded call and the pushed frame.
std::optional<State> flat_fn(const Term& call, const Stack& s, const Program& p, Fresh& fresh);

// Every demanded call reachable by the select/guess closure (diagnostics).
std::vector<Term> flat_candidates(const Term& call, const Program& p, Fresh& fresh);

std::vector<ExtStep> ext_step(const State& s, const Program& p, Fresh& fresh);

// One fun step followed by the exhaustive select/guess closure. Derivations
// that get stuck on a case (no matching branch, or TOP) contribute nothing.
std::vector<State> unf(const State& s, const Program& p, Fresh& fresh);

// replace/flatten to normal form.
State flatten_state(const State& s, const Program& p, Fresh& fresh);

// Shape of a flattened state: <value, []> or <operation-rooted term, S>.
bool is_flattened_shape(const State& s);

}  // namespace flslice
