#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "flslice/lnt.hpp"
#include "flslice/program.hpp"
#include "flslice/reachability.hpp"

namespace flslice {

enum class ResidualOrigin { StateComponent, StackCall };

struct ResidualTerm {
    Term term;
    ResidualOrigin origin;
};

struct ResidualSet {
    std::vector<ResidualTerm> terms;
    std::set<std::string> functions() const;
};

ResidualSet residual_calls(const StateSet& S);

enum class UnfoldRule { Var, Cons, Select, Guess, Fun, Remove };
const char* rule_name(UnfoldRule r);

// The simplified unfolding calculus; `tags` (optional) receives the rule
// applied at each node in pre-order.
Term simplify_unfold(const Term& e, const Subst& rho, const std::set<std::string>& residual_functions,
                     std::vector<UnfoldRule>* tags = nullptr);

// One rule per function of p, in p's order; functions without a residual
// term get the body TOP (omitted by the simplified printer).
Program build_slice(const ResidualSet& residuals, const Program& p);

struct SliceResult {
    Program slice;
    Reachable reach;
    ResidualSet residuals;
};

SliceResult slice_program(const Program& p, const Term& criterion, std::size_t fuel);

// Adds omitted rules (f(xs) = TOP) and omitted branches (p -> TOP) from orig.
Program inflate(const Program& slice, const Program& orig);

// t' abstracts t up to a consistent renaming of variables.
bool value_abstracts(const Term& sliced, const Term& orig);

struct Divergence {
    Term goal;
    std::vector<std::string> original, sliced;
};

struct SliceReport {
    std::size_t goals_tested = 0;
    std::size_t goals_excluded = 0;
    std::size_t agreements = 0;
    std::vector<std::string> structural;
    std::vector<Divergence> divergences;
    std::vector<Divergence> top_reached;
    bool correct() const { return structural.empty() && divergences.empty() && top_reached.empty(); }
};

std::vector<Term> enumerate_goals(const Term& criterion, const Program& p, std::size_t bound);

SliceReport check_correct_slice(const Program& p, const Program& slice, const std::vector<Term>& goals,
                                const EvalLimits& limits);

std::string format_report(const SliceReport& r);

}  // namespace flslice
