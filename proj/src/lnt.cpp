#include "flslice/lnt.hpp"

#include <deque>

namespace flslice {

const char* rule_name(LntRule r) {
    switch (r) {
    case LntRule::Select: return "select";
    case LntRule::Guess: return "guess";
    case LntRule::CaseEval: return "case-eval";
    case LntRule::Fun: return "fun";
    }
    return "?";
}

namespace {

using K = StepOutcome::Kind;

StepOutcome only(K k) {
    StepOutcome o;
    o.kind = k;
    return o;
}

Term pattern_term(const Branch& b) {
    std::vector<Term> args;
    for (const auto& v : b.vars) args.push_back(mk_var(v));
    return mk_cons(b.ctor, std::move(args));
}

Term rebuild_case(const Term& c, Term arg) {
    return mk_case(c->flex, std::move(arg), c->branches, c->line, c->column);
}

}  // namespace

StepOutcome lnt_step(const Term& e, const Program& p, Fresh& fresh) {
    switch (e->kind) {
    case Kind::Var:
    case Kind::Cons:
        return only(K::Value);
    case Kind::Fun: {
        auto body = unfold_call(p, e, fresh);
        if (!body) return only(K::TopReached);
        StepOutcome o;
        o.kind = K::Steps;
        o.steps.push_back({Subst{}, *body, LntRule::Fun});
        return o;
    }
    case Kind::Case:
        break;
    }
    const Term& arg = e->args[0];
    if (arg->kind == Kind::Cons) {
        if (is_top(arg)) return only(K::TopReached);
        for (const auto& b : e->branches) {
            if (b.ctor != arg->name || b.vars.size() != arg->args.size()) continue;
            Subst s;
            for (std::size_t i = 0; i < b.vars.size(); ++i) s.bind(b.vars[i], arg->args[i]);
            StepOutcome o;
            o.kind = K::Steps;
            o.steps.push_back({Subst{}, substitute(s, b.body), LntRule::Select});
            return o;
        }
        return only(K::MatchFailure);
    }
    if (arg->kind == Kind::Var) {
        if (!e->flex) return only(K::Suspended);
        StepOutcome o;
        o.kind = K::Steps;
        Term renamed = rename_bound(e, fresh);
        for (const auto& b : renamed->branches) {
            Subst s;
            s.bind(arg->name, pattern_term(b));
            o.steps.push_back({s, substitute(s, b.body), LntRule::Guess});
        }
        if (o.steps.empty()) return only(K::MatchFailure);
        return o;
    }
    // case-eval: step the scrutinee, then instantiate the whole case
    StepOutcome inner = lnt_step(arg, p, fresh);
    if (inner.kind != K::Steps) return inner;
    StepOutcome o;
    o.kind = K::Steps;
    for (auto& st : inner.steps) o.steps.push_back({st.binding, substitute(st.binding, rebuild_case(e, st.next)), LntRule::CaseEval});
    return o;
}

namespace {

// Steps the leftmost non-value position; bindings are applied by the caller.
StepOutcome deep_local(const Term& e, const Program& p, Fresh& fresh) {
    if (e->kind != Kind::Cons) return lnt_step(e, p, fresh);
    for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (e->args[i]->kind == Kind::Var) continue;
        StepOutcome inner = deep_local(e->args[i], p, fresh);
        if (inner.kind == K::Value) continue;
        if (inner.kind != K::Steps) return inner;
        for (auto& st : inner.steps) {
            std::vector<Term> args = e->args;
            args[i] = std::move(st.next);
            st.next = mk_cons(e->name, std::move(args));
        }
        return inner;
    }
    return only(K::Value);
}

}  // namespace

StepOutcome deep_step(const Term& e, const Program& p, Fresh& fresh) {
    if (e->kind != Kind::Cons) return lnt_step(e, p, fresh);
    StepOutcome o = deep_local(e, p, fresh);
    for (auto& st : o.steps) st.next = substitute(st.binding, st.next);
    return o;
}

EvalResult lnt_eval(const Term& goal, const Program& p, const EvalLimits& limits) {
    struct Node {
        Term expr;
        std::vector<Term> bindings;  // current instance of each goal variable
        std::size_t steps;
    };
    EvalResult res;
    Fresh fresh;
    std::vector<std::string> vars = free_vars(goal);
    std::vector<Term> init;
    for (const auto& v : vars) init.push_back(mk_var(v));
    std::deque<Node> frontier{{goal, init, 0}};
    while (!frontier.empty()) {
        if (res.steps >= limits.max_steps || res.answers.size() >= limits.max_answers) {
            res.exhausted = false;
            break;
        }
        Node n = std::move(frontier.front());
        frontier.pop_front();
        ++res.steps;
        StepOutcome o = limits.deep ? deep_step(n.expr, p, fresh) : lnt_step(n.expr, p, fresh);
        switch (o.kind) {
        case K::Value: {
            Subst s;
            for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], n.bindings[i]);
            res.answers.push_back({n.expr, s, n.steps});
            break;
        }
        case K::Suspended: ++res.suspended_paths; break;
        case K::TopReached: ++res.top_reached_paths; break;
        case K::MatchFailure: ++res.failed_paths; break;
        case K::Steps:
            for (auto& st : o.steps) {
                std::vector<Term> b = n.bindings;
                if (!st.binding.empty())
                    for (auto& t : b) t = substitute(st.binding, t);
                frontier.push_back({st.next, std::move(b), n.steps + 1});
            }
            break;
        }
    }
    return res;
}

}  // namespace flslice
