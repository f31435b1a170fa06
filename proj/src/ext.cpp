#include "flslice/ext.hpp"

#include <functional>

namespace flslice {

const char* rule_name(ExtRule r) {
    switch (r) {
    case ExtRule::Select: return "select";
    case ExtRule::Guess: return "guess";
    case ExtRule::Flatten: return "flatten";
    case ExtRule::Fun: return "fun";
    case ExtRule::Replace: return "replace";
    }
    return "?";
}

namespace {

Term pattern_term(const Branch& b) {
    std::vector<Term> args;
    for (const auto& v : b.vars) args.push_back(mk_var(v));
    return mk_cons(b.ctor, std::move(args));
}

std::optional<Term> select_branch(const Term& c) {
    const Term& arg = c->args[0];
    if (is_top(arg)) return std::nullopt;
    for (const auto& b : c->branches) {
        if (b.ctor != arg->name || b.vars.size() != arg->args.size()) continue;
        Subst s;
        for (std::size_t i = 0; i < b.vars.size(); ++i) s.bind(b.vars[i], arg->args[i]);
        return substitute(s, b.body);
    }
    return std::nullopt;
}

// Guess alternatives of a case over a variable: (binding, instantiated branch).
std::vector<std::pair<Subst, Term>> guesses(const Term& c, Fresh& fresh) {
    std::vector<std::pair<Subst, Term>> out;
    Term r = rename_bound(c, fresh);
    for (const auto& b : r->branches) {
        Subst s;
        s.bind(r->args[0]->name, pattern_term(b));
        out.emplace_back(s, substitute(s, b.body));
    }
    return out;
}

Term leftmost_outermost(const Term& t, const std::function<bool(const Term&)>& pred, bool& found) {
    if (pred(t)) {
        found = true;
        return t;
    }
    for (const auto& a : t->args) {
        Term r = leftmost_outermost(a, pred, found);
        if (found) return r;
    }
    return t;
}

// Depth-first select/guess closure; calls `hit` on each case with an
// operation-rooted argument until it returns true.
bool explore(const Term& e, const Subst& acc, Fresh& fresh, const std::function<bool(const Term&, const Subst&)>& hit) {
    if (e->kind != Kind::Case) return false;
    const Term& arg = e->args[0];
    switch (arg->kind) {
    case Kind::Fun:
        return hit(arg, acc);
    case Kind::Cons: {
        auto next = select_branch(e);
        return next && explore(*next, acc, fresh, hit);
    }
    case Kind::Var:
        for (auto& [s, next] : guesses(e, fresh))
            if (explore(next, s.compose(acc), fresh, hit)) return true;
        return false;
    case Kind::Case:
        return false;
    }
    return false;
}

}  // namespace

std::optional<State> flat_fn(const Term& call, const Stack& s, const Program& p, Fresh& fresh) {
    auto body = unfold_call(p, call, fresh);
    if (!body) return std::nullopt;
    std::optional<State> result;
    explore(*body, Subst{}, fresh, [&](const Term& g, const Subst& acc) {
        // the demanded call may be an instance (under guessed bindings) of a
        // subterm of the original call; take that subterm
        bool found = false;
        Term u = leftmost_outermost(
            call, [&](const Term& t) { return t.get() != call.get() && is_fun(t) && equal(substitute(acc, t), g); }, found);
        if (!found) return false;
        std::string hole = fresh.next();
        auto ctx = replace_first(call, u, mk_var(hole));
        if (!ctx) return false;
        Stack st;
        st.reserve(s.size() + 1);
        st.push_back({*ctx, hole});
        st.insert(st.end(), s.begin(), s.end());
        result = State{u, std::move(st)};
        return true;
    });
    return result;
}

std::vector<Term> flat_candidates(const Term& call, const Program& p, Fresh& fresh) {
    std::vector<Term> out;
    auto body = unfold_call(p, call, fresh);
    if (!body) return out;
    explore(*body, Subst{}, fresh, [&](const Term& g, const Subst&) {
        out.push_back(g);
        return false;
    });
    return out;
}

std::vector<ExtStep> ext_step(const State& s, const Program& p, Fresh& fresh) {
    std::vector<ExtStep> out;
    const Term& e = s.expr;
    if (e->kind == Kind::Case) {
        const Term& arg = e->args[0];
        if (arg->kind == Kind::Cons) {
            if (auto next = select_branch(e)) out.push_back({ExtRule::Select, {*next, s.stack}});
        } else if (arg->kind == Kind::Var) {
            for (auto& [b, next] : guesses(e, fresh)) out.push_back({ExtRule::Guess, {next, s.stack}});
        }
        return out;
    }
    if (e->kind == Kind::Fun) {
        if (auto f = flat_fn(e, s.stack, p, fresh)) {
            out.push_back({ExtRule::Flatten, *f});
        } else if (auto body = unfold_call(p, e, fresh)) {
            out.push_back({ExtRule::Fun, {*body, s.stack}});
        }
        return out;
    }
    if (!s.stack.empty()) {
        Subst h;
        h.bind(s.stack.front().hole, e);
        out.push_back({ExtRule::Replace, {substitute(h, s.stack.front().ctx), Stack(s.stack.begin() + 1, s.stack.end())}});
    }
    return out;
}

std::vector<State> unf(const State& s, const Program& p, Fresh& fresh) {
    std::vector<State> out;
    if (!is_fun(s.expr)) return out;
    auto body = unfold_call(p, s.expr, fresh);
    if (!body) return out;
    std::function<void(const Term&)> close = [&](const Term& e) {
        if (e->kind != Kind::Case) {
            out.push_back({e, s.stack});
            return;
        }
        const Term& arg = e->args[0];
        if (arg->kind == Kind::Cons) {
            if (auto next = select_branch(e)) close(*next);
        } else if (arg->kind == Kind::Var) {
            for (auto& [b, next] : guesses(e, fresh)) close(next);
        }
    };
    close(*body);
    return out;
}

State flatten_state(const State& s, const Program& p, Fresh& fresh) {
    State cur = s;
    for (;;) {
        if (is_value(cur.expr) && !cur.stack.empty()) {
            Subst h;
            h.bind(cur.stack.front().hole, cur.expr);
            cur = State{substitute(h, cur.stack.front().ctx), Stack(cur.stack.begin() + 1, cur.stack.end())};
            continue;
        }
        if (is_fun(cur.expr)) {
            if (auto f = flat_fn(cur.expr, cur.stack, p, fresh)) {
                cur = std::move(*f);
                continue;
            }
        }
        return cur;
    }
}

bool is_flattened_shape(const State& s) {
    if (is_value(s.expr)) return s.stack.empty();
    return is_fun(s.expr);
}

}  // namespace flslice
