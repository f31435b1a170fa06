#include "flslice/reachability.hpp"

#include <algorithm>
#include <set>

#include "flslice/ext.hpp"
#include "flslice/surface.hpp"

namespace flslice {

const State* StateSet::find(const std::string& f) const {
    auto it = by_fun_.find(f);
    return it == by_fun_.end() ? nullptr : &it->second;
}

void StateSet::put(const State& s) { by_fun_.insert_or_assign(s.expr->name, s); }

void StateSet::erase(const std::string& f) { by_fun_.erase(f); }

std::vector<State> StateSet::states() const {
    std::vector<State> out;
    for (const auto& [f, s] : by_fun_) out.push_back(s);
    return out;
}

std::vector<Term> StateSet::closure_terms() const {
    std::vector<Term> out;
    for (const auto& [f, s] : by_fun_) {
        out.push_back(stack_apply(s.expr, s.stack));
        if (!s.stack.empty()) out.push_back(s.expr);
    }
    return out;
}

std::vector<std::string> state_keys(const std::vector<State>& states) {
    std::vector<std::string> keys;
    for (const auto& s : states) keys.push_back(state_key(s));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

bool same_modulo_renaming(const StateSet& a, const StateSet& b) {
    return state_keys(a.states()) == state_keys(b.states());
}

bool state_closed(const State& s, const StateSet& set) {
    return is_closed(stack_apply(s.expr, s.stack), set.closure_terms());
}

std::vector<State> calls(const Subst& s) {
    std::vector<State> out;
    for (const auto& [x, t] : s.bindings())
        for (const auto& c : maximal_calls(t)) out.push_back({c, {}});
    return out;
}

std::vector<State> calls(const Stack& s) {
    std::vector<State> out;
    for (const auto& f : s)
        for (const auto& a : f.ctx->args)
            for (const auto& c : maximal_calls(a)) out.push_back({c, {}});
    return out;
}

StatesMsg msg_states(const State& s1, const State& s2, Fresh& fresh) {
    Generalization g = msg(s1.expr, s2.expr, fresh);
    StatesMsg out{{g.gen, s1.stack}, {}};
    auto add = [&](std::vector<State> v) { out.extra.insert(out.extra.end(), v.begin(), v.end()); };
    add(calls(g.s1));
    add(calls(g.s2));
    add(calls(s2.stack));
    // the outer calls waiting in the discarded stack stay reachable
    for (const auto& f : s2.stack) out.extra.push_back({f.ctx, {}});
    return out;
}

namespace {

struct AbsGuard {
    std::size_t calls = 0;
};

std::string fold_key(const State& s) {
    return std::string(is_fun(s.expr) ? s.expr->name : "") + "\x1f" + state_key(s);
}

StateSet abstract_impl(const StateSet& S, const std::vector<State>& news, AbstractCtx& ctx, AbsGuard& g);

StateSet abs_impl(const StateSet& S, const State& s, AbstractCtx& ctx, AbsGuard& g) {
    if (++g.calls > 1000000) throw std::runtime_error("abstraction did not terminate");
    const Term& t = s.expr;
    if (is_var(t)) return S;
    if (is_cons(t)) {
        std::vector<State> inner;
        for (const auto& c : maximal_calls(t)) inner.push_back({c, {}});
        return abstract_impl(S, inner, ctx, g);
    }
    if (!is_fun(t)) return S;
    const State* old = S.find(t->name);
    if (!old) {
        StateSet out = S;
        out.put(s);
        return out;
    }
    if (state_closed(s, S)) return S;
    StatesMsg m = msg_states(*old, s, ctx.fresh);
    if (ctx.measure) {
        std::size_t before = depth(old->expr), after = depth(m.gen.expr);
        ++ctx.measure->replacements;
        if (after > before) ++ctx.measure->increases;
        if (after < before) ++ctx.measure->strict_decreases;
    }
    StateSet star = S;
    star.put(m.gen);
    return abstract_impl(star, m.extra, ctx, g);
}

StateSet abstract_impl(const StateSet& S, const std::vector<State>& news, AbstractCtx& ctx, AbsGuard& g) {
    std::vector<std::pair<std::string, State>> flat;
    for (const auto& s : news) {
        State f = flatten_state(s, ctx.program, ctx.fresh);
        flat.emplace_back(fold_key(f), std::move(f));
    }
    std::stable_sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    StateSet cur = S;
    for (const auto& [k, s] : flat) cur = abs_impl(cur, s, ctx, g);
    return cur;
}

}  // namespace

StateSet abs_state(const StateSet& S, const State& s, AbstractCtx& ctx) {
    AbsGuard g;
    return abs_impl(S, s, ctx, g);
}

StateSet abstract_states(const StateSet& S, const std::vector<State>& news, AbstractCtx& ctx) {
    AbsGuard g;
    return abstract_impl(S, news, ctx, g);
}

std::vector<State> unfold_set(const StateSet& S, const Program& p, Fresh& fresh) {
    std::vector<State> out;
    std::set<std::string> seen;
    for (const auto& s : S.states())
        for (auto& u : unf(s, p, fresh))
            if (seen.insert(state_key(u)).second) out.push_back(std::move(u));
    return out;
}

std::size_t default_fuel(const Program& p) { return 10 * p.size() + 100; }

Reachable reachable_states(const Program& p, const Term& criterion, std::size_t fuel, Fresh& fresh) {
    if (!is_fun(criterion)) throw std::invalid_argument("criterion must be operation-rooted");
    FixpointTrace trace;
    StateSet cur;
    cur.put(flatten_state(State{criterion, {}}, p, fresh));
    AbstractCtx ctx{p, fresh, &trace.measure};
    for (;;) {
        if (trace.fuel_used >= fuel) {
            trace.iterations.push_back({cur, {}});
            throw FuelExhausted(std::move(trace));
        }
        std::vector<State> unfolded = unfold_set(cur, p, fresh);
        StateSet next = abstract_states(cur, unfolded, ctx);
        ++trace.fuel_used;
        trace.iterations.push_back({cur, std::move(unfolded)});
        if (same_modulo_renaming(next, cur)) {
            trace.iterations.push_back({next, {}});
            return {next, std::move(trace)};
        }
        cur = std::move(next);
    }
}

Reachable reachable_states(const Program& p, const Term& criterion, std::size_t fuel) {
    Fresh fresh;
    return reachable_states(p, criterion, fuel, fresh);
}

}  // namespace flslice
