#include "flslice/slicer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "flslice/surface.hpp"

namespace flslice {

std::set<std::string> ResidualSet::functions() const {
    std::set<std::string> out;
    for (const auto& r : terms) out.insert(r.term->name);
    return out;
}

ResidualSet residual_calls(const StateSet& S) {
    ResidualSet out;
    std::vector<Term> T;
    for (const auto& s : S.states()) {
        T.push_back(s.expr);
        out.terms.push_back({s.expr, ResidualOrigin::StateComponent});
    }
    std::set<std::string> seen;
    for (const auto& s : S.states())
        for (const auto& c : calls(s.stack)) {
            if (is_closed(c.expr, T)) continue;
            if (seen.insert(print_term(canonical(c.expr))).second)
                out.terms.push_back({c.expr, ResidualOrigin::StackCall});
        }
    return out;
}

const char* rule_name(UnfoldRule r) {
    switch (r) {
    case UnfoldRule::Var: return "var";
    case UnfoldRule::Cons: return "cons";
    case UnfoldRule::Select: return "select";
    case UnfoldRule::Guess: return "guess";
    case UnfoldRule::Fun: return "fun";
    case UnfoldRule::Remove: return "remove";
    }
    return "?";
}

Term simplify_unfold(const Term& e, const Subst& rho, const std::set<std::string>& R, std::vector<UnfoldRule>* tags) {
    auto tag = [&](UnfoldRule r) {
        if (tags) tags->push_back(r);
    };
    switch (e->kind) {
    case Kind::Var:
        tag(UnfoldRule::Var);
        return e;
    case Kind::Cons: {
        tag(UnfoldRule::Cons);
        std::vector<Term> args;
        for (const auto& a : e->args) args.push_back(simplify_unfold(a, rho, R, tags));
        return mk_cons(e->name, std::move(args));
    }
    case Kind::Fun: {
        if (!R.count(e->name)) {
            tag(UnfoldRule::Remove);
            return mk_top();
        }
        tag(UnfoldRule::Fun);
        std::vector<Term> args;
        for (const auto& a : e->args) args.push_back(simplify_unfold(a, rho, R, tags));
        return mk_fun(e->name, std::move(args));
    }
    case Kind::Case:
        break;
    }
    const std::string& x = e->args[0]->name;
    const Term* bound = rho.lookup(x);
    Term v = bound ? *bound : e->args[0];
    std::vector<Branch> bs;
    if (is_cons(v)) {
        tag(UnfoldRule::Select);
        for (const auto& b : e->branches) {
            if (b.ctor != v->name || b.vars.size() != v->args.size()) {
                bs.push_back({b.ctor, b.vars, mk_top()});
                continue;
            }
            Subst r = rho;
            for (std::size_t i = 0; i < b.vars.size(); ++i) r.bind(b.vars[i], v->args[i]);
            bs.push_back({b.ctor, b.vars, simplify_unfold(b.body, r, R, tags)});
        }
    } else {
        // a variable (or, outside the calculus proper, an unevaluated call)
        tag(UnfoldRule::Guess);
        for (const auto& b : e->branches) {
            std::vector<Term> pargs;
            for (const auto& pv : b.vars) pargs.push_back(mk_var(pv));
            Term pat = mk_cons(b.ctor, std::move(pargs));
            Subst r;
            if (is_var(v)) {
                Subst inst;
                inst.bind(v->name, pat);
                r = inst.compose(rho);
            } else {
                r = rho;
            }
            r.bind(x, pat);
            bs.push_back({b.ctor, b.vars, simplify_unfold(b.body, r, R, tags)});
        }
    }
    return mk_case(e->flex, e->args[0], std::move(bs), e->line, e->column);
}

namespace {

Term rename_apart(const Term& t, const std::string& prefix) {
    Subst r;
    std::size_t n = 0;
    for (const auto& v : free_vars(t)) r.bind(v, mk_var(prefix + std::to_string(n++)));
    return substitute(r, t);
}

}  // namespace

Program build_slice(const ResidualSet& residuals, const Program& p) {
    std::map<std::string, std::vector<Term>> by_fun;
    // state components first, so a stack call only widens them
    for (auto origin : {ResidualOrigin::StateComponent, ResidualOrigin::StackCall})
        for (const auto& r : residuals.terms)
            if (r.origin == origin) by_fun[r.term->name].push_back(r.term);
    for (const auto& [f, ts] : by_fun)
        if (!p.defines(f)) throw std::runtime_error("residual call to undefined function " + f);
    std::set<std::string> R = residuals.functions();
    std::vector<Rule> rules;
    for (const auto& rule : p.rules()) {
        auto it = by_fun.find(rule.name);
        if (it == by_fun.end()) {
            rules.push_back({rule.name, rule.params, mk_top(), rule.line, rule.column});
            continue;
        }
        Fresh fresh;
        Term gen = it->second.front();
        for (std::size_t i = 1; i < it->second.size(); ++i) gen = msg(gen, it->second[i], fresh).gen;
        gen = rename_apart(gen, "_r");
        if (gen->args.size() != rule.params.size())
            throw std::runtime_error("residual call " + print_term(gen) + " has the wrong arity");
        Subst rho;
        for (std::size_t i = 0; i < rule.params.size(); ++i) rho.bind(rule.params[i], gen->args[i]);
        rules.push_back({rule.name, rule.params, simplify_unfold(rule.body, rho, R), rule.line, rule.column});
    }
    return Program(std::move(rules));
}

SliceResult slice_program(const Program& p, const Term& criterion, std::size_t fuel) {
    Reachable reach = reachable_states(p, criterion, fuel);
    ResidualSet res = residual_calls(reach.states);
    Program slice = build_slice(res, p);
    return {std::move(slice), std::move(reach), std::move(res)};
}

namespace {

Term inflate_expr(const Term& s, const Term& o) {
    if (s->kind != Kind::Case || o->kind != Kind::Case) return s;
    std::vector<Branch> bs;
    for (const auto& ob : o->branches) {
        auto it = std::find_if(s->branches.begin(), s->branches.end(), [&](const Branch& b) { return b.ctor == ob.ctor; });
        if (it == s->branches.end())
            bs.push_back({ob.ctor, ob.vars, mk_top()});
        else
            bs.push_back({it->ctor, it->vars, inflate_expr(it->body, ob.body)});
    }
    for (const auto& sb : s->branches)
        if (std::none_of(o->branches.begin(), o->branches.end(), [&](const Branch& b) { return b.ctor == sb.ctor; }))
            bs.push_back(sb);
    return mk_case(s->flex, s->args[0], std::move(bs), s->line, s->column);
}

}  // namespace

Program inflate(const Program& slice, const Program& orig) {
    std::vector<Rule> rules;
    for (const auto& o : orig.rules()) {
        const Rule* s = slice.find(o.name);
        if (!s)
            rules.push_back({o.name, o.params, mk_top(), o.line, o.column});
        else
            rules.push_back({s->name, s->params, inflate_expr(s->body, o.body), s->line, s->column});
    }
    for (const auto& s : slice.rules())
        if (!orig.defines(s.name)) rules.push_back(s);
    return Program(std::move(rules));
}

bool value_abstracts(const Term& sliced, const Term& orig) {
    std::map<std::string, std::string> fwd, back;
    std::function<bool(const Term&, const Term&)> go = [&](const Term& s, const Term& o) -> bool {
        if (is_top(s)) return true;
        if (s->kind != o->kind) return false;
        if (s->kind == Kind::Var) {
            auto [f, fn] = fwd.emplace(s->name, o->name);
            auto [b, bn] = back.emplace(o->name, s->name);
            return f->second == o->name && b->second == s->name;
        }
        if (s->name != o->name || s->args.size() != o->args.size() || s->kind == Kind::Case) return false;
        for (std::size_t i = 0; i < s->args.size(); ++i)
            if (!go(s->args[i], o->args[i])) return false;
        return true;
    };
    return go(sliced, orig);
}

namespace {

void ground_terms(const std::map<std::string, std::size_t>& ctors, std::size_t n,
                  std::map<std::size_t, std::vector<Term>>& memo) {
    if (memo.count(n)) return;
    std::vector<Term> out;
    for (const auto& [c, k] : ctors) {
        if (k == 0) {
            if (n == 1) out.push_back(mk_cons(c));
            continue;
        }
        if (n < k + 1) continue;
        // distribute n-1 symbols over k arguments, each at least 1
        std::vector<std::size_t> sizes(k, 1);
        std::function<void(std::size_t, std::size_t)> split = [&](std::size_t i, std::size_t left) {
            if (i + 1 == k) {
                sizes[i] = left;
                std::vector<std::vector<Term>*> pools;
                for (auto s : sizes) {
                    ground_terms(ctors, s, memo);
                    pools.push_back(&memo[s]);
                }
                std::vector<Term> args(k);
                std::function<void(std::size_t)> pick = [&](std::size_t j) {
                    if (j == k) {
                        out.push_back(mk_cons(c, args));
                        return;
                    }
                    for (const auto& t : *pools[j]) {
                        args[j] = t;
                        pick(j + 1);
                    }
                };
                pick(0);
                return;
            }
            for (std::size_t s = 1; s + (k - i - 1) <= left; ++s) {
                sizes[i] = s;
                split(i + 1, left - s);
            }
        };
        if (n - 1 >= k) split(0, n - 1);
    }
    memo[n] = std::move(out);
}

}  // namespace

std::vector<Term> enumerate_goals(const Term& criterion, const Program& p, std::size_t bound) {
    auto ctors = p.constructors();
    std::map<std::size_t, std::vector<Term>> memo;
    std::vector<Term> pool;
    for (std::size_t n = 1; n <= bound; ++n) {
        ground_terms(ctors, n, memo);
        pool.insert(pool.end(), memo[n].begin(), memo[n].end());
    }
    std::vector<std::string> vars = free_vars(criterion);
    std::vector<Term> goals;
    Subst s;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == vars.size()) {
            goals.push_back(substitute(s, criterion));
            return;
        }
        s.bind(vars[i], mk_var(vars[i]));
        go(i + 1);
        for (const auto& t : pool) {
            s.bind(vars[i], t);
            go(i + 1);
        }
        s.bind(vars[i], mk_var(vars[i]));
    };
    go(0);
    return goals;
}

namespace {

Term answer_tuple(const Answer& a, const std::vector<std::string>& vars) {
    std::vector<Term> parts;
    for (const auto& v : vars) {
        const Term* b = a.subst.lookup(v);
        parts.push_back(b ? *b : mk_var(v));
    }
    parts.push_back(a.value);
    return mk_cons("Answer", std::move(parts));
}

std::string show_answer(const Answer& a) {
    std::string out = print_term(a.value) + " {";
    bool first = true;
    for (const auto& [x, t] : a.subst.bindings()) {
        out += (first ? "" : ", ") + x + " -> " + print_term(t);
        first = false;
    }
    return out + "}";
}

bool answer_matches(const Answer& s, const Answer& o, const std::vector<std::string>& vars) {
    // TOP may stand for inner parts of a value, not for the whole value
    if (is_top(s.value) && !is_top(o.value)) return false;
    return value_abstracts(answer_tuple(s, vars), answer_tuple(o, vars));
}

}  // namespace

SliceReport check_correct_slice(const Program& p, const Program& slice, const std::vector<Term>& goals,
                                const EvalLimits& limits) {
    SliceReport rep;
    rep.structural = check_abstraction(slice, p).violations;
    Program full = inflate(slice, p);
    EvalLimits lim = limits;
    lim.deep = true;
    for (const auto& g : goals) {
        EvalResult r1 = lnt_eval(g, p, lim);
        if (!r1.exhausted || r1.suspended_paths) {
            ++rep.goals_excluded;
            continue;
        }
        EvalResult r2 = lnt_eval(g, full, lim);
        if (!r2.exhausted || r2.suspended_paths) {
            ++rep.goals_excluded;
            continue;
        }
        ++rep.goals_tested;
        std::vector<std::string> vars = free_vars(g);
        std::set<std::string> keys1, keys2;
        for (const auto& a : r1.answers) keys1.insert(print_term(canonical(answer_tuple(a, vars))));
        for (const auto& b : r2.answers) keys2.insert(print_term(canonical(answer_tuple(b, vars))));
        bool ok = true, top = false;
        for (const auto& a : r1.answers) {
            if (keys2.count(print_term(canonical(answer_tuple(a, vars))))) continue;
            bool found = std::any_of(r2.answers.begin(), r2.answers.end(),
                                     [&](const Answer& b) { return answer_matches(b, a, vars); });
            if (!found) ok = false;
        }
        for (const auto& b : r2.answers) {
            if (is_top(b.value)) top = true;
            if (keys1.count(print_term(canonical(answer_tuple(b, vars))))) continue;
            bool found = std::any_of(r1.answers.begin(), r1.answers.end(),
                                     [&](const Answer& a) { return answer_matches(b, a, vars); });
            if (!found) ok = false;
        }
        if (ok) {
            ++rep.agreements;
            continue;
        }
        Divergence d{g, {}, {}};
        for (const auto& a : r1.answers) d.original.push_back(show_answer(a));
        for (const auto& b : r2.answers) d.sliced.push_back(show_answer(b));
        if (top || r2.top_reached_paths > r1.top_reached_paths)
            rep.top_reached.push_back(std::move(d));
        else
            rep.divergences.push_back(std::move(d));
    }
    return rep;
}

std::string format_report(const SliceReport& r) {
    std::string out;
    out += "goals tested: " + std::to_string(r.goals_tested) + "\n";
    out += "goals excluded (suspended or truncated): " + std::to_string(r.goals_excluded) + "\n";
    out += "agreements: " + std::to_string(r.agreements) + "\n";
    for (const auto& v : r.structural) out += "structural violation: " + v + "\n";
    auto dump = [&](const char* what, const std::vector<Divergence>& ds) {
        for (const auto& d : ds) {
            out += std::string(what) + ": " + print_term(d.goal) + "\n";
            for (const auto& a : d.original) out += "  original: " + a + "\n";
            for (const auto& b : d.sliced) out += "  slice:    " + b + "\n";
        }
    };
    dump("divergence", r.divergences);
    dump("top reached", r.top_reached);
    out += "divergences: " + std::to_string(r.divergences.size() + r.top_reached.size()) + "\n";
    if (r.goals_tested == 0) out += "warning: 0 goals tested\n";
    return out;
}

}  // namespace flslice
