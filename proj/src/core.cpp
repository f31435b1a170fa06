#include "flslice/core.hpp"

#include <map>
#include <utility>

#include "flslice/surface.hpp"

namespace flslice {

Term stack_apply(const Term& t, const Stack& s) {
    Term cur = t;
    for (const auto& f : s) {
        Subst h;
        h.bind(f.hole, cur);
        cur = substitute(h, f.ctx);
    }
    return cur;
}

std::string state_key(const State& s) {
    Canonicalizer c;
    std::string out = print_term(c.rename(s.expr));
    out += " [";
    for (std::size_t i = 0; i < s.stack.size(); ++i) {
        if (i) out += ", ";
        std::string hole = c.name(s.stack[i].hole);
        out += "(" + print_term(c.rename(s.stack[i].ctx)) + ", " + hole + ")";
    }
    out += "]";
    return out;
}

bool state_variant(const State& a, const State& b) { return state_key(a) == state_key(b); }

namespace {

struct MsgBuilder {
    Fresh& fresh;
    std::map<std::pair<std::string, std::string>, std::string> seen;
    Subst s1, s2;

    Term go(const Term& a, const Term& b) {
        if (equal(a, b)) return a;
        if (a->kind == b->kind && a->kind != Kind::Var && a->name == b->name && a->args.size() == b->args.size()) {
            std::vector<Term> args;
            for (std::size_t i = 0; i < a->args.size(); ++i) args.push_back(go(a->args[i], b->args[i]));
            return a->kind == Kind::Cons ? mk_cons(a->name, std::move(args)) : mk_fun(a->name, std::move(args));
        }
        auto key = std::make_pair(print_term(a), print_term(b));
        auto it = seen.find(key);
        if (it != seen.end()) return mk_var(it->second);
        std::string v = fresh.next();
        seen.emplace(key, v);
        s1.bind(v, a);
        s2.bind(v, b);
        return mk_var(v);
    }
};

}  // namespace

Generalization msg(const Term& t1, const Term& t2, Fresh& fresh) {
    MsgBuilder b{fresh, {}, {}, {}};
    Term g = b.go(t1, t2);
    // variables shared verbatim by t1 and t2 map to themselves
    return {g, b.s1, b.s2};
}

bool is_closed(const Term& e, const std::vector<Term>& E) {
    switch (e->kind) {
    case Kind::Var:
        return true;
    case Kind::Cons:
        for (const auto& a : e->args)
            if (!is_closed(a, E)) return false;
        return true;
    case Kind::Case:
        if (!is_closed(e->args[0], E)) return false;
        for (const auto& b : e->branches)
            if (!is_closed(b.body, E)) return false;
        return true;
    case Kind::Fun:
        for (const auto& p : E) {
            if (p->kind != Kind::Fun || p->name != e->name) continue;
            auto th = match(p, e);
            if (!th) continue;
            bool ok = true;
            for (const auto& [x, u] : th->bindings())
                if (!is_closed(u, E)) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    }
    return false;
}

bool term_abstracts(const Term& sliced, const Term& orig) {
    if (is_top(sliced)) return true;
    if (sliced->kind != orig->kind || sliced->name != orig->name || sliced->args.size() != orig->args.size())
        return false;
    if (sliced->kind == Kind::Case) return expr_abstracts(sliced, orig);
    for (std::size_t i = 0; i < sliced->args.size(); ++i)
        if (!term_abstracts(sliced->args[i], orig->args[i])) return false;
    return true;
}

namespace {

bool abstracts_under(const Term& s, const Term& o, const std::map<std::string, std::string>& ren) {
    if (is_top(s)) return true;
    if (s->kind != o->kind) return false;
    switch (s->kind) {
    case Kind::Var: {
        auto it = ren.find(s->name);
        return (it == ren.end() ? s->name : it->second) == o->name;
    }
    case Kind::Cons:
    case Kind::Fun:
        if (s->name != o->name || s->args.size() != o->args.size()) return false;
        for (std::size_t i = 0; i < s->args.size(); ++i)
            if (!abstracts_under(s->args[i], o->args[i], ren)) return false;
        return true;
    case Kind::Case: {
        if (s->flex != o->flex || !abstracts_under(s->args[0], o->args[0], ren) || is_top(s->args[0])) return false;
        for (const auto& sb : s->branches) {
            const Branch* ob = nullptr;
            for (const auto& b : o->branches)
                if (b.ctor == sb.ctor) ob = &b;
            if (!ob || ob->vars.size() != sb.vars.size()) return false;
            auto inner = ren;
            for (std::size_t i = 0; i < sb.vars.size(); ++i) inner[sb.vars[i]] = ob->vars[i];
            if (!abstracts_under(sb.body, ob->body, inner)) return false;
        }
        return true;
    }
    }
    return false;
}

}  // namespace

bool expr_abstracts(const Term& sliced, const Term& orig) { return abstracts_under(sliced, orig, {}); }

AbstractionReport check_abstraction(const Program& slice, const Program& orig) {
    AbstractionReport rep;
    auto fail = [&](std::string m) {
        rep.holds = false;
        rep.violations.push_back(std::move(m));
    };
    for (const auto& r : slice.rules()) {
        const Rule* o = orig.find(r.name);
        if (!o) {
            fail("function " + r.name + " is not defined in the original program");
            continue;
        }
        if (o->params.size() != r.params.size()) {
            fail("function " + r.name + " has arity " + std::to_string(r.params.size()) + ", expected " +
                 std::to_string(o->params.size()));
            continue;
        }
        std::map<std::string, std::string> ren;
        for (std::size_t i = 0; i < r.params.size(); ++i) ren[r.params[i]] = o->params[i];
        if (!abstracts_under(r.body, o->body, ren)) fail("rule for " + r.name + " does not abstract the original rule");
    }
    return rep;
}

bool abstraction_holds(const Program& slice, const Program& orig) { return check_abstraction(slice, orig).holds; }

}  // namespace flslice
