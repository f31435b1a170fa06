#include "flslice/term.hpp"

#include <algorithm>
#include <functional>

namespace flslice {

Term mk_var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    return n;
}

Term mk_cons(std::string name, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cons;
    n->name = std::move(name);
    n->args = std::move(args);
    return n;
}

Term mk_fun(std::string name, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Fun;
    n->name = std::move(name);
    n->args = std::move(args);
    return n;
}

Term mk_case(bool flex, Term arg, std::vector<Branch> branches, int line, int column) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Case;
    n->flex = flex;
    n->args.push_back(std::move(arg));
    n->branches = std::move(branches);
    n->line = line;
    n->column = column;
    return n;
}

Term mk_top() {
    static const Term top = mk_cons(kTop);
    return top;
}

bool is_case_free(const Term& t) {
    if (t->kind == Kind::Case) return false;
    return std::all_of(t->args.begin(), t->args.end(), [](const Term& a) { return is_case_free(a); });
}

bool is_data(const Term& t) {
    if (t->kind == Kind::Var) return true;
    if (t->kind != Kind::Cons) return false;
    return std::all_of(t->args.begin(), t->args.end(), [](const Term& a) { return is_data(a); });
}

bool contains_top(const Term& t) {
    if (is_top(t)) return true;
    for (const auto& a : t->args)
        if (contains_top(a)) return true;
    for (const auto& b : t->branches)
        if (contains_top(b.body)) return true;
    return false;
}

bool equal(const Term& a, const Term& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    if (a->kind != Kind::Case) return true;
    if (a->flex != b->flex || a->branches.size() != b->branches.size()) return false;
    for (std::size_t i = 0; i < a->branches.size(); ++i) {
        const auto& x = a->branches[i];
        const auto& y = b->branches[i];
        if (x.ctor != y.ctor || x.vars != y.vars || !equal(x.body, y.body)) return false;
    }
    return true;
}

void collect_free_vars(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
    std::function<void(const Term&, std::set<std::string>&)> go = [&](const Term& u, std::set<std::string>& bound) {
        if (u->kind == Kind::Var) {
            if (!bound.count(u->name) && seen.insert(u->name).second) out.push_back(u->name);
            return;
        }
        for (const auto& a : u->args) go(a, bound);
        for (const auto& b : u->branches) {
            std::set<std::string> inner = bound;
            inner.insert(b.vars.begin(), b.vars.end());
            go(b.body, inner);
        }
    };
    std::set<std::string> bound;
    go(t, bound);
}

std::vector<std::string> free_vars(const Term& t) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_free_vars(t, out, seen);
    return out;
}

std::size_t depth(const Term& t) {
    std::size_t d = 0;
    for (const auto& a : t->args) d = std::max(d, depth(a));
    for (const auto& b : t->branches) d = std::max(d, depth(b.body));
    return d + 1;
}

std::size_t size(const Term& t) {
    std::size_t n = 1;
    for (const auto& a : t->args) n += size(a);
    for (const auto& b : t->branches) n += 1 + b.vars.size() + size(b.body);
    return n;
}

static void maximal_calls_into(const Term& t, std::vector<Term>& out) {
    if (t->kind == Kind::Fun) {
        out.push_back(t);
        return;
    }
    for (const auto& a : t->args) maximal_calls_into(a, out);
    for (const auto& b : t->branches) maximal_calls_into(b.body, out);
}

std::vector<Term> maximal_calls(const Term& t) {
    std::vector<Term> out;
    maximal_calls_into(t, out);
    return out;
}

// ---- substitutions ----

void Subst::bind(const std::string& x, Term t) {
    if (t->kind == Kind::Var && t->name == x) {
        map_.erase(x);
        return;
    }
    map_[x] = std::move(t);
}

const Term* Subst::lookup(const std::string& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? nullptr : &it->second;
}

Subst Subst::compose(const Subst& inner) const {
    Subst out;
    for (const auto& [x, t] : inner.map_) out.bind(x, substitute(*this, t));
    for (const auto& [x, t] : map_)
        if (!inner.map_.count(x)) out.bind(x, t);
    return out;
}

Subst Subst::restrict(const std::vector<std::string>& vars) const {
    Subst out;
    for (const auto& v : vars)
        if (auto p = lookup(v)) out.bind(v, *p);
    return out;
}

Term substitute(const Subst& s, const Term& t) {
    if (s.empty()) return t;
    switch (t->kind) {
    case Kind::Var: {
        auto p = s.lookup(t->name);
        return p ? *p : t;
    }
    case Kind::Cons:
    case Kind::Fun: {
        if (t->args.empty()) return t;
        std::vector<Term> args;
        args.reserve(t->args.size());
        bool changed = false;
        for (const auto& a : t->args) {
            args.push_back(substitute(s, a));
            changed |= args.back().get() != a.get();
        }
        if (!changed) return t;
        return t->kind == Kind::Cons ? mk_cons(t->name, std::move(args)) : mk_fun(t->name, std::move(args));
    }
    case Kind::Case: {
        std::vector<Branch> bs;
        for (const auto& b : t->branches) {
            // pattern variables are bound here; drop any binding they shadow
            bool shadows = std::any_of(b.vars.begin(), b.vars.end(), [&](const std::string& v) { return s.lookup(v); });
            if (shadows) {
                Subst inner;
                for (const auto& [x, u] : s.bindings())
                    if (std::find(b.vars.begin(), b.vars.end(), x) == b.vars.end()) inner.bind(x, u);
                bs.push_back({b.ctor, b.vars, substitute(inner, b.body)});
            } else {
                bs.push_back({b.ctor, b.vars, substitute(s, b.body)});
            }
        }
        return mk_case(t->flex, substitute(s, t->args[0]), std::move(bs), t->line, t->column);
    }
    }
    return t;
}

bool equal(const Subst& a, const Subst& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [x, t] : a.bindings()) {
        auto p = b.lookup(x);
        if (!p || !equal(*p, t)) return false;
    }
    return true;
}

std::string Fresh::next() { return "_g" + std::to_string(++n_); }

Term rename_bound(const Term& t, Fresh& fresh) {
    switch (t->kind) {
    case Kind::Var:
        return t;
    case Kind::Cons:
    case Kind::Fun:
        return t;  // Case-free below constructor and function symbols
    case Kind::Case: {
        std::vector<Branch> bs;
        for (const auto& b : t->branches) {
            Subst r;
            std::vector<std::string> vars;
            for (const auto& v : b.vars) {
                vars.push_back(fresh.next());
                r.bind(v, mk_var(vars.back()));
            }
            bs.push_back({b.ctor, vars, rename_bound(substitute(r, b.body), fresh)});
        }
        return mk_case(t->flex, t->args[0], std::move(bs), t->line, t->column);
    }
    }
    return t;
}

// ---- matching ----

std::optional<Subst> match(const Term& pattern, const Term& t) {
    std::map<std::string, Term> env;
    std::function<bool(const Term&, const Term&)> go = [&](const Term& p, const Term& u) -> bool {
        if (p->kind == Kind::Var) {
            auto [it, fresh] = env.emplace(p->name, u);
            return fresh || equal(it->second, u);
        }
        if (p->kind != u->kind || p->name != u->name || p->args.size() != u->args.size()) return false;
        if (p->kind == Kind::Case) return equal(p, u);
        for (std::size_t i = 0; i < p->args.size(); ++i)
            if (!go(p->args[i], u->args[i])) return false;
        return true;
    };
    if (!go(pattern, t)) return std::nullopt;
    Subst out;
    for (const auto& [x, u] : env) out.bind(x, u);
    return out;
}

bool is_instance(const Term& t, const Term& pattern) { return match(pattern, t).has_value(); }

// ---- canonical renaming ----

std::string Canonicalizer::name(const std::string& v) {
    auto it = names_.find(v);
    if (it != names_.end()) return it->second;
    std::string n = "v" + std::to_string(names_.size());
    names_.emplace(v, n);
    return n;
}

Term Canonicalizer::rename(const Term& t) {
    switch (t->kind) {
    case Kind::Var:
        return mk_var(name(t->name));
    case Kind::Cons:
    case Kind::Fun: {
        std::vector<Term> args;
        for (const auto& a : t->args) args.push_back(rename(a));
        return t->kind == Kind::Cons ? mk_cons(t->name, std::move(args)) : mk_fun(t->name, std::move(args));
    }
    case Kind::Case: {
        Term arg = rename(t->args[0]);
        std::vector<Branch> bs;
        for (const auto& b : t->branches) {
            std::vector<std::string> vars;
            for (const auto& v : b.vars) vars.push_back(name(v));
            bs.push_back({b.ctor, vars, rename(b.body)});
        }
        return mk_case(t->flex, arg, std::move(bs));
    }
    }
    return t;
}

Term canonical(const Term& t) {
    Canonicalizer c;
    return c.rename(t);
}

bool variant(const Term& a, const Term& b) { return equal(canonical(a), canonical(b)); }

std::optional<Term> replace_first(const Term& t, const Term& sub, const Term& repl) {
    if (equal(t, sub)) return repl;
    if (t->kind == Kind::Case) return std::nullopt;
    for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (auto r = replace_first(t->args[i], sub, repl)) {
            std::vector<Term> args = t->args;
            args[i] = *r;
            return t->kind == Kind::Cons ? mk_cons(t->name, std::move(args)) : mk_fun(t->name, std::move(args));
        }
    }
    return std::nullopt;
}

}  // namespace flslice
