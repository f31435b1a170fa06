#include "flslice/surface.hpp"

namespace flslice {

namespace {

void print_args(const std::vector<Term>& args, std::string& out);

void print_into(const Term& t, std::string& out) {
    switch (t->kind) {
    case Kind::Var:
        out += t->name;
        return;
    case Kind::Cons:
        out += t->name;
        if (!t->args.empty()) print_args(t->args, out);
        return;
    case Kind::Fun:
        out += t->name;
        print_args(t->args, out);
        return;
    case Kind::Case:
        out += t->flex ? "fcase " : "case ";
        print_into(t->args[0], out);
        out += " of {";
        for (std::size_t i = 0; i < t->branches.size(); ++i) {
            const auto& b = t->branches[i];
            out += i ? "; " : " ";
            out += b.ctor;
            if (!b.vars.empty()) {
                out += "(";
                for (std::size_t j = 0; j < b.vars.size(); ++j) {
                    if (j) out += ", ";
                    out += b.vars[j];
                }
                out += ")";
            }
            out += " -> ";
            print_into(b.body, out);
        }
        out += t->branches.empty() ? "}" : " }";
        return;
    }
}

void print_args(const std::vector<Term>& args, std::string& out) {
    out += "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        print_into(args[i], out);
    }
    out += ")";
}

// Drops p -> TOP branches; a case left without branches collapses to TOP.
Term simplify(const Term& t) {
    if (t->kind != Kind::Case) return t;
    std::vector<Branch> bs;
    for (const auto& b : t->branches) {
        Term body = simplify(b.body);
        if (!is_top(body)) bs.push_back({b.ctor, b.vars, body});
    }
    if (bs.empty()) return mk_top();
    return mk_case(t->flex, t->args[0], std::move(bs), t->line, t->column);
}

}  // namespace

std::string print_term(const Term& t) {
    std::string out;
    print_into(t, out);
    return out;
}

std::string print_rule(const Rule& r, PrintMode mode) {
    std::string out = r.name + "(";
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        if (i) out += ", ";
        out += r.params[i];
    }
    out += ") = ";
    print_into(mode == PrintMode::Simplified ? simplify(r.body) : r.body, out);
    return out;
}

std::string print_program(const Program& p, PrintMode mode) {
    std::string out;
    for (const auto& r : p.rules()) {
        if (mode == PrintMode::Simplified && is_top(simplify(r.body))) continue;
        out += print_rule(r, mode);
        out += "\n";
    }
    return out;
}

}  // namespace flslice
