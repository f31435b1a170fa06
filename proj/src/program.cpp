#include "flslice/program.hpp"

namespace flslice {

Program::Program(std::vector<Rule> rules) : rules_(std::move(rules)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) index_.emplace(rules_[i].name, i);
}

const Rule* Program::find(const std::string& f) const {
    auto it = index_.find(f);
    return it == index_.end() ? nullptr : &rules_[it->second];
}

static void collect_ctors(const Term& t, std::map<std::string, std::size_t>& out) {
    if (t->kind == Kind::Cons && t->name != kTop) out.emplace(t->name, t->args.size());
    for (const auto& a : t->args) collect_ctors(a, out);
    for (const auto& b : t->branches) {
        out.emplace(b.ctor, b.vars.size());
        collect_ctors(b.body, out);
    }
}

std::map<std::string, std::size_t> Program::constructors() const {
    std::map<std::string, std::size_t> out;
    for (const auto& r : rules_) collect_ctors(r.body, out);
    out.erase(kTop);
    return out;
}

std::optional<Term> unfold_call(const Program& p, const Term& call, Fresh& fresh) {
    const Rule* r = p.find(call->name);
    if (!r || r->params.size() != call->args.size()) return std::nullopt;
    Subst rho;
    for (std::size_t i = 0; i < r->params.size(); ++i) rho.bind(r->params[i], call->args[i]);
    return substitute(rho, rename_bound(r->body, fresh));
}

}  // namespace flslice
