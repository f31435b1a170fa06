#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flslice {

struct Node;
using Term = std::shared_ptr<const Node>;

enum class Kind { Var, Cons, Fun, Case };

inline constexpr const char* kTop = "TOP";

struct Branch {
    std::string ctor;
    std::vector<std::string> vars;
    Term body;
};

struct Node {
    Kind kind = Kind::Var;
    std::string name;          // variable, constructor or function name
    std::vector<Term> args;    // Case: args[0] is the scrutinee
    bool flex = true;          // Case only
    std::vector<Branch> branches;
    int line = 0, column = 0;  // Case only, 0 when synthesized
};

Term mk_var(std::string name);
Term mk_cons(std::string name, std::vector<Term> args = {});
Term mk_fun(std::string name, std::vector<Term> args = {});
Term mk_case(bool flex, Term arg, std::vector<Branch> branches, int line = 0, int column = 0);
Term mk_top();

inline bool is_var(const Term& t) { return t->kind == Kind::Var; }
inline bool is_cons(const Term& t) { return t->kind == Kind::Cons; }
inline bool is_fun(const Term& t) { return t->kind == Kind::Fun; }
inline bool is_case(const Term& t) { return t->kind == Kind::Case; }
inline bool is_top(const Term& t) { return t->kind == Kind::Cons && t->name == kTop; }
inline bool is_value(const Term& t) { return is_var(t) || is_cons(t); }
inline const Term& case_arg(const Term& t) { return t->args[0]; }

bool is_case_free(const Term& t);
// Case-free and Fun-free.
bool is_data(const Term& t);
bool contains_top(const Term& t);

bool equal(const Term& a, const Term& b);

// Free variables in order of first occurrence.
std::vector<std::string> free_vars(const Term& t);
void collect_free_vars(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen);

std::size_t depth(const Term& t);
std::size_t size(const Term& t);

// Maximal operation-rooted subterms in left-to-right order (t itself if Fun-rooted).
std::vector<Term> maximal_calls(const Term& t);

// Substitution: no x -> x bindings are stored.
class Subst {
public:
    Subst() = default;
    void bind(const std::string& x, Term t);
    const Term* lookup(const std::string& x) const;
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<std::string, Term>& bindings() const { return map_; }
    // (this o inner): apply inner first, then this.
    Subst compose(const Subst& inner) const;
    Subst restrict(const std::vector<std::string>& vars) const;

private:
    std::map<std::string, Term> map_;
};

Term substitute(const Subst& s, const Term& t);
bool equal(const Subst& a, const Subst& b);

// Session-owned source of fresh variable names "_gN".
class Fresh {
public:
    std::string next();
    std::size_t counter() const { return n_; }

private:
    std::size_t n_ = 0;
};

// Rename bound pattern variables of t apart using fresh names.
Term rename_bound(const Term& t, Fresh& fresh);

// One-way matching: s with substitute(s, pattern) == t.
std::optional<Subst> match(const Term& pattern, const Term& t);
bool is_instance(const Term& t, const Term& pattern);

// Renames variables to v0, v1, ... in traversal order; one instance can
// be shared across several terms (e.g. a state and its stack).
class Canonicalizer {
public:
    Term rename(const Term& t);
    std::string name(const std::string& v);

private:
    std::map<std::string, std::string> names_;
};

Term canonical(const Term& t);
bool variant(const Term& a, const Term& b);

// Replace the leftmost-outermost occurrence of `sub` by `repl`.
std::optional<Term> replace_first(const Term& t, const Term& sub, const Term& repl);

}  // namespace flslice
