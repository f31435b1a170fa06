#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flslice/term.hpp"

namespace flslice {

struct Rule {
    std::string name;
    std::vector<std::string> params;
    Term body;
    int line = 0, column = 0;
};

class Program {
public:
    Program() = default;
    explicit Program(std::vector<Rule> rules);

    const std::vector<Rule>& rules() const { return rules_; }
    const Rule* find(const std::string& f) const;
    bool defines(const std::string& f) const { return find(f) != nullptr; }
    std::size_t size() const { return rules_.size(); }

    // Constructor name -> arity over all rule bodies (TOP excluded).
    std::map<std::string, std::size_t> constructors() const;

private:
    std::vector<Rule> rules_;
    std::map<std::string, std::size_t> index_;
};

// Body of f with params bound to args and pattern variables renamed apart.
std::optional<Term> unfold_call(const Program& p, const Term& call, Fresh& fresh);

}  // namespace flslice
