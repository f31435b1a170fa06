#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flslice/program.hpp"
#include "flslice/reachability.hpp"
#include "flslice/term.hpp"

namespace flslice::support {

Program parse_or_die(const std::string& text);
Term term_or_die(const std::string& text);
std::string read_file(const std::string& path);

struct CorpusEntry {
    std::string name;
    std::string path;
    Program program;
    std::optional<Term> criterion;
    std::optional<std::string> expected_slice;
    std::optional<std::string> expected_full;
};

std::vector<CorpusEntry> load_corpus(const std::string& dir);

struct GenConfig {
    std::size_t max_functions = 6;
    int max_depth = 4;
    double rigid_ratio = 0.1;
};

Program random_program(std::mt19937_64& rng, const GenConfig& cfg = {});
// f0 applied to a mix of fresh variables and small ground terms.
Term random_criterion(const Program& p, std::mt19937_64& rng);

// Size of the simplified form: TOP rules and TOP branches count zero.
std::size_t simplified_size(const Program& p);

// Members of a state set as a set of renaming-invariant keys.
std::vector<std::string> sorted_keys(const std::vector<State>& states);
State state_of(const std::string& expr, const std::vector<std::pair<std::string, std::string>>& frames = {});

}  // namespace flslice::support
