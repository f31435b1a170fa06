#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "flslice/core.hpp"
#include "flslice/surface.hpp"

namespace flslice::support {

namespace fs = std::filesystem;

Program parse_or_die(const std::string& text) {
    ParseResult r = parse_program(text);
    if (!r.ok()) {
        std::string msg;
        for (const auto& d : r.diagnostics) msg += format_diagnostic(d) + "\n";
        throw std::runtime_error(msg + text);
    }
    return *r.program;
}

Term term_or_die(const std::string& text) {
    GoalResult r = parse_term(text);
    if (!r.ok()) throw std::runtime_error("bad term: " + text);
    return *r.goal;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto& p = e.path();
        std::string n = p.filename().string();
        if (p.extension() != ".flc" || n.find(".expected-") != std::string::npos) continue;
        files.push_back(p);
    }
    std::sort(files.begin(), files.end());
    std::vector<CorpusEntry> out;
    for (const auto& f : files) {
        CorpusEntry c{f.stem().string(), f.string(), parse_or_die(read_file(f.string())), {}, {}, {}};
        fs::path base = f;
        base.replace_extension();
        auto sib = [&](const std::string& ext) { return fs::path(base.string() + ext); };
        if (fs::exists(sib(".criterion"))) {
            GoalResult g = parse_goal(trim(read_file(sib(".criterion").string())));
            if (!g.ok()) throw std::runtime_error("bad criterion for " + c.name);
            c.criterion = *g.goal;
        }
        if (fs::exists(sib(".expected-slice.flc"))) c.expected_slice = read_file(sib(".expected-slice.flc").string());
        if (fs::exists(sib(".expected-full.flc"))) c.expected_full = read_file(sib(".expected-full.flc").string());
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

struct Ctor {
    const char* name;
    std::size_t arity;
};

constexpr Ctor kCtors[] = {{"Z", 0},    {"S", 1},    {"Nil", 0},   {"Cons", 2},
                           {"Pair", 2}, {"True", 0}, {"False", 0}};

struct Gen {
    std::mt19937_64& rng;
    const GenConfig& cfg;
    std::vector<std::size_t> arity;
    std::size_t pv = 0;

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng); }

    Term leaf(const std::vector<std::string>& vars) {
        if (!vars.empty() && coin(0.6)) return mk_var(vars[pick(vars.size())]);
        static const char* nullary[] = {"Z", "Nil", "True", "False"};
        return mk_cons(nullary[pick(4)]);
    }

    Term term(const std::vector<std::string>& vars, int depth) {
        if (depth <= 1) return leaf(vars);
        double r = std::uniform_real_distribution<double>(0, 1)(rng);
        if (r < 0.3) return leaf(vars);
        if (r < 0.65) {
            const Ctor& c = kCtors[pick(std::size(kCtors))];
            std::vector<Term> args;
            for (std::size_t i = 0; i < c.arity; ++i) args.push_back(term(vars, depth - 1));
            return mk_cons(c.name, std::move(args));
        }
        std::size_t f = pick(arity.size());
        std::vector<Term> args;
        for (std::size_t i = 0; i < arity[f]; ++i) args.push_back(term(vars, depth - 1));
        return mk_fun("f" + std::to_string(f), std::move(args));
    }

    Term expr(const std::vector<std::string>& vars, int depth) {
        if (depth < 2 || vars.empty() || !coin(0.45)) return term(vars, depth);
        std::vector<std::size_t> idx(std::size(kCtors));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        std::size_t k = 1 + pick(3);
        std::vector<Branch> bs;
        for (std::size_t j = 0; j < k; ++j) {
            const Ctor& c = kCtors[idx[j]];
            Branch b;
            b.ctor = c.name;
            for (std::size_t i = 0; i < c.arity; ++i) b.vars.push_back("p" + std::to_string(pv++));
            std::vector<std::string> inner = vars;
            inner.insert(inner.end(), b.vars.begin(), b.vars.end());
            b.body = expr(inner, depth - 1);
            bs.push_back(std::move(b));
        }
        return mk_case(!coin(cfg.rigid_ratio), mk_var(vars[pick(vars.size())]), std::move(bs));
    }
};

std::size_t ssize(const Term& t) {
    if (is_top(t)) return 0;
    if (!is_case(t)) return size(t);
    std::size_t n = 0;
    for (const auto& b : t->branches) {
        std::size_t m = ssize(b.body);
        if (m) n += 1 + b.vars.size() + m;
    }
    return n ? 1 + size(t->args[0]) + n : 0;
}

}  // namespace

Program random_program(std::mt19937_64& rng, const GenConfig& cfg) {
    Gen g{rng, cfg, {}, 0};
    std::size_t n = 1 + g.pick(cfg.max_functions);
    for (std::size_t i = 0; i < n; ++i) g.arity.push_back(1 + g.pick(2));
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < n; ++i) {
        Rule r;
        r.name = "f" + std::to_string(i);
        for (std::size_t j = 0; j < g.arity[i]; ++j) r.params.push_back("x" + std::to_string(j));
        r.body = g.expr(r.params, cfg.max_depth);
        rules.push_back(std::move(r));
    }
    return Program(std::move(rules));
}

Term random_criterion(const Program& p, std::mt19937_64& rng) {
    const Rule& r = p.rules().front();
    std::vector<Term> args;
    std::bernoulli_distribution coin(0.25);
    for (std::size_t i = 0; i < r.params.size(); ++i) {
        if (coin(rng))
            args.push_back(coin(rng) ? mk_cons("S", {mk_cons("Z")}) : mk_cons("Cons", {mk_cons("Z"), mk_var("t" + std::to_string(i))}));
        else
            args.push_back(mk_var("v" + std::to_string(i)));
    }
    return mk_fun(r.name, std::move(args));
}

std::size_t simplified_size(const Program& p) {
    std::size_t n = 0;
    for (const auto& r : p.rules()) {
        std::size_t m = ssize(r.body);
        if (m) n += 1 + r.params.size() + m;
    }
    return n;
}

std::vector<std::string> sorted_keys(const std::vector<State>& states) {
    std::vector<std::string> k = state_keys(states);
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
}

State state_of(const std::string& expr, const std::vector<std::pair<std::string, std::string>>& frames) {
    State s{term_or_die(expr), {}};
    for (const auto& [ctx, hole] : frames) s.stack.push_back({term_or_die(ctx), hole});
    return s;
}

}  // namespace flslice::support
