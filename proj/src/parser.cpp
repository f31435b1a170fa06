#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "flslice/surface.hpp"

namespace flslice {

std::string format_diagnostic(const Diagnostic& d) {
    return d.span.file + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": " +
           (d.severity == Severity::Error ? "error: " : "warning: ") + d.message;
}

namespace {

enum class Tok { Lower, Upper, LParen, RParen, LBrace, RBrace, Comma, Semi, Arrow, Equals, Case, FCase, Of, End };

struct Token {
    Tok kind;
    std::string text;
    int line, column;
};

struct SyntaxError : std::runtime_error {
    int line, column;
    SyntaxError(const std::string& m, int l, int c) : std::runtime_error(m), line(l), column(c) {}
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto adv = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            adv(1);
            continue;
        }
        if (src.substr(i, 2) == "--") {
            while (i < src.size() && src[i] != '\n') adv(1);
            continue;
        }
        int l = line, cl = col;
        if (src.substr(i, 3) == "\xE2\x8A\xA4") {
            out.push_back({Tok::Upper, kTop, l, cl});
            adv(3);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            std::string w(src.substr(i, j - i));
            Tok k = std::isupper(static_cast<unsigned char>(c)) ? Tok::Upper : Tok::Lower;
            if (w == "case") k = Tok::Case;
            if (w == "fcase") k = Tok::FCase;
            if (w == "of") k = Tok::Of;
            out.push_back({k, w, l, cl});
            adv(j - i);
            continue;
        }
        if (src.substr(i, 2) == "->") {
            out.push_back({Tok::Arrow, "->", l, cl});
            adv(2);
            continue;
        }
        Tok k;
        switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case ',': k = Tok::Comma; break;
        case ';': k = Tok::Semi; break;
        case '=': k = Tok::Equals; break;
        default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
        }
        out.push_back({k, std::string(1, c), l, cl});
        adv(1);
    }
    out.push_back({Tok::End, "end of input", line, col});
    return out;
}

const char* describe(Tok k) {
    switch (k) {
    case Tok::Lower: return "identifier";
    case Tok::Upper: return "constructor";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::Case: return "'case'";
    case Tok::FCase: return "'fcase'";
    case Tok::Of: return "'of'";
    case Tok::End: return "end of input";
    }
    return "token";
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    Token take() { return t_[p_ < t_.size() - 1 ? p_++ : p_]; }
    Token expect(Tok k) {
        if (!at(k))
            throw SyntaxError(std::string("expected ") + describe(k) + ", found '" + peek().text + "'", peek().line,
                              peek().column);
        return take();
    }

    Rule rule() {
        Token name = expect(Tok::Lower);
        Rule r;
        r.name = name.text;
        r.line = name.line;
        r.column = name.column;
        expect(Tok::LParen);
        if (!at(Tok::RParen)) {
            r.params.push_back(expect(Tok::Lower).text);
            while (at(Tok::Comma)) {
                take();
                r.params.push_back(expect(Tok::Lower).text);
            }
        }
        expect(Tok::RParen);
        expect(Tok::Equals);
        r.body = expr();
        return r;
    }

    Term expr() {
        if (at(Tok::Case) || at(Tok::FCase)) {
            Token kw = take();
            if (!at(Tok::Lower) || peek(1).kind == Tok::LParen)
                throw SyntaxError("case argument must be a variable", peek().line, peek().column);
            Term arg = mk_var(take().text);
            expect(Tok::Of);
            expect(Tok::LBrace);
            std::vector<Branch> bs;
            while (!at(Tok::RBrace)) {
                Branch b;
                b.ctor = expect(Tok::Upper).text;
                if (at(Tok::LParen)) {
                    take();
                    if (!at(Tok::RParen)) {
                        b.vars.push_back(expect(Tok::Lower).text);
                        while (at(Tok::Comma)) {
                            take();
                            b.vars.push_back(expect(Tok::Lower).text);
                        }
                    }
                    expect(Tok::RParen);
                }
                expect(Tok::Arrow);
                b.body = expr();
                bs.push_back(std::move(b));
                if (at(Tok::Semi))
                    take();
                else
                    break;
            }
            expect(Tok::RBrace);
            return mk_case(kw.kind == Tok::FCase, arg, std::move(bs), kw.line, kw.column);
        }
        return term();
    }

    Term term() {
        if (at(Tok::Case) || at(Tok::FCase))
            throw SyntaxError("case expression must appear at an outermost position", peek().line, peek().column);
        if (at(Tok::Upper)) {
            std::string name = take().text;
            return mk_cons(name, at(Tok::LParen) ? args() : std::vector<Term>{});
        }
        if (at(Tok::Lower)) {
            std::string name = take().text;
            if (at(Tok::LParen)) return mk_fun(name, args());
            return mk_var(name);
        }
        throw SyntaxError(std::string("expected an expression, found '") + peek().text + "'", peek().line,
                          peek().column);
    }

    std::vector<Term> args() {
        expect(Tok::LParen);
        std::vector<Term> out;
        if (!at(Tok::RParen)) {
            out.push_back(term());
            while (at(Tok::Comma)) {
                take();
                out.push_back(term());
            }
        }
        expect(Tok::RParen);
        return out;
    }

private:
    std::vector<Token> t_;
    std::size_t p_ = 0;
};

struct Validator {
    std::string file;
    std::vector<Diagnostic> diags;
    std::map<std::string, std::size_t> fun_arity, ctor_arity;
    std::map<std::string, std::size_t> defined;

    void error(int line, int col, std::string m) {
        diags.push_back({Severity::Error, {file, std::max(line, 1), std::max(col, 1)}, std::move(m)});
    }

    void arity(std::map<std::string, std::size_t>& table, const std::string& kind, const std::string& name,
               std::size_t n, int line, int col) {
        auto [it, fresh] = table.emplace(name, n);
        if (!fresh && it->second != n)
            error(line, col,
                  kind + " " + name + " used with " + std::to_string(n) + " arguments, expected " +
                      std::to_string(it->second));
    }

    void check(const Term& t, std::set<std::string>& scope, int line, int col) {
        switch (t->kind) {
        case Kind::Var:
            if (!scope.count(t->name)) error(line, col, "unbound variable " + t->name);
            return;
        case Kind::Cons:
            if (t->name == kTop && !t->args.empty()) error(line, col, "TOP takes no arguments");
            arity(ctor_arity, "constructor", t->name, t->args.size(), line, col);
            for (const auto& a : t->args) check(a, scope, line, col);
            return;
        case Kind::Fun:
            arity(fun_arity, "function", t->name, t->args.size(), line, col);
            for (const auto& a : t->args) check(a, scope, line, col);
            return;
        case Kind::Case: {
            int l = t->line ? t->line : line, c = t->line ? t->column : col;
            check(t->args[0], scope, l, c);
            std::set<std::string> ctors;
            for (const auto& b : t->branches) {
                if (!ctors.insert(b.ctor).second) error(l, c, "duplicate branch for constructor " + b.ctor);
                if (b.ctor == kTop) error(l, c, "TOP cannot be used as a pattern");
                arity(ctor_arity, "constructor", b.ctor, b.vars.size(), l, c);
                std::set<std::string> inner = scope;
                for (const auto& v : b.vars) {
                    if (scope.count(v)) error(l, c, "pattern variable " + v + " shadows a variable in scope");
                    if (!inner.insert(v).second && !scope.count(v))
                        error(l, c, "pattern variable " + v + " occurs twice");
                }
                check(b.body, inner, l, c);
            }
            return;
        }
        }
    }
};

}  // namespace

ParseResult parse_program(std::string_view text, const std::string& file) {
    ParseResult res;
    std::vector<Rule> rules;
    try {
        Parser p(lex(text));
        while (!p.at(Tok::End)) rules.push_back(p.rule());
    } catch (const SyntaxError& e) {
        res.diagnostics.push_back({Severity::Error, {file, e.line, e.column}, e.what()});
        return res;
    }
    Validator v{file, {}, {}, {}, {}};
    for (const auto& r : rules) {
        if (!v.defined.emplace(r.name, r.params.size()).second)
            v.error(r.line, r.column, "duplicate rule for function " + r.name);
        v.arity(v.fun_arity, "function", r.name, r.params.size(), r.line, r.column);
    }
    for (const auto& r : rules) {
        std::set<std::string> scope;
        for (const auto& x : r.params)
            if (!scope.insert(x).second) v.error(r.line, r.column, "duplicate parameter " + x + " in " + r.name);
        v.check(r.body, scope, r.line, r.column);
    }
    res.diagnostics = std::move(v.diags);
    if (res.diagnostics.empty()) res.program = Program(std::move(rules));
    return res;
}

GoalResult parse_term(std::string_view text, const std::string& file) {
    GoalResult res;
    try {
        Parser p(lex(text));
        Term t = p.term();
        if (!p.at(Tok::End))
            throw SyntaxError("unexpected '" + p.peek().text + "' after expression", p.peek().line, p.peek().column);
        res.goal = t;
    } catch (const SyntaxError& e) {
        res.diagnostics.push_back({Severity::Error, {file, e.line, e.column}, e.what()});
    }
    return res;
}

GoalResult parse_goal(std::string_view text, const std::string& file) {
    GoalResult res = parse_term(text, file);
    if (res.goal && !is_fun(*res.goal)) {
        res.goal.reset();
        res.diagnostics.push_back({Severity::Error, {file, 1, 1}, "goal must be operation-rooted"});
    }
    return res;
}

}  // namespace flslice
