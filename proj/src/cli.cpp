#include "flslice/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "flslice/lnt.hpp"
#include "flslice/slicer.hpp"
#include "flslice/surface.hpp"
#include "flslice/trace_json.hpp"

namespace flslice {

namespace {

struct Config {
    std::string command, file, criterion, goal, trace_json, slice_file, output;
    bool full = false, simplified = false, deep = false;
    std::size_t max_steps = 10000, max_answers = 100, enum_bound = 3, fuel = 0;
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Session {
    Config cfg;
    std::ostream& out;
    std::ostream& err;

    std::optional<Program> load(const std::string& path) {
        auto text = read_file(path);
        if (!text) {
            err << path << ": error: cannot read file\n";
            return std::nullopt;
        }
        ParseResult r = parse_program(*text, path);
        for (const auto& d : r.diagnostics) err << format_diagnostic(d) << "\n";
        return r.program;
    }

    std::optional<Term> goal(const std::string& text, const char* what) {
        GoalResult g = parse_goal(text, what);
        for (const auto& d : g.diagnostics) err << format_diagnostic(d) << "\n";
        return g.goal;
    }

    bool emit(const std::string& text) {
        if (cfg.output.empty()) {
            out << text;
            return true;
        }
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            err << cfg.output << ": error: cannot write file\n";
            return false;
        }
        f << text;
        return true;
    }

    bool write_trace(const FixpointTrace& t) {
        if (cfg.trace_json.empty()) return true;
        std::ofstream f(cfg.trace_json, std::ios::binary);
        if (!f) {
            err << cfg.trace_json << ": error: cannot write file\n";
            return false;
        }
        f << trace_to_json(t);
        return true;
    }

    int slice() {
        if (cfg.criterion.empty()) {
            err << "error: slice requires --criterion\n";
            return kExitUsage;
        }
        auto p = load(cfg.file);
        if (!p) return kExitInput;
        auto c = goal(cfg.criterion, "<criterion>");
        if (!c) return kExitInput;
        std::size_t fuel = cfg.fuel ? cfg.fuel : default_fuel(*p);
        try {
            SliceResult r = slice_program(*p, *c, fuel);
            if (!write_trace(r.reach.trace)) return kExitInput;
            return emit(print_program(r.slice, cfg.full ? PrintMode::Full : PrintMode::Simplified)) ? kExitOk
                                                                                                     : kExitInput;
        } catch (const FuelExhausted& e) {
            write_trace(e.trace);
            err << "error: " << e.what() << " (fuel " << fuel << ")\n";
            return kExitFuel;
        }
    }

    int run() {
        if (cfg.goal.empty()) {
            err << "error: run requires --goal\n";
            return kExitUsage;
        }
        auto p = load(cfg.file);
        if (!p) return kExitInput;
        auto g = goal(cfg.goal, "<goal>");
        if (!g) return kExitInput;
        EvalResult r = lnt_eval(*g, *p, {cfg.max_steps, cfg.max_answers, cfg.deep});
        std::string text;
        for (const auto& a : r.answers) {
            text += print_term(a.value) + " {";
            bool first = true;
            for (const auto& [x, t] : a.subst.bindings()) {
                text += (first ? "" : ", ") + x + " -> " + print_term(t);
                first = false;
            }
            text += "}\n";
        }
        text += "-- answers: " + std::to_string(r.answers.size()) + "; exhausted: " + (r.exhausted ? "yes" : "no") +
                "; suspended: " + std::to_string(r.suspended_paths) +
                "; top reached: " + std::to_string(r.top_reached_paths) +
                "; failed: " + std::to_string(r.failed_paths) + "\n";
        return emit(text) ? kExitOk : kExitInput;
    }

    int check() {
        if (cfg.criterion.empty()) {
            err << "error: check requires --criterion\n";
            return kExitUsage;
        }
        auto p = load(cfg.file);
        if (!p) return kExitInput;
        auto c = goal(cfg.criterion, "<criterion>");
        if (!c) return kExitInput;
        std::optional<Program> slice;
        if (!cfg.slice_file.empty()) {
            slice = load(cfg.slice_file);
            if (!slice) return kExitInput;
        } else {
            std::size_t fuel = cfg.fuel ? cfg.fuel : default_fuel(*p);
            try {
                SliceResult r = slice_program(*p, *c, fuel);
                write_trace(r.reach.trace);
                slice = std::move(r.slice);
            } catch (const FuelExhausted& e) {
                write_trace(e.trace);
                err << "error: " << e.what() << " (fuel " << fuel << ")\n";
                return kExitFuel;
            }
        }
        auto goals = enumerate_goals(*c, *p, cfg.enum_bound);
        SliceReport rep = check_correct_slice(*p, *slice, goals, {cfg.max_steps, cfg.max_answers, true});
        if (!emit(format_report(rep))) return kExitInput;
        return rep.correct() ? kExitOk : kExitCheck;
    }

    int validate() {
        auto p = load(cfg.file);
        if (!p) return kExitInput;
        return emit("ok: " + std::to_string(p->size()) + " rules\n") ? kExitOk : kExitInput;
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Forward slicer for flat functional-logic programs", "flslice"};
    app.add_option("command", cfg.command, "slice | run | check | validate")
        ->required()
        ->check(CLI::IsMember({"slice", "run", "check", "validate"}));
    app.add_option("file", cfg.file, "program file (.flc)")->required();
    app.add_option("--criterion", cfg.criterion, "slicing criterion, e.g. main(Len, xs)");
    app.add_option("--goal", cfg.goal, "goal to evaluate");
    auto* full = app.add_flag("--full", cfg.full, "print TOP branches and rules");
    app.add_flag("--simplified", cfg.simplified, "drop TOP branches and rules (default)")->excludes(full);
    app.add_flag("--deep", cfg.deep, "evaluate values to constructor normal form");
    app.add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber);
    app.add_option("--max-answers", cfg.max_answers)->check(CLI::PositiveNumber);
    app.add_option("--fuel", cfg.fuel, "fixpoint iteration limit")->check(CLI::PositiveNumber);
    app.add_option("--enum-bound", cfg.enum_bound, "constructor-size bound for goal enumeration")
        ->check(CLI::PositiveNumber);
    app.add_option("--trace-json", cfg.trace_json, "write the fixpoint trace as JSON");
    app.add_option("--slice-file", cfg.slice_file, "check this slice instead of computing one");
    app.add_option("-o", cfg.output, "output file");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }
    Session s{cfg, out, err};
    if (cfg.command == "slice") return s.slice();
    if (cfg.command == "run") return s.run();
    if (cfg.command == "check") return s.check();
    return s.validate();
}

}  // namespace flslice
