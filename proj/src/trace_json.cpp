#include "flslice/trace_json.hpp"

#include <json.hpp>

#include "flslice/surface.hpp"

namespace flslice {

namespace {

nlohmann::json state_json(const State& s) {
    nlohmann::json st = nlohmann::json::array();
    for (const auto& f : s.stack) st.push_back({{"ctx", print_term(f.ctx)}, {"hole", f.hole}});
    return {{"expr", print_term(s.expr)}, {"stack", st}};
}

}  // namespace

std::string trace_to_json(const FixpointTrace& trace) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
        const auto& it = trace.iterations[i];
        nlohmann::json states = nlohmann::json::array(), unfolded = nlohmann::json::array();
        for (const auto& s : it.states.states()) states.push_back(state_json(s));
        for (const auto& s : it.unfolded) unfolded.push_back(state_json(s));
        out.push_back({{"index", i}, {"states", states}, {"unfolded", unfolded}});
    }
    return out.dump(2) + "\n";
}

}  // namespace flslice
