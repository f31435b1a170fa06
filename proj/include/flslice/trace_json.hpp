#pragma once

#include <string>

#include "flslice/reachability.hpp"

namespace flslice {

// [{index, states:[{expr, stack:[{ctx, hole}]}], unfolded:[...]}, ...]
std::string trace_to_json(const FixpointTrace& trace);

}  // namespace flslice
