#pragma once

#include <string>

#include <json.hpp>

#include "pathregret/network.hpp"
#include "pathregret/regret.hpp"

namespace pathregret {

/// Instance document:
/// {"tau": 1.0, "horizon": [0.0, 1.0],
///  "vertices": [{"a": 1.0, "b": 0.5}, ...],
///  "edges": [{"length": 1.0, "capacity": 2.0}, ...]}
/// with |edges| = |vertices| - 1; the weight of vertex i is a_i + b_i * t.
ParametricPathNetwork instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const ParametricPathNetwork& inst);

/// Reads and parses an instance file; JSON errors carry position info.
ParametricPathNetwork load_instance(const std::string& path);

nlohmann::json result_to_json(const Network& net, const SolveResult& result);

}  // namespace pathregret
