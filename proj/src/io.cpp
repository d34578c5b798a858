#include "pathregret/io.hpp"

#include <fstream>

namespace pathregret {

using nlohmann::json;

ParametricPathNetwork instance_from_json(const json& j) {
  ParametricPathNetwork inst;
  inst.tau = j.at("tau").get<double>();
  inst.horizon = {j.at("horizon").at(0).get<double>(),
                  j.at("horizon").at(1).get<double>()};
  for (const auto& v : j.at("vertices"))
    inst.weights.push_back({v.at("b").get<double>(), v.at("a").get<double>()});
  for (const auto& e : j.at("edges")) {
    inst.lengths.push_back(e.at("length").get<double>());
    inst.capacities.push_back(e.at("capacity").get<double>());
  }
  return inst;
}

json instance_to_json(const ParametricPathNetwork& inst) {
  json j;
  j["tau"] = inst.tau;
  j["horizon"] = {inst.horizon.lo, inst.horizon.hi};
  j["vertices"] = json::array();
  for (const auto& w : inst.weights)
    j["vertices"].push_back({{"a", w.intercept}, {"b", w.slope}});
  j["edges"] = json::array();
  for (size_t e = 0; e < inst.lengths.size(); ++e)
    j["edges"].push_back({{"length", inst.lengths[e]}, {"capacity", inst.capacities[e]}});
  return j;
}

ParametricPathNetwork load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  json j = json::parse(in);  // throws nlohmann::json::parse_error with position
  return instance_from_json(j);
}

json result_to_json(const Network& net, const SolveResult& result) {
  json sink;
  if (result.sink.kind == SinkLocation::Kind::vertex) {
    sink["kind"] = "vertex";
    sink["index"] = result.sink.index;
  } else {
    sink["kind"] = "edge";
    sink["index"] = result.sink.index;
    sink["offset"] = result.sink.offset;
  }
  sink["coordinate"] = result.sink.coordinate(net);

  json diag;
  diag["pieces_f_left"] = result.diag.pieces_f_left;
  diag["pieces_f_right"] = result.diag.pieces_f_right;
  diag["pieces_opt"] = result.diag.pieces_opt;
  diag["pieces_mr_edge"] = result.diag.pieces_mr_edge;
  diag["mr_vertex"] = result.diag.mr_vertex;
  diag["mr_edge_min"] = result.diag.mr_edge_min;
  diag["mr_edge_argmin"] = result.diag.mr_edge_argmin;

  return json{{"sink", sink}, {"max_regret", result.max_regret}, {"diagnostics", diag}};
}

}  // namespace pathregret
