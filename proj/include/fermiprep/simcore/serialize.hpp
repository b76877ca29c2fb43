// Copyright 2026 The fermiprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "json.hpp"

#include "fermiprep/simcore/circuit.hpp"

namespace fermiprep {

inline nlohmann::ordered_json layout_to_json(const RegisterLayout& layout) {
  auto regs = nlohmann::ordered_json::array();
  for (const auto& r : layout.registers())
    regs.push_back({{"name", r.name},
                    {"first", r.first},
                    {"element_width", r.element_width},
                    {"element_count", r.element_count}});
  return regs;
}

inline RegisterLayout layout_from_json(const nlohmann::json& j) {
  RegisterLayout layout;
  for (const auto& r : j) {
    const auto& added = layout.add(r.at("name").get<std::string>(), r.at("element_width").get<unsigned>(),
                                   r.at("element_count").get<unsigned>());
    require(!r.contains("first") || r.at("first").get<unsigned>() == added.first, "layout_contiguous",
            "register '" + added.name + "' is not contiguous with its predecessor");
  }
  return layout;
}

inline nlohmann::ordered_json to_json(const GateOp& op) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(op.kind));
  j["targets"] = op.targets;
  auto controls = nlohmann::ordered_json::array();
  for (const auto& c : op.controls) controls.push_back({c.qubit, c.on_one ? 1 : 0});
  j["controls"] = std::move(controls);
  if (op.kind == GateKind::Rotation || op.kind == GateKind::Phase || op.kind == GateKind::Projector)
    j["param"] = op.param;
  if (op.uncompute) j["uncompute"] = true;
  return j;
}

inline GateOp gate_from_json(const nlohmann::json& j) {
  GateOp op;
  op.kind = gate_kind_from_string(j.at("kind").get<std::string>());
  op.targets = j.at("targets").get<std::vector<Qubit>>();
  for (const auto& c : j.value("controls", nlohmann::json::array()))
    op.controls.push_back({c.at(0).get<Qubit>(), c.at(1).get<int>() != 0});
  op.param = j.value("param", 0.0);
  op.uncompute = j.value("uncompute", false);
  return op;
}

inline nlohmann::ordered_json tally_to_json(const ResourceTally& t) {
  return {{"gate_count", t.gate_count},
          {"clifford_count", t.clifford_count},
          {"toffoli_count", t.toffoli_count},
          {"t_count", t.t_count},
          {"t_count_standard", t.t_count_standard},
          {"rotation_count", t.rotation_count},
          {"depth", t.depth}};
}

/// {num_qubits, layout, ops, resource_tally}
inline nlohmann::ordered_json to_json(const Circuit& c) {
  nlohmann::ordered_json j;
  j["num_qubits"] = c.num_qubits();
  j["layout"] = layout_to_json(c.layout());
  auto ops = nlohmann::ordered_json::array();
  for (const auto& op : c.ops()) ops.push_back(to_json(op));
  j["ops"] = std::move(ops);
  j["resource_tally"] = tally_to_json(c.tally());
  return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c = j.contains("layout") && !j.at("layout").empty() ? Circuit(layout_from_json(j.at("layout")))
                                                               : Circuit(j.at("num_qubits").get<unsigned>());
  require(c.num_qubits() == j.at("num_qubits").get<unsigned>(), "layout_size",
          "layout does not match num_qubits");
  for (const auto& op : j.at("ops")) c.append(gate_from_json(op));
  return c;
}

}  // namespace fermiprep
