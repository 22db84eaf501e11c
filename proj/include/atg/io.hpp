// Copyright 2026 The atgsim authors
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

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "atg/atg_graph.hpp"
#include "atg/css_code.hpp"
#include "atg/decoder.hpp"
#include "atg/stabilizers.hpp"

namespace atg {

using json = nlohmann::json;

namespace detail {

inline BitMatrix matrix_from_json(const json& rows, const std::string& field) {
  if (!rows.is_array() || rows.empty())
    throw ValidationError("field '" + field + "' must be a non-empty array of rows");
  std::vector<std::vector<int>> bits;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array())
      throw ValidationError("field '" + field + "' row " + std::to_string(r) +
                            " is not an array");
    bits.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number_integer() || (row[c] != 0 && row[c] != 1))
        throw ValidationError("field '" + field + "' row " + std::to_string(r) +
                              " col " + std::to_string(c) + " must be 0 or 1");
      bits.back().push_back(row[c].get<int>());
    }
    if (bits.back().size() != bits.front().size())
      throw ValidationError("field '" + field + "' row " + std::to_string(r) +
                            " has inconsistent length");
  }
  return BitMatrix::from_dense(bits);
}

}  // namespace detail

/// Loads a code file: { "name": str, "hx": [[0|1,...],...], "hz": [...] }.
/// Row-major explicit bits; the only ingestion format. Computes the exact
/// distance for small codes (n <= 16) so reports can include it.
inline CssCode parse_code_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open code file: " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError(path + ": top level must be an object");
  if (!j.contains("hx") || !j.contains("hz"))
    throw ValidationError(path + ": missing required field 'hx' or 'hz'");
  BitMatrix hx = detail::matrix_from_json(j["hx"], "hx");
  BitMatrix hz = detail::matrix_from_json(j["hz"], "hz");
  if (hx.cols() != hz.cols())
    throw ValidationError(path + ": hx has " + std::to_string(hx.cols()) +
                          " columns but hz has " + std::to_string(hz.cols()));
  std::string name = j.value("name", std::string("code"));
  CssCode code = validate_css(std::move(hx), std::move(hz), std::move(name));
  if (code.n <= 16 && code.k > 0) code.d = distance_bruteforce(code, 16);
  return code;
}

inline json matrix_to_json(const BitMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json code_to_json(const CssCode& code) {
  return json{{"name", code.name}, {"hx", matrix_to_json(code.hx)},
              {"hz", matrix_to_json(code.hz)}};
}

inline json vertex_to_json(const VertexId& v) {
  return json{{"kind", to_string(v.kind)}, {"index", v.index}, {"layer", v.layer}};
}

inline json graph_to_json(const AtgGraph& g) {
  json vertices = json::array();
  for (const auto& v : g.vertices) vertices.push_back(vertex_to_json(v));
  json edges = json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
  const MeasurementPattern pat = bell_pattern(g);
  json bulk = json::array(), boundary = json::array();
  for (int v = 0; v < g.num_vertices(); ++v)
    (pat.is_measured[v] ? bulk : boundary).push_back(v);
  return json{{"T", g.T},
              {"n_vertices", g.num_vertices()},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)},
              {"bulk", std::move(bulk)},
              {"boundary", std::move(boundary)}};
}

inline json element_to_json(const AtgGraph& g, const StabilizerElement& e) {
  json out{{"kind", to_string(e.kind)}, {"index", e.index}, {"layer", e.layer}};
  if (e.surface >= 0) out["surface"] = e.surface;
  out["generators"] = e.generators;
  json xs = json::array(), zs = json::array();
  for (std::size_t v : e.x_support.ones()) xs.push_back(vertex_to_json(g.vertices[v]));
  for (std::size_t v : e.z_support.ones()) zs.push_back(vertex_to_json(g.vertices[v]));
  out["x_support"] = std::move(xs);
  out["z_support"] = std::move(zs);
  out["verified"] = verify_factorization(g, e).ok;
  return out;
}

inline json stabilizers_to_json(const AtgGraph& g, const StabilizerSet& set) {
  json s0 = json::array(), s1 = json::array();
  for (const auto& e : set.s0_raw) s0.push_back(element_to_json(g, e));
  for (const auto& e : set.s1_raw) s1.push_back(element_to_json(g, e));
  return json{{"s0", std::move(s0)}, {"s1", std::move(s1)},
              {"unmeasured_layers", set.pattern.unmeasured_layers}};
}

inline json cluster_report_to_json(const ClusterReport& rep) {
  json comps = json::array();
  for (const auto& c : rep.components)
    comps.push_back(json{{"size", c.size},
                         {"true_weight", c.true_weight},
                         {"inferred_weight", c.inferred_weight},
                         {"touches", c.touches}});
  return json{{"components", std::move(comps)},
              {"cc_ok", rep.cc_ok},
              {"max_size", rep.max_size}};
}

inline json trial_to_json(const TrialOutcome& o) {
  json zz = json::array();
  for (const auto& pair : o.logical_zz_flags) {
    json flags = json::array();
    for (auto f : pair) flags.push_back(static_cast<int>(f));
    zz.push_back(std::move(flags));
  }
  json xf = json::array();
  for (auto f : o.logical_x_flags) xf.push_back(static_cast<int>(f));
  return json{{"success", o.success},
              {"cc_x_ok", o.cc_x_ok},
              {"cc_z_ok", o.cc_z_ok},
              {"cluster_weight_x_ok", o.cluster_weight_x_ok},
              {"cluster_weight_z_ok", o.cluster_weight_z_ok},
              {"eta_weight", o.eta_weight},
              {"beta_weight", o.beta_weight},
              {"residual_weight", o.residual_weight},
              {"decode_optimal", o.decode_optimal},
              {"logical_x_flags", std::move(xf)},
              {"logical_zz_flags", std::move(zz)},
              {"clusters_x", cluster_report_to_json(o.x_clusters)},
              {"clusters_z", cluster_report_to_json(o.z_clusters)}};
}

}  // namespace atg
