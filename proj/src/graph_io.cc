// Copyright 2026 The soapcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "soapcert/errors.h"
#include "soapcert/graph.h"

namespace soapcert {
namespace {

using nlohmann::json;

std::string IdString(const json& id, std::string_view what) {
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  throw ValidationError(fmt::format("{}: id must be a string or integer", what));
}

Vec CoordsFrom(const json& arr, std::string_view what) {
  if (!arr.is_array() || arr.empty()) {
    throw ValidationError(fmt::format("{}: coordinates must be an array", what));
  }
  if (arr.size() > static_cast<std::size_t>(kMaxEmbeddingDim)) {
    throw ValidationError(fmt::format("{}: too many coordinates", what));
  }
  Vec v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ValidationError(fmt::format("{}: non-numeric coordinate", what));
    }
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

const json& Field(const json& obj, const char* key, std::string_view what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(fmt::format("{}: missing field '{}'", what, key));
  }
  return obj.at(key);
}

SpaceForm SpaceFrom(const json& doc) {
  const json& sp = Field(doc, "space", "document");
  const json& model = Field(sp, "model", "space");
  const json& dim = Field(sp, "dim", "space");
  if (!model.is_string() || !dim.is_number_integer()) {
    throw ValidationError("space: 'model' must be a string, 'dim' an integer");
  }
  const std::string name = model.get<std::string>();
  const int n = dim.get<int>();
  double curv = 0.0;
  if (sp.contains("curv")) {
    if (!sp["curv"].is_number()) {
      throw ValidationError("space: 'curv' must be a number");
    }
    curv = sp["curv"].get<double>();
  }
  if (name == "flat") return SpaceForm::Flat(n);
  if (name == "hyperbolic") return SpaceForm::Hyperbolic(n, curv);
  if (name == "spherical") return SpaceForm::Spherical(n, curv);
  throw ValidationError(fmt::format("space: unknown model '{}'", name));
}

}  // namespace

EmbeddedGraph LoadGraph(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("malformed graph document: {}", e.what()));
  }
  if (!doc.is_object()) throw ValidationError("graph document must be an object");

  const SpaceForm space = SpaceFrom(doc);
  double tolerance = kDefaultManifoldTolerance;
  if (doc.contains("tolerance")) {
    if (!doc["tolerance"].is_number()) {
      throw ValidationError("'tolerance' must be a number");
    }
    tolerance = doc["tolerance"].get<double>();
  }

  const json& vs = Field(doc, "vertices", "document");
  const json& es = Field(doc, "edges", "document");
  if (!vs.is_array() || !es.is_array()) {
    throw ValidationError("'vertices' and 'edges' must be arrays");
  }
  std::vector<VertexSpec> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string what = fmt::format("vertex #{}", i);
    vertices.push_back({IdString(Field(vs[i], "id", what), what),
                        CoordsFrom(Field(vs[i], "coords", what), what)});
  }
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string what = fmt::format("edge #{}", i);
    EdgeSpec spec;
    spec.id = IdString(Field(es[i], "id", what), what);
    const json& ends = Field(es[i], "endpoints", what);
    if (!ends.is_array() || ends.size() != 2) {
      throw ValidationError(
          fmt::format("edge '{}': 'endpoints' must hold two ids", spec.id));
    }
    spec.from = IdString(ends[0], what);
    spec.to = IdString(ends[1], what);
    const json& samples = Field(es[i], "samples", what);
    if (!samples.is_array()) {
      throw ValidationError(
          fmt::format("edge '{}': 'samples' must be an array", spec.id));
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
      spec.samples.push_back(CoordsFrom(
          samples[k], fmt::format("edge '{}' sample {}", spec.id, k)));
    }
    edges.push_back(std::move(spec));
  }
  return EmbeddedGraph::Create(space, std::move(vertices), std::move(edges),
                               tolerance);
}

EmbeddedGraph LoadGraphFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError(fmt::format("cannot read '{}'", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return LoadGraph(buf.str());
}

}  // namespace soapcert
