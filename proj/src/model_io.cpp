// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simoracle/model_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "simoracle/error.hpp"

namespace simoracle {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DiffusionModel from_graph(ModelKind kind, Graph graph, std::size_t b) {
  switch (kind) {
    case ModelKind::kIC:
      return DiffusionModel::independent_cascade(std::move(graph));
    case ModelKind::kLT:
      return DiffusionModel::linear_threshold(std::move(graph));
    case ModelKind::kBDep:
      return DiffusionModel::b_dependence(std::move(graph), b);
    case ModelKind::kMixture:
      break;
  }
  throw InvalidInput("mixture needs components");
}

DiffusionModel load_any(const fs::path& path, int depth) {
  if (depth > 2) throw InvalidInput("model files nest too deeply");
  const std::string text = slurp(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::istringstream in(text);
    return DiffusionModel::independent_cascade(read_edge_list(in));
  }
  const fs::path dir = path.parent_path();
  try {
    const auto doc = nlohmann::json::parse(text);
    const ModelKind kind = parse_model_kind(doc.at("kind").get<std::string>());
    if (kind != ModelKind::kMixture) {
      const std::size_t b = doc.value("b", std::size_t{1});
      if (kind == ModelKind::kBDep && !doc.contains("b")) {
        throw InvalidInput("bdep model needs b");
      }
      return from_graph(
          kind,
          read_edge_list_file(
              (dir / doc.at("graph_path").get<std::string>()).string()),
          b);
    }
    std::vector<std::pair<DiffusionModel, double>> parts;
    for (const auto& c : doc.at("components")) {
      parts.emplace_back(
          load_any(dir / c.at("path").get<std::string>(), depth + 1),
          c.at("weight").get<double>());
    }
    return DiffusionModel::mixture(std::move(parts));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("bad model file '" + path.string() + "': " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << text;
}

void save_single(const fs::path& path, const DiffusionModel& model) {
  const fs::path edges = path.string() + ".edges";
  ordered_json doc;
  doc["kind"] = to_string(model.kind());
  doc["graph_path"] = edges.filename().string();
  if (model.kind() == ModelKind::kBDep) doc["b"] = model.b();
  write_text(path, doc.dump(2) + "\n");
  write_edge_list_file(edges.string(), model.graph());
}

}  // namespace

DiffusionModel load_model(const std::string& path) { return load_any(path, 0); }

void save_model(const std::string& path, const DiffusionModel& model) {
  if (model.kind() != ModelKind::kMixture) {
    save_single(path, model);
    return;
  }
  ordered_json doc;
  doc["kind"] = to_string(model.kind());
  auto& comps = doc["components"] = ordered_json::array();
  for (std::size_t i = 0; i < model.components().size(); ++i) {
    const auto& c = model.components()[i];
    const fs::path sub = path + ".c" + std::to_string(i);
    save_single(sub, *c.model);
    ordered_json entry;
    entry["path"] = sub.filename().string();
    entry["weight"] = c.weight;
    comps.push_back(std::move(entry));
  }
  write_text(path, doc.dump(2) + "\n");
}

}  // namespace simoracle
