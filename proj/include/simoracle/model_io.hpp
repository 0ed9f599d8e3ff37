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

#ifndef SIMORACLE_MODEL_IO_HPP_
#define SIMORACLE_MODEL_IO_HPP_

// Model files are JSON documents:
//
//   {"kind": "ic" | "lt" | "bdep", "graph_path": "x.edges", "b": 3}
//   {"kind": "mixture", "components": [{"path": "...", "weight": 0.5}, ...]}
//
// Paths are relative to the model file. A component path names either
// another model file or a bare edge list, which is read as IC. For LT models
// the edge probability column holds the weight b_uv.

#include <string>

#include "simoracle/model.hpp"

namespace simoracle {

DiffusionModel load_model(const std::string& path);

// Writes `path` and its edge lists next to it (`path`.edges, or
// `path`.c<i> and `path`.c<i>.edges per mixture component). Output is a
// pure function of the model.
void save_model(const std::string& path, const DiffusionModel& model);

}  // namespace simoracle

#endif  // SIMORACLE_MODEL_IO_HPP_
