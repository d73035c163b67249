// Copyright 2026 The nlshare Authors
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

#ifndef NLSHARE_HEATMAP_HPP
#define NLSHARE_HEATMAP_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "nlshare/experiments.hpp"

namespace nlshare {

struct HeatmapLabels {
  std::string x_axis;  // second sweep axis
  std::string y_axis;  // first sweep axis
  std::string title;
};

/// Discrete-colour cell grid of max_rounds, one rect per record, with a
/// legend listing each value present. Records must form a full grid in
/// (index1, index2); StructureError otherwise.
std::string render_heatmap(const std::vector<SweepRecord>& records,
                           const HeatmapLabels& labels, int round_cap);

void render_heatmap(const std::vector<SweepRecord>& records,
                    const HeatmapLabels& labels, int round_cap,
                    const std::filesystem::path& path);

}  // namespace nlshare

#endif  // NLSHARE_HEATMAP_HPP
