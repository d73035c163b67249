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

#include "nlshare/heatmap.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "nlshare/errors.hpp"
#include "nlshare/output_table.hpp"

namespace nlshare {
namespace {

// Sequential palette, 0 rounds darkest. Values past the end reuse the last.
constexpr const char* kPalette[] = {
    "#2b2b3a", "#3b4cc0", "#5a8ee8", "#7fc8d8", "#9fdc9a",
    "#e8e07a", "#f4a65a", "#e0603e", "#b40426", "#7a0017",
};
constexpr int kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

const char* colour(int rounds) {
  return kPalette[std::clamp(rounds, 0, kPaletteSize - 1)];
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string render_heatmap(const std::vector<SweepRecord>& records,
                           const HeatmapLabels& labels, int round_cap) {
  if (records.empty()) throw StructureError("heatmap needs at least one cell");
  int rows = 0;
  int cols = 0;
  for (const auto& r : records) {
    rows = std::max(rows, r.index1 + 1);
    cols = std::max(cols, r.index2 + 1);
  }
  if (static_cast<std::size_t>(rows) * cols != records.size()) {
    throw StructureError("heatmap records do not form a rectangular grid");
  }
  std::vector<const SweepRecord*> grid(records.size(), nullptr);
  for (const auto& r : records) {
    if (r.index1 < 0 || r.index2 < 0) {
      throw StructureError("negative grid index");
    }
    auto& slot = grid[static_cast<std::size_t>(r.index1) * cols + r.index2];
    if (slot) throw StructureError("duplicate grid cell");
    slot = &r;
  }

  const int cell = std::clamp(720 / std::max(rows, cols), 2, 40);
  const int left = 90, top = 50, legend_w = 130;
  const int plot_w = cols * cell, plot_h = rows * cell;
  const int width = left + plot_w + 20 + legend_w;
  const int height = top + plot_h + 60;

  std::set<int> present;
  for (const auto& r : records) present.insert(r.max_rounds);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
      << ' ' << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  if (!labels.title.empty()) {
    svg << "<text x=\"" << left << "\" y=\"28\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << escape(labels.title) << "</text>\n";
  }

  // First axis runs bottom to top, second left to right.
  svg << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) {
      const SweepRecord& r = *grid[static_cast<std::size_t>(i) * cols + k];
      svg << "<rect x=\"" << left + k * cell << "\" y=\""
          << top + (rows - 1 - i) * cell << "\" width=\"" << cell
          << "\" height=\"" << cell << "\" fill=\"" << colour(r.max_rounds)
          << "\"/>\n";
    }
  }
  svg << "</g>\n";

  const SweepRecord& first = *grid.front();
  const SweepRecord& last = *grid.back();
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 40
      << "\" text-anchor=\"middle\">" << escape(labels.x_axis) << "</text>\n"
      << "<text x=\"20\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << top + plot_h / 2 << ")\">" << escape(labels.y_axis) << "</text>\n";
  if (cols > 1) {
    svg << "<text x=\"" << left << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"start\">" << fmt(first.value2) << "</text>\n"
        << "<text x=\"" << left + plot_w << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"end\">" << fmt(last.value2) << "</text>\n";
  }
  svg << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h
      << "\" text-anchor=\"end\">" << fmt(first.value1) << "</text>\n"
      << "<text x=\"" << left - 6 << "\" y=\"" << top + 12
      << "\" text-anchor=\"end\">" << fmt(last.value1) << "</text>\n"
      << "</g>\n";

  const int lx = left + plot_w + 20;
  svg << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<text x=\"" << lx << "\" y=\"" << top - 8 << "\">rounds (cap "
      << round_cap << ")</text>\n";
  int slot = 0;
  for (int value : present) {
    const int y = top + slot * 20;
    svg << "<g class=\"legend-entry\"><rect x=\"" << lx << "\" y=\"" << y
        << "\" width=\"14\" height=\"14\" fill=\"" << colour(value)
        << "\"/><text x=\"" << lx + 20 << "\" y=\"" << y + 12 << "\">" << value
        << "</text></g>\n";
    ++slot;
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void render_heatmap(const std::vector<SweepRecord>& records,
                    const HeatmapLabels& labels, int round_cap,
                    const std::filesystem::path& path) {
  write_text_file(path, render_heatmap(records, labels, round_cap));
}

}  // namespace nlshare
