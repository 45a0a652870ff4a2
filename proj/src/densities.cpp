#include "regseed/densities.hpp"

#include <algorithm>

#include "regseed/errors.hpp"

namespace regseed {

namespace {

std::pair<int, int> parts_of(int r, int pi) {
  for (int i = 0; i < r; ++i) {
    int row = r - i - 1;
    if (pi < row) return {i, i + 1 + pi};
    pi -= row;
  }
  throw ValidationError("pair index out of range");
}

}  // namespace

double DensityTable::vertex_density(int part, ColorId c) const {
  return to_double(vertex_density_exact(part, c));
}

BigRat DensityTable::vertex_density_exact(int part, ColorId c) const {
  const auto& counts = vertex_count[part];
  BigInt hits = c < counts.size() ? counts[c] : 0;
  return BigRat(hits) / part_size[part];
}

std::int64_t DensityTable::frame_support(int pi, ColorId ci, ColorId cj) const {
  auto it = frames[pi].find(frame_key(ci, cj));
  return it == frames[pi].end() ? 0 : it->second.support;
}

BigRat DensityTable::density_exact(const TotalColor& tc) const {
  if (tc.is_vertex()) return vertex_density_exact(tc.i, tc.ci);
  int pi = tc.i * r - tc.i * (tc.i + 1) / 2 + (tc.j - tc.i - 1);
  auto it = frames[pi].find(frame_key(tc.ci, tc.cj));
  if (it == frames[pi].end()) return BigRat(0);
  const auto& counts = it->second.color_count;
  BigInt hits = tc.color < counts.size() ? counts[tc.color] : 0;
  return BigRat(hits) / it->second.support;
}

double DensityTable::density(const TotalColor& tc) const {
  return to_double(density_exact(tc));
}

std::int64_t DensityTable::tc_count(const TotalColor& tc) const {
  if (tc.is_vertex()) {
    const auto& counts = vertex_count[tc.i];
    return tc.ci < counts.size() ? counts[tc.ci] : 0;
  }
  int pi = tc.i * r - tc.i * (tc.i + 1) / 2 + (tc.j - tc.i - 1);
  auto it = frames[pi].find(frame_key(tc.ci, tc.cj));
  if (it == frames[pi].end()) return 0;
  const auto& counts = it->second.color_count;
  return tc.color < counts.size() ? counts[tc.color] : 0;
}

std::vector<TotalColor> DensityTable::occurring_edge_colors(int pi) const {
  auto [i, j] = parts_of(r, pi);
  std::vector<TotalColor> out;
  for (const auto& [key, fs] : frames[pi]) {
    ColorId ci = static_cast<ColorId>(key >> 32);
    ColorId cj = static_cast<ColorId>(key & 0xffffffffu);
    for (ColorId c = 0; c < fs.color_count.size(); ++c)
      if (fs.color_count[c] > 0) out.push_back(TotalColor::edge(i, j, c, ci, cj));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TotalColor> DensityTable::occurring_edge_colors() const {
  std::vector<TotalColor> out;
  for (int pi = 0; pi < static_cast<int>(frames.size()); ++pi) {
    auto one = occurring_edge_colors(pi);
    out.insert(out.end(), one.begin(), one.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

DensityTable density_table(const ColoredGraph& g) {
  require_valid(g);
  DensityTable t;
  t.r = g.r;
  t.part_size.assign(g.part_sizes.begin(), g.part_sizes.end());
  t.vertex_count.resize(g.r);
  for (int i = 0; i < g.r; ++i) {
    t.vertex_count[i].assign(g.vertex_palette[i], 0);
    for (ColorId c : g.vertex_colors[i]) ++t.vertex_count[i][c];
  }
  t.frames.resize(g.pair_count());
  for (int i = 0; i < g.r; ++i) {
    for (int j = i + 1; j < g.r; ++j) {
      int pi = g.pair_index(i, j);
      auto& frames_ij = t.frames[pi];
      for (int u = 0; u < g.part_sizes[i]; ++u) {
        ColorId ci = g.vertex_colors[i][u];
        for (int v = 0; v < g.part_sizes[j]; ++v) {
          ColorId cj = g.vertex_colors[j][v];
          auto& fs = frames_ij[DensityTable::frame_key(ci, cj)];
          if (fs.color_count.empty()) fs.color_count.assign(g.pair_palette[pi], 0);
          ++fs.support;
          ++fs.color_count[g.pair_matrix[pi][static_cast<std::size_t>(u) * g.part_sizes[j] + v]];
        }
      }
    }
  }
  return t;
}

}  // namespace regseed
