#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace regseed {

// Colors are dense non-negative indices into a per-part or per-pair palette.
using ColorId = std::uint32_t;

// The total color of a vertex is its color; the total color of a pair edge is
// its edge color together with both endpoint vertex colors, endpoints ordered
// by ascending part index.  j == -1 marks a vertex total color (then `color`
// is the vertex color and ci/cj are unused and kept zero).
struct TotalColor {
  int i = 0;
  int j = -1;
  ColorId color = 0;
  ColorId ci = 0;
  ColorId cj = 0;

  static TotalColor vertex(int part, ColorId c) { return {part, -1, c, 0, 0}; }

  static TotalColor edge(int i, int j, ColorId edge_color, ColorId ci, ColorId cj) {
    if (i > j) {
      std::swap(i, j);
      std::swap(ci, cj);
    }
    return {i, j, edge_color, ci, cj};
  }

  bool is_vertex() const { return j < 0; }
  auto operator<=>(const TotalColor&) const = default;
};

std::string to_string(const TotalColor& tc);

// An r-partite graph with colored vertices and colored pair edges.  Every
// cross pair (i, j), i < j, carries a complete |Omega_i| x |Omega_j| color
// matrix in row-major order (rows indexed by part i).  b1/b2 bound the vertex
// and pair palette sizes.
struct ColoredGraph {
  int r = 0;
  std::vector<int> part_sizes;
  int b1 = 1;
  int b2 = 1;
  std::vector<int> vertex_palette;                 // per part, <= b1
  std::vector<std::vector<ColorId>> vertex_colors; // [part][vertex]
  std::vector<int> pair_palette;                   // per pair, <= b2
  std::vector<std::vector<ColorId>> pair_matrix;   // [pair][vi * |Omega_j| + vj]

  int pair_count() const { return r * (r - 1) / 2; }

  // Pairs are stored sorted by (i, j), i < j.
  int pair_index(int i, int j) const {
    return i * r - i * (i + 1) / 2 + (j - i - 1);
  }

  std::pair<int, int> pair_parts(int pi) const;

  ColorId vertex_color(int part, int v) const { return vertex_colors[part][v]; }

  ColorId edge_color(int i, int vi, int j, int vj) const {
    if (i > j) {
      std::swap(i, j);
      std::swap(vi, vj);
    }
    return pair_matrix[pair_index(i, j)][static_cast<std::size_t>(vi) * part_sizes[j] + vj];
  }

  TotalColor total_color_vertex(int part, int v) const {
    return TotalColor::vertex(part, vertex_color(part, v));
  }

  TotalColor total_color_edge(int i, int vi, int j, int vj) const {
    if (i > j) {
      std::swap(i, j);
      std::swap(vi, vj);
    }
    return TotalColor::edge(i, j, edge_color(i, vi, j, vj), vertex_color(i, vi),
                            vertex_color(j, vj));
  }

  std::int64_t pair_edge_count(int pi) const {
    auto [i, j] = pair_parts(pi);
    return static_cast<std::int64_t>(part_sizes[i]) * part_sizes[j];
  }

  int max_vertex_palette() const;
  int max_pair_palette() const;
};

struct Validation {
  bool ok = true;
  std::string message;
};

// Checks structural consistency: part count, palette bounds, matrix shapes,
// color ranges.  Reports the first violation with its location.
Validation validate_graph(const ColoredGraph& g);

// Throwing wrapper around validate_graph.
void require_valid(const ColoredGraph& g);

}  // namespace regseed
