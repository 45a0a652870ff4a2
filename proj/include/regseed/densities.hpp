#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "regseed/bignum.hpp"
#include "regseed/graph.hpp"

namespace regseed {

// Exact occurrence counts for vertex colors and pair total colors.  Vertex
// densities are unconditional (class size / part size); edge densities are
// conditional on the frame, d(c; ci, cj) = #(edges with color c and that
// frame) / #(edges with that frame).  Frames with zero support have no
// entries: expectations run over edges that exist, not abstract colors.
class DensityTable {
 public:
  struct FrameStats {
    std::int64_t support = 0;
    std::vector<std::int64_t> color_count;  // indexed by edge color
  };

  int r = 0;
  std::vector<std::int64_t> part_size;
  std::vector<std::vector<std::int64_t>> vertex_count;  // [part][color]
  // per pair, keyed by (ci << 32) | cj for deterministic iteration order
  std::vector<std::map<std::uint64_t, FrameStats>> frames;

  static std::uint64_t frame_key(ColorId ci, ColorId cj) {
    return (static_cast<std::uint64_t>(ci) << 32) | cj;
  }

  double vertex_density(int part, ColorId c) const;
  BigRat vertex_density_exact(int part, ColorId c) const;

  std::int64_t frame_support(int pi, ColorId ci, ColorId cj) const;

  // d for a pair total color; 0 when the frame or the color is unsupported.
  double density(const TotalColor& tc) const;
  BigRat density_exact(const TotalColor& tc) const;

  std::int64_t tc_count(const TotalColor& tc) const;  // edges realizing tc

  // Occurring pair total colors, sorted.
  std::vector<TotalColor> occurring_edge_colors() const;
  std::vector<TotalColor> occurring_edge_colors(int pi) const;
};

DensityTable density_table(const ColoredGraph& g);

}  // namespace regseed
