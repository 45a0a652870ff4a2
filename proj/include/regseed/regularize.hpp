#pragma once

#include <vector>

#include "regseed/graph.hpp"
#include "regseed/pmap.hpp"

namespace regseed {

// The recoloring key of a vertex: its original color followed by its edge
// colors toward every sampled vertex in every other part, parts ascending,
// slots ascending.  Keeping the original color makes the new coloring a
// refinement of the old one.
struct Signature {
  ColorId original = 0;
  std::vector<ColorId> adjacency;

  bool operator==(const Signature&) const = default;
};

Signature signature_of(const ColoredGraph& g, int part, int v, const PartitionwiseMap& phi);

// Vertex classes of a graph under signature recoloring, without copying edge
// matrices; class ids are assigned per part in first-occurrence order
// (vertex 0 upward).
struct VertexPartition {
  std::vector<std::vector<ColorId>> cls;       // [part][vertex] -> class id
  std::vector<int> class_count;                // per part
  std::vector<std::vector<ColorId>> class_orig;  // [part][class] -> original color
};

VertexPartition signature_partition(const ColoredGraph& g, const PartitionwiseMap& phi);

// The regularized graph G/phi: vertices are recolored by signature, edge
// matrices are unchanged.  phi must carry the same slot count m for every
// part; the new vertex palette of part i has at most b1 * b2^((r-1)m)
// colors.  If palette_out is non-null it receives, per part, the signature
// behind each fresh color id (the audit sidecar).
ColoredGraph regularize(const ColoredGraph& g, const PartitionwiseMap& phi,
                        std::vector<std::vector<Signature>>* palette_out = nullptr);

// b1 * b2^((r-1)*m), the palette bound after regularizing with m samples.
BigInt palette_bound(int b1, int b2, int r, std::int64_t m);

}  // namespace regseed
