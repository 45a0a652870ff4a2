#include "regseed/regularize.hpp"

#include <unordered_map>

#include "regseed/errors.hpp"

namespace regseed {

namespace {

struct SigHash {
  std::size_t operator()(const Signature& s) const {
    std::size_t x = s.original * 0x9e3779b97f4a7c15ULL;
    for (ColorId c : s.adjacency) {
      x ^= c + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    }
    return x;
  }
};

void check_phi(const ColoredGraph& g, const PartitionwiseMap& phi) {
  if (phi.parts() != g.r)
    throw ValidationError("regularize: map covers " + std::to_string(phi.parts()) +
                          " parts for an r = " + std::to_string(g.r) + " graph");
  int m = 0;
  if (!phi.uniform_count(m))
    throw ValidationError("regularize: map must assign the same slot count to every part");
  for (int i = 0; i < g.r; ++i)
    for (int v : phi.targets[i])
      if (v < 0 || v >= g.part_sizes[i])
        throw ValidationError("regularize: map target outside part " + std::to_string(i));
}

}  // namespace

Signature signature_of(const ColoredGraph& g, int part, int v, const PartitionwiseMap& phi) {
  Signature sig;
  sig.original = g.vertex_color(part, v);
  for (int j = 0; j < g.r; ++j) {
    if (j == part) continue;
    for (int t : phi.targets[j]) sig.adjacency.push_back(g.edge_color(part, v, j, t));
  }
  return sig;
}

VertexPartition signature_partition(const ColoredGraph& g, const PartitionwiseMap& phi) {
  check_phi(g, phi);
  VertexPartition out;
  out.cls.resize(g.r);
  out.class_count.assign(g.r, 0);
  out.class_orig.resize(g.r);
  for (int i = 0; i < g.r; ++i) {
    out.cls[i].resize(g.part_sizes[i]);
    std::unordered_map<Signature, ColorId, SigHash> seen;
    seen.reserve(g.part_sizes[i] * 2);
    for (int v = 0; v < g.part_sizes[i]; ++v) {
      Signature sig = signature_of(g, i, v, phi);
      auto [it, fresh] = seen.emplace(std::move(sig), static_cast<ColorId>(seen.size()));
      if (fresh) out.class_orig[i].push_back(it->first.original);
      out.cls[i][v] = it->second;
    }
    out.class_count[i] = static_cast<int>(seen.size());
  }
  return out;
}

ColoredGraph regularize(const ColoredGraph& g, const PartitionwiseMap& phi,
                        std::vector<std::vector<Signature>>* palette_out) {
  check_phi(g, phi);
  ColoredGraph out = g;  // edge matrices and pair palettes carry over unchanged
  if (palette_out) palette_out->assign(g.r, {});
  int max_palette = 1;
  for (int i = 0; i < g.r; ++i) {
    std::unordered_map<Signature, ColorId, SigHash> seen;
    seen.reserve(g.part_sizes[i] * 2);
    std::vector<Signature> order;
    for (int v = 0; v < g.part_sizes[i]; ++v) {
      Signature sig = signature_of(g, i, v, phi);
      auto [it, fresh] = seen.emplace(sig, static_cast<ColorId>(seen.size()));
      if (fresh && palette_out) order.push_back(sig);
      out.vertex_colors[i][v] = it->second;
    }
    out.vertex_palette[i] = static_cast<int>(seen.size());
    max_palette = std::max(max_palette, out.vertex_palette[i]);
    if (palette_out) (*palette_out)[i] = std::move(order);
  }
  out.b1 = max_palette;
  return out;
}

BigInt palette_bound(int b1, int b2, int r, std::int64_t m) {
  BigInt bound = b1;
  BigInt factor = boost::multiprecision::pow(BigInt(b2), static_cast<unsigned>(r - 1));
  for (std::int64_t k = 0; k < m; ++k) bound *= factor;
  return bound;
}

}  // namespace regseed
