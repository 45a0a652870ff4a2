#pragma once

#include <optional>
#include <vector>

#include "regseed/graph.hpp"
#include "regseed/rng.hpp"

namespace regseed {

// A template with h vertex slots per part.  Vertices and cross-part slot
// pairs carry either a visible color or nothing (invisible).  Invisibility is
// downward closed: an invisible vertex slot forces all incident edge slots to
// be invisible, so a visible edge always has visible endpoints.
struct Complex {
  int r = 0;
  int h = 0;
  std::vector<std::optional<ColorId>> vertex;  // r*h entries, part-major
  std::vector<std::optional<ColorId>> edge;    // pair_count*h*h entries

  static Complex invisible(int r, int h);

  int vslot(int part, int slot) const { return part * h + slot; }
  int pair_index(int i, int j) const { return i * r - i * (i + 1) / 2 + (j - i - 1); }
  // Edge slot between slot a of part i and slot b of part j (i < j).
  int eslot(int i, int j, int a, int b) const {
    return pair_index(i, j) * h * h + a * h + b;
  }

  std::optional<ColorId> vertex_at(int part, int slot) const { return vertex[vslot(part, slot)]; }
  std::optional<ColorId> edge_at(int i, int j, int a, int b) const {
    return edge[eslot(i, j, a, b)];
  }

  int visible_vertex_count() const;
  int visible_edge_count() const;
};

// One visible edge slot of a complex, with its pair and endpoint slots.
struct EdgeSlot {
  int i, j;  // parts, i < j
  int a, b;  // slots within part i and part j
  ColorId color;
};

struct VertexSlot {
  int part, slot;
  ColorId color;
};

std::vector<VertexSlot> visible_vertices(const Complex& s);
std::vector<EdgeSlot> visible_edges(const Complex& s);

// Structural check against a graph: matching r, colors within palettes,
// downward-closed invisibility.  Reports the first violation.
Validation validate_complex(const Complex& s, const ColoredGraph& g);

void require_valid(const Complex& s, const ColoredGraph& g);

// A template whose only visible content is one edge slot (slot 0 of part i /
// slot 0 of part j) with the given total color; its endpoints are visible
// with the total color's endpoint colors, everything else invisible.
Complex single_edge_complex(int r, int h, const TotalColor& tc);

// A fully visible complex whose colors are read off a uniformly random
// witness map, so its embedding probability is positive.
Complex random_visible_complex(const ColoredGraph& g, int h, Rng& rng);

}  // namespace regseed
