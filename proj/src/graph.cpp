#include "regseed/graph.hpp"

#include <sstream>

#include "regseed/errors.hpp"

namespace regseed {

std::string to_string(const TotalColor& tc) {
  std::ostringstream os;
  if (tc.is_vertex()) {
    os << "v[" << tc.i << "]c" << tc.color;
  } else {
    os << "e[" << tc.i << "," << tc.j << "]c" << tc.color << "|f(" << tc.ci << "," << tc.cj
       << ")";
  }
  return os.str();
}

std::pair<int, int> ColoredGraph::pair_parts(int pi) const {
  for (int i = 0; i < r - 1; ++i) {
    int row = r - 1 - i;
    if (pi < row) return {i, i + 1 + pi};
    pi -= row;
  }
  return {-1, -1};
}

int ColoredGraph::max_vertex_palette() const {
  int m = 0;
  for (int p : vertex_palette) m = std::max(m, p);
  return m;
}

int ColoredGraph::max_pair_palette() const {
  int m = 0;
  for (int p : pair_palette) m = std::max(m, p);
  return m;
}

Validation validate_graph(const ColoredGraph& g) {
  std::ostringstream os;
  auto fail = [&]() -> Validation { return {false, os.str()}; };

  if (g.r < 2) {
    os << "r = " << g.r << " but at least 2 parts are required";
    return fail();
  }
  if (static_cast<int>(g.part_sizes.size()) != g.r) {
    os << "part_sizes has " << g.part_sizes.size() << " entries for r = " << g.r;
    return fail();
  }
  for (int i = 0; i < g.r; ++i)
    if (g.part_sizes[i] < 1) {
      os << "part " << i << " is empty";
      return fail();
    }
  if (g.b1 < 1 || g.b2 < 1) {
    os << "palette bounds must be positive, got b = (" << g.b1 << ", " << g.b2 << ")";
    return fail();
  }
  if (static_cast<int>(g.vertex_palette.size()) != g.r ||
      static_cast<int>(g.vertex_colors.size()) != g.r) {
    os << "vertex palette/color arrays do not have r = " << g.r << " entries";
    return fail();
  }
  for (int i = 0; i < g.r; ++i) {
    if (g.vertex_palette[i] < 1 || g.vertex_palette[i] > g.b1) {
      os << "part " << i << ": vertex palette " << g.vertex_palette[i] << " outside [1, b1 = "
         << g.b1 << "]";
      return fail();
    }
    if (static_cast<int>(g.vertex_colors[i].size()) != g.part_sizes[i]) {
      os << "part " << i << ": " << g.vertex_colors[i].size() << " vertex colors for "
         << g.part_sizes[i] << " vertices";
      return fail();
    }
    for (int v = 0; v < g.part_sizes[i]; ++v)
      if (g.vertex_colors[i][v] >= static_cast<ColorId>(g.vertex_palette[i])) {
        os << "part " << i << " vertex " << v << ": color " << g.vertex_colors[i][v]
           << " exceeds palette " << g.vertex_palette[i];
        return fail();
      }
  }
  const int pc = g.pair_count();
  if (static_cast<int>(g.pair_palette.size()) != pc ||
      static_cast<int>(g.pair_matrix.size()) != pc) {
    os << "expected " << pc << " pair entries, got " << g.pair_palette.size() << " palettes and "
       << g.pair_matrix.size() << " matrices (missing pair?)";
    return fail();
  }
  for (int i = 0; i < g.r; ++i)
    for (int j = i + 1; j < g.r; ++j) {
      int pi = g.pair_index(i, j);
      if (g.pair_palette[pi] < 1 || g.pair_palette[pi] > g.b2) {
        os << "pair (" << i << "," << j << "): palette " << g.pair_palette[pi]
           << " outside [1, b2 = " << g.b2 << "]";
        return fail();
      }
      std::size_t want = static_cast<std::size_t>(g.part_sizes[i]) * g.part_sizes[j];
      if (g.pair_matrix[pi].size() != want) {
        os << "pair (" << i << "," << j << "): matrix has " << g.pair_matrix[pi].size()
           << " entries, expected " << want;
        return fail();
      }
      for (std::size_t k = 0; k < want; ++k)
        if (g.pair_matrix[pi][k] >= static_cast<ColorId>(g.pair_palette[pi])) {
          os << "pair (" << i << "," << j << "): entry " << k << " has color "
             << g.pair_matrix[pi][k] << " exceeding palette " << g.pair_palette[pi];
          return fail();
        }
    }
  return {true, ""};
}

void require_valid(const ColoredGraph& g) {
  Validation v = validate_graph(g);
  if (!v.ok) throw ValidationError("invalid graph: " + v.message);
}

}  // namespace regseed
