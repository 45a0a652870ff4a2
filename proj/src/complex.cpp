#include "regseed/complex.hpp"

#include <sstream>

#include "regseed/errors.hpp"

namespace regseed {

Complex Complex::invisible(int r, int h) {
  Complex s;
  s.r = r;
  s.h = h;
  s.vertex.assign(static_cast<std::size_t>(r) * h, std::nullopt);
  s.edge.assign(static_cast<std::size_t>(r) * (r - 1) / 2 * h * h, std::nullopt);
  return s;
}

int Complex::visible_vertex_count() const {
  int n = 0;
  for (const auto& c : vertex) n += c.has_value();
  return n;
}

int Complex::visible_edge_count() const {
  int n = 0;
  for (const auto& c : edge) n += c.has_value();
  return n;
}

std::vector<VertexSlot> visible_vertices(const Complex& s) {
  std::vector<VertexSlot> out;
  for (int i = 0; i < s.r; ++i)
    for (int a = 0; a < s.h; ++a)
      if (auto c = s.vertex_at(i, a)) out.push_back({i, a, *c});
  return out;
}

std::vector<EdgeSlot> visible_edges(const Complex& s) {
  std::vector<EdgeSlot> out;
  for (int i = 0; i < s.r; ++i)
    for (int j = i + 1; j < s.r; ++j)
      for (int a = 0; a < s.h; ++a)
        for (int b = 0; b < s.h; ++b)
          if (auto c = s.edge_at(i, j, a, b)) out.push_back({i, j, a, b, *c});
  return out;
}

Validation validate_complex(const Complex& s, const ColoredGraph& g) {
  std::ostringstream os;
  auto fail = [&]() -> Validation { return {false, os.str()}; };

  if (s.r != g.r) {
    os << "complex has r = " << s.r << " but graph has r = " << g.r;
    return fail();
  }
  if (s.h < 1) {
    os << "h = " << s.h << " but at least one slot per part is required";
    return fail();
  }
  if (static_cast<int>(s.vertex.size()) != s.r * s.h) {
    os << "vertex slot array has " << s.vertex.size() << " entries, expected " << s.r * s.h;
    return fail();
  }
  const int want_edges = s.r * (s.r - 1) / 2 * s.h * s.h;
  if (static_cast<int>(s.edge.size()) != want_edges) {
    os << "edge slot array has " << s.edge.size() << " entries, expected " << want_edges;
    return fail();
  }
  for (int i = 0; i < s.r; ++i)
    for (int a = 0; a < s.h; ++a) {
      auto c = s.vertex_at(i, a);
      if (c && *c >= static_cast<ColorId>(g.vertex_palette[i])) {
        os << "vertex slot (" << i << "," << a << "): color " << *c
           << " exceeds part palette " << g.vertex_palette[i];
        return fail();
      }
    }
  for (int i = 0; i < s.r; ++i)
    for (int j = i + 1; j < s.r; ++j)
      for (int a = 0; a < s.h; ++a)
        for (int b = 0; b < s.h; ++b) {
          auto c = s.edge_at(i, j, a, b);
          if (!c) continue;
          if (*c >= static_cast<ColorId>(g.pair_palette[g.pair_index(i, j)])) {
            os << "edge slot (" << i << "," << j << ")[" << a << "," << b << "]: color " << *c
               << " exceeds pair palette " << g.pair_palette[g.pair_index(i, j)];
            return fail();
          }
          if (!s.vertex_at(i, a) || !s.vertex_at(j, b)) {
            os << "edge slot (" << i << "," << j << ")[" << a << "," << b
               << "] is visible but an endpoint is invisible";
            return fail();
          }
        }
  return {true, ""};
}

void require_valid(const Complex& s, const ColoredGraph& g) {
  Validation v = validate_complex(s, g);
  if (!v.ok) throw ValidationError("invalid complex: " + v.message);
}

Complex single_edge_complex(int r, int h, const TotalColor& tc) {
  if (tc.is_vertex()) throw ValidationError("single_edge_complex: need a pair total color");
  Complex s = Complex::invisible(r, h);
  s.vertex[s.vslot(tc.i, 0)] = tc.ci;
  s.vertex[s.vslot(tc.j, 0)] = tc.cj;
  s.edge[s.eslot(tc.i, tc.j, 0, 0)] = tc.color;
  return s;
}

Complex random_visible_complex(const ColoredGraph& g, int h, Rng& rng) {
  // Witness vertices, parts ascending then slots ascending.
  std::vector<std::vector<int>> w(g.r);
  for (int i = 0; i < g.r; ++i) {
    w[i].resize(h);
    for (int a = 0; a < h; ++a)
      w[i][a] = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(g.part_sizes[i])));
  }
  Complex s = Complex::invisible(g.r, h);
  for (int i = 0; i < g.r; ++i)
    for (int a = 0; a < h; ++a) s.vertex[s.vslot(i, a)] = g.vertex_color(i, w[i][a]);
  for (int i = 0; i < g.r; ++i)
    for (int j = i + 1; j < g.r; ++j)
      for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
          s.edge[s.eslot(i, j, a, b)] = g.edge_color(i, w[i][a], j, w[j][b]);
  return s;
}

}  // namespace regseed
