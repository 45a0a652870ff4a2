#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "regseed/densities.hpp"
#include "regseed/errors.hpp"
#include "regseed/generators.hpp"
#include "regseed/graph.hpp"
#include "regseed/graph_io.hpp"

using namespace regseed;

namespace {

// 2x2 bipartite graph, one white edge in the corner, three black.
ColoredGraph corner_graph() {
  ColoredGraph g;
  g.r = 2;
  g.part_sizes = {2, 2};
  g.b1 = 1;
  g.b2 = 2;
  g.vertex_palette = {1, 1};
  g.vertex_colors = {{0, 0}, {0, 0}};
  g.pair_palette = {2};
  g.pair_matrix = {{0, 0, 0, 1}};
  return g;
}

}  // namespace

TEST_CASE("pair_indexing") {
  ColoredGraph g;
  g.r = 3;
  CHECK(g.pair_index(0, 1) == 0);
  CHECK(g.pair_index(0, 2) == 1);
  CHECK(g.pair_index(1, 2) == 2);
  CHECK(g.pair_count() == 3);
  CHECK(g.pair_parts(0) == std::pair<int, int>(0, 1));
  CHECK(g.pair_parts(1) == std::pair<int, int>(0, 2));
  CHECK(g.pair_parts(2) == std::pair<int, int>(1, 2));
}

TEST_CASE("edge_color_symmetric_access") {
  ColoredGraph g = corner_graph();
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v) CHECK(g.edge_color(0, u, 1, v) == g.edge_color(1, v, 0, u));
  CHECK(g.edge_color(0, 1, 1, 1) == 1);
  CHECK(g.edge_color(0, 0, 1, 1) == 0);
}

TEST_CASE("total_color_orientation") {
  TotalColor a = TotalColor::edge(1, 0, 5, 7, 9);
  CHECK(a.i == 0);
  CHECK(a.j == 1);
  CHECK(a.ci == 9);
  CHECK(a.cj == 7);
  CHECK_FALSE(a.is_vertex());
  CHECK(TotalColor::vertex(2, 3).is_vertex());
}

TEST_CASE("validate_graph_catches_shape_errors") {
  ColoredGraph g = corner_graph();
  CHECK(validate_graph(g).ok);

  ColoredGraph bad = g;
  bad.pair_matrix[0].push_back(0);
  CHECK_FALSE(validate_graph(bad).ok);

  bad = g;
  bad.pair_matrix[0][2] = 2;  // outside pair palette
  CHECK_FALSE(validate_graph(bad).ok);

  bad = g;
  bad.vertex_colors[0][1] = 1;  // outside vertex palette
  CHECK_FALSE(validate_graph(bad).ok);

  bad = g;
  bad.pair_palette = {3};  // exceeds b2
  CHECK_FALSE(validate_graph(bad).ok);

  bad = g;
  bad.vertex_colors.pop_back();
  CHECK_FALSE(validate_graph(bad).ok);

  CHECK_THROWS_AS(require_valid(bad), ValidationError);
}

TEST_CASE("density_table_corner_graph") {
  DensityTable t = density_table(corner_graph());
  CHECK(t.vertex_density(0, 0) == 1.0);
  CHECK(t.vertex_density_exact(1, 0) == BigRat(1));

  TotalColor black = TotalColor::edge(0, 1, 0, 0, 0);
  TotalColor white = TotalColor::edge(0, 1, 1, 0, 0);
  CHECK(t.density_exact(black) == BigRat(3, 4));
  CHECK(t.density(black) == 0.75);
  CHECK(t.density_exact(white) == BigRat(1, 4));
  CHECK(t.tc_count(black) == 3);
  CHECK(t.frame_support(0, 0, 0) == 4);

  auto occ = t.occurring_edge_colors();
  REQUIRE(occ.size() == 2);
  CHECK(occ[0] == black);
  CHECK(occ[1] == white);
}

TEST_CASE("density_conditions_on_frame") {
  ColoredGraph g;
  g.r = 2;
  g.part_sizes = {2, 2};
  g.b1 = 2;
  g.b2 = 2;
  g.vertex_palette = {2, 2};
  g.vertex_colors = {{0, 1}, {0, 1}};
  g.pair_palette = {2};
  g.pair_matrix = {{0, 1, 1, 0}};
  DensityTable t = density_table(g);

  // each frame holds exactly one edge, so densities are 0/1
  CHECK(t.density_exact(TotalColor::edge(0, 1, 0, 0, 0)) == BigRat(1));
  CHECK(t.density_exact(TotalColor::edge(0, 1, 1, 0, 0)) == BigRat(0));
  CHECK(t.density_exact(TotalColor::edge(0, 1, 1, 0, 1)) == BigRat(1));
  CHECK(t.frame_support(0, 0, 1) == 1);
  CHECK(t.vertex_density(0, 1) == 0.5);

  // unsupported frame: no entries at all
  ColoredGraph g2 = g;
  g2.vertex_colors = {{0, 0}, {0, 1}};
  DensityTable t2 = density_table(g2);
  CHECK(t2.frame_support(0, 1, 0) == 0);
  CHECK(t2.density(TotalColor::edge(0, 1, 0, 1, 0)) == 0.0);
}

TEST_CASE("json_round_trip_is_byte_stable") {
  GeneratorSpec spec = parse_generator_spec("uniform:2,3:3,4,2", 99);
  ColoredGraph g = generate(spec);
  std::string once = write_graph_json(g);
  ColoredGraph back = read_graph_json(once);
  CHECK(write_graph_json(back) == once);
  CHECK(back.pair_matrix == g.pair_matrix);
  CHECK(back.vertex_colors == g.vertex_colors);
}

TEST_CASE("json_reader_rejects_malformed") {
  std::string good = write_graph_json(corner_graph());
  CHECK_THROWS_AS(read_graph_json("{"), ValidationError);
  CHECK_THROWS_AS(read_graph_json("[]"), ValidationError);

  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    return s;
  };
  // unknown field
  CHECK_THROWS_AS(read_graph_json(mutate("\"parts\"", "\"sizes\"")), ValidationError);
  // color outside palette
  CHECK_THROWS_AS(read_graph_json(mutate("\"palette\": 2", "\"palette\": 1")),
                  ValidationError);
  // missing pair
  CHECK_THROWS_AS(read_graph_json(mutate("\"r\": 2", "\"r\": 3")), ValidationError);
}

TEST_CASE("json_coarsens_vertex_palette_to_b1") {
  ColoredGraph g = corner_graph();
  g.b1 = 2;
  g.vertex_palette = {1, 2};
  g.vertex_colors = {{0, 0}, {0, 1}};
  ColoredGraph back = read_graph_json(write_graph_json(g));
  CHECK(back.vertex_palette == std::vector<int>{2, 2});
  CHECK(back.vertex_colors == g.vertex_colors);
}

TEST_CASE("generator_mono") {
  ColoredGraph g = generate(parse_generator_spec("mono:3,5", 0));
  CHECK(g.r == 2);
  CHECK(g.part_sizes == std::vector<int>{3, 5});
  CHECK(g.b1 == 1);
  CHECK(g.b2 == 1);
  for (ColorId c : g.pair_matrix[0]) CHECK(c == 0);
  CHECK(validate_graph(g).ok);
}

TEST_CASE("generator_half_structure") {
  ColoredGraph g = generate(parse_generator_spec("half:5", 3));
  REQUIRE(g.part_sizes == std::vector<int>{5, 5});
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v)
      CHECK(g.edge_color(0, u, 1, v) == (u <= v ? 0u : 1u));
}

TEST_CASE("generator_uniform_deterministic") {
  ColoredGraph a = generate(parse_generator_spec("uniform:2,3:4,4", 7));
  ColoredGraph b = generate(parse_generator_spec("uniform:2,3:4,4", 7));
  ColoredGraph c = generate(parse_generator_spec("uniform:2,3:4,4", 8));
  CHECK(a.pair_matrix == b.pair_matrix);
  CHECK(a.vertex_colors == b.vertex_colors);
  CHECK(a.pair_matrix != c.pair_matrix);
  CHECK(validate_graph(a).ok);
}

TEST_CASE("generator_planted_noiseless_blocks") {
  ColoredGraph g = generate(parse_generator_spec("planted:2,0:8,8", 5));
  CHECK(g.b2 == 2);
  CHECK(validate_graph(g).ok);
  // noiseless: color(u,v) = (cls(u)+cls(v)) mod 2, so any two vertices with
  // identical rows are in the same class and rows take exactly two patterns
  std::set<std::vector<ColorId>> rows;
  for (int u = 0; u < 8; ++u) {
    std::vector<ColorId> row(8);
    for (int v = 0; v < 8; ++v) row[v] = g.edge_color(0, u, 1, v);
    rows.insert(row);
  }
  CHECK(rows.size() == 2);
}

TEST_CASE("generator_spec_rejects") {
  CHECK_THROWS_AS(parse_generator_spec("bogus:3", 0), ValidationError);
  CHECK_THROWS_AS(parse_generator_spec("mono:", 0), ValidationError);
  CHECK_THROWS_AS(parse_generator_spec("uniform:2:4,4", 0), ValidationError);
  CHECK_THROWS_AS(parse_generator_spec("half:0", 0), ValidationError);
  CHECK_THROWS_AS(parse_generator_spec("planted:1,2:4,4", 0), ValidationError);
  CHECK_THROWS_AS(parse_generator_spec("mono:3,-3", 0), ValidationError);
}
