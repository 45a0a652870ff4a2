#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regseed/graph.hpp"

namespace regseed {

// Deterministic test-graph families.
//   monochromatic : every color 0, b = (1,1)
//   uniform_random: iid uniform vertex colors in [0,b1), edge colors in [0,b2)
//   half_graph    : r=2, parts [n,n], edge (i,j) is color 0 ("black") iff i<=j
//   planted_blocks: k hidden balanced classes per part (seeded shuffle),
//                   edge color (class_i + class_j) mod p with p = max(2,k),
//                   flipped to a uniformly random other color with rate noise
struct GeneratorSpec {
  enum class Kind { monochromatic, uniform_random, half_graph, planted_blocks };
  Kind kind = Kind::monochromatic;
  std::vector<int> sizes;
  int b1 = 1;
  int b2 = 1;
  int k = 2;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

ColoredGraph generate(const GeneratorSpec& spec);

// Spec strings accepted by the CLI:
//   mono:<sizes>                e.g.  mono:3,3        mono:2,2,2
//   uniform:<b1>,<b2>:<sizes>   e.g.  uniform:2,2:24,24
//   half:<n>                    e.g.  half:32
//   planted:<k>,<noise>:<sizes> e.g.  planted:2,0.05:12,12
GeneratorSpec parse_generator_spec(const std::string& text, std::uint64_t seed);

}  // namespace regseed
