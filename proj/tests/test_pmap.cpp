#include <set>
#include <vector>

#include "doctest.h"
#include "regseed/errors.hpp"
#include "regseed/generators.hpp"
#include "regseed/pmap.hpp"
#include "regseed/regularize.hpp"
#include "regseed/rng.hpp"

using namespace regseed;

TEST_CASE("random_map_shape_and_determinism") {
  std::vector<int> sizes = {3, 5, 2};
  Rng a(42), b(42), c(43);
  PartitionwiseMap pa = random_partitionwise_map(sizes, 4, a);
  PartitionwiseMap pb = random_partitionwise_map(sizes, 4, b);
  PartitionwiseMap pc = random_partitionwise_map(sizes, 4, c);
  CHECK(pa.parts() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(pa.count(i) == 4);
    for (int t : pa.targets[i]) {
      CHECK(t >= 0);
      CHECK(t < sizes[i]);
    }
  }
  CHECK(pa.targets == pb.targets);
  CHECK(pa.targets != pc.targets);
  int m = 0;
  CHECK(pa.uniform_count(m));
  CHECK(m == 4);
}

TEST_CASE("nonuniform_counts") {
  Rng r(1);
  PartitionwiseMap p = random_partitionwise_map({3, 3}, std::vector<int>{2, 1}, r);
  CHECK(p.count(0) == 2);
  CHECK(p.count(1) == 1);
  int m = 0;
  CHECK_FALSE(p.uniform_count(m));
}

TEST_CASE("map_space_size_product") {
  CHECK(map_space_size({3, 4}, {2, 1}) == 36);
  CHECK(map_space_size({5, 5}, {0, 0}) == 1);
  CHECK(map_space_size({2, 2, 2}, {3, 3, 3}) == 512);
}

TEST_CASE("enumerator_covers_space_once") {
  MapEnumerator en({2, 3}, {1, 1}, 100);
  CHECK(en.total() == 6);
  std::set<std::vector<std::vector<int>>> seen;
  int steps = 0;
  while (en.next()) {
    seen.insert(en.current().targets);
    ++steps;
  }
  CHECK(steps == 6);
  CHECK(seen.size() == 6);
}

TEST_CASE("enumerator_odometer_order") {
  MapEnumerator en({2, 3}, {1, 1}, 100);
  std::vector<std::pair<int, int>> order;
  while (en.next())
    order.push_back({en.current().targets[0][0], en.current().targets[1][0]});
  std::vector<std::pair<int, int>> want = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}};
  CHECK(order == want);
}

TEST_CASE("enumerator_zero_slots") {
  MapEnumerator en({4, 4}, {2, 0}, 100);
  CHECK(en.total() == 16);
  int steps = 0;
  while (en.next()) {
    CHECK(en.current().targets[1].empty());
    ++steps;
  }
  CHECK(steps == 16);
}

TEST_CASE("enumerator_respects_work_cap") {
  CHECK_THROWS_AS(MapEnumerator({10, 10}, {4, 4}, 1000), WorkCapError);
}

TEST_CASE("compose_concatenates") {
  Rng r(9);
  PartitionwiseMap a = random_partitionwise_map({4, 4}, 2, r);
  PartitionwiseMap b = random_partitionwise_map({4, 4}, 3, r);
  PartitionwiseMap ab = compose_samples(a, b);
  for (int i = 0; i < 2; ++i) {
    REQUIRE(ab.count(i) == 5);
    for (int k = 0; k < 2; ++k) CHECK(ab.targets[i][k] == a.targets[i][k]);
    for (int k = 0; k < 3; ++k) CHECK(ab.targets[i][2 + k] == b.targets[i][k]);
  }
}

TEST_CASE("composed_classes_refine_both_arguments") {
  ColoredGraph g = generate(parse_generator_spec("uniform:2,2:5,4", 17));
  Rng r(31);
  for (int trial = 0; trial < 10; ++trial) {
    PartitionwiseMap a = random_partitionwise_map(g.part_sizes, 1, r);
    PartitionwiseMap b = random_partitionwise_map(g.part_sizes, 2, r);
    VertexPartition pa = signature_partition(g, a);
    VertexPartition pb = signature_partition(g, b);
    VertexPartition pc = signature_partition(g, compose_samples(a, b));
    for (int part = 0; part < g.r; ++part)
      for (int u = 0; u < g.part_sizes[part]; ++u)
        for (int v = u + 1; v < g.part_sizes[part]; ++v)
          if (pc.cls[part][u] == pc.cls[part][v]) {
            CHECK(pa.cls[part][u] == pa.cls[part][v]);
            CHECK(pb.cls[part][u] == pb.cls[part][v]);
          }
  }
}

TEST_CASE("rng_bounded_uniform_chi_square") {
  // df = 3, critical value at the 0.001 level
  Rng r(123);
  int counts[4] = {0, 0, 0, 0};
  const int N = 40000;
  for (int i = 0; i < N; ++i) ++counts[r.bounded(4)];
  double expect = N / 4.0;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 16.266);
}

TEST_CASE("rng_unit_range_and_fork") {
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng f1 = r.fork(1), f2 = r.fork(2), f1b = r.fork(1);
  std::uint64_t a = f1.next_u64();
  CHECK(a != f2.next_u64());
  CHECK(a == f1b.next_u64());
}

TEST_CASE("bounded_stays_in_range") {
  Rng r(5);
  for (std::uint32_t n : {1u, 2u, 7u, 1000u})
    for (int i = 0; i < 200; ++i) CHECK(r.bounded(n) < n);
}
