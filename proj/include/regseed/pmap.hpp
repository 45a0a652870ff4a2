#pragma once

#include <cstdint>
#include <vector>

#include "regseed/bignum.hpp"
#include "regseed/rng.hpp"

namespace regseed {

// A partitionwise map assigns an ordered list of target vertices to every
// part: slot k of part i names one vertex of Omega_i.  Sampling is with
// replacement; duplicate targets stay as distinct slots.
struct PartitionwiseMap {
  std::vector<std::vector<int>> targets;  // [part][slot] -> vertex index

  int parts() const { return static_cast<int>(targets.size()); }
  int count(int part) const { return static_cast<int>(targets[part].size()); }

  // True iff every part has the same slot count, returned through m.
  bool uniform_count(int& m) const;
};

// Independent uniform draws, parts ascending then slots ascending, so a given
// rng state yields one well-defined map.
PartitionwiseMap random_partitionwise_map(const std::vector<int>& part_sizes,
                                          const std::vector<int>& counts, Rng& rng);

PartitionwiseMap random_partitionwise_map(const std::vector<int>& part_sizes,
                                          int count_per_part, Rng& rng);

// Concatenates the slot lists of two maps over the same parts.  The classes
// of a graph regularized by the composition refine the classes from either
// argument.
PartitionwiseMap compose_samples(const PartitionwiseMap& a, const PartitionwiseMap& b);

// prod_i part_sizes[i]^counts[i].
BigInt map_space_size(const std::vector<int>& part_sizes, const std::vector<int>& counts);

// Streams every partitionwise map with the given slot counts exactly once in
// a fixed odometer order (last slot of the last part varies fastest).  The
// constructor refuses with WorkCapError when the space exceeds work_cap.
class MapEnumerator {
 public:
  MapEnumerator(std::vector<int> part_sizes, std::vector<int> counts,
                std::uint64_t work_cap);

  // Advances to the next map; false when exhausted.
  bool next();
  const PartitionwiseMap& current() const { return current_; }
  std::uint64_t total() const { return total_; }

 private:
  std::vector<int> part_sizes_;
  std::vector<int> counts_;
  PartitionwiseMap current_;
  std::uint64_t total_ = 0;
  std::uint64_t emitted_ = 0;
};

}  // namespace regseed
