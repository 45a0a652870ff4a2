#include "regseed/pmap.hpp"

#include <sstream>

#include "regseed/errors.hpp"

namespace regseed {

bool PartitionwiseMap::uniform_count(int& m) const {
  if (targets.empty()) return false;
  m = count(0);
  for (const auto& t : targets)
    if (static_cast<int>(t.size()) != m) return false;
  return true;
}

PartitionwiseMap random_partitionwise_map(const std::vector<int>& part_sizes,
                                          const std::vector<int>& counts, Rng& rng) {
  if (part_sizes.size() != counts.size())
    throw ValidationError("random_partitionwise_map: counts/parts size mismatch");
  PartitionwiseMap phi;
  phi.targets.resize(part_sizes.size());
  for (std::size_t i = 0; i < part_sizes.size(); ++i) {
    if (counts[i] < 0) throw ValidationError("random_partitionwise_map: negative count");
    if (counts[i] > 0 && part_sizes[i] <= 0)
      throw ValidationError("random_partitionwise_map: cannot sample from empty part");
    phi.targets[i].resize(counts[i]);
    for (int k = 0; k < counts[i]; ++k)
      phi.targets[i][k] = static_cast<int>(rng.bounded(static_cast<std::uint32_t>(part_sizes[i])));
  }
  return phi;
}

PartitionwiseMap random_partitionwise_map(const std::vector<int>& part_sizes,
                                          int count_per_part, Rng& rng) {
  return random_partitionwise_map(
      part_sizes, std::vector<int>(part_sizes.size(), count_per_part), rng);
}

PartitionwiseMap compose_samples(const PartitionwiseMap& a, const PartitionwiseMap& b) {
  if (a.parts() != b.parts())
    throw ValidationError("compose_samples: maps cover different part counts");
  PartitionwiseMap c = a;
  for (int i = 0; i < b.parts(); ++i)
    c.targets[i].insert(c.targets[i].end(), b.targets[i].begin(), b.targets[i].end());
  return c;
}

BigInt map_space_size(const std::vector<int>& part_sizes, const std::vector<int>& counts) {
  if (part_sizes.size() != counts.size())
    throw ValidationError("map_space_size: counts/parts size mismatch");
  BigInt total = 1;
  for (std::size_t i = 0; i < part_sizes.size(); ++i) {
    if (counts[i] < 0) throw ValidationError("map_space_size: negative count");
    for (int k = 0; k < counts[i]; ++k) total *= part_sizes[i];
  }
  return total;
}

MapEnumerator::MapEnumerator(std::vector<int> part_sizes, std::vector<int> counts,
                             std::uint64_t work_cap)
    : part_sizes_(std::move(part_sizes)), counts_(std::move(counts)) {
  BigInt space = map_space_size(part_sizes_, counts_);
  if (space > work_cap) {
    std::ostringstream os;
    os << "map enumeration needs " << space << " maps, exceeding the work cap " << work_cap;
    throw WorkCapError(os.str());
  }
  total_ = space.convert_to<std::uint64_t>();
  current_.targets.resize(part_sizes_.size());
  for (std::size_t i = 0; i < part_sizes_.size(); ++i)
    current_.targets[i].assign(counts_[i], 0);
}

bool MapEnumerator::next() {
  if (emitted_ >= total_) return false;
  if (emitted_ == 0) {
    ++emitted_;
    return true;
  }
  ++emitted_;
  // Odometer increment, last slot of the last part fastest.
  for (int i = static_cast<int>(part_sizes_.size()) - 1; i >= 0; --i)
    for (int k = counts_[i] - 1; k >= 0; --k) {
      if (++current_.targets[i][k] < part_sizes_[i]) return true;
      current_.targets[i][k] = 0;
    }
  return false;  // wrapped around; only reachable when total_ was miscounted
}

}  // namespace regseed
