#pragma once

#include <cstdint>
#include <random>

namespace gpa::ssa {

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream for one replication: std::mt19937_64 seeded with
/// splitmix64(splitmix64(master) ^ replication).
class Stream {
 public:
  Stream(std::uint64_t master_seed, std::uint64_t replication);

  /// Uniform double in [0, 1) from the top 53 bits of one draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gpa::ssa
