#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rootnot/classical_machine.hpp"
#include "rootnot/merit.hpp"

namespace rootnot {

struct ClassicalConfig {
  int k = 2;
  std::int64_t trial_budget = 100000;
  std::int64_t log_interval = 100;
  std::vector<int> merit_orders{10};
  UpdateGains gains;
  // Full-matrix exact renormalization every this many trials (0 disables).
  std::int64_t renormalize_interval = 10000;
  // Replaces the uniform starting machine when set; must match k.
  std::optional<ClassicalMachine> initial_machine;

  void validate() const;
};

// Outcome of one block of k applications.
struct BlockRecord {
  std::int64_t trial_index = 0;
  Trajectory trajectory;
  bool success = false;
};

// Reward/penalty learning from the uniform machine. An episode starts with a
// uniformly random target bit and all auxiliary bits 0. A block succeeds when
// its final target bit negates its first; success reinforces the block and
// continues from its last state, failure punishes it and starts a new episode.
MeritSeries learn_classical(const ClassicalConfig &config, std::uint64_t seed,
                            ClassicalMachine *final_machine = nullptr,
                            std::vector<BlockRecord> *trace = nullptr);

}  // namespace rootnot
