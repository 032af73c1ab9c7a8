#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rootnot/merit.hpp"
#include "rootnot/qcore.hpp"
#include "rootnot/random.hpp"

namespace rootnot {

// Standard deviations of the Gaussian walk. sigma_beta is also used for delta.
struct WalkWidths {
  double sigma_gamma = kPi / 4.0;
  double sigma_beta = kPi / 8.0;

  bool valid() const;
};

enum class TeacherMode { kFixed, kVariable };

// Teacher memory M: the number of executions per trial. In variable mode M
// starts at `initial` and grows by one whenever a trial scores M successes.
struct TeacherSchedule {
  TeacherMode mode = TeacherMode::kVariable;
  std::int64_t initial = 1;

  static TeacherSchedule fixed(std::int64_t m) { return {TeacherMode::kFixed, m}; }
  static TeacherSchedule variable(std::int64_t start = 1) { return {TeacherMode::kVariable, start}; }
  bool valid() const { return initial >= 1; }
};

struct QuantumLearnerState {
  EulerAngles accepted;
  std::int64_t old_s = 0;
  std::int64_t teacher_memory = 1;
  std::int64_t trial_index = 0;
  RandomStream rng;
};

struct TrialRecord {
  std::int64_t trial_index = 0;
  bool accepted = false;
  std::int64_t new_s = 0;
  std::int64_t teacher_memory = 0;  // M used for this trial
};

// center + N(0, sigma) per angle, drawn in the order beta, delta, gamma.
// beta/delta wrap modulo 2pi, gamma reflects at 0 and pi.
EulerAngles propose_angles(const EulerAngles &center, const WalkWidths &widths, RandomStream &rng);

// M executions of U^k, each on a fresh uniformly drawn input bit with a
// Born-rule readout; returns how many outputs were the negated input.
std::int64_t run_trial(const Unitary2 &u, int k, std::int64_t teacher_memory, RandomStream &rng);

// Same, given the precomputed block operator U^k.
std::int64_t run_trial_block(const Unitary2 &block, std::int64_t teacher_memory, RandomStream &rng);

QuantumLearnerState initial_quantum_state(std::uint64_t seed, const TeacherSchedule &schedule);

// One propose / evaluate / accept-or-revert round. Ties accept.
TrialRecord learner_step(QuantumLearnerState &state, int k, const WalkWidths &widths,
                         const TeacherSchedule &schedule);

struct QuantumConfig {
  int k = 4;
  std::int64_t trial_budget = 100000;
  std::int64_t log_interval = 100;
  std::vector<int> merit_orders{1, 5, 10};
  WalkWidths widths;
  TeacherSchedule schedule;
  // Replaces the Haar-random starting point when set.
  std::optional<EulerAngles> initial_angles;

  void validate() const;
};

// Haar-random start, trial_budget learner steps, exact P^n of the accepted
// unitary at trial 0, every log_interval trials and at the final trial.
MeritSeries learn_quantum(const QuantumConfig &config, std::uint64_t seed,
                          std::vector<TrialRecord> *trace = nullptr);

}  // namespace rootnot
