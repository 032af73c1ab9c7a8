#include "rootnot/quantum_learner.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace rootnot {

namespace {
constexpr std::uint64_t kQuantumStreamSalt = 0x51;
}

bool WalkWidths::valid() const {
  return std::isfinite(sigma_gamma) && std::isfinite(sigma_beta) && sigma_gamma > 0.0 &&
         sigma_beta > 0.0;
}

EulerAngles propose_angles(const EulerAngles &center, const WalkWidths &widths, RandomStream &rng) {
  std::normal_distribution<double> step(0.0, 1.0);
  const double beta = center.beta + widths.sigma_beta * step(rng);
  const double delta = center.delta + widths.sigma_beta * step(rng);
  const double gamma = center.gamma + widths.sigma_gamma * step(rng);
  return EulerAngles::normalized(beta, delta, gamma);
}

std::int64_t run_trial_block(const Unitary2 &block, std::int64_t teacher_memory, RandomStream &rng) {
  const double flip_prob[2] = {transition_prob(block, 0, 1), transition_prob(block, 1, 0)};
  std::int64_t successes = 0;
  for (std::int64_t i = 0; i < teacher_memory; ++i) {
    const int input = fair_bit(rng) ? 1 : 0;
    // Output is the negated input with its Born probability.
    if (uniform01(rng) < flip_prob[input]) ++successes;
  }
  return successes;
}

std::int64_t run_trial(const Unitary2 &u, int k, std::int64_t teacher_memory, RandomStream &rng) {
  if (k < 1) throw std::invalid_argument("run_trial: k must be >= 1");
  if (teacher_memory < 1) throw std::invalid_argument("run_trial: M must be >= 1");
  return run_trial_block(unitary_power(u, static_cast<std::uint64_t>(k)), teacher_memory, rng);
}

QuantumLearnerState initial_quantum_state(std::uint64_t seed, const TeacherSchedule &schedule) {
  QuantumLearnerState state{.accepted = {},
                            .old_s = 0,
                            .teacher_memory = schedule.initial,
                            .trial_index = 0,
                            .rng = make_stream(seed, kQuantumStreamSalt)};
  state.accepted = haar_random_angles(state.rng);
  return state;
}

TrialRecord learner_step(QuantumLearnerState &state, int k, const WalkWidths &widths,
                         const TeacherSchedule &schedule) {
  const EulerAngles proposal = propose_angles(state.accepted, widths, state.rng);
  const Unitary2 block = unitary_power(euler_to_unitary(proposal), static_cast<std::uint64_t>(k));
  const std::int64_t m = state.teacher_memory;
  const std::int64_t new_s = run_trial_block(block, m, state.rng);

  TrialRecord record{.trial_index = ++state.trial_index,
                     .accepted = new_s >= state.old_s,
                     .new_s = new_s,
                     .teacher_memory = m};
  if (record.accepted) {
    state.accepted = proposal;
    state.old_s = new_s;
  }
  if (schedule.mode == TeacherMode::kVariable && new_s == m) {
    state.teacher_memory = m + 1;
    state.old_s = new_s;
  }
  return record;
}

void QuantumConfig::validate() const {
  require_power_of_two_root(k);
  if (trial_budget < 0) throw std::invalid_argument("trial_budget must be >= 0");
  if (log_interval < 1) throw std::invalid_argument("log_interval must be >= 1");
  validate_merit_orders(merit_orders);
  if (!widths.valid()) throw std::invalid_argument("walk widths must be finite and > 0");
  if (!schedule.valid()) throw std::invalid_argument("teacher memory must be >= 1");
  if (initial_angles && !initial_angles->valid()) {
    throw std::invalid_argument("initial angles out of range");
  }
}

namespace {

std::string describe(const QuantumConfig &config) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "quantum k=%d budget=%lld log=%lld sigma_gamma=%.17g sigma_beta=%.17g teacher=%s M=%lld",
                config.k, static_cast<long long>(config.trial_budget),
                static_cast<long long>(config.log_interval), config.widths.sigma_gamma,
                config.widths.sigma_beta,
                config.schedule.mode == TeacherMode::kVariable ? "variable" : "fixed",
                static_cast<long long>(config.schedule.initial));
  return buf;
}

}  // namespace

MeritSeries learn_quantum(const QuantumConfig &config, std::uint64_t seed,
                          std::vector<TrialRecord> *trace) {
  config.validate();
  QuantumLearnerState state = initial_quantum_state(seed, config.schedule);
  if (config.initial_angles) state.accepted = *config.initial_angles;

  MeritSeries series{.machine = "quantum",
                     .fingerprint = describe(config),
                     .k = config.k,
                     .seed = seed,
                     .orders = config.merit_orders,
                     .points = {}};
  auto log_point = [&] {
    series.points.push_back(
        {state.trial_index, state.teacher_memory,
         quantum_merits(euler_to_unitary(state.accepted), config.k, config.merit_orders)});
  };

  log_point();
  for (std::int64_t t = 1; t <= config.trial_budget; ++t) {
    TrialRecord record = learner_step(state, config.k, config.widths, config.schedule);
    if (trace) trace->push_back(record);
    if (t % config.log_interval == 0 || t == config.trial_budget) log_point();
  }
  return series;
}

}  // namespace rootnot
