#include "rootnot/classical_learner.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

#include "rootnot/qcore.hpp"

namespace rootnot {

namespace {

constexpr std::uint64_t kClassicalStreamSalt = 0xC1;

std::string describe(const ClassicalConfig &config) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "classical k=%d budget=%lld log=%lld K_s=%.17g K_f=%.17g%s",
                config.k, static_cast<long long>(config.trial_budget),
                static_cast<long long>(config.log_interval), config.gains.success,
                config.gains.failure, config.initial_machine ? " preloaded" : "");
  return buf;
}

int episode_start(int k, RandomStream &rng) { return fair_bit(rng) ? k : 0; }

}  // namespace

void ClassicalConfig::validate() const {
  require_power_of_two_root(k);
  if (trial_budget < 0) throw std::invalid_argument("trial_budget must be >= 0");
  if (log_interval < 1) throw std::invalid_argument("log_interval must be >= 1");
  if (renormalize_interval < 0) throw std::invalid_argument("renormalize_interval must be >= 0");
  validate_merit_orders(merit_orders);
  if (!gains.valid()) throw std::invalid_argument("K_s and K_f must lie in [0,1]");
  if (initial_machine && initial_machine->k() != k) {
    throw std::invalid_argument("initial machine does not match k");
  }
}

MeritSeries learn_classical(const ClassicalConfig &config, std::uint64_t seed,
                            ClassicalMachine *final_machine, std::vector<BlockRecord> *trace) {
  config.validate();
  const int k = config.k;
  RandomStream rng = make_stream(seed, kClassicalStreamSalt);
  ClassicalMachine machine = config.initial_machine.value_or(ClassicalMachine::uniform(k));

  MeritSeries series{.machine = "classical",
                     .fingerprint = describe(config),
                     .k = k,
                     .seed = seed,
                     .orders = config.merit_orders,
                     .points = {}};
  auto log_point = [&](std::int64_t trial) {
    series.points.push_back({trial, 0, classical_merits(machine, config.merit_orders)});
  };

  log_point(0);
  int state = episode_start(k, rng);
  for (std::int64_t t = 1; t <= config.trial_budget; ++t) {
    Trajectory block = machine.sample_block(state, rng);
    const bool success = target_bit(block.back(), k) != target_bit(block.front(), k);
    if (success) {
      machine.reinforce(block, config.gains.success);
      state = block.back();
    } else {
      machine.punish(block, config.gains.failure);
      state = episode_start(k, rng);
    }
    if (config.renormalize_interval > 0 && t % config.renormalize_interval == 0) {
      machine.renormalize_all();
    }
    if (trace) trace->push_back({t, std::move(block), success});
    if (t % config.log_interval == 0 || t == config.trial_budget) log_point(t);
  }
  if (final_machine) *final_machine = machine;
  return series;
}

}  // namespace rootnot
