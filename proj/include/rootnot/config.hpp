#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rootnot/classical_learner.hpp"
#include "rootnot/quantum_learner.hpp"

namespace rootnot {

enum class MachineKind { kQuantum, kClassical };

std::string_view to_string(MachineKind kind);

// Raised for any invalid configuration; field() names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string &message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string &field() const { return field_; }

 private:
  std::string field_;
};

// Complete parameter set of one experiment. Text form is flat UTF-8
// key=value, one key per line, '#' starts a comment:
//
//   name            output file stem
//   machine         quantum | classical
//   k               power of two >= 2
//   trial_budget    trials per seed (>= 0)
//   log_interval    trials between checkpoints
//   merit_orders    comma list of n for P^n
//   sigma_gamma     walk width for gamma (accepts pi expressions: pi/4)
//   sigma_beta      walk width for beta and delta
//   teacher         variable | fixed
//   teacher_memory  M for fixed mode, starting M for variable mode
//   K_s, K_f        classical reward and penalty gains
//   seeds           comma list with ranges: 1-20 or 3,5,9
//   workers         concurrent seeds (0 = hardware concurrency)
struct ExperimentConfig {
  std::string name = "experiment";
  MachineKind machine = MachineKind::kQuantum;
  int k = 4;
  std::int64_t trial_budget = 100000;
  std::int64_t log_interval = 100;
  std::vector<int> merit_orders{1, 5, 10};
  double sigma_gamma = kPi / 4.0;
  double sigma_beta = kPi / 8.0;
  TeacherMode teacher = TeacherMode::kVariable;
  std::int64_t teacher_memory = 1;
  double K_s = 0.25;
  double K_f = 0.25;
  std::vector<std::uint64_t> seeds = default_seeds();
  unsigned workers = 0;

  static std::vector<std::uint64_t> default_seeds();  // 1..20

  // Throws ConfigError naming the first offending field.
  void validate() const;
  // Applies one key=value assignment (the --override syntax).
  void set(std::string_view key, std::string_view value);
  // Canonical key=value text, every key in a fixed order.
  std::string to_text() const;
  // One-line form of to_text(), used as the series fingerprint.
  std::string fingerprint() const;

  QuantumConfig quantum() const;
  ClassicalConfig classical() const;
};

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path &path, ExperimentConfig base = {});
void apply_override(ExperimentConfig &config, std::string_view assignment);

// "1-3,7" -> {1,2,3,7}
std::vector<std::uint64_t> parse_seed_list(std::string_view text);
// Decimal number or multiple of pi: "0.3", "pi", "pi/4", "3*pi/8".
double parse_angle(std::string_view text);

}  // namespace rootnot
