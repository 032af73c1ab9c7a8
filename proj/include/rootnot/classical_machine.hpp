#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rootnot/random.hpp"

namespace rootnot {

// Internal state of a classical machine with k = 2^m: the target bit followed
// by m auxiliary bits. The target bit is the most significant component, so
// index = target * k + aux.
struct MachineState {
  int target = 0;
  std::uint32_t aux = 0;

  friend bool operator==(const MachineState &, const MachineState &) = default;
};

int encode_state(const MachineState &state, int k);
MachineState decode_state(int index, int k);
inline int target_bit(int index, int k) { return index >= k ? 1 : 0; }

using Trajectory = std::vector<int>;

struct UpdateGains {
  double success = 0.25;  // K_s
  double failure = 0.25;  // K_f

  bool valid() const;
};

// Row-stochastic 2k x 2k transition matrix; row i is the distribution of the
// next state given state i.
class ClassicalMachine {
 public:
  static constexpr double kRowTolerance = 1e-9;
  static constexpr double kDeadRowMass = 1e-12;

  // Every entry 1/(2k).
  static ClassicalMachine uniform(int k);
  // Validates shape (2k x 2k), entries in [0,1] and row sums.
  static ClassicalMachine from_matrix(int k, Eigen::MatrixXd probabilities);
  // Deterministic cycle i -> i+1 mod 2k. The start states (target 0, aux 0)
  // and (target 1, aux 0) are indices 0 and k, k steps apart.
  static ClassicalMachine perfect_loop(int k);

  int k() const { return k_; }
  int num_states() const { return 2 * k_; }
  // N^2 - N: each of the N rows has N - 1 free entries.
  std::int64_t independent_parameter_count() const;

  const Eigen::MatrixXd &matrix() const { return p_; }
  double operator()(int from, int to) const { return p_(from, to); }

  // (j_0 = start, j_1, ..., j_k), each drawn from the row of its predecessor.
  Trajectory sample_block(int start, RandomStream &rng) const;
  int sample_next(int from, RandomStream &rng) const;

  // +gain per traversed edge occurrence, then renormalize touched rows.
  void reinforce(std::span<const int> trajectory, double gain);
  // -gain per occurrence clamped at 0, renormalize touched rows; a row left
  // without mass is reset to uniform.
  void punish(std::span<const int> trajectory, double gain);

  // Exact division of every row by its sum.
  void renormalize_all();
  double max_row_sum_deviation() const;
  bool is_row_stochastic(double tolerance = kRowTolerance) const;

  // Row-major, one row per line, 2k comma-separated values (%.17g).
  void write_csv(std::ostream &out) const;
  static ClassicalMachine read_csv(std::istream &in);

 private:
  ClassicalMachine(int k, Eigen::MatrixXd p) : k_(k), p_(std::move(p)) {}
  void renormalize_row(int row);

  int k_ = 0;
  Eigen::MatrixXd p_;
};

}  // namespace rootnot
