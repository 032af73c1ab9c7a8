#include "rootnot/classical_machine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rootnot/qcore.hpp"

namespace rootnot {

int encode_state(const MachineState &state, int k) {
  if ((state.target != 0 && state.target != 1) || state.aux >= static_cast<std::uint32_t>(k)) {
    throw std::invalid_argument("encode_state: state out of range");
  }
  return state.target * k + static_cast<int>(state.aux);
}

MachineState decode_state(int index, int k) {
  if (index < 0 || index >= 2 * k) throw std::invalid_argument("decode_state: index out of range");
  return {index / k, static_cast<std::uint32_t>(index % k)};
}

bool UpdateGains::valid() const {
  return success >= 0.0 && success <= 1.0 && failure >= 0.0 && failure <= 1.0;
}

ClassicalMachine ClassicalMachine::uniform(int k) {
  require_power_of_two_root(k);
  const int n = 2 * k;
  return {k, Eigen::MatrixXd::Constant(n, n, 1.0 / n)};
}

ClassicalMachine ClassicalMachine::from_matrix(int k, Eigen::MatrixXd probabilities) {
  require_power_of_two_root(k);
  const int n = 2 * k;
  if (probabilities.rows() != n || probabilities.cols() != n) {
    throw std::invalid_argument("classical machine for k=" + std::to_string(k) + " needs a " +
                                std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  ClassicalMachine machine(k, std::move(probabilities));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = machine.p_(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw std::invalid_argument("transition probabilities must lie in [0,1]");
      }
    }
  }
  if (!machine.is_row_stochastic()) throw std::invalid_argument("rows must sum to 1");
  return machine;
}

ClassicalMachine ClassicalMachine::perfect_loop(int k) {
  require_power_of_two_root(k);
  const int n = 2 * k;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) p(i, (i + 1) % n) = 1.0;
  return {k, std::move(p)};
}

std::int64_t ClassicalMachine::independent_parameter_count() const {
  const std::int64_t n = num_states();
  return n * n - n;
}

int ClassicalMachine::sample_next(int from, RandomStream &rng) const {
  const double u = uniform01(rng);
  const int n = num_states();
  double cumulative = 0.0;
  int last_nonzero = 0;
  for (int j = 0; j < n; ++j) {
    const double p = p_(from, j);
    if (p <= 0.0) continue;
    cumulative += p;
    last_nonzero = j;
    if (u < cumulative) return j;
  }
  // Row sums a hair below 1 leave a sliver of u unassigned.
  return last_nonzero;
}

Trajectory ClassicalMachine::sample_block(int start, RandomStream &rng) const {
  Trajectory path;
  path.reserve(static_cast<std::size_t>(k_) + 1);
  path.push_back(start);
  for (int r = 0; r < k_; ++r) path.push_back(sample_next(path.back(), rng));
  return path;
}

void ClassicalMachine::renormalize_row(int row) {
  const double sum = p_.row(row).sum();
  if (sum < kDeadRowMass) {
    p_.row(row).setConstant(1.0 / num_states());
  } else {
    p_.row(row) /= sum;
  }
}

void ClassicalMachine::reinforce(std::span<const int> trajectory, double gain) {
  if (gain == 0.0 || trajectory.size() < 2) return;
  std::vector<char> touched(static_cast<std::size_t>(num_states()), 0);
  for (std::size_t r = 1; r < trajectory.size(); ++r) {
    const int from = trajectory[r - 1];
    p_(from, trajectory[r]) += gain;
    touched[static_cast<std::size_t>(from)] = 1;
  }
  for (int i = 0; i < num_states(); ++i) {
    if (touched[static_cast<std::size_t>(i)]) renormalize_row(i);
  }
}

void ClassicalMachine::punish(std::span<const int> trajectory, double gain) {
  if (gain == 0.0 || trajectory.size() < 2) return;
  std::vector<char> touched(static_cast<std::size_t>(num_states()), 0);
  for (std::size_t r = 1; r < trajectory.size(); ++r) {
    const int from = trajectory[r - 1];
    double &entry = p_(from, trajectory[r]);
    entry = std::max(0.0, entry - gain);
    touched[static_cast<std::size_t>(from)] = 1;
  }
  for (int i = 0; i < num_states(); ++i) {
    if (touched[static_cast<std::size_t>(i)]) renormalize_row(i);
  }
}

void ClassicalMachine::renormalize_all() {
  for (int i = 0; i < num_states(); ++i) renormalize_row(i);
}

double ClassicalMachine::max_row_sum_deviation() const {
  double worst = 0.0;
  for (int i = 0; i < num_states(); ++i) worst = std::max(worst, std::fabs(p_.row(i).sum() - 1.0));
  return worst;
}

bool ClassicalMachine::is_row_stochastic(double tolerance) const {
  return (p_.array() >= 0.0).all() && max_row_sum_deviation() <= tolerance;
}

void ClassicalMachine::write_csv(std::ostream &out) const {
  char buf[32];
  for (int i = 0; i < num_states(); ++i) {
    for (int j = 0; j < num_states(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", p_(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

ClassicalMachine ClassicalMachine::read_csv(std::istream &in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception &) {
        throw std::invalid_argument("machine CSV: bad number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("machine CSV: need 2k rows with k >= 2");
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw std::invalid_argument("machine CSV: row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " columns, expected " +
                                  std::to_string(n));
    }
    for (int j = 0; j < n; ++j) p(i, j) = rows[i][j];
  }
  return from_matrix(n / 2, std::move(p));
}

}  // namespace rootnot
