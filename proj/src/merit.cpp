#include "rootnot/merit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rootnot {

void validate_merit_orders(std::span<const int> orders) {
  if (orders.empty()) throw std::invalid_argument("merit orders must not be empty");
  for (int n : orders) {
    if (n < 1) throw std::invalid_argument("merit order must be >= 1, got " + std::to_string(n));
  }
}

namespace {

// Collects running sums into P^n for each requested n.
class OrderSweep {
 public:
  explicit OrderSweep(std::span<const int> orders)
      : orders_(orders.begin(), orders.end()), values_(orders.size(), 0.0) {
    validate_merit_orders(orders_);
    max_order_ = *std::max_element(orders_.begin(), orders_.end());
  }

  int max_order() const { return max_order_; }

  void add_block(int j, double correct_from0, double correct_from1) {
    sum_ += correct_from0 + correct_from1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (orders_[i] == j) values_[i] = sum_ / (2.0 * j);
    }
  }

  std::vector<double> take() { return std::move(values_); }

 private:
  std::vector<int> orders_;
  std::vector<double> values_;
  int max_order_ = 0;
  double sum_ = 0.0;
};

}  // namespace

std::vector<double> quantum_merits(const Unitary2 &u, int k, std::span<const int> orders) {
  if (k < 1) throw std::invalid_argument("quantum_merit: k must be >= 1");
  OrderSweep sweep(orders);
  const Unitary2 block = unitary_power(u, static_cast<std::uint64_t>(k));
  Unitary2 power = Unitary2::identity();
  for (int j = 1; j <= sweep.max_order(); ++j) {
    power = power * block;
    const int flip = j & 1;
    sweep.add_block(j, transition_prob(power, 0, flip), transition_prob(power, 1, 1 ^ flip));
  }
  return sweep.take();
}

double quantum_merit(const Unitary2 &u, int k, int n) {
  const int orders[] = {n};
  return quantum_merits(u, k, orders).front();
}

std::vector<double> classical_merits(const ClassicalMachine &machine, std::span<const int> orders) {
  OrderSweep sweep(orders);
  const int k = machine.k();
  const int n_states = machine.num_states();

  // P^k by binary exponentiation.
  Eigen::MatrixXd block = Eigen::MatrixXd::Identity(n_states, n_states);
  Eigen::MatrixXd base = machine.matrix();
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) block = block * base;
    if (e > 1) base = base * base;
  }

  Eigen::RowVectorXd from0 = Eigen::RowVectorXd::Zero(n_states);
  Eigen::RowVectorXd from1 = Eigen::RowVectorXd::Zero(n_states);
  from0(0) = 1.0;
  from1(k) = 1.0;
  for (int j = 1; j <= sweep.max_order(); ++j) {
    from0 = from0 * block;
    from1 = from1 * block;
    const int flip = j & 1;
    auto target_mass = [k](const Eigen::RowVectorXd &v, int bit) {
      return bit == 0 ? v.head(k).sum() : v.tail(k).sum();
    };
    sweep.add_block(j, target_mass(from0, flip), target_mass(from1, 1 ^ flip));
  }
  return sweep.take();
}

double classical_merit(const ClassicalMachine &machine, int n) {
  const int orders[] = {n};
  return classical_merits(machine, orders).front();
}

double classical_merit_mc(const ClassicalMachine &machine, int n, std::int64_t samples,
                          RandomStream &rng) {
  if (n < 1) throw std::invalid_argument("classical_merit_mc: n must be >= 1");
  if (samples < 1) throw std::invalid_argument("classical_merit_mc: samples must be >= 1");
  const int k = machine.k();
  std::uniform_int_distribution<int> pick_blocks(1, n);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const int start_bit = fair_bit(rng) ? 1 : 0;
    const int blocks = pick_blocks(rng);
    int state = start_bit * k;
    for (int step = 0; step < blocks * k; ++step) state = machine.sample_next(state, rng);
    if (target_bit(state, k) == (start_bit ^ (blocks & 1))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

std::size_t MeritSeries::order_index(int n) const {
  auto it = std::find(orders.begin(), orders.end(), n);
  if (it == orders.end()) throw std::out_of_range("P^" + std::to_string(n) + " is not logged");
  return static_cast<std::size_t>(it - orders.begin());
}

double MeritSeries::final_value(int n) const {
  if (points.empty()) throw std::out_of_range("merit series is empty");
  return points.back().values[order_index(n)];
}

}  // namespace rootnot
