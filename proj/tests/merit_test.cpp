#include "rootnot/merit.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace rootnot;

namespace {

// Direct substitution into the P^n sum with naive matrix powers.
double quantum_merit_by_hand(const Unitary2 &u, int k, int n) {
  double sum = 0.0;
  Unitary2 power = Unitary2::identity();
  for (int j = 1; j <= n; ++j) {
    for (int r = 0; r < k; ++r) power = power * u;
    const bool odd = j % 2 == 1;
    sum += std::norm(power(odd ? 1 : 0, 0)) + std::norm(power(odd ? 0 : 1, 1));
  }
  return sum / (2.0 * n);
}

// Sums path probabilities over every state sequence of length steps.
double path_sum(const ClassicalMachine &m, int state, int steps, int want_target) {
  if (steps == 0) return target_bit(state, m.k()) == want_target ? 1.0 : 0.0;
  double total = 0.0;
  for (int next = 0; next < m.num_states(); ++next) {
    const double p = m(state, next);
    if (p > 0.0) total += p * path_sum(m, next, steps - 1, want_target);
  }
  return total;
}

double classical_merit_by_paths(const ClassicalMachine &m, int n) {
  const int k = m.k();
  double sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    const int flip = j & 1;
    sum += path_sum(m, 0, j * k, flip) + path_sum(m, k, j * k, 1 ^ flip);
  }
  return sum / (2.0 * n);
}

ClassicalMachine random_machine(int k, RandomStream &rng, double sparsity = 0.0) {
  const int n = 2 * k;
  Eigen::MatrixXd p(n, n);
  std::exponential_distribution<double> e(1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) p(i, j) = uniform01(rng) < sparsity ? 0.0 : e(rng);
    if (p.row(i).sum() == 0.0) p(i, i) = 1.0;
    p.row(i) /= p.row(i).sum();
  }
  return ClassicalMachine::from_matrix(k, p);
}

ClassicalMachine identity_machine(int k) {
  return ClassicalMachine::from_matrix(k, Eigen::MatrixXd::Identity(2 * k, 2 * k));
}

}  // namespace

TEST(QuantumMerit, ExactRootIsPerfect) {
  for (int k : {2, 4, 8, 16}) {
    for (int n = 1; n <= 50; ++n) EXPECT_NEAR(quantum_merit(exact_root_unitary(k), k, n), 1.0, 1e-12);
  }
}

TEST(QuantumMerit, IdentityAndNot) {
  EXPECT_EQ(quantum_merit(Unitary2::identity(), 4, 1), 0.0);
  EXPECT_NEAR(quantum_merit(Unitary2::pauli_x(), 2, 1), 0.0, 1e-15);
  EXPECT_NEAR(quantum_merit(Unitary2::pauli_x(), 2, 2), 0.5, 1e-15);
}

TEST(QuantumMerit, MatchesDirectSubstitution) {
  RandomStream rng = make_stream(1);
  for (int t = 0; t < 100; ++t) {
    const Unitary2 u = euler_to_unitary(haar_random_angles(rng));
    for (int k : {2, 4, 8}) {
      const int orders[] = {1, 2, 5, 10};
      const auto values = quantum_merits(u, k, orders);
      for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(values[i], quantum_merit_by_hand(u, k, orders[i]), 1e-12);
        EXPECT_GE(values[i], -1e-12);
        EXPECT_LE(values[i], 1.0 + 1e-12);
      }
    }
  }
}

TEST(QuantumMerit, FirstOrderIsTheAverageFlipProbability) {
  RandomStream rng = make_stream(2);
  for (int t = 0; t < 100; ++t) {
    const Unitary2 u = euler_to_unitary(haar_random_angles(rng));
    const Unitary2 block = unitary_power(u, 4);
    EXPECT_EQ(quantum_merit(u, 4, 1), (transition_prob(block, 0, 1) + transition_prob(block, 1, 0)) / 2.0);
  }
}

TEST(QuantumMerit, GlobalPhaseInvariance) {
  RandomStream rng = make_stream(3);
  for (int t = 0; t < 100; ++t) {
    const Unitary2 u = euler_to_unitary(haar_random_angles(rng));
    const Unitary2 v = u.scaled(std::polar(1.0, kTwoPi * uniform01(rng)));
    EXPECT_NEAR(quantum_merit(u, 4, 10), quantum_merit(v, 4, 10), 1e-14);
  }
}

TEST(ClassicalMerit, UniformIsOneHalf) {
  for (int k : {2, 4, 8}) {
    for (int n : {1, 2, 7, 20}) EXPECT_NEAR(classical_merit(ClassicalMachine::uniform(k), n), 0.5, 1e-12);
  }
}

TEST(ClassicalMerit, PerfectLoopAndIdentity) {
  for (int k : {2, 4, 8}) {
    for (int n = 1; n <= 50; ++n) EXPECT_NEAR(classical_merit(ClassicalMachine::perfect_loop(k), n), 1.0, 1e-12);
    EXPECT_EQ(classical_merit(identity_machine(k), 1), 0.0);
  }
}

TEST(ClassicalMerit, MatchesPathEnumeration) {
  RandomStream rng = make_stream(4);
  for (int t = 0; t < 20; ++t) {
    const ClassicalMachine m = random_machine(2, rng, t % 2 ? 0.5 : 0.0);
    for (int n : {1, 2, 3}) EXPECT_NEAR(classical_merit(m, n), classical_merit_by_paths(m, n), 1e-12);
  }
  const ClassicalMachine m4 = random_machine(4, rng, 0.6);
  EXPECT_NEAR(classical_merit(m4, 1), classical_merit_by_paths(m4, 1), 1e-12);
}

TEST(ClassicalMerit, OrdersShareOneSweep) {
  RandomStream rng = make_stream(5);
  const ClassicalMachine m = random_machine(4, rng);
  const int orders[] = {10, 1, 5};
  const auto values = classical_merits(m, orders);
  EXPECT_EQ(values[0], classical_merit(m, 10));
  EXPECT_EQ(values[1], classical_merit(m, 1));
  EXPECT_EQ(values[2], classical_merit(m, 5));
}

TEST(ClassicalMeritMc, UniformAndLoop) {
  RandomStream rng = make_stream(6);
  EXPECT_NEAR(classical_merit_mc(ClassicalMachine::uniform(2), 10, 100000, rng), 0.5, 0.006);
  EXPECT_EQ(classical_merit_mc(ClassicalMachine::perfect_loop(4), 10, 1000, rng), 1.0);
}

TEST(ClassicalMeritMc, AgreesWithExactWithinFourSigma) {
  RandomStream rng = make_stream(7);
  for (int t = 0; t < 10; ++t) {
    const ClassicalMachine m = random_machine(t % 2 ? 4 : 2, rng, 0.5);
    const std::int64_t samples = 20000;
    const double exact = classical_merit(m, 5);
    const double sigma = std::sqrt(std::max(exact * (1 - exact), 1e-4) / samples);
    EXPECT_NEAR(classical_merit_mc(m, 5, samples, rng), exact, 4 * sigma + 1e-3);
  }
}

TEST(Merit, RejectsBadOrders) {
  const int empty[] = {0};
  EXPECT_THROW(quantum_merits(Unitary2::identity(), 2, std::span<const int>()), std::invalid_argument);
  EXPECT_THROW(quantum_merits(Unitary2::identity(), 2, empty), std::invalid_argument);
  EXPECT_THROW(classical_merit(ClassicalMachine::uniform(2), 0), std::invalid_argument);
  RandomStream rng = make_stream(8);
  EXPECT_THROW(classical_merit_mc(ClassicalMachine::uniform(2), 1, 0, rng), std::invalid_argument);
}

TEST(MeritSeries, FinalValueLookup) {
  MeritSeries s{.machine = "quantum", .fingerprint = "", .k = 4, .seed = 1, .orders = {1, 10},
                .points = {{0, 1, {0.2, 0.1}}, {100, 3, {0.9, 0.7}}}};
  EXPECT_EQ(s.final_value(10), 0.7);
  EXPECT_THROW(s.final_value(5), std::out_of_range);
}
