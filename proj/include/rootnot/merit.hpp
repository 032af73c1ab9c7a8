#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rootnot/classical_machine.hpp"
#include "rootnot/qcore.hpp"
#include "rootnot/random.hpp"

namespace rootnot {

// Figures of merit P^n. For block j = 1..n (j*k applications) the expected
// readout is the negated input for odd j and the input itself for even j;
// P^n averages the 2n correct-outcome probabilities (two inputs per block).

// Exact, via powers of U^k.
double quantum_merit(const Unitary2 &u, int k, int n);
// P^n for every n in orders, sharing one sweep of powers.
std::vector<double> quantum_merits(const Unitary2 &u, int k, std::span<const int> orders);

// Exact, via powers of the transition matrix. Starts are (target 0, aux 0)
// and (target 1, aux 0); the target bit is marginalized after each block.
double classical_merit(const ClassicalMachine &machine, int n);
std::vector<double> classical_merits(const ClassicalMachine &machine, std::span<const int> orders);

// Monte-Carlo estimate of classical_merit: each sample draws a start bit and
// a block count j uniformly, simulates j*k steps and scores the target bit.
// The estimator is unbiased with variance at most 1/(4 samples).
double classical_merit_mc(const ClassicalMachine &machine, int n, std::int64_t samples,
                          RandomStream &rng);

struct MeritPoint {
  std::int64_t trial_index = 0;
  std::int64_t teacher_memory = 0;  // quantum only; 0 for classical runs
  std::vector<double> values;       // aligned with MeritSeries::orders

  friend bool operator==(const MeritPoint &, const MeritPoint &) = default;
};

struct MeritSeries {
  std::string machine;      // "quantum" | "classical"
  std::string fingerprint;  // canonical text of the generating config
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> orders;  // n values of the logged P^n
  std::vector<MeritPoint> points;

  // P^n at the last point; throws if n is not logged.
  double final_value(int n) const;
  std::size_t order_index(int n) const;

  friend bool operator==(const MeritSeries &, const MeritSeries &) = default;
};

// Throws std::invalid_argument on empty lists or n < 1.
void validate_merit_orders(std::span<const int> orders);

}  // namespace rootnot
