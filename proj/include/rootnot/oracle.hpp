#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rootnot {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// A deterministic classical machine viewed as a functional graph.
struct DeterministicMachine {
  int n_states = 0;
  std::vector<int> table;             // next state, size n_states
  std::vector<std::uint8_t> readout;  // target bit per state, size n_states
  int start0 = 0;                     // readout 0
  int start1 = 1;                     // readout 1

  // Shape and start-state invariants.
  bool valid() const;
};

// Root-of-NOT predicate: from both starts, after n*k applications the readout
// equals the start's bit for even n and its negation for odd n. Orbits of a
// functional graph on N states are rho-shaped with tail and cycle at most N
// long, so checking n = 1..2N decides all n. `blocks` overrides that bound.
bool is_perfect_root(const DeterministicMachine &machine, int k, int blocks = 0);

struct EnumerationOptions {
  // Refuse jobs estimated above this many predicate evaluations.
  double work_budget = 1e8;
  bool override_budget = false;
  unsigned workers = 0;  // 0: hardware concurrency
};

struct LemmaRow {
  int n_states = 0;
  std::uint64_t perfect_count = 0;  // perfect (table, readout, start pair) tuples
  std::uint64_t total_count = 0;    // tuples examined

  bool any_perfect() const { return perfect_count > 0; }
};

// Predicate evaluations for one N: N^N tables, all readouts, all start pairs.
double lemma_scan_work(int n_states);

// Exhaustive scan of every machine with N = 2..n_max states.
// Throws std::invalid_argument on bad k/n_max and std::length_error when the
// work budget is exceeded.
std::vector<LemmaRow> lemma_scan(int k, int n_max, const EnumerationOptions &options = {});

struct CountReport {
  int k = 0;
  int n_states = 0;
  std::uint64_t perfect_count = 0;
  std::uint64_t total_count = 0;
  BigInt formula_numerator;    // (2k-4)! (2k-2) (k^2-2)
  BigInt formula_denominator;  // (2k)^(2k)
  bool agrees = false;         // perfect/total == numerator/denominator
};

// Enumerates every function on the 2k bit-vector states (target bit first,
// starts at (0, aux 0) and (1, aux 0)) and counts the perfect roots.
CountReport count_target_functions(int k, const EnumerationOptions &options = {});

BigInt eq4_numerator(int k);
BigInt eq4_denominator(int k);
// Exact closed-form fraction of target functions, reduced.
BigRational eq4_fraction(int k);

// Canonical machine on 2k states: the cycle i -> i+1 mod 2k with readout
// i >= k and starts 0 and k.
DeterministicMachine single_cycle_machine(int k);

struct CycleCount {
  std::uint64_t cycles_with_starts_at_distance_k = 0;
  std::uint64_t perfect = 0;
};

// Over all permutations of the 2k canonical states, counts single 2k-cycles
// that carry start1 exactly k steps after start0, and how many of them pass
// is_perfect_root. Both equal (2k-2)! when the construction is right.
CycleCount count_single_cycle_roots(int k);

std::string format_lemma_report(int k, std::span<const LemmaRow> rows);
std::string format_count_report(const CountReport &report);
// Machine-readable rows for the oracle CSV files.
void write_lemma_csv(std::ostream &out, int k, std::span<const LemmaRow> rows);
void write_count_csv(std::ostream &out, const CountReport &report);

}  // namespace rootnot
