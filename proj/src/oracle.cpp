#include "rootnot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rootnot/qcore.hpp"

namespace rootnot {

namespace {

// table^k as a lookup.
void block_map(std::span<const int> table, int k, std::span<int> out) {
  const int n = static_cast<int>(table.size());
  for (int i = 0; i < n; ++i) {
    int s = i;
    for (int r = 0; r < k; ++r) s = table[static_cast<std::size_t>(s)];
    out[static_cast<std::size_t>(i)] = s;
  }
}

template <typename ReadoutFn>
bool orbit_alternates(std::span<const int> block, ReadoutFn readout, int start, int blocks) {
  const int bit = readout(start);
  int s = start;
  for (int n = 1; n <= blocks; ++n) {
    s = block[static_cast<std::size_t>(s)];
    if (readout(s) != (bit ^ (n & 1))) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void check_budget(double work, const EnumerationOptions &options, const std::string &what) {
  if (!options.override_budget && work > options.work_budget) {
    std::ostringstream msg;
    msg << what << ": about " << work << " predicate evaluations exceeds the work budget of "
        << options.work_budget << " (set override to force)";
    throw std::length_error(msg.str());
  }
}

struct Tally {
  std::uint64_t perfect = 0;
  std::uint64_t total = 0;
};

// Splits [0, count) into contiguous chunks, one per worker, and sums the
// tallies. Each chunk sees the tables in increasing index order.
template <typename ChunkFn>
Tally partitioned_enumeration(std::uint64_t count, unsigned workers, ChunkFn chunk) {
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(count, 1)));
  std::vector<Tally> partial(workers);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t step = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(count, w * step);
      const std::uint64_t end = std::min(count, begin + step);
      pool.emplace_back([&, w, begin, end] { partial[w] = chunk(begin, end); });
    }
  }
  Tally sum;
  for (const Tally &t : partial) {
    sum.perfect += t.perfect;
    sum.total += t.total;
  }
  return sum;
}

// Table with the given mixed-radix index (least significant digit = state 0).
void decode_table(std::uint64_t index, int n, std::vector<int> &table) {
  for (int i = 0; i < n; ++i) {
    table[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::uint64_t>(n));
    index /= static_cast<std::uint64_t>(n);
  }
}

void next_table(int n, std::vector<int> &table) {
  for (int i = 0; i < n; ++i) {
    if (++table[static_cast<std::size_t>(i)] < n) return;
    table[static_cast<std::size_t>(i)] = 0;
  }
}

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

bool DeterministicMachine::valid() const {
  if (n_states < 2) return false;
  if (table.size() != static_cast<std::size_t>(n_states) ||
      readout.size() != static_cast<std::size_t>(n_states)) {
    return false;
  }
  for (int s : table) {
    if (s < 0 || s >= n_states) return false;
  }
  for (auto bit : readout) {
    if (bit > 1) return false;
  }
  auto in_range = [&](int s) { return s >= 0 && s < n_states; };
  return in_range(start0) && in_range(start1) && start0 != start1 &&
         readout[static_cast<std::size_t>(start0)] == 0 && readout[static_cast<std::size_t>(start1)] == 1;
}

bool is_perfect_root(const DeterministicMachine &machine, int k, int blocks) {
  if (!machine.valid()) throw std::invalid_argument("is_perfect_root: malformed machine");
  if (k < 1) throw std::invalid_argument("is_perfect_root: k must be >= 1");
  if (blocks <= 0) blocks = 2 * machine.n_states;
  std::vector<int> block(static_cast<std::size_t>(machine.n_states));
  block_map(machine.table, k, block);
  auto readout = [&](int s) { return static_cast<int>(machine.readout[static_cast<std::size_t>(s)]); };
  return orbit_alternates(block, readout, machine.start0, blocks) &&
         orbit_alternates(block, readout, machine.start1, blocks);
}

double lemma_scan_work(int n_states) {
  // sum over readouts of zeros*ones = N (N-1) 2^(N-2)
  const double n = n_states;
  return std::pow(n, n) * n * (n - 1.0) * std::pow(2.0, n - 2.0);
}

std::vector<LemmaRow> lemma_scan(int k, int n_max, const EnumerationOptions &options) {
  if (k < 1 || (k & (k - 1)) != 0) throw std::invalid_argument("lemma_scan: k must be a power of two");
  if (n_max < 2) throw std::invalid_argument("lemma_scan: n_max must be >= 2");
  if (n_max > 12) throw std::invalid_argument("lemma_scan: n_max beyond 12 overflows the table index");
  double work = 0.0;
  for (int n = 2; n <= n_max; ++n) work += lemma_scan_work(n);
  check_budget(work, options, "lemma_scan");

  const unsigned workers = resolve_workers(options.workers);
  std::vector<LemmaRow> rows;
  for (int n = 2; n <= n_max; ++n) {
    const std::uint64_t tables = ipow(static_cast<std::uint64_t>(n), n);
    const std::uint32_t readouts = 1u << n;
    auto chunk = [n, k, readouts](std::uint64_t begin, std::uint64_t end) {
      Tally tally;
      std::vector<int> table(static_cast<std::size_t>(n));
      std::vector<int> block(static_cast<std::size_t>(n));
      decode_table(begin, n, table);
      for (std::uint64_t t = begin; t < end; ++t, next_table(n, table)) {
        block_map(table, k, block);
        const int blocks = 2 * n;
        for (std::uint32_t mask = 0; mask < readouts; ++mask) {
          auto readout = [mask](int s) { return static_cast<int>((mask >> s) & 1u); };
          std::uint64_t zeros = 0, ones = 0, good0 = 0, good1 = 0;
          for (int s = 0; s < n; ++s) {
            const bool ok = orbit_alternates(block, readout, s, blocks);
            if (readout(s) == 0) {
              ++zeros;
              good0 += ok;
            } else {
              ++ones;
              good1 += ok;
            }
          }
          tally.total += zeros * ones;
          tally.perfect += good0 * good1;
        }
      }
      return tally;
    };
    const Tally tally = partitioned_enumeration(tables, workers, chunk);
    rows.push_back({n, tally.perfect, tally.total});
  }
  return rows;
}

BigInt eq4_numerator(int k) {
  if (k < 2) throw std::invalid_argument("eq4: k must be >= 2");
  return factorial(2 * k - 4) * (2 * k - 2) * (BigInt(k) * k - 2);
}

BigInt eq4_denominator(int k) {
  if (k < 2) throw std::invalid_argument("eq4: k must be >= 2");
  return boost::multiprecision::pow(BigInt(2 * k), static_cast<unsigned>(2 * k));
}

BigRational eq4_fraction(int k) { return BigRational(eq4_numerator(k), eq4_denominator(k)); }

CountReport count_target_functions(int k, const EnumerationOptions &options) {
  require_power_of_two_root(k);
  const int n = 2 * k;
  if (n > 8) throw std::invalid_argument("count_target_functions: exhaustive enumeration needs 2k <= 8");
  const std::uint64_t tables = ipow(static_cast<std::uint64_t>(n), n);
  check_budget(static_cast<double>(tables), options, "count_target_functions");

  auto chunk = [n, k](std::uint64_t begin, std::uint64_t end) {
    Tally tally;
    std::vector<int> table(static_cast<std::size_t>(n));
    std::vector<int> block(static_cast<std::size_t>(n));
    auto readout = [k](int s) { return s >= k ? 1 : 0; };
    decode_table(begin, n, table);
    for (std::uint64_t t = begin; t < end; ++t, next_table(n, table)) {
      block_map(table, k, block);
      ++tally.total;
      if (orbit_alternates(block, readout, 0, 2 * n) && orbit_alternates(block, readout, k, 2 * n)) {
        ++tally.perfect;
      }
    }
    return tally;
  };
  const Tally tally = partitioned_enumeration(tables, resolve_workers(options.workers), chunk);

  CountReport report{.k = k,
                     .n_states = n,
                     .perfect_count = tally.perfect,
                     .total_count = tally.total,
                     .formula_numerator = eq4_numerator(k),
                     .formula_denominator = eq4_denominator(k),
                     .agrees = false};
  report.agrees = BigInt(report.perfect_count) * report.formula_denominator ==
                  report.formula_numerator * BigInt(report.total_count);
  return report;
}

DeterministicMachine single_cycle_machine(int k) {
  require_power_of_two_root(k);
  const int n = 2 * k;
  DeterministicMachine m{.n_states = n, .table = {}, .readout = {}, .start0 = 0, .start1 = k};
  for (int i = 0; i < n; ++i) {
    m.table.push_back((i + 1) % n);
    m.readout.push_back(i >= k ? 1 : 0);
  }
  return m;
}

CycleCount count_single_cycle_roots(int k) {
  require_power_of_two_root(k);
  const int n = 2 * k;
  if (n > 10) throw std::invalid_argument("count_single_cycle_roots: 2k <= 10 required");
  DeterministicMachine machine = single_cycle_machine(k);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  CycleCount count;
  do {
    // Single cycle: walking from 0 returns to 0 after exactly n steps.
    int s = 0, length = 0, at_k = -1;
    do {
      s = perm[static_cast<std::size_t>(s)];
      ++length;
      if (length == k) at_k = s;
    } while (s != 0 && length <= n);
    if (length != n || at_k != k) continue;
    ++count.cycles_with_starts_at_distance_k;
    machine.table = perm;
    if (is_perfect_root(machine, k)) ++count.perfect;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::string format_lemma_report(int k, std::span<const LemmaRow> rows) {
  std::ostringstream out;
  out << "Minimum-state scan for the " << k << "-th root of NOT (exhaustive)\n";
  for (const LemmaRow &row : rows) {
    out << "  N=" << row.n_states << ": " << row.perfect_count << " perfect of " << row.total_count
        << " machines" << (row.any_perfect() ? "" : "  (none)") << '\n';
  }
  const auto first =
      std::find_if(rows.begin(), rows.end(), [](const LemmaRow &r) { return r.any_perfect(); });
  if (first == rows.end()) {
    out << "  no perfect machine up to N=" << (rows.empty() ? 0 : rows.back().n_states) << '\n';
  } else {
    out << "  smallest N with a perfect machine: " << first->n_states << " (2k = " << 2 * k << ")\n";
  }
  return out.str();
}

std::string format_count_report(const CountReport &report) {
  std::ostringstream out;
  const BigRational formula(report.formula_numerator, report.formula_denominator);
  out << "Target functions for k=" << report.k << " on " << report.n_states << " states\n"
      << "  enumerated: " << report.perfect_count << " of " << report.total_count << '\n'
      << "  closed form: " << report.formula_numerator << " / " << report.formula_denominator
      << " = " << formula << '\n'
      << "  agreement: " << (report.agrees ? "yes" : "no") << '\n';
  return out.str();
}

void write_lemma_csv(std::ostream &out, int k, std::span<const LemmaRow> rows) {
  out << "k,N,perfect_count,total_count,any_perfect\n";
  for (const LemmaRow &row : rows) {
    out << k << ',' << row.n_states << ',' << row.perfect_count << ',' << row.total_count << ','
        << (row.any_perfect() ? 1 : 0) << '\n';
  }
}

void write_count_csv(std::ostream &out, const CountReport &report) {
  out << "k,N,perfect_count,total_count,formula_numerator,formula_denominator,agrees\n"
      << report.k << ',' << report.n_states << ',' << report.perfect_count << ','
      << report.total_count << ',' << report.formula_numerator << ',' << report.formula_denominator
      << ',' << (report.agrees ? 1 : 0) << '\n';
}

}  // namespace rootnot
