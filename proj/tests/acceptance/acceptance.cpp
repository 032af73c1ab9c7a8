// Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rootnot/harness.hpp"
#include "rootnot/oracle.hpp"

using namespace rootnot;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string &what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char *pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double final_median(const AggregateCurve &curve, int n) { return curve.medians(n).back(); }

ExperimentResult run_preset(const ExperimentConfig &c) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult r = run_experiment(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "  ran %s (%zu seeds) in %.1f s\n", c.name.c_str(), c.seeds.size(), secs);
  return r;
}

ExperimentConfig find_preset(const std::vector<ExperimentConfig> &presets, const std::string &name) {
  for (const auto &c : presets) {
    if (c.name == name) return c;
  }
  throw std::logic_error("no preset " + name);
}

Outcome exact_root() {
  Outcome o;
  double worst = 0.0;
  for (int k : {2, 4, 8, 16}) {
    for (int n = 1; n <= 20; ++n) worst = std::max(worst, std::abs(quantum_merit(exact_root_unitary(k), k, n) - 1.0));
  }
  o.require(worst <= 1e-9, "max |P^n - 1| = " + fmt("%.3g", worst) + " (tol 1e-9)");
  return o;
}

Outcome lemma() {
  Outcome o;
  const auto k2 = lemma_scan(2, 4);
  o.require(k2[0].perfect_count == 0 && k2[1].perfect_count == 0, "k=2: none at N=2,3");
  o.require(k2[2].perfect_count > 0, "k=2: " + std::to_string(k2[2].perfect_count) + " perfect at N=4");
  const auto k4 = lemma_scan(4, 6);
  bool none = true;
  for (const auto &row : k4) none = none && row.perfect_count == 0;
  o.require(none, "k=4: none at N=2..6");
  return o;
}

Outcome eq4() {
  Outcome o;
  o.require(eq4_fraction(2) == BigRational(4, 256), "eq4(2) = 4/256");
  const CountReport r = count_target_functions(2);
  o.require(r.total_count == 256, "enumerated " + std::to_string(r.total_count) + " functions");
  o.require(r.formula_numerator == 4 && r.formula_denominator == 256,
            "exhaustive count " + std::to_string(r.perfect_count) + " recorded against formula 4, agreement " +
                (r.agrees ? "yes" : "no"));
  return o;
}

Outcome drift() {
  Outcome o;
  RandomStream rng = make_stream(101);
  ClassicalMachine m = ClassicalMachine::uniform(4);
  std::int64_t updates = 0;
  int start = 0;
  while (updates < 1000000) {
    const Trajectory t = m.sample_block(start, rng);
    const double gain = 0.05 + 0.9 * uniform01(rng);
    if (fair_bit(rng)) {
      m.reinforce(t, gain);
    } else {
      m.punish(t, gain);
    }
    updates += static_cast<std::int64_t>(t.size()) - 1;
    start = t.back();
  }
  o.require(m.max_row_sum_deviation() <= 1e-6, "row sums within " + fmt("%.3g", m.max_row_sum_deviation()) +
                                                    " after 1e6 updates (tol 1e-6)");
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    worst = std::max(worst, unitary_power(euler_to_unitary(haar_random_angles(rng)), 10000).unitarity_deviation());
  }
  o.require(worst <= 1e-10, "unitarity deviation " + fmt("%.3g", worst) + " after U^10000 (tol 1e-10)");
  return o;
}

Outcome merit_cross_check() {
  Outcome o;
  RandomStream rng = make_stream(202);
  std::exponential_distribution<double> e(1.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int k = t % 2 == 0 ? 2 : 4;
    const int n = 2 * k;
    Eigen::MatrixXd p(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) p(i, j) = uniform01(rng) < 0.5 ? 0.0 : e(rng);
      if (p.row(i).sum() == 0.0) p(i, (i + 1) % n) = 1.0;
      p.row(i) /= p.row(i).sum();
    }
    const ClassicalMachine m = ClassicalMachine::from_matrix(k, p);
    const int order = 1 + t % 10;
    worst = std::max(worst, std::abs(classical_merit(m, order) - classical_merit_mc(m, order, 100000, rng)));
  }
  o.require(worst <= 0.006, "max |exact - MC| = " + fmt("%.4f", worst) + " over 20 machines (tol 0.006)");
  return o;
}

Outcome fig2() {
  Outcome o;
  const ExperimentResult r = run_preset(preset_fig2().front());
  const double p1 = final_median(r.curve, 1), p10 = final_median(r.curve, 10);
  o.require(p1 >= 0.95, "median P1 = " + fmt("%.4f", p1) + " (>= 0.95)");
  o.require(p1 >= p10 - 0.05, "median P10 = " + fmt("%.4f", p10) + " (P1 >= P10 - 0.05)");
  return o;
}

Outcome fig3() {
  Outcome o;
  const auto presets = preset_fig3();
  const double m300 = final_median(run_preset(find_preset(presets, "fig3_M300")).curve, 10);
  const double m50 = final_median(run_preset(find_preset(presets, "fig3_M50")).curve, 10);
  o.require(m300 > m50, "median P10: M=300 " + fmt("%.4f", m300) + " vs M=50 " + fmt("%.4f", m50));
  return o;
}

Outcome fig4() {
  Outcome o;
  const auto presets = preset_fig4();
  auto p10 = [&](const std::string &name) { return final_median(run_preset(find_preset(presets, name)).curve, 10); };
  const double c2 = p10("fig4_classical_k2"), c4 = p10("fig4_classical_k4"), c8 = p10("fig4_classical_k8");
  const double q4 = p10("fig4_quantum_k4"), q8 = p10("fig4_quantum_k8");
  o.require(q4 > c4, "k=4 quantum " + fmt("%.4f", q4) + " > classical " + fmt("%.4f", c4));
  o.require(q8 > c8, "k=8 quantum " + fmt("%.4f", q8) + " > classical " + fmt("%.4f", c8));
  o.require(c8 >= 0.45 && c8 <= 0.55, "classical k=8 " + fmt("%.4f", c8) + " in [0.45, 0.55]");
  o.require(c2 >= 0.9, "classical k=2 " + fmt("%.4f", c2) + " >= 0.9");
  return o;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const auto root = std::filesystem::temp_directory_path() / "rootnot_acceptance_determinism";
  std::filesystem::remove_all(root);
  for (ExperimentConfig c : {preset_fig2().front(), find_preset(preset_fig4(), "fig4_classical_k4")}) {
    c.trial_budget = 5000;
    c.seeds = {1, 2, 3, 4};
    const OutputFiles a = write_experiment(run_experiment(c), root / "a");
    const OutputFiles b = write_experiment(run_experiment(c), root / "b");
    bool same = slurp(a.series_csv) == slurp(b.series_csv) && slurp(a.aggregate_csv) == slurp(b.aggregate_csv) &&
                slurp(a.plot_svg) == slurp(b.plot_svg);
    for (std::size_t i = 0; i < a.seed_csvs.size(); ++i) same = same && slurp(a.seed_csvs[i]) == slurp(b.seed_csvs[i]);
    o.require(same, c.name + " CSV and SVG byte-identical");
  }
  std::filesystem::remove_all(root);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
      {"1 exact-root merit", exact_root},
      {"2 minimal state count", lemma},
      {"3 target-function count", eq4},
      {"4 stochasticity and unitarity drift", drift},
      {"5 classical merit exact vs Monte Carlo", merit_cross_check},
      {"6 variable-memory quantum learning", fig2},
      {"7 teacher memory ordering", fig3},
      {"8 quantum vs classical learning", fig4},
      {"9 determinism", determinism},
  };
  int failures = 0;
  for (const auto &[name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %s  [%.1f s]  %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
