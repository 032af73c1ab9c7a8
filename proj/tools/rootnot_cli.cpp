// rootnot: learning experiments and exhaustive oracles for the k-th root of NOT.
//
//   rootnot learn-quantum   [--config F] [--seeds 1-20] [--override k=8] [--out DIR]
//   rootnot learn-classical [...]
//   rootnot compare         [--quantum-csv A --classical-csv B] | [--k 4]
//   rootnot oracle-lemma    --k 2 --n-max 4
//   rootnot oracle-count    --k 2
//   rootnot fig2 | fig3 | fig4

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rootnot/harness.hpp"
#include "rootnot/oracle.hpp"

namespace fs = std::filesystem;
using namespace rootnot;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_dir = "rootnot-out";
  std::string seeds;
  std::vector<std::string> overrides;
  unsigned workers = 0;
};

ExperimentConfig resolve(ExperimentConfig base, const GlobalOptions &g) {
  if (!g.config_path.empty()) base = load_config(g.config_path, std::move(base));
  if (!g.seeds.empty()) base.seeds = parse_seed_list(g.seeds);
  for (const std::string &o : g.overrides) apply_override(base, o);
  if (g.workers > 0) base.workers = g.workers;
  base.validate();
  return base;
}

void print_summary(const ExperimentResult &result, const OutputFiles &files) {
  const AggregateCurve &c = result.curve;
  std::cout << result.config.name << ": " << to_string(result.config.machine) << " k=" << result.config.k
            << ", " << result.series.size() << " seeds, " << result.config.trial_budget << " trials\n";
  for (int n : c.orders) {
    const CurveStats &last = c.for_order(n).back();
    std::cout << "  final P" << n << ": median " << format_real(last.median) << "  min " << format_real(last.min)
              << "  max " << format_real(last.max) << '\n';
  }
  std::cout << "  wrote " << files.series_csv.string() << ", " << files.aggregate_csv.string() << ", "
            << files.plot_svg.string() << '\n';
}

ExperimentConfig resolve_machine(ExperimentConfig base, const GlobalOptions &g) {
  const MachineKind wanted = base.machine;
  ExperimentConfig config = resolve(std::move(base), g);
  if (config.machine != wanted) {
    throw ConfigError("machine", "this subcommand runs the " + std::string(to_string(wanted)) + " learner");
  }
  return config;
}

ExperimentResult run_and_write(const ExperimentConfig &config, const GlobalOptions &g) {
  ExperimentResult result = run_experiment(config);
  print_summary(result, write_experiment(result, g.out_dir));
  return result;
}

AggregateCurve load_aggregate(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_aggregate_csv(in, fs::path(path).stem().string());
}

void write_report(const fs::path &path, const std::string &text) {
  write_text_file(path, text);
  std::cout << "  wrote " << path.string() << '\n';
}

std::vector<ExperimentConfig> resolve_all(std::vector<ExperimentConfig> presets, const GlobalOptions &g) {
  for (ExperimentConfig &c : presets) c = resolve(std::move(c), g);
  return presets;
}

void run_fig2(const GlobalOptions &g) {
  const auto configs = resolve_all(preset_fig2(), g);
  run_and_write(configs.front(), g);
}

void run_fig3(const GlobalOptions &g) {
  std::vector<PlotCurve> curves;
  for (const ExperimentConfig &c : resolve_all(preset_fig3(), g)) {
    ExperimentResult r = run_and_write(c, g);
    for (PlotCurve &pc : median_curves(r.curve, "M=" + std::to_string(c.teacher_memory) + " ")) {
      curves.push_back(std::move(pc));
    }
  }
  fs::create_directories(g.out_dir);
  emit_plot(curves, fs::path(g.out_dir) / "fig3.svg", {.title = "fixed teacher memory, k=4"});
}

void run_fig4(const GlobalOptions &g) {
  std::vector<ExperimentResult> results;
  std::vector<PlotCurve> curves;
  for (const ExperimentConfig &c : resolve_all(preset_fig4(), g)) {
    results.push_back(run_and_write(c, g));
    const std::string prefix = std::string(c.machine == MachineKind::kQuantum ? "QL" : "CL") + " k=" +
                               std::to_string(c.k) + " ";
    for (PlotCurve &pc : median_curves(results.back().curve, prefix)) curves.push_back(std::move(pc));
  }
  fs::create_directories(g.out_dir);
  emit_plot(curves, fs::path(g.out_dir) / "fig4.svg", {.title = "quantum vs classical learning"});

  std::string report;
  const std::size_t half = results.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const ExperimentResult &q = results[i];
    const ExperimentResult &c = results[i + half];
    const int order = q.config.merit_orders.front();
    report += format_comparison(compare_curves(q.curve, c.curve, order), "k=" + std::to_string(q.config.k));
  }
  std::cout << report;
  write_report(fs::path(g.out_dir) / "fig4.compare.txt", report);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Learning the k-th root of NOT: quantum and classical learners, exact merits, oracles"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "key=value experiment file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--seeds", g.seeds, "seed list, e.g. 1-20 or 3,5,7");
  app.add_option("--override", g.overrides, "KEY=VALUE applied after the config file (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--workers", g.workers, "concurrent seeds (0 = hardware concurrency)");

  auto *learn_q = app.add_subcommand("learn-quantum", "random-walk learner over single-qubit unitaries");
  auto *learn_c = app.add_subcommand("learn-classical", "reward/penalty learner over a 2k-state machine");

  auto *compare = app.add_subcommand("compare", "compare quantum and classical median curves");
  std::string quantum_csv, classical_csv;
  int compare_k = 4, compare_order = 10;
  double threshold = 0.9;
  compare->add_option("--quantum-csv", quantum_csv, "aggregate CSV of a quantum run");
  compare->add_option("--classical-csv", classical_csv, "aggregate CSV of a classical run");
  compare->add_option("--k", compare_k, "run the figure-4 pair for this k when no CSVs are given");
  compare->add_option("--order", compare_order, "n of the compared P^n")->capture_default_str();
  compare->add_option("--threshold", threshold, "crossing threshold")->capture_default_str();

  auto *lemma = app.add_subcommand("oracle-lemma", "exhaustive minimum-state scan");
  int lemma_k = 2, n_max = 4;
  bool force = false;
  lemma->add_option("--k", lemma_k, "root order (power of two)")->capture_default_str();
  lemma->add_option("--n-max", n_max, "largest machine size scanned")->capture_default_str();
  lemma->add_flag("--force", force, "ignore the enumeration work budget");

  auto *count = app.add_subcommand("oracle-count", "count target functions and evaluate the closed form");
  int count_k = 2;
  count->add_option("--k", count_k, "root order (2 or 4)")->capture_default_str();
  count->add_flag("--force", force, "ignore the enumeration work budget");

  auto *fig2 = app.add_subcommand("fig2", "quantum k=4, variable teacher memory, P1/P5/P10");
  auto *fig3 = app.add_subcommand("fig3", "quantum k=4, fixed teacher memory 300/100/50, P10");
  auto *fig4 = app.add_subcommand("fig4", "quantum vs classical, k=2,4,8, P10");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  try {
    if (*learn_q) {
      ExperimentConfig base;
      base.name = "quantum";
      run_and_write(resolve_machine(base, g), g);
    } else if (*learn_c) {
      ExperimentConfig base;
      base.name = "classical";
      base.machine = MachineKind::kClassical;
      base.k = 2;
      run_and_write(resolve_machine(base, g), g);
    } else if (*compare) {
      AggregateCurve q, c;
      std::string title;
      if (!quantum_csv.empty() || !classical_csv.empty()) {
        if (quantum_csv.empty() || classical_csv.empty()) {
          throw std::invalid_argument("compare needs both --quantum-csv and --classical-csv");
        }
        q = load_aggregate(quantum_csv);
        c = load_aggregate(classical_csv);
        title = q.label + " vs " + c.label;
      } else {
        std::vector<ExperimentConfig> pair;
        for (const ExperimentConfig &cfg : preset_fig4()) {
          if (cfg.k == compare_k) pair.push_back(cfg);
        }
        if (pair.size() != 2) throw std::invalid_argument("compare --k must be 2, 4 or 8");
        q = run_and_write(resolve(pair[0], g), g).curve;
        c = run_and_write(resolve(pair[1], g), g).curve;
        title = "k=" + std::to_string(compare_k);
      }
      std::cout << format_comparison(compare_curves(q, c, compare_order, threshold), title);
    } else if (*lemma) {
      EnumerationOptions options{.override_budget = force};
      if (g.workers > 0) options.workers = g.workers;
      const auto rows = lemma_scan(lemma_k, n_max, options);
      std::cout << format_lemma_report(lemma_k, rows);
      std::ostringstream csv;
      write_lemma_csv(csv, lemma_k, rows);
      fs::create_directories(g.out_dir);
      write_report(fs::path(g.out_dir) / ("lemma_k" + std::to_string(lemma_k) + ".csv"), csv.str());
    } else if (*count) {
      EnumerationOptions options{.override_budget = force};
      if (g.workers > 0) options.workers = g.workers;
      const CountReport report = count_target_functions(count_k, options);
      std::cout << format_count_report(report);
      std::ostringstream csv;
      write_count_csv(csv, report);
      fs::create_directories(g.out_dir);
      write_report(fs::path(g.out_dir) / ("count_k" + std::to_string(count_k) + ".csv"), csv.str());
    } else if (*fig2) {
      run_fig2(g);
    } else if (*fig3) {
      run_fig3(g);
    } else if (*fig4) {
      run_fig4(g);
    }
  } catch (const std::exception &e) {
    std::cerr << "rootnot: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
