#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rootnot/config.hpp"
#include "rootnot/merit.hpp"
#include "rootnot/plot.hpp"
#include "rootnot/series_io.hpp"

namespace rootnot {

// Runs one learner. The series fingerprint is the config's fingerprint.
MeritSeries run_single_seed(const ExperimentConfig &config, std::uint64_t seed);

// Median/mean/min/max per checkpoint across seeds. The result does not
// depend on the order of `series`. All series must share their checkpoint
// grid and merit orders.
AggregateCurve aggregate(std::span<const MeritSeries> series, std::string label = {});

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<MeritSeries> series;  // in config.seeds order
  AggregateCurve curve;
};

// One learner per seed, up to config.workers at a time; each worker owns its
// learner and random stream, so output is identical for any worker count.
ExperimentResult run_experiment(const ExperimentConfig &config);

struct OutputFiles {
  std::filesystem::path series_csv;     // <name>.csv, every seed
  std::vector<std::filesystem::path> seed_csvs;  // <name>.seed<S>.csv
  std::filesystem::path aggregate_csv;  // <name>.aggregate.csv
  std::filesystem::path plot_svg;       // <name>.svg, median P^n curves
};

OutputFiles write_experiment(const ExperimentResult &result, const std::filesystem::path &dir);

// Median curves of every merit order, labeled "<prefix>P<n>".
std::vector<PlotCurve> median_curves(const AggregateCurve &curve, const std::string &prefix = {});

// Parameter sets of the three published figures (seeds 1..20).
std::vector<ExperimentConfig> preset_fig2();
std::vector<ExperimentConfig> preset_fig3();
std::vector<ExperimentConfig> preset_fig4();

struct CurveComparison {
  int order = 10;
  double threshold = 0.9;
  std::vector<std::int64_t> checkpoints;  // union grid
  std::vector<double> quantum_median;
  std::vector<double> classical_median;
  std::vector<double> difference;  // quantum - classical
  std::optional<std::int64_t> quantum_crossing;    // first checkpoint >= threshold
  std::optional<std::int64_t> classical_crossing;
};

// Resamples both median curves of P^order onto the union of their
// checkpoints (linear interpolation, held constant past the last point).
CurveComparison compare_curves(const AggregateCurve &quantum, const AggregateCurve &classical,
                               int order = 10, double threshold = 0.9);
std::string format_comparison(const CurveComparison &comparison, const std::string &title = {});

}  // namespace rootnot
