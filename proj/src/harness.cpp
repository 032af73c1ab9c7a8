#include "rootnot/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iterator>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rootnot {

MeritSeries run_single_seed(const ExperimentConfig &config, std::uint64_t seed) {
  MeritSeries series = config.machine == MachineKind::kQuantum
                           ? learn_quantum(config.quantum(), seed)
                           : learn_classical(config.classical(), seed);
  series.fingerprint = config.fingerprint();
  return series;
}

AggregateCurve aggregate(std::span<const MeritSeries> series, std::string label) {
  if (series.empty()) throw std::invalid_argument("aggregate: no series");
  const MeritSeries &ref = series.front();
  AggregateCurve curve;
  curve.label = std::move(label);
  curve.orders = ref.orders;
  for (const MeritPoint &p : ref.points) curve.checkpoints.push_back(p.trial_index);
  for (const MeritSeries &s : series) {
    if (s.orders != ref.orders || s.points.size() != ref.points.size()) {
      throw std::invalid_argument("aggregate: series have different shapes");
    }
    for (std::size_t c = 0; c < s.points.size(); ++c) {
      if (s.points[c].trial_index != curve.checkpoints[c]) {
        throw std::invalid_argument("aggregate: checkpoint grids differ");
      }
    }
  }

  std::vector<double> values(series.size());
  curve.stats.assign(curve.orders.size(), {});
  for (std::size_t o = 0; o < curve.orders.size(); ++o) {
    for (std::size_t c = 0; c < curve.checkpoints.size(); ++c) {
      for (std::size_t s = 0; s < series.size(); ++s) values[s] = series[s].points[c].values[o];
      // Sorting first makes every statistic, including the floating-point
      // sum, independent of seed order.
      std::sort(values.begin(), values.end());
      const std::size_t n = values.size();
      double sum = 0.0;
      for (double v : values) sum += v;
      const double median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
      curve.stats[o].push_back({median, sum / static_cast<double>(n), values.front(), values.back()});
    }
  }
  return curve;
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
  config.validate();
  ExperimentResult result{config, std::vector<MeritSeries>(config.seeds.size()), {}};

  unsigned workers = config.workers > 0 ? config.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(config.seeds.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++) {
      try {
        result.series[i] = run_single_seed(config, config.seeds[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.curve = aggregate(result.series, config.name);
  return result;
}

std::vector<PlotCurve> median_curves(const AggregateCurve &curve, const std::string &prefix) {
  std::vector<PlotCurve> out;
  std::vector<double> x(curve.checkpoints.begin(), curve.checkpoints.end());
  for (int n : curve.orders) {
    out.push_back({prefix + "P" + std::to_string(n), x, curve.medians(n)});
  }
  return out;
}

OutputFiles write_experiment(const ExperimentResult &result, const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string &stem = result.config.name;
  OutputFiles files;
  {
    std::ostringstream csv;
    write_series_csv(csv, result.series);
    files.series_csv = dir / (stem + ".csv");
    write_text_file(files.series_csv, csv.str());
  }
  for (const MeritSeries &s : result.series) {
    std::ostringstream csv;
    write_series_csv(csv, std::span(&s, 1));
    files.seed_csvs.push_back(dir / (stem + ".seed" + std::to_string(s.seed) + ".csv"));
    write_text_file(files.seed_csvs.back(), csv.str());
  }
  {
    std::ostringstream csv;
    write_aggregate_csv(csv, result.curve);
    files.aggregate_csv = dir / (stem + ".aggregate.csv");
    write_text_file(files.aggregate_csv, csv.str());
  }
  files.plot_svg = dir / (stem + ".svg");
  PlotOptions options;
  options.title = stem + " (median over " + std::to_string(result.series.size()) + " seeds)";
  emit_plot(median_curves(result.curve), files.plot_svg, options);
  return files;
}

namespace {

ExperimentConfig quantum_preset(std::string name, int k, std::vector<int> orders) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.machine = MachineKind::kQuantum;
  c.k = k;
  c.trial_budget = 100000;
  c.log_interval = 100;
  c.merit_orders = std::move(orders);
  c.sigma_gamma = kPi / 4.0;
  c.sigma_beta = kPi / 8.0;
  c.teacher = TeacherMode::kVariable;
  c.teacher_memory = 1;
  return c;
}

}  // namespace

std::vector<ExperimentConfig> preset_fig2() { return {quantum_preset("fig2", 4, {1, 5, 10})}; }

std::vector<ExperimentConfig> preset_fig3() {
  std::vector<ExperimentConfig> configs;
  for (std::int64_t m : {300, 100, 50}) {
    ExperimentConfig c = quantum_preset("fig3_M" + std::to_string(m), 4, {10});
    c.trial_budget = 500000;
    c.log_interval = 1000;
    c.teacher = TeacherMode::kFixed;
    c.teacher_memory = m;
    configs.push_back(std::move(c));
  }
  return configs;
}

std::vector<ExperimentConfig> preset_fig4() {
  struct Gains {
    int k;
    double success, failure;
  };
  std::vector<ExperimentConfig> configs;
  for (int k : {2, 4, 8}) configs.push_back(quantum_preset("fig4_quantum_k" + std::to_string(k), k, {10}));
  for (Gains g : {Gains{2, 0.25, 0.25}, Gains{4, 0.75, 0.75}, Gains{8, 0.75, 0.25}}) {
    ExperimentConfig c;
    c.name = "fig4_classical_k" + std::to_string(g.k);
    c.machine = MachineKind::kClassical;
    c.k = g.k;
    c.trial_budget = 100000;
    c.log_interval = 100;
    c.merit_orders = {10};
    c.K_s = g.success;
    c.K_f = g.failure;
    configs.push_back(std::move(c));
  }
  return configs;
}

namespace {

double sample_at(const std::vector<std::int64_t> &xs, const std::vector<double> &ys, std::int64_t x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto hi = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  if (xs[hi] == x) return ys[hi];
  const std::size_t lo = hi - 1;
  const double t = static_cast<double>(x - xs[lo]) / static_cast<double>(xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

CurveComparison compare_curves(const AggregateCurve &quantum, const AggregateCurve &classical, int order,
                               double threshold) {
  if (quantum.empty() || classical.empty()) throw std::invalid_argument("compare_curves: empty curve");
  CurveComparison cmp;
  cmp.order = order;
  cmp.threshold = threshold;
  std::set_union(quantum.checkpoints.begin(), quantum.checkpoints.end(), classical.checkpoints.begin(),
                 classical.checkpoints.end(), std::back_inserter(cmp.checkpoints));
  const std::vector<double> q = quantum.medians(order);
  const std::vector<double> c = classical.medians(order);
  for (std::int64_t x : cmp.checkpoints) {
    const double qv = sample_at(quantum.checkpoints, q, x);
    const double cv = sample_at(classical.checkpoints, c, x);
    cmp.quantum_median.push_back(qv);
    cmp.classical_median.push_back(cv);
    cmp.difference.push_back(qv - cv);
    if (!cmp.quantum_crossing && qv >= threshold) cmp.quantum_crossing = x;
    if (!cmp.classical_crossing && cv >= threshold) cmp.classical_crossing = x;
  }
  return cmp;
}

std::string format_comparison(const CurveComparison &cmp, const std::string &title) {
  std::ostringstream out;
  if (!title.empty()) out << title << '\n';
  auto crossing = [](const std::optional<std::int64_t> &x) {
    return x ? "trial " + std::to_string(*x) : std::string("not reached");
  };
  out << "  P" << cmp.order << " threshold " << format_real(cmp.threshold) << ": quantum "
      << crossing(cmp.quantum_crossing) << ", classical " << crossing(cmp.classical_crossing) << '\n';
  if (!cmp.checkpoints.empty()) {
    out << "  final median P" << cmp.order << ": quantum " << format_real(cmp.quantum_median.back())
        << ", classical " << format_real(cmp.classical_median.back()) << ", difference "
        << format_real(cmp.difference.back()) << '\n';
  }
  return out.str();
}

}  // namespace rootnot
