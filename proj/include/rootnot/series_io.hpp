#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rootnot/merit.hpp"

namespace rootnot {

// Per-checkpoint statistics of one P^n across seeds.
struct CurveStats {
  double median = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const CurveStats &, const CurveStats &) = default;
};

struct AggregateCurve {
  std::string label;
  std::vector<std::int64_t> checkpoints;
  std::vector<int> orders;
  // stats[o][c]: order orders[o] at checkpoint checkpoints[c]
  std::vector<std::vector<CurveStats>> stats;

  const std::vector<CurveStats> &for_order(int n) const;
  std::vector<double> medians(int n) const;
  bool empty() const { return checkpoints.empty(); }

  friend bool operator==(const AggregateCurve &, const AggregateCurve &) = default;
};

// Series CSV. Header: trial,seed,k,machine,M,P<n>... (one column per merit
// order); one row per (seed, checkpoint); reals printed with %.17g.
void write_series_csv(std::ostream &out, std::span<const MeritSeries> series);
std::vector<MeritSeries> read_series_csv(std::istream &in);

// Aggregate CSV. Header: trial,n,median,mean,min,max; rows ordered by n then
// trial.
void write_aggregate_csv(std::ostream &out, const AggregateCurve &curve);
AggregateCurve read_aggregate_csv(std::istream &in, std::string label = {});

std::string format_real(double value);

// Writes `content` to `path`; throws std::runtime_error naming the path.
void write_text_file(const std::filesystem::path &path, const std::string &content);

}  // namespace rootnot
