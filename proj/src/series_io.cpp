#include "rootnot/series_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace rootnot {

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> fields;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) fields.push_back(cell);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string &why) {
  throw std::runtime_error("CSV line " + std::to_string(line_no) + ": " + why);
}

template <typename T>
T parse_field(const std::string &cell, std::size_t line_no) {
  try {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_same_v<T, double>) {
      value = std::stod(cell, &used);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      value = std::stoull(cell, &used);
    } else {
      value = static_cast<T>(std::stoll(cell, &used));
    }
    if (used != cell.size()) malformed(line_no, "trailing characters in '" + cell + "'");
    return value;
  } catch (const std::logic_error &) {
    malformed(line_no, "bad number '" + cell + "'");
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

const std::vector<CurveStats> &AggregateCurve::for_order(int n) const {
  auto it = std::find(orders.begin(), orders.end(), n);
  if (it == orders.end()) throw std::out_of_range("curve has no P^" + std::to_string(n));
  return stats[static_cast<std::size_t>(it - orders.begin())];
}

std::vector<double> AggregateCurve::medians(int n) const {
  std::vector<double> out;
  for (const CurveStats &s : for_order(n)) out.push_back(s.median);
  return out;
}

void write_series_csv(std::ostream &out, std::span<const MeritSeries> series) {
  if (series.empty()) throw std::invalid_argument("write_series_csv: no series");
  const std::vector<int> &orders = series.front().orders;
  out << "trial,seed,k,machine,M";
  for (int n : orders) out << ",P" << n;
  out << '\n';
  for (const MeritSeries &s : series) {
    if (s.orders != orders) throw std::invalid_argument("write_series_csv: merit orders differ");
    for (const MeritPoint &p : s.points) {
      out << p.trial_index << ',' << s.seed << ',' << s.k << ',' << s.machine << ','
          << p.teacher_memory;
      for (double v : p.values) out << ',' << format_real(v);
      out << '\n';
    }
  }
}

std::vector<MeritSeries> read_series_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV: empty input");
  const auto header = split_csv_line(line);
  if (header.size() < 6 || header[0] != "trial" || header[1] != "seed" || header[2] != "k" ||
      header[3] != "machine" || header[4] != "M") {
    malformed(1, "expected header trial,seed,k,machine,M,P<n>...");
  }
  std::vector<int> orders;
  for (std::size_t i = 5; i < header.size(); ++i) {
    if (header[i].size() < 2 || header[i][0] != 'P') malformed(1, "bad merit column " + header[i]);
    orders.push_back(parse_field<int>(header[i].substr(1), 1));
  }

  std::vector<MeritSeries> result;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) malformed(line_no, "wrong column count");
    const auto seed = parse_field<std::uint64_t>(f[1], line_no);
    const int k = parse_field<int>(f[2], line_no);
    if (result.empty() || result.back().seed != seed) {
      result.push_back({.machine = f[3], .fingerprint = {}, .k = k, .seed = seed, .orders = orders, .points = {}});
    }
    MeritSeries &s = result.back();
    if (s.machine != f[3] || s.k != k) malformed(line_no, "machine or k changes within a seed");
    MeritPoint p{parse_field<std::int64_t>(f[0], line_no), parse_field<std::int64_t>(f[4], line_no), {}};
    for (std::size_t i = 5; i < f.size(); ++i) p.values.push_back(parse_field<double>(f[i], line_no));
    if (!s.points.empty() && p.trial_index <= s.points.back().trial_index) {
      malformed(line_no, "trial index not increasing");
    }
    s.points.push_back(std::move(p));
  }
  return result;
}

void write_aggregate_csv(std::ostream &out, const AggregateCurve &curve) {
  out << "trial,n,median,mean,min,max\n";
  for (std::size_t o = 0; o < curve.orders.size(); ++o) {
    for (std::size_t c = 0; c < curve.checkpoints.size(); ++c) {
      const CurveStats &s = curve.stats[o][c];
      out << curve.checkpoints[c] << ',' << curve.orders[o] << ',' << format_real(s.median) << ','
          << format_real(s.mean) << ',' << format_real(s.min) << ',' << format_real(s.max) << '\n';
    }
  }
}

AggregateCurve read_aggregate_csv(std::istream &in, std::string label) {
  std::string line;
  if (!std::getline(in, line) || line != "trial,n,median,mean,min,max") {
    malformed(1, "expected header trial,n,median,mean,min,max");
  }
  AggregateCurve curve;
  curve.label = std::move(label);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) malformed(line_no, "wrong column count");
    const auto trial = parse_field<std::int64_t>(f[0], line_no);
    const int n = parse_field<int>(f[1], line_no);
    if (curve.orders.empty() || curve.orders.back() != n) {
      curve.orders.push_back(n);
      curve.stats.emplace_back();
    }
    if (curve.orders.size() == 1) {
      curve.checkpoints.push_back(trial);
    } else if (curve.stats.back().size() >= curve.checkpoints.size() ||
               curve.checkpoints[curve.stats.back().size()] != trial) {
      malformed(line_no, "checkpoints differ between merit orders");
    }
    curve.stats.back().push_back({parse_field<double>(f[2], line_no), parse_field<double>(f[3], line_no),
                                  parse_field<double>(f[4], line_no), parse_field<double>(f[5], line_no)});
  }
  for (const auto &column : curve.stats) {
    if (column.size() != curve.checkpoints.size()) malformed(line_no, "ragged aggregate table");
  }
  return curve;
}

void write_text_file(const std::filesystem::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace rootnot
