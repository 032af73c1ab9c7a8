#include "rootnot/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rootnot {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(trim(s.substr(pos, next == std::string_view::npos ? next : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

template <typename T>
bool parse_number(std::string_view text, T &out) {
  text = trim(text);
  if (text.empty()) return false;
  const char *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

template <typename T>
T require_number(std::string_view field, std::string_view text) {
  T value{};
  if (!parse_number(text, value)) {
    throw ConfigError(std::string(field), "not a valid number: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(MachineKind kind) {
  return kind == MachineKind::kQuantum ? "quantum" : "classical";
}

std::vector<std::uint64_t> ExperimentConfig::default_seeds() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  return seeds;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (std::string_view item : split(text, ',')) {
    if (item.empty()) throw ConfigError("seeds", "empty entry in seed list");
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      seeds.push_back(require_number<std::uint64_t>("seeds", item));
      continue;
    }
    const auto lo = require_number<std::uint64_t>("seeds", item.substr(0, dash));
    const auto hi = require_number<std::uint64_t>("seeds", item.substr(dash + 1));
    if (hi < lo) throw ConfigError("seeds", "descending range '" + std::string(item) + "'");
    if (hi - lo > 1000000) throw ConfigError("seeds", "range too large");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  return seeds;
}

double parse_angle(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  if (parse_number(text, value)) return value;
  const auto pi_at = text.find("pi");
  if (pi_at == std::string_view::npos) {
    throw std::invalid_argument("not an angle: '" + std::string(text) + "'");
  }
  double scale = 1.0;
  std::string_view head = trim(text.substr(0, pi_at));
  std::string_view tail = trim(text.substr(pi_at + 2));
  if (!head.empty()) {
    if (head.back() != '*' || !parse_number(head.substr(0, head.size() - 1), scale)) {
      throw std::invalid_argument("not an angle: '" + std::string(text) + "'");
    }
  }
  if (!tail.empty()) {
    double divisor = 0.0;
    if (tail.front() != '/' || !parse_number(tail.substr(1), divisor) || divisor == 0.0) {
      throw std::invalid_argument("not an angle: '" + std::string(text) + "'");
    }
    scale /= divisor;
  }
  return scale * kPi;
}

void ExperimentConfig::set(std::string_view key, std::string_view raw) {
  const std::string field(trim(key));
  const std::string_view value = trim(raw);
  auto angle = [&] {
    try {
      return parse_angle(value);
    } catch (const std::invalid_argument &e) {
      throw ConfigError(field, e.what());
    }
  };

  if (field == "name") {
    if (value.empty() || value.find_first_of("/\\") != std::string_view::npos) {
      throw ConfigError(field, "must be a non-empty file stem");
    }
    name = std::string(value);
  } else if (field == "machine") {
    if (value == "quantum") {
      machine = MachineKind::kQuantum;
    } else if (value == "classical") {
      machine = MachineKind::kClassical;
    } else {
      throw ConfigError(field, "expected quantum or classical, got '" + std::string(value) + "'");
    }
  } else if (field == "k") {
    k = require_number<int>(field, value);
  } else if (field == "trial_budget") {
    trial_budget = require_number<std::int64_t>(field, value);
  } else if (field == "log_interval") {
    log_interval = require_number<std::int64_t>(field, value);
  } else if (field == "merit_orders") {
    merit_orders.clear();
    for (std::string_view item : split(value, ',')) merit_orders.push_back(require_number<int>(field, item));
  } else if (field == "sigma_gamma") {
    sigma_gamma = angle();
  } else if (field == "sigma_beta" || field == "sigma_delta") {
    sigma_beta = angle();
  } else if (field == "teacher") {
    if (value == "variable") {
      teacher = TeacherMode::kVariable;
    } else if (value == "fixed") {
      teacher = TeacherMode::kFixed;
    } else {
      throw ConfigError(field, "expected variable or fixed, got '" + std::string(value) + "'");
    }
  } else if (field == "teacher_memory" || field == "M") {
    teacher_memory = require_number<std::int64_t>("teacher_memory", value);
  } else if (field == "K_s") {
    K_s = require_number<double>(field, value);
  } else if (field == "K_f") {
    K_f = require_number<double>(field, value);
  } else if (field == "seeds") {
    seeds = parse_seed_list(value);
  } else if (field == "workers") {
    workers = require_number<unsigned>(field, value);
  } else {
    throw ConfigError(field, "unknown configuration key");
  }
}

void ExperimentConfig::validate() const {
  if (!is_power_of_two_root(k)) throw ConfigError("k", "must be a power of two >= 2");
  if (trial_budget < 0) throw ConfigError("trial_budget", "must be >= 0");
  if (log_interval < 1) throw ConfigError("log_interval", "must be >= 1");
  if (merit_orders.empty()) throw ConfigError("merit_orders", "must not be empty");
  for (int n : merit_orders) {
    if (n < 1) throw ConfigError("merit_orders", "every n must be >= 1");
  }
  if (seeds.empty()) throw ConfigError("seeds", "must not be empty");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) {
      if (seeds[i] == seeds[j]) throw ConfigError("seeds", "duplicate seed " + std::to_string(seeds[i]));
    }
  }
  if (machine == MachineKind::kQuantum) {
    if (!(std::isfinite(sigma_gamma) && sigma_gamma > 0.0)) throw ConfigError("sigma_gamma", "must be > 0");
    if (!(std::isfinite(sigma_beta) && sigma_beta > 0.0)) throw ConfigError("sigma_beta", "must be > 0");
    if (teacher_memory < 1) throw ConfigError("teacher_memory", "must be >= 1");
  } else {
    if (!(K_s >= 0.0 && K_s <= 1.0)) throw ConfigError("K_s", "must lie in [0,1]");
    if (!(K_f >= 0.0 && K_f <= 1.0)) throw ConfigError("K_f", "must lie in [0,1]");
  }
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  auto join = [](const auto &values) {
    std::string s;
    for (const auto &v : values) {
      if (!s.empty()) s += ',';
      s += std::to_string(v);
    }
    return s;
  };
  out << "name=" << name << '\n'
      << "machine=" << to_string(machine) << '\n'
      << "k=" << k << '\n'
      << "trial_budget=" << trial_budget << '\n'
      << "log_interval=" << log_interval << '\n'
      << "merit_orders=" << join(merit_orders) << '\n';
  if (machine == MachineKind::kQuantum) {
    out << "sigma_gamma=" << format_double(sigma_gamma) << '\n'
        << "sigma_beta=" << format_double(sigma_beta) << '\n'
        << "teacher=" << (teacher == TeacherMode::kVariable ? "variable" : "fixed") << '\n'
        << "teacher_memory=" << teacher_memory << '\n';
  } else {
    out << "K_s=" << format_double(K_s) << '\n' << "K_f=" << format_double(K_f) << '\n';
  }
  out << "seeds=" << join(seeds) << '\n';
  return out.str();
}

std::string ExperimentConfig::fingerprint() const {
  std::string text = to_text();
  // Seeds and worker count do not change what a single series means.
  const auto seeds_at = text.find("seeds=");
  text.erase(seeds_at);
  for (char &c : text) {
    if (c == '\n') c = ';';
  }
  if (!text.empty() && text.back() == ';') text.pop_back();
  return text;
}

QuantumConfig ExperimentConfig::quantum() const {
  QuantumConfig q;
  q.k = k;
  q.trial_budget = trial_budget;
  q.log_interval = log_interval;
  q.merit_orders = merit_orders;
  q.widths = {sigma_gamma, sigma_beta};
  q.schedule = {teacher, teacher_memory};
  return q;
}

ClassicalConfig ExperimentConfig::classical() const {
  ClassicalConfig c;
  c.k = k;
  c.trial_budget = trial_budget;
  c.log_interval = log_interval;
  c.merit_orders = merit_orders;
  c.gains = {K_s, K_f};
  return c;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected key=value");
    }
    base.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path &path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

void apply_override(ExperimentConfig &config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(std::string(assignment), "override must have the form KEY=VALUE");
  }
  config.set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

}  // namespace rootnot
