#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rootnot/harness.hpp"
#include "rootnot/oracle.hpp"

namespace py = pybind11;
using namespace rootnot;

namespace {

Eigen::Matrix2cd to_matrix(const Unitary2 &u) {
  Eigen::Matrix2cd m;
  m << u(0, 0), u(0, 1), u(1, 0), u(1, 1);
  return m;
}

Unitary2 from_matrix(const Eigen::Matrix2cd &m) { return Unitary2{m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

py::object to_fraction(const BigInt &num, const BigInt &den) {
  return py::module_::import("fractions").attr("Fraction")(py::int_(py::str(num.str())), py::int_(py::str(den.str())));
}

py::dict point_dict(const MeritSeries &s, const MeritPoint &p) {
  py::dict values;
  for (std::size_t i = 0; i < s.orders.size(); ++i) values[py::int_(s.orders[i])] = p.values[i];
  py::dict d;
  d["trial"] = p.trial_index;
  d["M"] = p.teacher_memory;
  d["P"] = values;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rootnot, m) {
  m.doc() = "Learning k-th roots of NOT with quantum and classical machines";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<EulerAngles>(m, "EulerAngles")
      .def(py::init([](double beta, double delta, double gamma) { return EulerAngles::normalized(beta, delta, gamma); }),
           py::arg("beta"), py::arg("delta"), py::arg("gamma"))
      .def_readonly("beta", &EulerAngles::beta)
      .def_readonly("delta", &EulerAngles::delta)
      .def_readonly("gamma", &EulerAngles::gamma)
      .def("__eq__", [](const EulerAngles &a, const EulerAngles &b) { return a == b; })
      .def("__repr__", [](const EulerAngles &a) {
        return "EulerAngles(beta=" + format_real(a.beta) + ", delta=" + format_real(a.delta) +
               ", gamma=" + format_real(a.gamma) + ")";
      });

  m.def("euler_to_unitary", [](const EulerAngles &a) { return to_matrix(euler_to_unitary(a)); }, py::arg("angles"));
  m.def("exact_root_unitary", [](int k) { return to_matrix(exact_root_unitary(k)); }, py::arg("k"));
  m.def("exact_root_angles", &exact_root_angles, py::arg("k"));
  m.def("haar_random_angles", [](std::uint64_t seed, int count) {
    RandomStream rng = make_stream(seed);
    std::vector<EulerAngles> out;
    for (int i = 0; i < count; ++i) out.push_back(haar_random_angles(rng));
    return out;
  }, py::arg("seed"), py::arg("count") = 1);
  m.def("unitary_power", [](const Eigen::Matrix2cd &u, std::uint64_t n) { return to_matrix(unitary_power(from_matrix(u), n)); },
        py::arg("u"), py::arg("n"));

  m.def("quantum_merit", [](const Eigen::Matrix2cd &u, int k, int n) { return quantum_merit(from_matrix(u), k, n); },
        py::arg("u"), py::arg("k"), py::arg("n"));
  m.def("quantum_merits", [](const Eigen::Matrix2cd &u, int k, const std::vector<int> &orders) {
    return quantum_merits(from_matrix(u), k, orders);
  }, py::arg("u"), py::arg("k"), py::arg("orders"));

  m.def("uniform_machine", [](int k) { return ClassicalMachine::uniform(k).matrix(); }, py::arg("k"));
  m.def("perfect_loop_machine", [](int k) { return ClassicalMachine::perfect_loop(k).matrix(); }, py::arg("k"));
  m.def("classical_merit", [](const Eigen::MatrixXd &p, int k, int n) {
    return classical_merit(ClassicalMachine::from_matrix(k, p), n);
  }, py::arg("matrix"), py::arg("k"), py::arg("n"));
  m.def("classical_merit_mc", [](const Eigen::MatrixXd &p, int k, int n, std::int64_t samples, std::uint64_t seed) {
    RandomStream rng = make_stream(seed);
    return classical_merit_mc(ClassicalMachine::from_matrix(k, p), n, samples, rng);
  }, py::arg("matrix"), py::arg("k"), py::arg("n"), py::arg("samples"), py::arg("seed") = 1);

  py::class_<MeritSeries>(m, "MeritSeries")
      .def_readonly("machine", &MeritSeries::machine)
      .def_readonly("fingerprint", &MeritSeries::fingerprint)
      .def_readonly("k", &MeritSeries::k)
      .def_readonly("seed", &MeritSeries::seed)
      .def_readonly("orders", &MeritSeries::orders)
      .def_property_readonly("points", [](const MeritSeries &s) {
        py::list out;
        for (const auto &p : s.points) out.append(point_dict(s, p));
        return out;
      })
      .def("final_value", &MeritSeries::final_value, py::arg("n"))
      .def("__eq__", [](const MeritSeries &a, const MeritSeries &b) { return a == b; });

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("name", &ExperimentConfig::name)
      .def_property("machine", [](const ExperimentConfig &c) { return std::string(to_string(c.machine)); },
                    [](ExperimentConfig &c, const std::string &v) { c.set("machine", v); })
      .def_readwrite("k", &ExperimentConfig::k)
      .def_readwrite("trial_budget", &ExperimentConfig::trial_budget)
      .def_readwrite("log_interval", &ExperimentConfig::log_interval)
      .def_readwrite("merit_orders", &ExperimentConfig::merit_orders)
      .def_readwrite("sigma_gamma", &ExperimentConfig::sigma_gamma)
      .def_readwrite("sigma_beta", &ExperimentConfig::sigma_beta)
      .def_property("teacher", [](const ExperimentConfig &c) {
        return c.teacher == TeacherMode::kVariable ? "variable" : "fixed";
      }, [](ExperimentConfig &c, const std::string &v) { c.set("teacher", v); })
      .def_readwrite("teacher_memory", &ExperimentConfig::teacher_memory)
      .def_readwrite("K_s", &ExperimentConfig::K_s)
      .def_readwrite("K_f", &ExperimentConfig::K_f)
      .def_readwrite("seeds", &ExperimentConfig::seeds)
      .def_readwrite("workers", &ExperimentConfig::workers)
      .def("set", [](ExperimentConfig &c, const std::string &key, const std::string &value) { c.set(key, value); })
      .def("validate", &ExperimentConfig::validate)
      .def("to_text", &ExperimentConfig::to_text)
      .def("fingerprint", &ExperimentConfig::fingerprint);

  m.def("parse_config", [](const std::string &text) { return parse_config(text); }, py::arg("text"));

  py::class_<AggregateCurve>(m, "AggregateCurve")
      .def_readonly("label", &AggregateCurve::label)
      .def_readonly("checkpoints", &AggregateCurve::checkpoints)
      .def_readonly("orders", &AggregateCurve::orders)
      .def("medians", &AggregateCurve::medians, py::arg("n"));

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("config", &ExperimentResult::config)
      .def_readonly("series", &ExperimentResult::series)
      .def_readonly("curve", &ExperimentResult::curve)
      .def("write", [](const ExperimentResult &r, const std::filesystem::path &dir) {
        const OutputFiles f = write_experiment(r, dir);
        py::dict d;
        d["series_csv"] = f.series_csv;
        d["seed_csvs"] = f.seed_csvs;
        d["aggregate_csv"] = f.aggregate_csv;
        d["plot_svg"] = f.plot_svg;
        return d;
      }, py::arg("directory"));

  m.def("run_single_seed", [](const ExperimentConfig &c, std::uint64_t seed) {
    c.validate();
    py::gil_scoped_release release;
    return run_single_seed(c, seed);
  }, py::arg("config"), py::arg("seed"));
  m.def("run_experiment", [](const ExperimentConfig &c) {
    py::gil_scoped_release release;
    return run_experiment(c);
  }, py::arg("config"));
  m.def("preset_fig2", &preset_fig2);
  m.def("preset_fig3", &preset_fig3);
  m.def("preset_fig4", &preset_fig4);

  m.def("is_perfect_root", [](const std::vector<int> &table, const std::vector<std::uint8_t> &readout, int start0,
                              int start1, int k) {
    return is_perfect_root({static_cast<int>(table.size()), table, readout, start0, start1}, k);
  }, py::arg("table"), py::arg("readout"), py::arg("start0"), py::arg("start1"), py::arg("k"));
  m.def("lemma_scan", [](int k, int n_max, bool force) {
    EnumerationOptions options;
    options.override_budget = force;
    std::vector<LemmaRow> rows;
    {
      py::gil_scoped_release release;
      rows = lemma_scan(k, n_max, options);
    }
    py::list out;
    for (const auto &r : rows) {
      py::dict d;
      d["n_states"] = r.n_states;
      d["perfect_count"] = r.perfect_count;
      d["total_count"] = r.total_count;
      out.append(d);
    }
    return out;
  }, py::arg("k"), py::arg("n_max"), py::arg("force") = false);
  m.def("count_target_functions", [](int k) {
    const CountReport r = count_target_functions(k);
    py::dict d;
    d["k"] = r.k;
    d["n_states"] = r.n_states;
    d["perfect_count"] = r.perfect_count;
    d["total_count"] = r.total_count;
    d["formula"] = to_fraction(r.formula_numerator, r.formula_denominator);
    d["formula_numerator"] = py::int_(py::str(r.formula_numerator.str()));
    d["formula_denominator"] = py::int_(py::str(r.formula_denominator.str()));
    d["agrees"] = r.agrees;
    return d;
  }, py::arg("k"));
  m.def("eq4_fraction", [](int k) {
    const BigRational f = eq4_fraction(k);
    return to_fraction(boost::multiprecision::numerator(f), boost::multiprecision::denominator(f));
  }, py::arg("k"));
}
