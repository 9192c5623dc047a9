#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpl/edgeworth.hpp"
#include "fpl/kernels.hpp"
#include "fpl/montecarlo.hpp"
#include "fpl/numeric.hpp"
#include "fpl/population.hpp"
#include "fpl/rng.hpp"
#include "fpl/weights.hpp"

namespace py = pybind11;

namespace {

fpl::SigmaSpec make_sigma_spec(const std::string& mode, long long replicates,
                               std::uint64_t seed, int workers) {
  fpl::SigmaSpec s;
  if (mode == "auto") {
    s.mode = fpl::SigmaMode::kAuto;
  } else if (mode == "exact") {
    s.mode = fpl::SigmaMode::kExact;
  } else if (mode == "mc") {
    s.mode = fpl::SigmaMode::kMonteCarlo;
  } else if (mode == "linear") {
    s.mode = fpl::SigmaMode::kLinear;
  } else {
    throw std::domain_error("sigma mode must be auto|exact|mc|linear");
  }
  s.replicates = replicates;
  s.seed = seed;
  s.workers = workers;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hoeffding-decomposition kernels and the one-term Edgeworth expansion "
            "for L-statistics of samples drawn without replacement";

  py::class_<fpl::Population>(m, "Population")
      .def_static("from_values", &fpl::Population::from_values, py::arg("values"))
      .def_static("load_file", &fpl::Population::load_file, py::arg("path"))
      .def_static("simulate_logistic", &fpl::Population::simulate_logistic,
                  py::arg("count"), py::arg("seed"))
      .def_property_readonly("N", &fpl::Population::size)
      .def("values", &fpl::Population::values)
      .def("value", &fpl::Population::value, py::arg("k"), "1-based unit access")
      .def("spacings", &fpl::Population::spacings)
      .def("mean", &fpl::Population::mean)
      .def("central_variance", &fpl::Population::central_variance)
      .def("moment", &fpl::Population::moment, py::arg("s"), py::arg("absolute") = false)
      .def("cdf", &fpl::Population::cdf, py::arg("y"))
      .def("ghm_at", [](const fpl::Population& p, int k) {
        auto r = p.ghm_at(k);
        return py::make_tuple(r.g, r.h, r.m);
      }, py::arg("k"));

  py::class_<fpl::SmoothnessReport>(m, "SmoothnessReport")
      .def_readonly("a", &fpl::SmoothnessReport::a)
      .def_readonly("b", &fpl::SmoothnessReport::b)
      .def_readonly("c", &fpl::SmoothnessReport::c)
      .def_readonly("d", &fpl::SmoothnessReport::d);

  py::class_<fpl::WeightScheme>(m, "WeightScheme")
      .def_static("from_values", &fpl::WeightScheme::from_values, py::arg("c"),
                  py::arg("origin") = "explicit")
      .def_static("constant", &fpl::WeightScheme::constant, py::arg("n"))
      .def_static("gini", &fpl::WeightScheme::gini, py::arg("n"))
      .def_static("trimmed", &fpl::WeightScheme::trimmed, py::arg("n"), py::arg("t1"),
                  py::arg("t2"))
      .def_static("center", &fpl::WeightScheme::center, py::arg("n"))
      .def_static("from_score_table", &fpl::WeightScheme::from_score_table,
                  py::arg("table"), py::arg("n"))
      .def_property_readonly("n", &fpl::WeightScheme::n)
      .def("c", &fpl::WeightScheme::c)
      .def("origin", &fpl::WeightScheme::origin)
      .def("difference", &fpl::WeightScheme::difference, py::arg("v"))
      .def("smoothness", &fpl::WeightScheme::smoothness);

  m.def("hypergeom_pmf", &fpl::hypergeom_pmf, py::arg("N"), py::arg("n"), py::arg("i"),
        py::arg("j"));
  m.def("expected_spacing_given", &fpl::expected_spacing_given, py::arg("population"),
        py::arg("n"), py::arg("fixed"), py::arg("r"),
        "fixed: strictly increasing 1-based indices");

  py::class_<fpl::KernelSet>(m, "KernelSet")
      .def(py::init<fpl::Population, fpl::WeightScheme>(), py::arg("population"),
           py::arg("weights"))
      .def_static("g2_defined", &fpl::KernelSet::g2_defined, py::arg("N"), py::arg("n"))
      .def_static("g3_defined", &fpl::KernelSet::g3_defined, py::arg("N"), py::arg("n"))
      .def("g1_at", &fpl::KernelSet::g1_at, py::arg("k"))
      .def("g2_at", &fpl::KernelSet::g2_at, py::arg("k"), py::arg("l"))
      .def("g3_at", &fpl::KernelSet::g3_at, py::arg("k"), py::arg("l"), py::arg("m"))
      .def("g1_table", &fpl::KernelSet::g1_table, py::arg("workers") = 1)
      .def("g2_table", &fpl::KernelSet::g2_table, py::arg("workers") = 1)
      .def("pair_index", &fpl::KernelSet::pair_index, py::arg("k"), py::arg("l"));

  m.def("h_oracle", &fpl::h_oracle, py::arg("population"), py::arg("weights"),
        py::arg("fixed"), "brute-force conditional expectation oracle");
  m.def("kernels_from_h", &fpl::kernels_from_h, py::arg("population"),
        py::arg("weights"), py::arg("indices"));

  m.def("expected_L", &fpl::expected_L, py::arg("population"), py::arg("weights"));
  m.def("linear_moments", [](const std::vector<double>& g1) {
    auto lm = fpl::linear_moments(g1);
    return py::make_tuple(lm.sigma1, lm.alpha);
  }, py::arg("g1"));
  m.def("kappa_moment", &fpl::kappa_moment, py::arg("kernels"), py::arg("g1"),
        py::arg("tau"), py::arg("sigma1"));
  m.def("sigma_tilde",
        [](const fpl::Population& p, const fpl::WeightScheme& w, const std::string& mode,
           long long replicates, std::uint64_t seed, int workers) {
          double se = 0.0;
          double s = fpl::sigma_tilde(p, w, make_sigma_spec(mode, replicates, seed, workers),
                                      &se);
          return py::make_tuple(s, se);
        },
        py::arg("population"), py::arg("weights"), py::arg("mode") = "auto",
        py::arg("replicates") = 1'000'000, py::arg("seed") = 0, py::arg("workers") = 1);

  py::class_<fpl::EdgeworthModel>(m, "EdgeworthModel")
      .def_readonly("N", &fpl::EdgeworthModel::population_size)
      .def_readonly("n", &fpl::EdgeworthModel::sample_size)
      .def_readonly("p", &fpl::EdgeworthModel::p)
      .def_readonly("q", &fpl::EdgeworthModel::q)
      .def_readonly("tau", &fpl::EdgeworthModel::tau)
      .def_readonly("n_star", &fpl::EdgeworthModel::n_star)
      .def_readonly("sigma1", &fpl::EdgeworthModel::sigma1)
      .def_readonly("alpha", &fpl::EdgeworthModel::alpha)
      .def_readonly("kappa", &fpl::EdgeworthModel::kappa)
      .def_readonly("sigma_tilde", &fpl::EdgeworthModel::sigma_tilde)
      .def_readonly("sigma_tilde_stderr", &fpl::EdgeworthModel::sigma_tilde_stderr)
      .def_readonly("e_coeff", &fpl::EdgeworthModel::e_coeff)
      .def_readonly("mean_L", &fpl::EdgeworthModel::mean_l)
      .def_readonly("sigma_mode", &fpl::EdgeworthModel::sigma_mode)
      .def("cdf", &fpl::EdgeworthModel::cdf, py::arg("x"))
      .def("cdf_clipped", &fpl::EdgeworthModel::cdf_clipped, py::arg("x"))
      .def("quantile", &fpl::EdgeworthModel::quantile, py::arg("q"))
      .def("report", &fpl::EdgeworthModel::report);

  m.def("build_model",
        [](const fpl::Population& p, const fpl::WeightScheme& w, const std::string& mode,
           long long replicates, std::uint64_t seed, int workers) {
          return fpl::build_model(p, w, make_sigma_spec(mode, replicates, seed, workers),
                                  workers);
        },
        py::arg("population"), py::arg("weights"), py::arg("sigma_mode") = "auto",
        py::arg("replicates") = 1'000'000, py::arg("seed") = 0, py::arg("workers") = 1);

  m.def("charfn_sup", &fpl::charfn_sup, py::arg("g1"), py::arg("sigma1"), py::arg("lo"),
        py::arg("hi"), py::arg("grid_step"));

  py::class_<fpl::EmpiricalCdf>(m, "EmpiricalCdf")
      .def(py::init<std::vector<double>>(), py::arg("realizations"))
      .def_property_readonly("R", &fpl::EmpiricalCdf::size)
      .def("values", &fpl::EmpiricalCdf::values)
      .def("quantile", &fpl::EmpiricalCdf::quantile, py::arg("q"))
      .def("cdf", &fpl::EmpiricalCdf::cdf, py::arg("x"));

  m.def("draw_sample", &fpl::draw_sample, py::arg("population"), py::arg("n"),
        py::arg("replicate"), py::arg("seed"), "sorted 1-based indices");
  m.def("l_statistic", &fpl::l_statistic, py::arg("sample"), py::arg("weights"));
  m.def("simulate_cdf",
        [](const fpl::Population& p, const fpl::WeightScheme& w, long long replicates,
           std::uint64_t seed, double mean_l, double sigma_tilde, int workers) {
          fpl::SimulationPlan plan;
          plan.replicates = replicates;
          plan.seed = seed;
          plan.weights = w;
          plan.mean_l = mean_l;
          plan.sigma_tilde = sigma_tilde;
          plan.workers = workers;
          return fpl::simulate_cdf(p, plan);
        },
        py::arg("population"), py::arg("weights"), py::arg("replicates"), py::arg("seed"),
        py::arg("mean_l"), py::arg("sigma_tilde"), py::arg("workers") = 1);

  m.def("normal_cdf", &fpl::normal_cdf, py::arg("x"));
  m.def("normal_quantile", &fpl::normal_quantile, py::arg("p"));
  m.def("derive_seed", &fpl::derive_seed, py::arg("master"), py::arg("tag"));
  m.attr("SEED_TAG_POPULATION") = fpl::kSeedTagPopulation;
  m.attr("SEED_TAG_SIGMA") = fpl::kSeedTagSigma;
  m.attr("SEED_TAG_SIMULATION") = fpl::kSeedTagSimulation;
  m.attr("GENERATOR_VERSION") = fpl::CounterRng::kVersion;
}
