#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orthantmc/bounds.hpp"
#include "orthantmc/covariance.hpp"
#include "orthantmc/fpt.hpp"
#include "orthantmc/mvn_ref.hpp"
#include "orthantmc/normal.hpp"
#include "orthantmc/path_sim.hpp"
#include "orthantmc/runner.hpp"

namespace py = pybind11;
using namespace orthantmc;

namespace {

py::array_t<double> batch_to_numpy(const PathBatch& batch) {
  py::array_t<double> out({batch.n_paths, batch.k});
  std::copy(batch.values.begin(), batch.values.end(), out.mutable_data());
  return out;
}

CholeskyFactor problem_cholesky(const CovarianceSequence& cov, std::size_t k) {
  return cholesky(toeplitz_matrix(cov, k));
}

}  // namespace

PYBIND11_MODULE(_orthantmc, m) {
  m.doc() = "Multivariate normal orthant probabilities via first-passage-time "
            "Monte Carlo, with Genz / GHK reference estimators and Slepian bounds";

  m.def("normal_pdf", py::vectorize(&normal_pdf), py::arg("x"));
  m.def("normal_cdf", py::vectorize(&normal_cdf), py::arg("x"));
  m.def("normal_quantile", py::vectorize(&normal_quantile), py::arg("p"));

  py::class_<CovarianceSequence>(m, "CovarianceSequence")
      .def_readonly("rho", &CovarianceSequence::rho)
      .def_readonly("model_tag", &CovarianceSequence::model_tag)
      .def_property_readonly("max_lag", &CovarianceSequence::max_lag)
      .def("lags", [](const CovarianceSequence& c, std::size_t count) {
        return covariance_lags(c, count);
      }, py::arg("count"))
      .def("__repr__", [](const CovarianceSequence& c) {
        return "<CovarianceSequence " + c.model_tag + ">";
      });

  m.def("arfima_covariance", &arfima_covariance, py::arg("d"), py::arg("max_lag"),
        "ARFIMA(0,d,0) autocorrelations rho_0..rho_max_lag, |d| < 0.5");
  m.def("tabulated_covariance", &load_tabulated_covariance, py::arg("values"));
  m.def("load_covariance_file", &load_covariance_file, py::arg("path"));

  py::class_<Boundary>(m, "Boundary")
      .def_static("constant", &Boundary::constant, py::arg("c"))
      .def_static("linear", &Boundary::linear, py::arg("a"), py::arg("b"),
                  "S_t = a + b*t")
      .def_static("tabulated", &Boundary::tabulated, py::arg("values"))
      .def_static("parse", &Boundary::parse, py::arg("spec"),
                  "const:<c> | lin:<a>,<b> | file:<path>")
      .def("at", &Boundary::at, py::arg("t"))
      .def("max_over", &Boundary::max_over, py::arg("k"))
      .def("__repr__", [](const Boundary& b) { return "<Boundary " + b.describe() + ">"; });

  py::class_<PathBatch>(m, "PathBatch")
      .def_readonly("n_paths", &PathBatch::n_paths)
      .def_readonly("k", &PathBatch::k)
      .def_readonly("seed", &PathBatch::seed)
      .def_readonly("method_tag", &PathBatch::method_tag)
      .def("to_numpy", &batch_to_numpy);

  m.def(
      "sample_paths",
      [](const CovarianceSequence& cov, std::size_t k, std::size_t n_paths,
         std::uint64_t seed, std::uint64_t stream_id, const std::string& method,
         unsigned workers) {
        return sample_paths(cov, k, n_paths, RandomStream(seed, stream_id),
                            parse_sim_method(method), workers);
      },
      py::arg("cov"), py::arg("k"), py::arg("n_paths"), py::arg("seed") = 1,
      py::arg("stream_id") = 0, py::arg("method") = "auto", py::arg("workers") = 0,
      "Sample N_S stationary Gaussian paths of length k");

  py::class_<SurvivalCurve>(m, "SurvivalCurve")
      .def_readonly("k_max", &SurvivalCurve::k_max)
      .def_readonly("n_paths", &SurvivalCurve::n_paths)
      .def_readonly("p_hat", &SurvivalCurve::p_hat)
      .def_readonly("std_err", &SurvivalCurve::std_err)
      .def_readonly("ci_low", &SurvivalCurve::ci_low)
      .def_readonly("ci_high", &SurvivalCurve::ci_high)
      .def_readonly("crossings", &SurvivalCurve::crossings)
      .def_readonly("censored", &SurvivalCurve::censored)
      .def_readonly("elapsed_seconds", &SurvivalCurve::elapsed_seconds)
      .def_readonly("method_tag", &SurvivalCurve::method_tag)
      .def("probability", [](const SurvivalCurve& c, std::size_t k) {
        if (k < 1 || k > c.k_max) throw std::out_of_range("k outside 1..k_max");
        return c.p_hat[k];
      }, py::arg("k"));

  m.def(
      "estimate_orthant_fpt",
      [](const CovarianceSequence& cov, const Boundary& boundary, std::size_t k_max,
         std::size_t n_paths, std::uint64_t seed, std::uint64_t stream_id,
         const std::string& method, unsigned workers) {
        const OrthantProblem problem{cov, boundary, k_max};
        return estimate_orthant_fpt(problem, n_paths, RandomStream(seed, stream_id),
                                    parse_sim_method(method), workers);
      },
      py::arg("cov"), py::arg("boundary"), py::arg("k_max"), py::arg("n_paths"),
      py::arg("seed") = 1, py::arg("stream_id") = 0, py::arg("method") = "auto",
      py::arg("workers") = 0,
      "Survival curve p_hat[k] = 1 - P(T <= k) for every k <= k_max");

  py::class_<GenzResult>(m, "GenzResult")
      .def_readonly("estimate", &GenzResult::estimate)
      .def_readonly("error_99", &GenzResult::error_99)
      .def_readonly("n_evals", &GenzResult::n_evals)
      .def_readonly("hit_eval_cap", &GenzResult::hit_eval_cap)
      .def_readonly("elapsed_seconds", &GenzResult::elapsed_seconds);

  m.def(
      "genz_estimate",
      [](const CovarianceSequence& cov, const Boundary& boundary, std::size_t k,
         double tolerance, std::uint64_t max_evals, std::uint64_t seed) {
        const auto s = boundary_thresholds(boundary, k);
        const auto chol = problem_cholesky(cov, k);
        if (max_evals == 0) max_evals = static_cast<std::uint64_t>(k) * 1000;
        return genz_estimate(s, chol, tolerance, max_evals, RandomStream(seed, 0));
      },
      py::arg("cov"), py::arg("boundary"), py::arg("k"), py::arg("tolerance") = 1e-4,
      py::arg("max_evals") = 0, py::arg("seed") = 1);

  py::class_<GhkResult>(m, "GhkResult")
      .def_readonly("estimate", &GhkResult::estimate)
      .def_readonly("std_err", &GhkResult::std_err)
      .def_readonly("n_draws", &GhkResult::n_draws)
      .def_readonly("elapsed_seconds", &GhkResult::elapsed_seconds);

  m.def(
      "ghk_estimate",
      [](const CovarianceSequence& cov, const Boundary& boundary, std::size_t k,
         std::uint64_t n_draws, std::uint64_t seed, unsigned workers) {
        const auto s = boundary_thresholds(boundary, k);
        const auto chol = problem_cholesky(cov, k);
        return ghk_estimate(s, chol, n_draws, RandomStream(seed, 0), workers);
      },
      py::arg("cov"), py::arg("boundary"), py::arg("k"), py::arg("n_draws"),
      py::arg("seed") = 1, py::arg("workers") = 0);

  py::class_<SlepianBound>(m, "SlepianBound")
      .def_readonly("k", &SlepianBound::k)
      .def_readonly("s_max", &SlepianBound::s_max)
      .def_readonly("rho_max", &SlepianBound::rho_max)
      .def_readonly("value", &SlepianBound::value)
      .def_readonly("quad_delta", &SlepianBound::quad_delta)
      .def_readonly("stable", &SlepianBound::stable)
      .def_property_readonly("case_tag", [](const SlepianBound& b) {
        return b.case_tag == SlepianBound::Case::exchangeable ? "exchangeable"
                                                              : "independent";
      });

  m.def("slepian_bound", &slepian_bound, py::arg("cov"), py::arg("boundary"),
        py::arg("k"), py::arg("quad_nodes") = 64,
        "Slepian upper bound on the orthant probability P_k");

  m.attr("__version__") = "0.1.0";
}
