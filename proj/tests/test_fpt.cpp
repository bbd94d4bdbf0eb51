#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "orthantmc/bounds.hpp"
#include "orthantmc/fpt.hpp"
#include "orthantmc/normal.hpp"

using namespace orthantmc;

TEST_CASE("first crossing") {
  const Boundary one = Boundary::constant(1.0);
  const std::vector<double> immediate = {2.0, -1.0, -1.0};
  CHECK(first_crossing(immediate, one) == 1);

  const std::vector<double> never(5, -1.0);
  CHECK(!first_crossing(never, one).has_value());

  // Linear rule: S_1 = 1.99 > 0.5, S_2 = 1.98 > 1.9, S_3 = 1.97 <= 2.5.
  const Boundary lin = Boundary::linear(2.0, -0.01);
  const std::vector<double> late = {0.5, 1.9, 2.5};
  CHECK(first_crossing(late, lin) == 3);

  // Exact threshold counts as a crossing (X_t >= S_t).
  const std::vector<double> touch = {1.0};
  CHECK(first_crossing(touch, one) == 1);
}

TEST_CASE("boundary parsing and files") {
  CHECK(Boundary::parse("const:1").at(5) == 1.0);
  const Boundary lin = Boundary::parse("lin:2,-0.01");
  CHECK(lin.at(40) == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(lin.max_over(40) == doctest::Approx(1.99).epsilon(1e-15));
  CHECK_THROWS_AS(Boundary::parse("wedge:1"), std::invalid_argument);
  CHECK_THROWS_AS(Boundary::parse("const:abc"), std::invalid_argument);
  CHECK_THROWS_AS(Boundary::parse("lin:1"), std::invalid_argument);

  const Boundary tab = Boundary::tabulated({1.5, 1.0, 0.5});
  CHECK(tab.at(3) == 0.5);
  CHECK_THROWS_AS(tab.at(4), std::invalid_argument);
  CHECK_THROWS_AS(tab.at(0), std::invalid_argument);
}

TEST_CASE("wilson interval") {
  const WilsonInterval w = wilson_interval(50, 100, 2.5758293035489004);
  CHECK(w.low > 0.37);
  CHECK(w.high < 0.63);
  CHECK(w.low < 0.5);
  CHECK(w.high > 0.5);

  const WilsonInterval zero = wilson_interval(0, 100, 2.5758293035489004);
  CHECK(zero.low == 0.0);
  CHECK(zero.high > 0.0);
  const WilsonInterval full = wilson_interval(100, 100, 2.5758293035489004);
  CHECK(full.high == 1.0);
  CHECK(full.low < 1.0);
}

TEST_CASE("white noise survival matches the independence product") {
  const OrthantProblem problem{arfima_covariance(0.0, 31), Boundary::constant(1.0), 32};
  const auto curve = estimate_orthant_fpt(problem, 100000, RandomStream(4242, 0));

  const double phi1 = normal_cdf(1.0);
  CHECK(phi1 == doctest::Approx(0.8413447460685429).epsilon(1e-15));
  double product = 1.0;
  for (std::size_t k = 1; k <= 32; ++k) {
    product *= phi1;
    const double tol = 3.0 * std::max(curve.std_err[k], 1e-6);
    CHECK(std::fabs(curve.p_hat[k] - product) <= tol);
  }
  // Phi(1)^5 = 0.4215702304575452.
  CHECK(std::fabs(curve.p_hat[5] - 0.4215702304575452) <= 3.0 * curve.std_err[5]);
}

TEST_CASE("independence product holds for a non-constant boundary") {
  const Boundary lin = Boundary::linear(2.0, -0.05);
  const OrthantProblem problem{arfima_covariance(0.0, 15), lin, 16};
  const auto curve = estimate_orthant_fpt(problem, 100000, RandomStream(555, 0));
  double product = 1.0;
  for (std::size_t k = 1; k <= 16; ++k) {
    product *= normal_cdf(lin.at(k));
    CHECK(std::fabs(curve.p_hat[k] - product) <= 3.0 * std::max(curve.std_err[k], 1e-6));
  }
}

TEST_CASE("survival curve structure is exact") {
  const OrthantProblem problem{arfima_covariance(0.2, 23), Boundary::constant(1.0), 24};
  const auto curve = estimate_orthant_fpt(problem, 20000, RandomStream(99, 0));

  CHECK(curve.p_hat[0] == 1.0);
  std::uint64_t total = curve.censored;
  for (std::size_t k = 1; k <= curve.k_max; ++k) {
    CHECK(curve.p_hat[k] <= curve.p_hat[k - 1]);
    CHECK(curve.p_hat[k] >= 0.0);
    CHECK(curve.p_hat[k] <= 1.0);
    CHECK(curve.ci_low[k] <= curve.p_hat[k]);
    CHECK(curve.ci_high[k] >= curve.p_hat[k]);
    // Decrement identity, exact in integers.
    CHECK(curve.crossings[k] == curve.survivors[k - 1] - curve.survivors[k]);
    total += curve.crossings[k];
  }
  CHECK(total == curve.n_paths);
  CHECK(curve.survivors[curve.k_max] == curve.censored);
}

TEST_CASE("estimator is deterministic and method-consistent") {
  const OrthantProblem problem{arfima_covariance(0.2, 15), Boundary::constant(1.0), 16};
  const auto a = estimate_orthant_fpt(problem, 30000, RandomStream(7, 0),
                                      SimMethod::automatic, 1);
  const auto b = estimate_orthant_fpt(problem, 30000, RandomStream(7, 0),
                                      SimMethod::automatic, 4);
  CHECK(a.p_hat == b.p_hat);
  CHECK(a.crossings == b.crossings);
  CHECK(a.method_tag == "davies_harte");

  // Davies-Harte and Durbin-Levinson agree within combined Monte Carlo error.
  const auto dl = estimate_orthant_fpt(problem, 30000, RandomStream(8, 0),
                                       SimMethod::durbin_levinson);
  for (std::size_t k : {4, 8, 16}) {
    const double combined =
        std::sqrt(a.std_err[k] * a.std_err[k] + dl.std_err[k] * dl.std_err[k]);
    CHECK(std::fabs(a.p_hat[k] - dl.p_hat[k]) <= 3.0 * combined);
  }
}

TEST_CASE("estimator tallies agree with first_crossing over the same batch") {
  const auto cov = arfima_covariance(0.3, 11);
  const Boundary boundary = Boundary::parse("lin:2,-0.05");
  const OrthantProblem problem{cov, boundary, 12};
  const RandomStream base(321, 0);
  const auto curve = estimate_orthant_fpt(problem, 8000, base);

  const auto batch = sample_paths(cov, 12, 8000, base);
  std::vector<std::uint64_t> hist(13, 0);
  std::uint64_t censored = 0;
  for (std::size_t p = 0; p < batch.n_paths; ++p) {
    const auto t = first_crossing(batch.path(p), boundary);
    if (t)
      ++hist[*t];
    else
      ++censored;
  }
  CHECK(curve.crossings == hist);
  CHECK(curve.censored == censored);
}

TEST_CASE("k=2 estimate matches the bivariate quadrature oracle") {
  const OrthantProblem problem{arfima_covariance(0.2, 1), Boundary::constant(1.0), 2};
  const auto curve = estimate_orthant_fpt(problem, 100000, RandomStream(31337, 0));
  const double target = oracle::bivariate_orthant(1.0, 1.0, 0.25);
  CHECK(std::fabs(curve.p_hat[2] - target) <= 3.0 * curve.std_err[2]);
}

TEST_CASE("fairness bound check") {
  const OrthantProblem problem{arfima_covariance(0.0, 15), Boundary::constant(1.0), 16};
  const auto curve = estimate_orthant_fpt(problem, 50000, RandomStream(2, 0));
  std::vector<double> bounds(17, 1.0);
  const double phi1 = normal_cdf(1.0);
  for (std::size_t k = 1; k <= 16; ++k) bounds[k] = bounds[k - 1] * phi1;
  CHECK(fairness_bound_check(curve, bounds).ok());

  // A curve sitting above the bound with a tiny standard error must be
  // flagged.
  SurvivalCurve fake = curve;
  for (std::size_t k = 1; k <= 16; ++k) {
    fake.p_hat[k] = std::min(1.0, bounds[k] + 0.1);
    fake.std_err[k] = 1e-6;
  }
  const auto report = fairness_bound_check(fake, bounds);
  CHECK(!report.ok());
  CHECK(report.violations.size() == 16);
  CHECK(report.worst_excess > 0.05);

  CHECK_THROWS_AS(fairness_bound_check(curve, std::vector<double>(3, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("estimated curves respect the slepian bound") {
  const auto cov = arfima_covariance(0.2, 19);
  const Boundary boundary = Boundary::constant(1.0);
  const OrthantProblem problem{cov, boundary, 20};
  const auto curve = estimate_orthant_fpt(problem, 50000, RandomStream(606, 0));
  const auto bounds = slepian_bound_curve(cov, boundary, 20);
  CHECK(fairness_bound_check(curve, bounds).ok());
}
