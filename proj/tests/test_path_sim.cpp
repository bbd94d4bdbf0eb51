#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <vector>

#include "oracles.hpp"
#include "orthantmc/errors.hpp"
#include "orthantmc/path_sim.hpp"

using namespace orthantmc;

namespace {

// Column-pair sample covariance over a batch (mean is known to be zero).
double sample_cov(const PathBatch& b, std::size_t p, std::size_t q) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.n_paths; ++i) {
    const auto row = b.path(i);
    s += row[p] * row[q];
  }
  return s / static_cast<double>(b.n_paths);
}

}  // namespace

TEST_CASE("plan embedding lengths follow the padding rule") {
  const auto cov = arfima_covariance(0.2, 1);
  CHECK(make_plan(cov, 2).embedding_length() == 2);
  CHECK(make_plan(cov, 8).embedding_length() == 16);   // 2*7 = 14 -> 16
  CHECK(make_plan(cov, 20).embedding_length() == 64);  // 2*19 = 38 -> 64
  CHECK(make_plan(cov, 33).embedding_length() == 64);  // 2*32 = 64
  CHECK_THROWS_AS(make_plan(cov, 1), std::invalid_argument);
}

TEST_CASE("plan square roots match the spectrum") {
  const auto plan = make_plan(arfima_covariance(0.3, 1), 16);
  for (std::size_t n = 0; n < plan.sqrt_g.size(); ++n)
    CHECK(std::fabs(plan.sqrt_g[n] * plan.sqrt_g[n] - plan.spectrum.g[n]) <= 1e-12);

  const auto white = make_plan(arfima_covariance(0.0, 1), 8);
  for (double s : white.sqrt_g) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("davies-harte white noise sampling") {
  const auto plan = make_plan(arfima_covariance(0.0, 1), 8);
  const auto batch = sample_davies_harte(plan, 100000, RandomStream(11, 0));
  CHECK(batch.method_tag == "davies_harte");
  CHECK(batch.n_paths == 100000);
  CHECK(batch.k == 8);

  double lag1 = 0.0, var = 0.0;
  for (std::size_t i = 0; i < batch.n_paths; ++i) {
    const auto row = batch.path(i);
    for (std::size_t j = 0; j + 1 < row.size(); ++j) lag1 += row[j] * row[j + 1];
    for (double v : row) var += v * v;
  }
  lag1 /= static_cast<double>(batch.n_paths * 7);
  var /= static_cast<double>(batch.n_paths * 8);
  CHECK(std::fabs(lag1) <= 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("davies-harte reproduces the lag-1 correlation") {
  const auto plan = make_plan(arfima_covariance(0.2, 63), 32);
  const auto batch = sample_davies_harte(plan, 100000, RandomStream(17, 0));
  double lag1 = 0.0;
  for (std::size_t i = 0; i < batch.n_paths; ++i) {
    const auto row = batch.path(i);
    for (std::size_t j = 0; j + 1 < row.size(); ++j) lag1 += row[j] * row[j + 1];
  }
  lag1 /= static_cast<double>(batch.n_paths * 31);
  CHECK(std::fabs(lag1 - 0.25) <= 0.01);
}

TEST_CASE("fixed seed reproduces the batch bit for bit") {
  const auto plan = make_plan(arfima_covariance(0.2, 63), 16);
  const auto a = sample_davies_harte(plan, 500, RandomStream(123, 7));
  const auto b = sample_davies_harte(plan, 500, RandomStream(123, 7));
  CHECK(a.values == b.values);

  const auto c = sample_davies_harte(plan, 500, RandomStream(124, 7));
  CHECK(a.values != c.values);
}

TEST_CASE("per-path substreams make the batch prefix-stable") {
  const auto plan = make_plan(arfima_covariance(0.2, 63), 16);
  const auto small = sample_davies_harte(plan, 100, RandomStream(9, 0));
  const auto large = sample_davies_harte(plan, 4200, RandomStream(9, 0));
  for (std::size_t i = 0; i < small.values.size(); ++i)
    CHECK(small.values[i] == large.values[i]);
}

TEST_CASE("worker count does not change the batch") {
  const auto cov = arfima_covariance(0.3, 63);
  const auto a = sample_paths(cov, 24, 9000, RandomStream(31, 0), SimMethod::automatic, 1);
  const auto b = sample_paths(cov, 24, 9000, RandomStream(31, 0), SimMethod::automatic, 3);
  CHECK(a.values == b.values);
}

TEST_CASE("durbin-levinson plan and sampling") {
  const auto plan = make_durbin_levinson_plan(arfima_covariance(0.2, 15), 16);
  CHECK(plan.phi[1][0] == doctest::Approx(0.25).epsilon(1e-14));  // phi_11 = rho_1
  CHECK(plan.innovation_sd[0] == 1.0);
  for (double sd : plan.innovation_sd) CHECK(sd > 0.0);

  const auto white = sample_durbin_levinson(arfima_covariance(0.0, 7), 8, 100000,
                                            RandomStream(21, 0));
  CHECK(white.method_tag == "durbin_levinson");
  double var = 0.0;
  for (double v : white.values) var += v * v;
  var /= static_cast<double>(white.values.size());
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("durbin-levinson matches the toeplitz covariance entrywise") {
  const std::size_t k = 16;
  const auto cov = arfima_covariance(0.3, k - 1);
  const auto batch = sample_durbin_levinson(cov, k, 200000, RandomStream(3, 0));
  const auto sigma = toeplitz_matrix(cov, k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = p; q < k; ++q)
      CHECK(std::fabs(sample_cov(batch, p, q) - sigma(p, q)) <= 0.01);
}

TEST_CASE("durbin-levinson rejects non-positive-definite input") {
  CHECK_THROWS_AS(
      make_durbin_levinson_plan(load_tabulated_covariance({1.0, 0.8, -0.5}), 3),
      NotPositiveDefiniteError);
}

TEST_CASE("automatic dispatch") {
  const auto arfima = sample_paths(arfima_covariance(0.2, 31), 16, 100,
                                   RandomStream(1, 0));
  CHECK(arfima.method_tag == "davies_harte");

  // Brute-force search for a 3-lag sequence that is positive definite up to
  // dimension 3 yet has a negative circulant eigenvalue. The length-4
  // embedding {1, r1, r2, r1} has eigenvalues 1 + 2 r1 + r2, 1 - r2 (twice)
  // and 1 - 2 r1 + r2.
  double found_r1 = 0.0, found_r2 = 0.0;
  bool found = false;
  for (double r1 = -0.9; r1 <= 0.9 && !found; r1 += 0.05) {
    for (double r2 = -0.9; r2 <= 0.9 && !found; r2 += 0.05) {
      const double det3 =
          1.0 + 2.0 * r1 * r1 * r2 - r2 * r2 - 2.0 * r1 * r1;  // |Toeplitz_3|
      const bool pd = std::fabs(r1) < 1.0 && det3 > 1e-3;
      const double min_eig = std::min({1.0 + 2.0 * r1 + r2, 1.0 - r2, 1.0 - 2.0 * r1 + r2});
      if (pd && min_eig < -1e-3) {
        found = true;
        found_r1 = r1;
        found_r2 = r2;
      }
    }
  }
  REQUIRE(found);
  const auto tricky = load_tabulated_covariance({1.0, found_r1, found_r2});

  const auto fallback = sample_paths(tricky, 3, 100, RandomStream(1, 0));
  CHECK(fallback.method_tag == "durbin_levinson");
  CHECK_THROWS_AS(sample_paths(tricky, 3, 100, RandomStream(1, 0), SimMethod::davies_harte),
                  NotNonNegativeDefiniteError);
}

TEST_CASE("plan reuse with distinct streams is independent") {
  const auto plan = make_plan(arfima_covariance(0.2, 15), 8);
  const std::size_t n = 10000;
  const auto a = sample_davies_harte(plan, n, RandomStream(77, 0));
  const auto b = sample_davies_harte(plan, n, RandomStream(77, n));
  CHECK(std::fabs(oracle::correlation(a.values, b.values)) <= 0.02);
}

TEST_CASE("pooled marginals pass the normality regression") {
  const auto plan = make_plan(arfima_covariance(0.2, 63), 32);
  const auto batch = sample_davies_harte(plan, 31250, RandomStream(2026, 0));
  REQUIRE(batch.values.size() == 1000000);
  CHECK(std::fabs(oracle::skewness(batch.values)) <= 0.02);
  CHECK(std::fabs(oracle::excess_kurtosis(batch.values)) <= 0.05);
}

TEST_CASE("csv path dump") {
  const auto batch = sample_paths(arfima_covariance(0.0, 3), 4, 3, RandomStream(8, 0));
  const std::string path = "paths_tmp.csv";
  write_paths_csv(batch, path);
  std::ifstream in(path);
  std::string line;
  std::size_t rows = 0, commas = 0;
  while (std::getline(in, line)) {
    ++rows;
    commas = std::count(line.begin(), line.end(), ',');
  }
  CHECK(rows == 3);
  CHECK(commas == 3);  // k = 4 values per row
  std::remove(path.c_str());
}
