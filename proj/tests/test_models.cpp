#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "senc/errors.hpp"
#include "senc/models.hpp"
#include "senc/rng.hpp"

using namespace senc;

TEST_CASE("g1 basics") {
  ModelParams p = ModelParams::g1(1.0, 0.0);
  CHECK(eval_g1(0.0, p) == doctest::Approx(0.5));
  CHECK(eval_g1(1.0, p) == doctest::Approx(0.880797077977882));
  CHECK(eval_g1(100.0, p) > 1.0 - 1e-12);
  CHECK(eval_g1(100.0, p) < 1.0);
}

TEST_CASE("g1 stays strictly inside (0,1) and is symmetric around 0.5") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    double t1 = 4.0 * rng.uniform01() - 2.0;
    double x = 60.0 * rng.uniform01() - 30.0;
    ModelParams p = ModelParams::g1(t1, 0.0);
    double a = eval_g1(x, p), b = eval_g1(-x, p);
    CHECK(a > 0.0);
    CHECK(a < 1.0);
    CHECK(std::abs(a + b - 1.0) < 1e-12);
  }
}

TEST_CASE("g1 rejects g2 parameters") {
  ModelParams p = ModelParams::g2(1.0, 0.0, 0.0);
  CHECK_THROWS_AS(eval_g1(0.0, p), FamilyMismatch);
  CHECK_THROWS_AS(eval_g2(0.0, ModelParams::g1(1.0, 0.0)), FamilyMismatch);
}

TEST_CASE("g2 is the rectified quadratic") {
  CHECK(eval_g2(2.0, ModelParams::g2(1, 0, 0)) == doctest::Approx(4.0));
  CHECK(eval_g2(-1.0, ModelParams::g2(0, 1, 0)) == 0.0);
  CHECK(eval_g2(0.7, ModelParams::g2(0, 0, -1)) == 0.0);
  CHECK(eval_g2(-3.0, ModelParams::g2(0, 0, -1)) == 0.0);
}

TEST_CASE("g2 equals the raw quadratic wherever it is nonnegative") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    double t0 = 2.0 * rng.uniform01() - 1.0;
    double t1 = 2.0 * rng.uniform01() - 1.0;
    double t2 = 2.0 * rng.uniform01() - 1.0;
    double x = 6.0 * rng.uniform01() - 3.0;
    double q = t0 * x * x + t1 * x + t2;
    double g = eval_g2(x, ModelParams::g2(t0, t1, t2));
    CHECK(g >= 0.0);
    if (q >= 0.0) CHECK(g == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("model params validate their arity") {
  std::vector<double> three = {1, 2, 3};
  CHECK_THROWS_AS(ModelParams::from_vector(Family::G1, three), FamilyMismatch);
  std::vector<double> two = {1, 2};
  CHECK_THROWS_AS(ModelParams::from_vector(Family::G2, two), FamilyMismatch);
}

TEST_CASE("empirical CDF counts samples at and below x") {
  std::vector<double> samples = {1, 2, 3, 4};
  EmpiricalCdf cdf(samples);
  CHECK(cdf(2.5) == doctest::Approx(0.5));
  CHECK(cdf(4.0) == 1.0);
  CHECK(cdf(0.0) == 0.0);
}

TEST_CASE("empirical CDF is monotone") {
  Rng rng(23);
  std::vector<double> samples(300);
  for (double& v : samples) v = rng.gaussian();
  EmpiricalCdf cdf(samples);
  double prev = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.01) {
    double v = cdf(x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("infomax response at its own distinct samples is the rank scale") {
  std::vector<double> x = {3, 1, 4, 2};
  std::vector<double> sorted_x = {1, 2, 3, 4};
  std::vector<double> r = infomax_response(sorted_x, x);
  std::vector<double> expected = {0.25, 0.5, 0.75, 1.0};
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r[i] == expected[i]);
}

TEST_CASE("infomax response with a degenerate stimulus") {
  std::vector<double> x(25, 3.5);
  std::vector<double> pts = {3.5, 4.0, 100.0};
  std::vector<double> r = infomax_response(pts, x);
  for (double v : r) CHECK(v == 1.0);
}

TEST_CASE("infomax response near 0 approximates the normal CDF") {
  Rng rng(2024);
  std::vector<double> x(10000);
  for (double& v : x) v = rng.gaussian();
  std::vector<double> pts = {0.0};
  std::vector<double> r = infomax_response(pts, x);
  CHECK(std::abs(r[0] - 0.5) < 0.02);  // Phi(0) = 0.5
}

TEST_CASE("infomax response over its own samples has mean (n+1)/(2n)") {
  Rng rng(6);
  std::vector<double> x(1000);
  for (double& v : x) v = rng.gaussian();
  std::vector<double> r = infomax_response(x, x);
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  double n = static_cast<double>(r.size());
  CHECK(mean == doctest::Approx((n + 1.0) / (2.0 * n)).epsilon(1e-12));
}

TEST_CASE("probability integral transform: CDF of own samples is uniform") {
  Rng rng(7);
  std::vector<double> x(1000);
  for (double& v : x) v = rng.gaussian();
  std::vector<double> u = infomax_response(x, x);
  std::vector<int> counts(10, 0);
  for (double v : u) {
    int bin = std::min(9, static_cast<int>(v * 10.0));
    ++counts[bin];
  }
  for (int c : counts) CHECK(std::abs(c - 100) <= 1);
}

TEST_CASE("empirical nonlinearity with a constant response") {
  Rng rng(12);
  std::vector<double> x(60), y(60, 0.3);
  for (double& v : x) v = rng.gaussian();
  BinnedNonlinearity b = empirical_nonlinearity(x, y, 5);
  REQUIRE(b.bin_mean_y.size() == 5);
  for (double v : b.bin_mean_y) CHECK(v == doctest::Approx(0.3));
}

TEST_CASE("empirical nonlinearity block means on a linear response") {
  std::vector<double> x(100), y(100);
  for (int i = 0; i < 100; ++i) x[i] = y[i] = static_cast<double>(i + 1);
  BinnedNonlinearity b = empirical_nonlinearity(x, y, 4);
  std::vector<double> expected = {13, 38, 63, 88};
  REQUIRE(b.bin_mean_y.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(b.bin_mean_y[i] == doctest::Approx(expected[i]));
    CHECK(b.bin_mean_x[i] == doctest::Approx(expected[i]));
    CHECK(b.bin_counts[i] == 25);
  }
}

TEST_CASE("empirical nonlinearity rejects too few points") {
  std::vector<double> x = {1, 2, 3}, y = {1, 2, 3};
  CHECK_THROWS_AS(empirical_nonlinearity(x, y, 5), TooFewPoints);
}

TEST_CASE("empirical nonlinearity counts sum to n and edges ascend") {
  Rng rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 31 + static_cast<std::size_t>(rng.uniform01() * 200);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.uniform01() < 0.3 ? 0.0 : rng.gaussian();  // deliberate ties
      y[i] = rng.uniform01();
    }
    std::size_t bins = 3 + static_cast<std::size_t>(rng.uniform01() * 10);
    BinnedNonlinearity b = empirical_nonlinearity(x, y, bins);
    std::size_t total = 0;
    for (std::size_t c : b.bin_counts) {
      CHECK(c >= 1);
      total += c;
    }
    CHECK(total == n);
    for (std::size_t i = 1; i < b.bin_edges.size(); ++i) CHECK(b.bin_edges[i] > b.bin_edges[i - 1]);
  }
}
