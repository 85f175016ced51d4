#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "senc/errors.hpp"
#include "senc/losses.hpp"
#include "senc/rng.hpp"

using namespace senc;

TEST_CASE("add_noise with sigma 0 copies the input") {
  std::vector<double> clean = {0.1, 0.5, -0.3};
  NoisySeries out = add_noise(clean, 0.0, 99);
  for (std::size_t i = 0; i < clean.size(); ++i) CHECK(out.y_noise[i] == clean[i]);
}

TEST_CASE("add_noise is deterministic under a fixed seed") {
  std::vector<double> clean(64, 0.25);
  NoisySeries a = add_noise(clean, 0.05, 1234);
  NoisySeries b = add_noise(clean, 0.05, 1234);
  for (std::size_t i = 0; i < clean.size(); ++i) CHECK(a.y_noise[i] == b.y_noise[i]);
  NoisySeries c = add_noise(clean, 0.05, 1235);
  bool any_diff = false;
  for (std::size_t i = 0; i < clean.size(); ++i) any_diff |= (a.y_noise[i] != c.y_noise[i]);
  CHECK(any_diff);
}

TEST_CASE("add_noise moments match sigma = 0.05") {
  std::vector<double> clean(100000, 0.0);
  NoisySeries out = add_noise(clean, 0.05, 7);
  double mean = std::accumulate(out.y_noise.begin(), out.y_noise.end(), 0.0) /
                static_cast<double>(out.y_noise.size());
  double ss = 0.0;
  for (double v : out.y_noise) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(out.y_noise.size()));
  CHECK(std::abs(mean) < 0.001);
  CHECK(std::abs(sd - 0.05) < 0.002);
}

TEST_CASE("bec loss is zero at a perfect fit") {
  Rng rng(10);
  ModelParams theta = ModelParams::g1(1.3, -0.2);
  std::vector<double> x(50), y(50);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.gaussian();
    y[i] = eval_g1(x[i], theta);
  }
  for (double p : {0.1, 0.7, 1.0, 2.0}) CHECK(loss_bec(theta, LossSpec::bec(p), x, y) == 0.0);
}

TEST_CASE("bec loss single-point arithmetic") {
  ModelParams theta = ModelParams::g1(1.0, 0.0);
  std::vector<double> x = {0.0}, y = {1.0};
  CHECK(loss_bec(theta, LossSpec::bec(2.0), x, y) == doctest::Approx(0.25));
  CHECK(loss_bec(theta, LossSpec::bec(1.0), x, y) == doctest::Approx(0.5));
}

TEST_CASE("bec loss rejects mismatched lengths") {
  ModelParams theta = ModelParams::g1(1.0, 0.0);
  std::vector<double> x = {0.0, 1.0}, y = {1.0};
  CHECK_THROWS_AS(loss_bec(theta, LossSpec::bec(2.0), x, y), LengthMismatch);
}

TEST_CASE("fmc loss vanishes when y is zero") {
  std::vector<double> x = {-1, 0, 1}, y = {0, 0, 0};
  ModelParams theta = ModelParams::g1(0.8, 0.3);
  for (double p : {0.31, 1.16, 2.0}) CHECK(loss_fmc(theta, LossSpec::fmc(p), x, y) == 0.0);
}

TEST_CASE("fmc equals bec when all |y| = 1") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 20 + static_cast<std::size_t>(rng.uniform01() * 50);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.gaussian();
      y[i] = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    }
    ModelParams theta = ModelParams::g1(rng.uniform(-2, 2), rng.uniform(-2, 2));
    double p = 0.1 + 1.9 * rng.uniform01();
    double fmc = loss_fmc(theta, LossSpec::fmc(p), x, y);
    double bec = loss_bec(theta, LossSpec::bec(p), x, y);
    CHECK(std::abs(fmc - bec) <= 1e-12);
  }
}

TEST_CASE("fmc loss single-point arithmetic") {
  ModelParams theta = ModelParams::g1(1.0, 0.0);
  std::vector<double> x = {0.0}, y = {0.8};
  CHECK(loss_fmc(theta, LossSpec::fmc(2.0), x, y) == doctest::Approx(0.072));
}

TEST_CASE("lnp loss is zero for a constant perfect fit") {
  std::vector<double> x = {-1, 0, 1, 2}, y = {0.4, 0.4, 0.4, 0.4};
  ModelParams theta = ModelParams::g2(0, 0, 0.4);
  for (double p : {0.1, 1.0, 2.0})
    CHECK(loss_lnp(theta, LossSpec::lnp(p, 0.37), x, y) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("lnp loss matches the three-point hand computation") {
  std::vector<double> x = {-1, 0, 1}, y = {0, 0, 0};
  ModelParams theta = ModelParams::g2(1, 0, 0);
  double loss = loss_lnp(theta, LossSpec::lnp(2.0, 0.1), x, y);
  CHECK(loss == doctest::Approx(2.0 + 0.1 * (2.0 / 3.0 + 2.0)).epsilon(1e-12));
  CHECK(std::abs(loss - 2.26667) < 1e-5);
}

TEST_CASE("lnp penalty switches off at w = 0") {
  Rng rng(31);
  std::vector<double> x(40), y(40);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.gaussian();
    y[i] = rng.uniform01();
  }
  ModelParams theta = ModelParams::g2(0.4, -0.1, 0.3);
  double p = 1.37;
  double data_only = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    data_only += pow_abs(y[i] - eval_g2(x[i], theta), p);
  CHECK(loss_lnp(theta, LossSpec::lnp(p, 0.0), x, y) == doctest::Approx(data_only).epsilon(1e-12));
}

TEST_CASE("lnp loss requires at least 3 points") {
  std::vector<double> x = {0, 1}, y = {0, 1};
  CHECK_THROWS_AS(loss_lnp(ModelParams::g2(1, 0, 0), LossSpec::lnp(2.0, 0.1), x, y),
                  SeriesTooShort);
}

TEST_CASE("lnp loss is invariant under permutation of the points") {
  Rng rng(47);
  std::vector<double> x(60), y(60);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform01() < 0.2 ? 0.5 : rng.gaussian();  // include ties in x
    y[i] = rng.uniform01();
  }
  ModelParams theta = ModelParams::g2(0.7, 0.2, -0.1);
  LossSpec spec = LossSpec::lnp(0.94, 0.1);
  double reference = loss_lnp(theta, spec, x, y);

  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 10; ++trial) {
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform01() * i)]);
    std::vector<double> xp(x.size()), yp(y.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      xp[i] = x[perm[i]];
      yp[i] = y[perm[i]];
    }
    CHECK(loss_lnp(theta, spec, xp, yp) == reference);
  }
}

TEST_CASE("bec loss derivative in theta2 matches finite differences") {
  // smooth regime: |theta1*x + theta2| stays below 3
  Rng rng(53);
  std::vector<double> x(120), y(120);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform(-2.0, 2.0);
    y[i] = rng.uniform01();
  }
  const double t1 = 0.8;
  LossSpec spec = LossSpec::bec(2.0);
  for (double t2 : {-0.9, -0.2, 0.4, 1.0}) {
    // analytic: d/dt2 sum (y - g1)^2 = sum 2*(y - g1) * (-(1 - tanh^2)/2)
    double analytic = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double th = std::tanh(t1 * x[i] + t2);
      double g = 0.5 * (1.0 + th);
      analytic += 2.0 * (y[i] - g) * (-0.5 * (1.0 - th * th));
    }
    const double h = 1e-5;
    double up = loss_bec(ModelParams::g1(t1, t2 + h), spec, x, y);
    double dn = loss_bec(ModelParams::g1(t1, t2 - h), spec, x, y);
    double fd = (up - dn) / (2.0 * h);
    CHECK(std::abs(fd - analytic) / std::max(1.0, std::abs(analytic)) < 1e-4);
  }
}

TEST_CASE("losses reject a spec of the wrong kind") {
  std::vector<double> x = {0, 1, 2}, y = {0, 0, 0};
  CHECK_THROWS_AS(loss_bec(ModelParams::g1(1, 0), LossSpec::fmc(2.0), x, y),
                  std::invalid_argument);
  CHECK_THROWS_AS(loss_lnp(ModelParams::g2(1, 0, 0), LossSpec::bec(2.0), x, y),
                  std::invalid_argument);
}

TEST_CASE("loss spec validates p") {
  CHECK_THROWS_AS(LossSpec::bec(0.0), std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::lnp(-1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(LossSpec::lnp(1.0, -0.1), std::invalid_argument);
}
