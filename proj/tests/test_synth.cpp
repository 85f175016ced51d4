#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "senc/eda.hpp"
#include "senc/errors.hpp"
#include "senc/losses.hpp"
#include "senc/models.hpp"
#include "senc/optimizer.hpp"
#include "senc/rng.hpp"
#include "senc/sweep.hpp"
#include "senc/synth.hpp"

using namespace senc;

namespace {

// phasic recovery with a decomposition window covering the whole series,
// so the tonic estimate is the constant global median
std::vector<double> recovered_response(const AlignedSession& s) {
  double window_s = 2.0 * static_cast<double>(s.gsr.size()) / s.rate_hz;
  EdaDecomposition d = decompose(s.gsr, s.rate_hz, window_s);
  return normalize_unit(d.phasic).y;
}

}  // namespace

TEST_CASE("gen_g1_session pins the response near 0.5 at x close to 0") {
  SyntheticSession synth = gen_g1_session(ModelParams::g1(1.0, 0.0), 2000, 0.0, 3);
  std::vector<double> x_std = standardize(synth.session.speed).x_std;
  std::size_t closest = 0;
  for (std::size_t i = 1; i < x_std.size(); ++i)
    if (std::abs(x_std[i]) < std::abs(x_std[closest])) closest = i;
  CHECK(std::abs(synth.response[closest] - 0.5) < 0.02);
}

TEST_CASE("gen_g1_session is deterministic") {
  SyntheticSession a = gen_g1_session(ModelParams::g1(1.5, -0.3), 500, 0.05, 17);
  SyntheticSession b = gen_g1_session(ModelParams::g1(1.5, -0.3), 500, 0.05, 17);
  REQUIRE(a.session.speed.size() == b.session.speed.size());
  for (std::size_t i = 0; i < a.session.speed.size(); ++i) {
    CHECK(a.session.speed[i] == b.session.speed[i]);
    CHECK(a.session.gsr[i] == b.session.gsr[i]);
    CHECK(a.response[i] == b.response[i]);
  }
}

TEST_CASE("gen_g1_session residual spread matches sigma") {
  const double sigma = 0.05;
  SyntheticSession synth = gen_g1_session(ModelParams::g1(1.5, -0.3), 100000, sigma, 23);
  std::vector<double> x_std = standardize(synth.session.speed).x_std;
  double ss = 0.0, mean = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < x_std.size(); ++i) {
    double y = synth.response[i];
    if (y <= 0.0 || y >= 1.0) continue;  // clamped samples and range sentinels
    double r = y - eval_g1(x_std[i], synth.theta_star);
    mean += r;
    ss += r * r;
    ++count;
  }
  mean /= static_cast<double>(count);
  double sd = std::sqrt(ss / static_cast<double>(count) - mean * mean);
  CHECK(std::abs(sd - sigma) < 0.002);
  CHECK(synth.clamped_fraction < 0.2);
}

TEST_CASE("gen_g1_session validates its arguments") {
  CHECK_THROWS_AS(gen_g1_session(ModelParams::g1(1.0, 0.0), 5, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_g1_session(ModelParams::g1(0.0, 0.5), 100, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_g1_session(ModelParams::g2(1, 0, 0), 100, 0.0, 1), FamilyMismatch);
}

TEST_CASE("decompose + normalize round-trips the generated response") {
  for (std::uint64_t seed : {4u, 9u}) {
    for (double sigma : {0.0, 0.05}) {
      SyntheticSession synth = gen_g1_session(ModelParams::g1(1.5, -0.3), 2000, sigma, seed);
      std::vector<double> back = recovered_response(synth.session);
      double max_err = 0.0;
      for (std::size_t i = 0; i < back.size(); ++i)
        max_err = std::max(max_err, std::abs(back[i] - synth.response[i]));
      CHECK(max_err < 1e-6);
    }
  }
}

TEST_CASE("round trip holds across generating parameters") {
  Rng rng(55);
  for (int trial = 0; trial < 6; ++trial) {
    double t1 = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.7, 2.0);
    double t2 = rng.uniform(-1.0, 1.0);
    SyntheticSession synth =
        gen_g1_session(ModelParams::g1(t1, t2), 1500, 0.03, 100 + static_cast<std::uint64_t>(trial));
    std::vector<double> back = recovered_response(synth.session);
    double max_err = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i)
      max_err = std::max(max_err, std::abs(back[i] - synth.response[i]));
    CHECK(max_err < 1e-6);
  }
}

TEST_CASE("noisy recovery lands within 0.1 of the generating parameters") {
  SyntheticSession synth = gen_g1_session(ModelParams::g1(1.5, -0.3), 2000, 0.05, 71);
  std::vector<double> x_std = standardize(synth.session.speed).x_std;
  OptimizerOptions opts;
  opts.seed = 7;
  FitResult fit = multistart_fit(LossSpec::bec(2.0), x_std, synth.response, opts);
  CHECK(std::abs(fit.params.theta[0] - 1.5) < 0.1);
  CHECK(std::abs(fit.params.theta[1] + 0.3) < 0.1);
}

TEST_CASE("gen_infomax_like response equals the rank scale at zero noise") {
  const std::size_t n = 400;
  SyntheticSession synth = gen_infomax_like(n, 0.0, 13);
  std::vector<double> x_std = standardize(synth.session.speed).x_std;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x_std[a] < x_std[b]; });
  for (std::size_t rank = 1; rank <= n; ++rank)
    CHECK(synth.response[order[rank - 1]] ==
          static_cast<double>(rank) / static_cast<double>(n));

  CHECK(mse(std::vector<double>(synth.response),
            infomax_response(x_std, x_std)) == 0.0);
}

TEST_CASE("gen_infomax_like noise contributes sigma^2 of MSE") {
  SyntheticSession synth = gen_infomax_like(5000, 0.05, 37);
  std::vector<double> x_std = standardize(synth.session.speed).x_std;
  std::vector<double> cdf = infomax_response(x_std, x_std);
  double v = mse(synth.response, cdf);
  CHECK(std::abs(v - 0.0025) < 0.0005);
}

TEST_CASE("gen_infomax_like records a sensible reference fit") {
  SyntheticSession synth = gen_infomax_like(1000, 0.0, 29);
  CHECK(synth.theta_star.family == Family::G1);
  CHECK(synth.theta_star.theta[0] > 0.0);  // CDF is increasing
  std::vector<double> x_std = standardize(synth.session.speed).x_std;
  std::vector<double> cdf = infomax_response(x_std, x_std);
  std::vector<double> curve(x_std.size());
  for (std::size_t i = 0; i < x_std.size(); ++i) curve[i] = eval_g1(x_std[i], synth.theta_star);
  CHECK(mse(curve, cdf) < 0.01);
}
