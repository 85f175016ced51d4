#include "senc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "senc/csv.hpp"
#include "senc/eda.hpp"
#include "senc/errors.hpp"
#include "senc/losses.hpp"
#include "senc/optimizer.hpp"
#include "senc/rng.hpp"

namespace senc {

namespace {

constexpr double kRateHz = 4.0;
constexpr double kGsrBaseline = 5.0;  // microsiemens; removed again by decomposition
constexpr double kSaturationArg = 20.0;

AlignedSession package(std::string id, const std::vector<double>& speed,
                       const std::vector<double>& y) {
  AlignedSession s;
  s.participant_id = std::move(id);
  s.rate_hz = kRateHz;
  s.t.reserve(speed.size());
  for (std::size_t k = 0; k < speed.size(); ++k) s.t.push_back(static_cast<double>(k) / kRateHz);
  s.speed = speed;
  // response rides in a 1-unit phasic band on a flat tonic baseline
  s.gsr.reserve(y.size());
  for (double v : y) s.gsr.push_back(kGsrBaseline + v);
  return s;
}

}  // namespace

SyntheticSession gen_g1_session(const ModelParams& theta_star, std::size_t n, double sigma,
                                std::uint64_t seed) {
  if (theta_star.family != Family::G1) throw FamilyMismatch("gen_g1_session needs G1 parameters");
  if (n < 10) throw std::invalid_argument("n must be >= 10");
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  const double t1 = theta_star.theta[0], t2 = theta_star.theta[1];
  if (t1 == 0.0) throw std::invalid_argument("theta1 must be nonzero");

  Rng rng(seed);
  std::vector<double> speed(n);
  for (std::size_t i = 0; i + 2 < n; ++i) speed[i] = rng.gaussian();
  // two stimulus values deep in the tanh tails; their responses sit on the
  // curve within ~1e-16 and pin the response range to exactly [0, 1]
  speed[n - 2] = (-kSaturationArg - t2) / t1;
  speed[n - 1] = (kSaturationArg - t2) / t1;

  std::vector<double> x_std = standardize(speed).x_std;

  std::vector<double> y(n);
  std::size_t clamped = 0;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    double clean = eval_g1(x_std[i], theta_star);
    double v = sigma > 0.0 ? clean + sigma * rng.gaussian() : clean;
    double c = std::clamp(v, 0.0, 1.0);
    if (c != v) ++clamped;
    y[i] = c;
  }
  y[n - 2] = t1 > 0.0 ? 0.0 : 1.0;
  y[n - 1] = t1 > 0.0 ? 1.0 : 0.0;

  SyntheticSession out;
  out.session = package("synth_g1", speed, y);
  out.theta_star = theta_star;
  out.sigma = sigma;
  out.seed = seed;
  out.response = std::move(y);
  out.clamped_fraction = static_cast<double>(clamped) / static_cast<double>(n - 2);
  return out;
}

SyntheticSession gen_infomax_like(std::size_t n, double sigma, std::uint64_t seed) {
  if (n < 10) throw std::invalid_argument("n must be >= 10");
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");

  Rng rng(seed);
  std::vector<double> speed(n);
  for (double& v : speed) v = rng.gaussian();

  std::vector<double> x_std = standardize(speed).x_std;
  std::vector<double> cdf = infomax_response(x_std, x_std);

  std::vector<double> y(n);
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = sigma > 0.0 ? cdf[i] + sigma * rng.gaussian() : cdf[i];
    double c = std::clamp(v, 0.0, 1.0);
    if (c != v) ++clamped;
    y[i] = c;
  }

  FitResult ref = grid_oracle(LossSpec::bec(2.0), x_std, cdf, 41,
                              {{-2.0, 2.0}, {-2.0, 2.0}});

  SyntheticSession out;
  out.session = package("synth_infomax", speed, y);
  out.theta_star = ref.params;
  out.sigma = sigma;
  out.seed = seed;
  out.response = std::move(y);
  out.clamped_fraction = static_cast<double>(clamped) / static_cast<double>(n);
  return out;
}

void write_session_dir(const SyntheticSession& synth, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const AlignedSession& s = synth.session;

  std::vector<std::vector<double>> speed_rows, gsr_rows;
  speed_rows.reserve(s.t.size());
  gsr_rows.reserve(s.t.size());
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    speed_rows.push_back({s.t[i], s.speed[i]});
    gsr_rows.push_back({s.t[i], s.gsr[i]});
  }
  csv::write_rows(dir / "speed.csv", "t,value", speed_rows);
  csv::write_rows(dir / "gsr.csv", "t,value", gsr_rows);

  nlohmann::json meta;
  meta["sample_rate_hz"]["speed"] = s.rate_hz;
  meta["sample_rate_hz"]["gsr"] = s.rate_hz;
  std::ofstream(dir / "meta.json") << meta.dump(2) << '\n';

  nlohmann::json truth;
  truth["kind"] = synth.theta_star.family == Family::G1 ? "g1" : "g2";
  truth["family"] = family_name(synth.theta_star.family);
  truth["theta_star"] = synth.theta_star.theta;
  truth["sigma"] = synth.sigma;
  truth["seed"] = synth.seed;
  truth["n"] = s.t.size();
  truth["clamped_fraction"] = synth.clamped_fraction;
  std::ofstream(dir / "truth.json") << truth.dump(2) << '\n';
}

}  // namespace senc
