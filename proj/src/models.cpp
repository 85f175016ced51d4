#include "senc/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "senc/errors.hpp"

namespace senc {

std::size_t family_dim(Family f) { return f == Family::G1 ? 2 : 3; }

std::string family_name(Family f) { return f == Family::G1 ? "g1" : "g2"; }

namespace {

void validate_theta(Family family, std::span<const double> theta) {
  if (theta.size() != family_dim(family))
    throw FamilyMismatch(family_name(family) + " needs " + std::to_string(family_dim(family)) +
                         " parameters, got " + std::to_string(theta.size()));
  for (double v : theta)
    if (!std::isfinite(v)) throw std::invalid_argument("model parameters must be finite");
}

}  // namespace

ModelParams ModelParams::g1(double theta1, double theta2) {
  return from_vector(Family::G1, std::array{theta1, theta2});
}

ModelParams ModelParams::g2(double theta0, double theta1, double theta2) {
  return from_vector(Family::G2, std::array{theta0, theta1, theta2});
}

ModelParams ModelParams::from_vector(Family family, std::span<const double> theta) {
  validate_theta(family, theta);
  ModelParams p;
  p.family = family;
  p.theta.assign(theta.begin(), theta.end());
  return p;
}

double eval_g1(double x, const ModelParams& params) {
  if (params.family != Family::G1) throw FamilyMismatch("eval_g1 called with " + family_name(params.family));
  double v = 0.5 * (1.0 + std::tanh(params.theta[0] * x + params.theta[1]));
  // keep the value strictly inside (0, 1) even when tanh saturates
  constexpr double lo = std::numeric_limits<double>::min();
  constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  return std::clamp(v, lo, hi);
}

double eval_g2(double x, const ModelParams& params) {
  if (params.family != Family::G2) throw FamilyMismatch("eval_g2 called with " + family_name(params.family));
  double q = (params.theta[0] * x + params.theta[1]) * x + params.theta[2];
  return q > 0.0 ? q : 0.0;
}

double eval_model(double x, const ModelParams& params) {
  return params.family == Family::G1 ? eval_g1(x, params) : eval_g2(x, params);
}

EmpiricalCdf::EmpiricalCdf(std::span<const double> samples) : sorted_(samples.begin(), samples.end()) {
  if (sorted_.empty()) throw SeriesTooShort("empirical CDF needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::vector<double> infomax_response(std::span<const double> x_points,
                                     std::span<const double> stimulus_samples) {
  EmpiricalCdf cdf(stimulus_samples);
  std::vector<double> out;
  out.reserve(x_points.size());
  for (double x : x_points) out.push_back(cdf(x));
  return out;
}

BinnedNonlinearity empirical_nonlinearity(std::span<const double> x, std::span<const double> y,
                                          std::size_t n_bins) {
  if (x.size() != y.size())
    throw LengthMismatch("x has " + std::to_string(x.size()) + " points, y has " +
                         std::to_string(y.size()));
  if (n_bins == 0) throw std::invalid_argument("n_bins must be positive");
  if (x.size() < n_bins)
    throw TooFewPoints(std::to_string(x.size()) + " points for " + std::to_string(n_bins) + " bins");

  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  BinnedNonlinearity out;
  out.bin_edges.reserve(n_bins + 1);
  out.bin_mean_x.reserve(n_bins);
  out.bin_mean_y.reserve(n_bins);
  out.bin_counts.reserve(n_bins);

  const std::size_t base = n / n_bins;
  const std::size_t extra = n % n_bins;  // first `extra` bins take one more point

  out.bin_edges.push_back(x[order.front()]);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < n_bins; ++b) {
    std::size_t count = base + (b < extra ? 1 : 0);
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      sx += x[order[pos + k]];
      sy += y[order[pos + k]];
    }
    out.bin_mean_x.push_back(sx / static_cast<double>(count));
    out.bin_mean_y.push_back(sy / static_cast<double>(count));
    out.bin_counts.push_back(count);
    pos += count;
    double edge = pos < n ? 0.5 * (x[order[pos - 1]] + x[order[pos]]) : x[order[n - 1]];
    // ties can collapse quantile edges; nudge to keep them strictly ascending
    if (edge <= out.bin_edges.back())
      edge = std::nextafter(out.bin_edges.back(), std::numeric_limits<double>::infinity());
    out.bin_edges.push_back(edge);
  }
  return out;
}

}  // namespace senc
