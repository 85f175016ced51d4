#include "senc/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "senc/errors.hpp"
#include "senc/rng.hpp"

namespace senc {

std::string loss_kind_name(LossKind k) {
  switch (k) {
    case LossKind::BEC: return "bec";
    case LossKind::FMC: return "fmc";
    case LossKind::LNP: return "lnp";
  }
  return "?";
}

namespace {

void require_kind(const LossSpec& spec, LossKind kind, const char* fn) {
  if (spec.kind != kind)
    throw std::invalid_argument(std::string(fn) + " called with a " + loss_kind_name(spec.kind) +
                                " spec");
}

void require_lengths(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw LengthMismatch("x has " + std::to_string(x.size()) + " points, y has " +
                         std::to_string(y.size()));
  if (x.empty()) throw LengthMismatch("empty data");
}

LossSpec make_spec(LossKind kind, double p, double w_penalty) {
  if (!(p > 0.0)) throw std::invalid_argument("p > 0 required");
  if (w_penalty < 0.0) throw std::invalid_argument("w_penalty must be nonnegative");
  return LossSpec{kind, p, w_penalty};
}

}  // namespace

LossSpec LossSpec::bec(double p) { return make_spec(LossKind::BEC, p, 0.0); }
LossSpec LossSpec::fmc(double p) { return make_spec(LossKind::FMC, p, 0.0); }
LossSpec LossSpec::lnp(double p, double w_penalty) { return make_spec(LossKind::LNP, p, w_penalty); }

NoisySeries add_noise(std::span<const double> clean, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  NoisySeries out;
  out.sigma = sigma;
  out.seed = seed;
  out.y_noise.reserve(clean.size());
  Rng rng(seed);
  for (double v : clean) out.y_noise.push_back(v + sigma * rng.gaussian());
  return out;
}

double pow_abs(double r, double p) {
  if (p == 2.0) return r * r;
  double a = std::abs(r);
  if (p == 1.0) return a;
  return std::pow(a, p);
}

double loss_bec(const ModelParams& theta, const LossSpec& spec, std::span<const double> x_std,
                std::span<const double> y) {
  require_kind(spec, LossKind::BEC, "loss_bec");
  require_lengths(x_std, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x_std.size(); ++i)
    sum += pow_abs(y[i] - eval_g1(x_std[i], theta), spec.p);
  return sum;
}

double loss_fmc(const ModelParams& theta, const LossSpec& spec, std::span<const double> x_std,
                std::span<const double> y) {
  require_kind(spec, LossKind::FMC, "loss_fmc");
  require_lengths(x_std, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x_std.size(); ++i)
    sum += std::abs(y[i]) * pow_abs(y[i] - eval_g1(x_std[i], theta), spec.p);
  return sum;
}

double loss_lnp(const ModelParams& theta, const LossSpec& spec, std::span<const double> x_std,
                std::span<const double> y) {
  require_kind(spec, LossKind::LNP, "loss_lnp");
  require_lengths(x_std, y);
  const std::size_t n = x_std.size();
  if (n < 3) throw SeriesTooShort("LNP loss needs at least 3 points");

  // Lexicographic (x, y) order makes the result exactly invariant under
  // input permutation. Already-sorted data skips the copy, which matters
  // inside optimizer loops.
  std::vector<std::pair<double, double>> sorted;
  const double* xs = x_std.data();
  const double* ys = y.data();
  bool presorted = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (x_std[i] < x_std[i - 1] || (x_std[i] == x_std[i - 1] && y[i] < y[i - 1])) {
      presorted = false;
      break;
    }
  }
  std::vector<double> xbuf, ybuf;
  if (!presorted) {
    sorted.reserve(n);
    for (std::size_t i = 0; i < n; ++i) sorted.emplace_back(x_std[i], y[i]);
    std::sort(sorted.begin(), sorted.end());
    xbuf.resize(n);
    ybuf.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      xbuf[i] = sorted[i].first;
      ybuf[i] = sorted[i].second;
    }
    xs = xbuf.data();
    ys = ybuf.data();
  }

  double data_term = 0.0;
  double y_mean = 0.0;
  double g_mean = 0.0;
  double g_prev2 = 0.0, g_prev1 = 0.0;
  double second_diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double g = eval_g2(xs[i], theta);
    data_term += pow_abs(ys[i] - g, spec.p);
    y_mean += ys[i];
    g_mean += g;
    if (i >= 2) second_diff += std::abs(g - 2.0 * g_prev1 + g_prev2);
    g_prev2 = g_prev1;
    g_prev1 = g;
  }
  y_mean /= static_cast<double>(n);
  g_mean /= static_cast<double>(n);

  return data_term + spec.w_penalty * (std::abs(y_mean - g_mean) + second_diff);
}

double loss_eval(const ModelParams& theta, const LossSpec& spec, std::span<const double> x_std,
                 std::span<const double> y) {
  switch (spec.kind) {
    case LossKind::BEC: return loss_bec(theta, spec, x_std, y);
    case LossKind::FMC: return loss_fmc(theta, spec, x_std, y);
    case LossKind::LNP: return loss_lnp(theta, spec, x_std, y);
  }
  throw std::invalid_argument("unknown loss kind");
}

}  // namespace senc
