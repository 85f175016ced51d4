#include "senc/eda.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "senc/errors.hpp"

namespace senc {

namespace {

double median_of(std::vector<double>& buf) {
  std::size_t mid = buf.size() / 2;
  std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
  double hi = buf[mid];
  if (buf.size() % 2 == 1) return hi;
  double lo = *std::max_element(buf.begin(), buf.begin() + mid);
  return 0.5 * (lo + hi);
}

}  // namespace

EdaDecomposition decompose(std::span<const double> gsr, double rate_hz, double window_s) {
  if (gsr.size() < 2) throw SeriesTooShort("gsr has " + std::to_string(gsr.size()) + " samples, need >= 2");
  if (!(rate_hz > 0.0)) throw std::invalid_argument("rate_hz must be positive");
  if (!(window_s >= 2.0 / rate_hz))
    throw std::invalid_argument("window_s must be at least 2 sample intervals");

  auto width = static_cast<std::size_t>(std::lround(window_s * rate_hz));
  if (width % 2 == 0) ++width;
  std::size_t half = width / 2;

  const std::size_t n = gsr.size();
  EdaDecomposition out;
  out.tonic.resize(n);
  out.phasic.resize(n);

  std::vector<double> buf;
  buf.reserve(width);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= half ? i - half : 0;
    std::size_t hi = std::min(i + half, n - 1);
    buf.assign(gsr.begin() + lo, gsr.begin() + hi + 1);
    out.tonic[i] = median_of(buf);
    out.phasic[i] = gsr[i] - out.tonic[i];
  }
  return out;
}

ResponseSeries normalize_unit(std::span<const double> phasic) {
  if (phasic.empty()) throw SeriesTooShort("phasic series is empty");
  auto [min_it, max_it] = std::minmax_element(phasic.begin(), phasic.end());
  double lo = *min_it, hi = *max_it;

  ResponseSeries out;
  out.y.resize(phasic.size());
  if (hi == lo) {
    std::fill(out.y.begin(), out.y.end(), 0.5);
    return out;
  }
  double span = hi - lo;
  for (std::size_t i = 0; i < phasic.size(); ++i) out.y[i] = (phasic[i] - lo) / span;
  return out;
}

StandardizedStimulus standardize(std::span<const double> x) {
  if (x.size() < 2) throw SeriesTooShort("stimulus has " + std::to_string(x.size()) + " samples, need >= 2");

  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(x.size());

  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  double sigma = std::sqrt(ss / static_cast<double>(x.size()));
  if (sigma == 0.0) throw ZeroVariance("stimulus is constant");

  StandardizedStimulus out;
  out.mu = mu;
  out.sigma = sigma;
  out.x_std.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.x_std[i] = (x[i] - mu) / sigma;
  return out;
}

}  // namespace senc
