#ifndef SENC_LOSSES_HPP
#define SENC_LOSSES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "senc/models.hpp"

namespace senc {

enum class LossKind { BEC, FMC, LNP };

std::string loss_kind_name(LossKind k);

// p is the residual exponent; w_penalty weights the LNP mean-match and
// smoothness penalties and is meaningful for LNP only.
struct LossSpec {
  LossKind kind = LossKind::BEC;
  double p = 2.0;
  double w_penalty = 0.0;

  static LossSpec bec(double p);
  static LossSpec fmc(double p);
  static LossSpec lnp(double p, double w_penalty);
};

struct NoisySeries {
  std::vector<double> y_noise;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// clean[i] + Gaussian(0, sigma^2) noise from a seeded generator; the same
// (clean, sigma, seed) triple always yields bit-identical output.
NoisySeries add_noise(std::span<const double> clean, double sigma, std::uint64_t seed);

// |r|^p with fast paths for p = 1 and p = 2. Residuals are run through the
// absolute value before exponentiation so fractional p stays defined.
double pow_abs(double r, double p);

// sum_i |y_i - g1(x_i)|^p
double loss_bec(const ModelParams& theta, const LossSpec& spec, std::span<const double> x_std,
                std::span<const double> y);

// sum_i |y_i| * |y_i - g1(x_i)|^p
double loss_fmc(const ModelParams& theta, const LossSpec& spec, std::span<const double> x_std,
                std::span<const double> y);

// sum_i |y_i - g2(x_i)|^p
//   + w_penalty * ( |mean(y) - mean(g2)| + sum of |second differences of g2| )
// with points sorted by x internally, so the value is permutation invariant.
double loss_lnp(const ModelParams& theta, const LossSpec& spec, std::span<const double> x_std,
                std::span<const double> y);

// dispatch on spec.kind
double loss_eval(const ModelParams& theta, const LossSpec& spec, std::span<const double> x_std,
                 std::span<const double> y);

}  // namespace senc

#endif
