#ifndef SENC_MODELS_HPP
#define SENC_MODELS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace senc {

// G1: bounded tanh response, theta = [theta1, theta2].
// G2: rectified quadratic rate, theta = [theta0, theta1, theta2].
enum class Family { G1, G2 };

std::size_t family_dim(Family f);
std::string family_name(Family f);

struct ModelParams {
  Family family = Family::G1;
  std::vector<double> theta;

  static ModelParams g1(double theta1, double theta2);
  static ModelParams g2(double theta0, double theta1, double theta2);
  static ModelParams from_vector(Family family, std::span<const double> theta);
};

// g1(x) = (1 + tanh(theta1*x + theta2)) / 2, clamped to the open unit
// interval so saturation never rounds to exactly 0 or 1.
double eval_g1(double x, const ModelParams& params);

// g2(x) = max(0, theta0*x^2 + theta1*x + theta2)
double eval_g2(double x, const ModelParams& params);

// dispatch on params.family
double eval_model(double x, const ModelParams& params);

// F(x) = #{samples <= x} / n; right-continuous, F(max sample) = 1.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::span<const double> samples);

  double operator()(double x) const;
  const std::vector<double>& sorted_samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// Infomax benchmark: the stimulus CDF evaluated at x_points.
std::vector<double> infomax_response(std::span<const double> x_points,
                                     std::span<const double> stimulus_samples);

// Equal-count binned estimate of the response nonlinearity y(x).
struct BinnedNonlinearity {
  std::vector<double> bin_edges;   // length B+1, strictly ascending
  std::vector<double> bin_mean_x;  // length B
  std::vector<double> bin_mean_y;  // length B
  std::vector<std::size_t> bin_counts;
};

BinnedNonlinearity empirical_nonlinearity(std::span<const double> x, std::span<const double> y,
                                          std::size_t n_bins);

}  // namespace senc

#endif
