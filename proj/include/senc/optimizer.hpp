#ifndef SENC_OPTIMIZER_HPP
#define SENC_OPTIMIZER_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "senc/losses.hpp"
#include "senc/models.hpp"

namespace senc {

struct OptimizerOptions {
  int n_restarts = 16;
  std::vector<std::array<double, 2>> init_box;  // per-dimension [lo, hi]; empty = [-2, 2]^dim
  double tol = 1e-8;                            // simplex value-spread threshold
  int max_iters = 2000;
  std::uint64_t seed = 0;

  static OptimizerOptions boxed(std::size_t dim, double lo = -2.0, double hi = 2.0);
};

// Result of a single derivative-free minimization in parameter space.
struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct FitResult {
  ModelParams params;
  double loss = 0.0;
  int iterations = 0;
  bool converged = false;
  int restart_index = 0;
};

using Objective = std::function<double(std::span<const double>)>;

// Nelder-Mead with the standard coefficients (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5). Stops when the spread of simplex values
// drops below opts.tol or after opts.max_iters iterations; returns the best
// vertex. Throws NonFiniteObjective if the objective is not finite at init.
MinimizeResult nelder_mead(const Objective& objective, std::span<const double> init,
                           const OptimizerOptions& opts);

// Runs nelder_mead from n_restarts points drawn uniformly from init_box and
// keeps the best final loss; ties go to the lowest restart index, so the
// result is deterministic for a given seed.
FitResult multistart_fit(const LossSpec& spec, std::span<const double> x_std,
                         std::span<const double> y, const OptimizerOptions& opts);

// Exhaustive evaluation on a Cartesian grid (grid_per_dim points per axis,
// inclusive of box endpoints). Verification oracle for multistart_fit.
// Grid coordinate j on axis d is box[d][0] + j * (box[d][1] - box[d][0]) / (grid_per_dim - 1).
FitResult grid_oracle(const LossSpec& spec, std::span<const double> x_std,
                      std::span<const double> y, int grid_per_dim,
                      const std::vector<std::array<double, 2>>& box);

}  // namespace senc

#endif
