#include "senc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "senc/errors.hpp"
#include "senc/rng.hpp"

namespace senc {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

// Non-finite values encountered mid-search are treated as worse than any
// vertex, so the simplex backs away from them.
double guarded(const Objective& f, std::span<const double> x) {
  double v = f(x);
  return std::isfinite(v) ? v : std::numeric_limits<double>::max();
}

Family family_for(LossKind kind) { return kind == LossKind::LNP ? Family::G2 : Family::G1; }

void check_box(const std::vector<std::array<double, 2>>& box) {
  for (const auto& [lo, hi] : box)
    if (!(lo < hi)) throw std::invalid_argument("init_box requires lo < hi per dimension");
}

// Presorting the data once keeps the LNP loss from re-sorting on every
// objective evaluation; the loss value is unchanged.
struct PreparedData {
  std::vector<double> x, y;
};

PreparedData prepare(const LossSpec& spec, std::span<const double> x_std, std::span<const double> y) {
  if (x_std.size() != y.size())
    throw LengthMismatch("x has " + std::to_string(x_std.size()) + " points, y has " +
                         std::to_string(y.size()));
  if (x_std.empty()) throw LengthMismatch("empty data");
  PreparedData d;
  if (spec.kind == LossKind::LNP) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(x_std.size());
    for (std::size_t i = 0; i < x_std.size(); ++i) pairs.emplace_back(x_std[i], y[i]);
    std::sort(pairs.begin(), pairs.end());
    d.x.reserve(pairs.size());
    d.y.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      d.x.push_back(a);
      d.y.push_back(b);
    }
  } else {
    d.x.assign(x_std.begin(), x_std.end());
    d.y.assign(y.begin(), y.end());
  }
  return d;
}

}  // namespace

OptimizerOptions OptimizerOptions::boxed(std::size_t dim, double lo, double hi) {
  OptimizerOptions opts;
  opts.init_box.assign(dim, {lo, hi});
  return opts;
}

MinimizeResult nelder_mead(const Objective& objective, std::span<const double> init,
                           const OptimizerOptions& opts) {
  const std::size_t dim = init.size();
  if (dim == 0) throw std::invalid_argument("init must have dimension >= 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  double f_init = objective(init);
  if (!std::isfinite(f_init))
    throw NonFiniteObjective("objective not finite at the initial point");

  // simplex: init plus one perturbed vertex per dimension
  std::vector<std::vector<double>> verts(dim + 1, std::vector<double>(init.begin(), init.end()));
  std::vector<double> fvals(dim + 1);
  fvals[0] = f_init;
  for (std::size_t d = 0; d < dim; ++d) {
    double step = 0.1 * std::max(1.0, std::abs(init[d]));
    verts[d + 1][d] += step;
    fvals[d + 1] = guarded(objective, verts[d + 1]);
  }

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);

  int iter = 0;
  bool converged = false;
  for (; iter < opts.max_iters; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    std::size_t best = order.front(), worst = order.back();

    if (fvals[worst] - fvals[best] < opts.tol) {
      converged = true;
      break;
    }

    // centroid of all but the worst vertex
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += verts[order[k]][d];
    for (std::size_t d = 0; d < dim; ++d) centroid[d] /= static_cast<double>(dim);

    for (std::size_t d = 0; d < dim; ++d) xr[d] = centroid[d] + kReflect * (centroid[d] - verts[worst][d]);
    double fr = guarded(objective, xr);

    if (fr < fvals[best]) {
      for (std::size_t d = 0; d < dim; ++d) xe[d] = centroid[d] + kExpand * (xr[d] - centroid[d]);
      double fe = guarded(objective, xe);
      if (fe < fr) {
        verts[worst] = xe;
        fvals[worst] = fe;
      } else {
        verts[worst] = xr;
        fvals[worst] = fr;
      }
      continue;
    }

    std::size_t second_worst = order[dim - 1];
    if (fr < fvals[second_worst]) {
      verts[worst] = xr;
      fvals[worst] = fr;
      continue;
    }

    if (fr < fvals[worst]) {
      // outside contraction
      for (std::size_t d = 0; d < dim; ++d) xc[d] = centroid[d] + kContract * (xr[d] - centroid[d]);
      double fc = guarded(objective, xc);
      if (fc <= fr) {
        verts[worst] = xc;
        fvals[worst] = fc;
        continue;
      }
    } else {
      // inside contraction
      for (std::size_t d = 0; d < dim; ++d) xc[d] = centroid[d] + kContract * (verts[worst][d] - centroid[d]);
      double fc = guarded(objective, xc);
      if (fc < fvals[worst]) {
        verts[worst] = xc;
        fvals[worst] = fc;
        continue;
      }
    }

    // shrink toward the best vertex
    for (std::size_t k = 1; k <= dim; ++k) {
      std::size_t v = order[k];
      for (std::size_t d = 0; d < dim; ++d)
        verts[v][d] = verts[best][d] + kShrink * (verts[v][d] - verts[best][d]);
      fvals[v] = guarded(objective, verts[v]);
    }
  }

  std::size_t best = 0;
  for (std::size_t v = 1; v <= dim; ++v)
    if (fvals[v] < fvals[best]) best = v;

  MinimizeResult result;
  result.x = verts[best];
  result.value = fvals[best];
  result.iterations = iter;
  result.converged = converged;
  return result;
}

FitResult multistart_fit(const LossSpec& spec, std::span<const double> x_std,
                         std::span<const double> y, const OptimizerOptions& opts) {
  if (opts.n_restarts < 1) throw std::invalid_argument("n_restarts must be positive");
  const Family family = family_for(spec.kind);
  const std::size_t dim = family_dim(family);

  std::vector<std::array<double, 2>> box = opts.init_box;
  if (box.empty()) box.assign(dim, {-2.0, 2.0});
  if (box.size() != dim)
    throw std::invalid_argument("init_box dimension does not match the model family");
  check_box(box);

  PreparedData data = prepare(spec, x_std, y);
  Objective objective = [&spec, &data](std::span<const double> theta) {
    return loss_eval(ModelParams::from_vector(family_for(spec.kind), theta), spec, data.x, data.y);
  };

  Rng rng(opts.seed);
  FitResult best;
  bool have_best = false;
  std::vector<double> init(dim);
  for (int r = 0; r < opts.n_restarts; ++r) {
    for (std::size_t d = 0; d < dim; ++d) init[d] = rng.uniform(box[d][0], box[d][1]);
    MinimizeResult m = nelder_mead(objective, init, opts);
    if (!have_best || m.value < best.loss) {
      best.params = ModelParams::from_vector(family, m.x);
      best.loss = m.value;
      best.iterations = m.iterations;
      best.converged = m.converged;
      best.restart_index = r;
      have_best = true;
    }
  }
  return best;
}

FitResult grid_oracle(const LossSpec& spec, std::span<const double> x_std,
                      std::span<const double> y, int grid_per_dim,
                      const std::vector<std::array<double, 2>>& box) {
  if (grid_per_dim < 2) throw std::invalid_argument("grid_per_dim must be >= 2");
  const Family family = family_for(spec.kind);
  const std::size_t dim = family_dim(family);
  if (box.size() != dim)
    throw std::invalid_argument("grid box dimension does not match the model family");
  check_box(box);

  PreparedData data = prepare(spec, x_std, y);

  std::vector<int> idx(dim, 0);
  std::vector<double> point(dim);
  FitResult best;
  bool have_best = false;
  long long evals = 0;

  while (true) {
    for (std::size_t d = 0; d < dim; ++d)
      point[d] = box[d][0] + static_cast<double>(idx[d]) * (box[d][1] - box[d][0]) /
                                 static_cast<double>(grid_per_dim - 1);
    ModelParams params = ModelParams::from_vector(family, point);
    double loss = loss_eval(params, spec, data.x, data.y);
    ++evals;
    if (!have_best || loss < best.loss) {
      best.params = std::move(params);
      best.loss = loss;
      have_best = true;
    }

    // odometer increment over the grid
    std::size_t d = 0;
    for (; d < dim; ++d) {
      if (++idx[d] < grid_per_dim) break;
      idx[d] = 0;
    }
    if (d == dim) break;
  }

  best.iterations = static_cast<int>(evals);
  best.converged = true;
  best.restart_index = 0;
  return best;
}

}  // namespace senc
