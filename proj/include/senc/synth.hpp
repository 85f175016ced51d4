#ifndef SENC_SYNTH_HPP
#define SENC_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "senc/ingest.hpp"
#include "senc/models.hpp"

namespace senc {

// A generated session with known ground truth. `response` is the target
// series y the generator produced; the session's gsr embeds the same series
// so file-based pipelines can recover it.
struct SyntheticSession {
  AlignedSession session;
  ModelParams theta_star;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> response;
  double clamped_fraction = 0.0;  // share of noisy samples clipped to [0, 1]
};

// Stimulus drawn from a seeded standard normal; response
// y = clamp(g1(x_std; theta_star) + eps, 0, 1) with eps ~ N(0, sigma^2),
// where x_std is the standardized stimulus the fitting pipeline will see.
// Two extreme on-curve samples pin y to exactly 0 and 1, so min-max
// normalization of the embedded phasic band reproduces y exactly.
// Requires n >= 10 and theta_star = [theta1, theta2] with theta1 != 0.
SyntheticSession gen_g1_session(const ModelParams& theta_star, std::size_t n, double sigma,
                                std::uint64_t seed);

// Response equal to the empirical CDF of the drawn stimulus plus clamped
// noise; theta_star records the best G1 approximation of that CDF found by
// a 41-per-dim grid search over [-2, 2]^2 (reference only).
SyntheticSession gen_infomax_like(std::size_t n, double sigma, std::uint64_t seed);

// Writes speed.csv, gsr.csv, meta.json and truth.json in the ingest
// directory layout, so synthetic sessions flow through the same loaders as
// recorded ones.
void write_session_dir(const SyntheticSession& synth, const std::filesystem::path& dir);

}  // namespace senc

#endif
