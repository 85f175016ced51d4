#ifndef SENC_SWEEP_HPP
#define SENC_SWEEP_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "senc/ingest.hpp"
#include "senc/losses.hpp"
#include "senc/optimizer.hpp"

namespace senc {

enum class TargetMode { Observed, Simulated };

// Ground truth used to build the target in Simulated mode:
// y = g1(x_std; theta_star) + N(0, sigma^2).
struct SimTarget {
  ModelParams theta_star;
  double sigma = 0.05;
};

// The error-penalty grid of the reference experiment.
std::vector<double> default_p_values();

struct SweepConfig {
  std::vector<double> p_values = default_p_values();
  std::vector<LossKind> models = {LossKind::BEC, LossKind::FMC, LossKind::LNP};
  TargetMode target_mode = TargetMode::Observed;
  double w_penalty = 0.1;
  double eda_window_s = 8.0;  // decomposition window for Observed targets
  OptimizerOptions optimizer;
  std::optional<SimTarget> sim;  // required when target_mode == Simulated
};

struct SweepRow {
  double p = 0.0;
  LossKind model = LossKind::BEC;
  double mse_vs_infomax = 0.0;
  double fit_loss = 0.0;
  ModelParams params;
  bool converged = false;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // p-major, models in config order within each p
};

// (1/n) * sum (a_i - b_i)^2
double mse(std::span<const double> a, std::span<const double> b);

// Standardizes the stimulus, builds the target per target_mode, fits every
// (p, model) cell by multistart, and scores each fitted response curve by
// MSE against the Infomax response at the session's own x_std samples.
// Cells run on independent derived seeds; assembly order is deterministic.
SweepReport run_sweep(const AlignedSession& session, const SweepConfig& config);

// CSV with header `p,bec,bec_fmc,lnp`, one row per p, 6-decimal values; a
// model absent from the whole report renders as NA, partial coverage is a
// RaggedReport error.
std::string render_table(const SweepReport& report);

struct TableRow {
  double p = 0.0;
  std::optional<double> bec, bec_fmc, lnp;
};

// Inverse of render_table, used to re-read emitted reports.
std::vector<TableRow> parse_table(const std::string& csv_text);

}  // namespace senc

#endif
