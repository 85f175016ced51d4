#ifndef SENC_EDA_HPP
#define SENC_EDA_HPP

#include <span>
#include <vector>

namespace senc {

// Additive split of a skin-conductance signal: gsr = tonic + phasic.
struct EdaDecomposition {
  std::vector<double> tonic;
  std::vector<double> phasic;
};

struct StandardizedStimulus {
  std::vector<double> x_std;
  double mu = 0.0;     // population mean of the input
  double sigma = 0.0;  // population standard deviation of the input
};

// Response target in [0, 1].
struct ResponseSeries {
  std::vector<double> y;
};

// Tonic = centered moving median of width round(window_s * rate_hz), forced
// odd; windows shrink at the edges. Phasic is the residual, so additivity is
// exact by construction.
EdaDecomposition decompose(std::span<const double> gsr, double rate_hz, double window_s);

// Min-max normalization onto [0, 1]; a constant input maps to 0.5 everywhere.
ResponseSeries normalize_unit(std::span<const double> phasic);

// (x - mu) / sigma with population statistics, so the output has exactly
// unit variance.
StandardizedStimulus standardize(std::span<const double> x);

}  // namespace senc

#endif
