#pragma once

#include <vector>

namespace ecgen::dsp {

// Digital IIR transfer function b(z)/a(z), a[0] normalized to 1.
// An order-4 band-pass carries 9 coefficients on each side.
struct FilterCoefficients {
  std::vector<double> b;
  std::vector<double> a;
};

// Butterworth band-pass designed from the analog prototype with frequency
// prewarping and the bilinear transform. Throws InvalidBand unless
// 0 < low_hz < high_hz < fs_hz/2, UnstableResult if any pole lands on or
// outside the unit circle.
FilterCoefficients design_bandpass(int order, double low_hz, double high_hz, double fs_hz);

// Zero-phase forward-backward filtering. Edges are odd-reflection padded by
// 3 * (coefficient count) samples and each pass starts from the filter's
// step-response steady state scaled to the first sample, so transients from
// slow poles do not leak into the retained window. Output length = input
// length. Throws TooShort (length must exceed 3 * coefficient count) and
// NonFiniteInput.
std::vector<double> filtfilt(const FilterCoefficients& coeffs, const std::vector<double>& x);

struct ZScoreResult {
  std::vector<double> normalized;
  double mu = 0.0;
  double sigma = 0.0;
};

// (x - mean) / population std. Throws ZeroVariance when sigma < 1e-12.
ZScoreResult zscore(const std::vector<double>& x);

}  // namespace ecgen::dsp
