#include "ecgen/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ecgen/errors.hpp"

namespace ecgen::dsp {

namespace {

using cplx = std::complex<double>;

// Monic polynomial with the given roots; complex conjugate pairs make the
// imaginary parts cancel, so only the real parts are returned.
std::vector<double> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> coeffs{cplx(1.0, 0.0)};
  for (const auto& r : roots) {
    std::vector<cplx> next(coeffs.size() + 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= coeffs[i] * r;
    }
    coeffs = std::move(next);
  }
  std::vector<double> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i].real();
  return out;
}

// Dense solve with partial pivoting; the systems here are 8x8.
std::vector<double> solve_linear(std::vector<std::vector<double>> m, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-300)
      throw_error(ErrorCode::unstable_result, "singular system in initial-condition solve");
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double acc = rhs[row];
    for (std::size_t c = row + 1; c < n; ++c) acc -= m[row][c] * x[c];
    x[row] = acc / m[row][row];
  }
  return x;
}

// Steady-state internal state of the direct-form-II-transposed filter under a
// unit-step input, so a pass primed with state*x[0] starts settled.
std::vector<double> steady_state(const FilterCoefficients& coeffs) {
  const std::size_t n = coeffs.a.size();
  const std::size_t m = n - 1;
  std::vector<std::vector<double>> i_minus_a(m, std::vector<double>(m, 0.0));
  std::vector<double> rhs(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    i_minus_a[i][0] = coeffs.a[i + 1];
    if (i == 0) i_minus_a[0][0] += 1.0;
    if (i >= 1) i_minus_a[i][i] = 1.0;
    if (i + 1 < m) i_minus_a[i][i + 1] = -1.0;
    rhs[i] = coeffs.b[i + 1] - coeffs.a[i + 1] * coeffs.b[0];
  }
  return solve_linear(std::move(i_minus_a), std::move(rhs));
}

// Direct form II transposed with caller-provided initial state.
std::vector<double> lfilter(const FilterCoefficients& coeffs, const std::vector<double>& x,
                            std::vector<double> state) {
  const std::size_t m = state.size();
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = coeffs.b[0] * xi + state[0];
    for (std::size_t j = 0; j + 1 < m; ++j)
      state[j] = coeffs.b[j + 1] * xi + state[j + 1] - coeffs.a[j + 1] * yi;
    state[m - 1] = coeffs.b[m] * xi - coeffs.a[m] * yi;
    y[i] = yi;
  }
  return y;
}

}  // namespace

FilterCoefficients design_bandpass(int order, double low_hz, double high_hz, double fs_hz) {
  if (!(0.0 < low_hz && low_hz < high_hz && high_hz < fs_hz / 2.0))
    throw_error(ErrorCode::invalid_band, "band edges must satisfy 0 < low < high < fs/2");
  if (order < 1)
    throw_error(ErrorCode::invalid_band, "filter order must be positive");

  const double pi = std::numbers::pi;
  const std::size_t n = static_cast<std::size_t>(order);

  // Analog low-pass prototype poles on the unit circle, left half plane.
  std::vector<cplx> proto(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double theta = pi * (2.0 * static_cast<double>(k) + static_cast<double>(n) - 1.0) /
                         (2.0 * static_cast<double>(n));
    proto[k - 1] = std::exp(cplx(0.0, theta));
  }

  // Prewarped band edges.
  const double warped_low = 2.0 * fs_hz * std::tan(pi * low_hz / fs_hz);
  const double warped_high = 2.0 * fs_hz * std::tan(pi * high_hz / fs_hz);
  const double bw = warped_high - warped_low;
  const double w0 = std::sqrt(warped_low * warped_high);

  // Low-pass to band-pass: each prototype pole splits into two, n zeros land
  // at s = 0, and the gain picks up bw^n.
  std::vector<cplx> poles_s;
  poles_s.reserve(2 * n);
  for (const auto& p : proto) {
    const cplx pb = p * (bw / 2.0);
    const cplx disc = std::sqrt(pb * pb - cplx(w0 * w0, 0.0));
    poles_s.push_back(pb + disc);
    poles_s.push_back(pb - disc);
  }
  double gain = std::pow(bw, static_cast<double>(n));

  // Bilinear transform s = K (z-1)/(z+1), K = 2 fs. The n zeros at s = 0 map
  // to z = +1; the n zeros at infinity map to z = -1.
  const double big_k = 2.0 * fs_hz;
  std::vector<cplx> zeros_z;
  zeros_z.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) zeros_z.emplace_back(1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) zeros_z.emplace_back(-1.0, 0.0);

  std::vector<cplx> poles_z;
  poles_z.reserve(2 * n);
  cplx pole_factor(1.0, 0.0);
  for (const auto& p : poles_s) {
    poles_z.push_back((cplx(big_k, 0.0) + p) / (cplx(big_k, 0.0) - p));
    pole_factor *= (cplx(big_k, 0.0) - p);
  }
  // Numerator bilinear factor: the s-plane zeros all sit at 0, so
  // prod(K - zero) = K^n.
  const cplx digital_gain = gain * std::pow(cplx(big_k, 0.0), static_cast<double>(n)) / pole_factor;

  for (const auto& p : poles_z)
    if (std::abs(p) >= 1.0)
      throw_error(ErrorCode::unstable_result,
                  "pole at radius " + std::to_string(std::abs(p)) + " on or outside unit circle");

  FilterCoefficients coeffs;
  coeffs.b = poly_from_roots(zeros_z);
  for (auto& v : coeffs.b) v *= digital_gain.real();
  coeffs.a = poly_from_roots(poles_z);
  return coeffs;
}

std::vector<double> filtfilt(const FilterCoefficients& coeffs, const std::vector<double>& x) {
  const std::size_t ncoef = std::max(coeffs.a.size(), coeffs.b.size());
  const std::size_t pad = 3 * ncoef;
  if (x.size() <= pad)
    throw_error(ErrorCode::too_short,
                "signal length " + std::to_string(x.size()) + " must exceed " + std::to_string(pad));
  for (double v : x)
    if (!std::isfinite(v)) throw_error(ErrorCode::non_finite_input, "signal contains a non-finite value");

  // Odd reflection about both endpoints.
  std::vector<double> padded;
  padded.reserve(x.size() + 2 * pad);
  for (std::size_t j = 0; j < pad; ++j) padded.push_back(2.0 * x.front() - x[pad - j]);
  padded.insert(padded.end(), x.begin(), x.end());
  for (std::size_t j = 1; j <= pad; ++j) padded.push_back(2.0 * x.back() - x[x.size() - 1 - j]);

  const std::vector<double> zi = steady_state(coeffs);
  auto scaled = [&](double x0) {
    std::vector<double> s(zi.size());
    for (std::size_t i = 0; i < zi.size(); ++i) s[i] = zi[i] * x0;
    return s;
  };

  std::vector<double> forward = lfilter(coeffs, padded, scaled(padded.front()));
  std::reverse(forward.begin(), forward.end());
  std::vector<double> backward = lfilter(coeffs, forward, scaled(forward.front()));
  std::reverse(backward.begin(), backward.end());

  return std::vector<double>(backward.begin() + static_cast<std::ptrdiff_t>(pad),
                             backward.end() - static_cast<std::ptrdiff_t>(pad));
}

ZScoreResult zscore(const std::vector<double>& x) {
  if (x.size() < 2)
    throw_error(ErrorCode::too_short, "zscore needs at least 2 samples");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  const double sigma = std::sqrt(var);
  if (sigma < 1e-12)
    throw_error(ErrorCode::zero_variance, "flat lead, population std below 1e-12");
  ZScoreResult result;
  result.mu = mean;
  result.sigma = sigma;
  result.normalized.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) result.normalized[i] = (x[i] - mean) / sigma;
  return result;
}

}  // namespace ecgen::dsp
