#include "fowt/waves.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fowt/errors.hpp"

namespace fowt {

namespace {

void check_span(double dt, double T) {
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(T >= dt) || !std::isfinite(T)) throw InvalidArgument("duration must be at least dt");
}

bool five_smooth(long n) {
  for (long f : {2L, 3L, 5L})
    while (n % f == 0) n /= f;
  return n == 1;
}

// Even FFT length with only 2, 3, 5 factors.
long fft_length(long n) {
  long m = n + (n % 2);
  while (!five_smooth(m)) m += 2;
  return m;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Eigen::Index sample_count(double dt, double T) {
  return static_cast<Eigen::Index>(std::floor(T / dt + 1e-9)) + 1;
}

double mono_wave_value(double Tp, double Hw, double t) {
  return 0.5 * Hw * std::sin(2.0 * std::numbers::pi * t / Tp);
}

TimeSeries mono_wave(double Tp, double Hw, double dt, double T) {
  if (!(Tp > 0)) throw InvalidArgument("wave period must be positive");
  if (!(Hw >= 0)) throw InvalidArgument("wave height must be non-negative");
  check_span(dt, T);
  const Eigen::Index n = sample_count(dt, T);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = mono_wave_value(Tp, Hw, dt * static_cast<double>(i));
  TimeSeries ts(dt);
  ts.add("w", "m", std::move(w));
  return ts;
}

double jonswap_density(double omega, double Hs, double Tp, double gamma) {
  if (!(omega > 0)) return 0.0;
  const double wp = 2.0 * std::numbers::pi / Tp;
  const double r = wp / omega;
  const double pm = 5.0 / 16.0 * Hs * Hs * std::pow(wp, 4) * std::pow(omega, -5) * std::exp(-1.25 * std::pow(r, 4));
  const double sigma = omega <= wp ? 0.07 : 0.09;
  const double shape = std::exp(-std::pow(omega - wp, 2) / (2.0 * sigma * sigma * wp * wp));
  return (1.0 - 0.287 * std::log(gamma)) * pm * std::pow(gamma, shape);
}

TimeSeries jonswap_wave(double Hs, double Tp, double gamma, std::uint64_t seed, double dt, double T) {
  if (!(Tp > 0)) throw InvalidArgument("peak period must be positive");
  if (!(Hs >= 0)) throw InvalidArgument("significant wave height must be non-negative");
  if (!(gamma >= 1)) throw InvalidArgument("JONSWAP peak enhancement gamma must be >= 1");
  check_span(dt, T);
  const Eigen::Index n = sample_count(dt, T);
  const long m = fft_length(static_cast<long>(n));
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(m) * dt);

  std::vector<double> density(static_cast<std::size_t>(m / 2), 0.0);
  double m0 = 0.0;
  for (long k = 1; k < m / 2; ++k) {
    density[static_cast<std::size_t>(k)] = jonswap_density(static_cast<double>(k) * dw, Hs, Tp, gamma);
    m0 += density[static_cast<std::size_t>(k)] * dw;
  }
  const double target = Hs * Hs / 16.0;
  const double scale = m0 > 0 ? target / m0 : 0.0;

  std::mt19937_64 rng(seed);
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(m), {0.0, 0.0});
  const double half = 0.5 * static_cast<double>(m);
  for (long k = 1; k < m / 2; ++k) {
    const double amp = std::sqrt(2.0 * density[static_cast<std::size_t>(k)] * scale * dw);
    const double phase = 2.0 * std::numbers::pi * unit_uniform(rng);
    const std::complex<double> c = std::polar(half * amp, phase);
    spec[static_cast<std::size_t>(k)] = c;
    spec[static_cast<std::size_t>(m - k)] = std::conj(c);
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> eta;
  fft.inv(eta, spec);

  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = eta[static_cast<std::size_t>(i)].real();
  TimeSeries ts(dt);
  ts.add("w", "m", std::move(w));
  if (T < 10.0 * Tp) ts.warnings.push_back("record shorter than 10 peak periods; spectral resolution is coarse");
  return ts;
}

}  // namespace fowt
