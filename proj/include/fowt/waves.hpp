#pragma once

#include <cstdint>

#include "fowt/timeseries.hpp"

namespace fowt {

/// Sinusoid of period Tp and crest-to-trough height Hw: (Hw/2) sin(2 pi t / Tp).
double mono_wave_value(double Tp, double Hw, double t);

/// Channel "w" sampled at dt over [0, T].
TimeSeries mono_wave(double Tp, double Hw, double dt, double T);

/// JONSWAP spectral density (m^2 s/rad) at angular frequency omega, with the
/// usual peak-width parameters 0.07 / 0.09 and the 1 - 0.287 ln(gamma)
/// normalising factor.
double jonswap_density(double omega, double Hs, double Tp, double gamma);

/// Irregular sea surface from random-phase inverse-FFT synthesis of the
/// JONSWAP spectrum. The discrete spectrum is rescaled so its zeroth moment
/// equals (Hs/4)^2. Deterministic for a given seed.
TimeSeries jonswap_wave(double Hs, double Tp, double gamma, std::uint64_t seed, double dt, double T);

/// Number of samples covering [0, T] inclusive at spacing dt.
Eigen::Index sample_count(double dt, double T);

}  // namespace fowt
