#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "fowt/errors.hpp"
#include "fowt/model.hpp"
#include "fowt/stability.hpp"

namespace fowt {

template <typename Scalar>
using ComplexMatrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// (sI - A)^-1 [Bc | Bd]; rows are states, columns (beta_ol, tau_g_ol, v, w).
template <typename Scalar>
ComplexMatrix4<Scalar> eval_G(const StateSpace<Scalar>& ss, std::complex<Scalar> s) {
  using Complex = std::complex<Scalar>;
  using std::abs;
  const Matrix4<Scalar>& A = ss.A();
  Eigen::EigenSolver<Matrix4<Scalar>> es(A, false);
  for (Eigen::Index i = 0; i < 4; ++i) {
    const Complex lambda = es.eigenvalues()(i);
    if (abs(s - lambda) <= Scalar(1e-9) * std::max<Scalar>(Scalar(1), abs(lambda)))
      throw NearPole("transfer matrix evaluated at a pole of the closed loop");
  }
  const ComplexMatrix4<Scalar> m = Complex(s) * ComplexMatrix4<Scalar>::Identity() - A.template cast<Complex>();
  return m.partialPivLu().solve(ss.B().template cast<Complex>());
}

/// Magnitude (linear) and unwrapped phase (rad) on a frequency grid.
template <typename Scalar>
struct FrequencyResponse {
  VectorX<Scalar> nu;
  VectorX<Scalar> magnitude;
  VectorX<Scalar> phase;
  std::string label;
  bool degenerate{false};
};

template <typename Scalar>
VectorX<Scalar> log_grid(Scalar lo, Scalar hi, Eigen::Index n) {
  using std::log10;
  using std::pow;
  if (!(lo > 0) || !(hi > lo) || n < 2) throw InvalidArgument("log grid requires 0 < lo < hi and n >= 2");
  VectorX<Scalar> g(n);
  const Scalar a = log10(lo), b = log10(hi);
  for (Eigen::Index i = 0; i < n; ++i) g(i) = pow(Scalar(10), a + (b - a) * Scalar(i) / Scalar(n - 1));
  g(0) = lo;
  g(n - 1) = hi;
  return g;
}

/// I_damped = [nu_plt/sqrt2, sqrt2 nu_plt].
template <typename Scalar>
std::pair<Scalar, Scalar> damped_band(const StructuralParams<Scalar>& p) {
  using std::sqrt;
  if (!(p.Kt > 0) || !(p.Jt > 0)) throw InvalidArgument("damped band requires Kt > 0 and Jt > 0");
  const Scalar nu = sqrt(p.Kt / p.Jt);
  const Scalar r2 = std::numbers::sqrt2_v<Scalar>;
  return {nu / r2, r2 * nu};
}

/// 400 log-spaced points over [nu_plt/100, 100 nu_plt].
template <typename Scalar>
VectorX<Scalar> default_grid(const StructuralParams<Scalar>& p) {
  using std::sqrt;
  if (!(p.Kt > 0) || !(p.Jt > 0)) throw InvalidArgument("default grid requires Kt > 0 and Jt > 0");
  const Scalar nu = sqrt(p.Kt / p.Jt);
  return log_grid(nu / Scalar(100), nu * Scalar(100), 400);
}

namespace detail {

template <typename Scalar>
void check_grid(const VectorX<Scalar>& g) {
  if (g.size() < 1) throw InvalidArgument("empty frequency grid");
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!(g(i) > 0) || !std::isfinite(static_cast<double>(g(i))))
      throw InvalidArgument("frequency grid must be positive and finite");
    if (i > 0 && !(g(i) > g(i - 1))) throw InvalidArgument("frequency grid must be strictly increasing");
  }
}

template <typename Scalar, typename Fn>
FrequencyResponse<Scalar> sweep(const VectorX<Scalar>& grid, std::string label, Fn&& h) {
  using std::abs;
  using std::arg;
  check_grid(grid);
  FrequencyResponse<Scalar> fr;
  fr.nu = grid;
  fr.label = std::move(label);
  fr.magnitude.resize(grid.size());
  fr.phase.resize(grid.size());
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const std::complex<Scalar> v = h(grid(i));
    fr.magnitude(i) = abs(v);
    Scalar ph = arg(v);
    if (i > 0) {
      while (ph - fr.phase(i - 1) > std::numbers::pi_v<Scalar>) ph -= two_pi;
      while (ph - fr.phase(i - 1) < -std::numbers::pi_v<Scalar>) ph += two_pi;
    }
    fr.phase(i) = ph;
  }
  return fr;
}

}  // namespace detail

inline const char* state_name(Eigen::Index i) {
  static const char* names[] = {"theta", "omega", "phi", "phidot"};
  return names[i];
}
inline const char* input_name(Eigen::Index i) {
  static const char* names[] = {"beta_ol", "tau_g_ol", "v", "w"};
  return names[i];
}

/// One entry of the full transfer matrix along j*nu.
template <typename Scalar>
FrequencyResponse<Scalar> bode_entry(const StateSpace<Scalar>& ss, Eigen::Index output, Eigen::Index input,
                                     const VectorX<Scalar>& grid) {
  if (output < 0 || output > 3 || input < 0 || input > 3) throw InvalidArgument("transfer entry out of range");
  return detail::sweep<Scalar>(grid, std::string(state_name(output)) + "<-" + input_name(input), [&](Scalar nu) {
    return eval_G(ss, std::complex<Scalar>(0, nu))(output, input);
  });
}

/// Which disturbance drives the reduced platform filter. Normalised has unit
/// static gain.
enum class PlatformInput { normalized, wind, wave };

/// Reduced platform filter phi <- input, closed second-order low-pass form.
template <typename Scalar>
FrequencyResponse<Scalar> bode_gplt(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                    Scalar kBeta, const VectorX<Scalar>& grid,
                                    PlatformInput input = PlatformInput::normalized) {
  const SecondOrderSummary<Scalar> sum = platform_summary(p, s, kBeta);
  if (sum.degenerate) throw InvalidArgument("platform filter requires Kt > 0 and Jt > 0");
  Scalar gain(1);
  const char* label = "phi<-normalized";
  if (input == PlatformInput::wind) {
    gain = p.ht * s.dFa_dV / p.Kt;
    label = "phi<-v";
  } else if (input == PlatformInput::wave) {
    gain = s.dTw_dW / p.Kt;
    label = "phi<-w";
  }
  return detail::sweep<Scalar>(grid, label, [&](Scalar nu) {
    const Scalar r = nu / sum.nu;
    return std::complex<Scalar>(gain) / std::complex<Scalar>(Scalar(1) - r * r, Scalar(2) * sum.zeta * r);
  });
}

/// Reduced rotor filter omega <- v. Band-pass form when kI gives a real
/// (nu_rot, zeta_rot); otherwise the raw rational form with degenerate set.
template <typename Scalar>
FrequencyResponse<Scalar> bode_grot(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                    Scalar kP, Scalar kI, const VectorX<Scalar>& grid) {
  using Complex = std::complex<Scalar>;
  const SecondOrderSummary<Scalar> sum = rotor_summary(p, s, kP, kI);
  const Scalar r = p.Ng / p.Jr;
  FrequencyResponse<Scalar> fr;
  if (!sum.degenerate && sum.zeta != Scalar(0)) {
    const Scalar k = r * s.dTa_dV / (Scalar(2) * sum.zeta * sum.nu);
    fr = detail::sweep<Scalar>(grid, "omega<-v", [&](Scalar nu) {
      return Complex(k) / Complex(Scalar(1), (nu / sum.nu - sum.nu / nu) / (Scalar(2) * sum.zeta));
    });
  } else {
    const Polynomial<Scalar> den = rotor_char_poly(p, s, kP, kI);
    fr = detail::sweep<Scalar>(grid, "omega<-v", [&](Scalar nu) {
      const Complex jw(0, nu);
      return Complex(r * s.dTa_dV) * jw / den(jw);
    });
    fr.degenerate = true;
  }
  return fr;
}

template <typename Scalar>
VectorX<Scalar> magnitude_db(const FrequencyResponse<Scalar>& fr) {
  return (Scalar(20) * fr.magnitude.array().log10()).matrix();
}

}  // namespace fowt
