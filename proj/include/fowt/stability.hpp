#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "fowt/errors.hpp"
#include "fowt/model.hpp"
#include "fowt/polynomial.hpp"

namespace fowt {

inline constexpr double kBoundaryTolerance = 1e-9;

/// Outcome of a strict inequality lhs < rhs.
template <typename Scalar>
struct ConditionResult {
  bool holds{false};
  bool near_boundary{false};
  Scalar lhs{0};
  Scalar rhs{0};
  explicit operator bool() const { return holds; }
};

namespace detail {
template <typename Scalar>
bool within_boundary(Scalar gap, Scalar scale) {
  using std::abs;
  return abs(gap) <= Scalar(kBoundaryTolerance) * scale;
}
}  // namespace detail

/// Non-minimum-phase zero on beta -> phi: dTa_dOmega/dTa_dBeta < dFa_dOmega/dFa_dBeta.
template <typename Scalar>
ConditionResult<Scalar> nmpz_phi_condition(const AeroSensitivities<Scalar>& s) {
  using std::abs;
  if (s.dTa_dBeta == Scalar(0) || s.dFa_dBeta == Scalar(0))
    throw GainSingularity("dTa_dBeta and dFa_dBeta must be nonzero");
  ConditionResult<Scalar> r;
  r.lhs = s.dTa_dOmega / s.dTa_dBeta;
  r.rhs = s.dFa_dOmega / s.dFa_dBeta;
  r.holds = r.lhs < r.rhs;
  r.near_boundary = detail::within_boundary(r.lhs - r.rhs, std::max<Scalar>(abs(r.lhs), abs(r.rhs)));
  return r;
}

/// Numerator of the beta -> phi transfer, up to the factor transfer_scale().
template <typename Scalar>
Polynomial<Scalar> numerator_phi(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s) {
  return Polynomial<Scalar>{Scalar(0), s.dTa_dBeta * s.dFa_dOmega - s.dFa_dBeta * s.dTa_dOmega,
                            p.Jr / p.Ng * s.dFa_dBeta};
}

/// Numerator of the beta -> omega transfer, up to the factor transfer_scale().
template <typename Scalar>
Polynomial<Scalar> numerator_omega(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                   Scalar kTauG) {
  if (!(p.ht > 0)) throw InvalidArgument("numerator_omega requires ht > 0");
  const Scalar s2 = p.Dt / p.ht * s.dTa_dBeta + p.ht * (s.dTa_dBeta * s.dFa_dV - s.dFa_dBeta * s.dTa_dV) -
                    kTauG * p.Ng * s.dFa_dBeta;
  return Polynomial<Scalar>{Scalar(0), p.Kt / p.ht * s.dTa_dBeta, s2, p.Jt / p.ht * s.dTa_dBeta};
}

/// Common factor Ng*ht/(Jr*Jt) relating numerator_phi / numerator_omega to
/// the cofactors of (sI - A).
template <typename Scalar>
Scalar transfer_scale(const StructuralParams<Scalar>& p) {
  return p.Ng * p.ht / (p.Jr * p.Jt);
}

/// Non-minimum-phase zero on beta -> omega. Decided from the sign of the s^2
/// coefficient of numerator_omega relative to its s^3 coefficient; lhs/rhs
/// carry the equivalent ht^2 (dFa_dV - (dTa_dV + kTauG Ng/ht) dFa_dBeta/dTa_dBeta) < -Dt form.
template <typename Scalar>
ConditionResult<Scalar> nmpz_omega_condition(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                             Scalar kTauG) {
  using std::abs;
  if (s.dTa_dBeta == Scalar(0)) throw GainSingularity("dTa_dBeta must be nonzero");
  const Polynomial<Scalar> n = numerator_omega(p, s, kTauG);
  const Scalar gamma = n[2];
  ConditionResult<Scalar> r;
  r.holds = gamma * s.dTa_dBeta < Scalar(0);
  r.lhs = p.ht * p.ht * (s.dFa_dV - (s.dTa_dV + kTauG * p.Ng / p.ht) * s.dFa_dBeta / s.dTa_dBeta);
  r.rhs = -p.Dt;
  const Scalar scale = std::max({abs(p.Dt / p.ht * s.dTa_dBeta), abs(p.ht * s.dTa_dBeta * s.dFa_dV),
                                 abs(p.ht * s.dFa_dBeta * s.dTa_dV), abs(kTauG * p.Ng * s.dFa_dBeta)});
  r.near_boundary = detail::within_boundary(gamma, scale);
  return r;
}

/// Monic characteristic polynomial det(sI - A) by Faddeev-LeVerrier.
template <typename Derived>
Polynomial<typename Derived::Scalar> char_poly(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (A.rows() != A.cols()) throw InvalidArgument("char_poly requires a square matrix");
  const Eigen::Index n = A.rows();
  const Mat a = A;
  typename Polynomial<Scalar>::Coeffs c = Polynomial<Scalar>::Coeffs::Zero(n + 1);
  c(n) = Scalar(1);
  Mat m = Mat::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m;
    m.diagonal().array() += c(n - k + 1);
    c(n - k) = -(a * m).trace() / Scalar(k);
  }
  return Polynomial<Scalar>(c);
}

/// Reduced rotor denominator s^2 - (Ng/Jr) dTa_dOmega s - (Ng/Jr) dTa_dBeta (kP s + kI).
template <typename Scalar>
Polynomial<Scalar> rotor_char_poly(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                   Scalar kP, Scalar kI) {
  const Scalar r = p.Ng / p.Jr;
  return Polynomial<Scalar>{-r * s.dTa_dBeta * kI, -r * s.dTa_dOmega - r * s.dTa_dBeta * kP, Scalar(1)};
}

/// Reduced platform denominator s^2 + 2 zeta_plt nu_plt s + nu_plt^2.
template <typename Scalar>
Polynomial<Scalar> platform_char_poly(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                      Scalar kBeta) {
  return Polynomial<Scalar>{p.Kt / p.Jt,
                            (p.Dt + p.ht * p.ht * s.dFa_dV - kBeta * p.ht * s.dFa_dBeta) / p.Jt, Scalar(1)};
}

/// Rotor/platform interaction term of det(sI - A).
template <typename Scalar>
Polynomial<Scalar> coupling_poly(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                 const ControlGains<Scalar>& g) {
  const Scalar k = p.Ng * p.ht / (p.Jr * p.Jt);
  const Polynomial<Scalar> thrust{Scalar(0), s.dFa_dBeta * g.kI, s.dFa_dBeta * g.kP + s.dFa_dOmega};
  const Scalar torque = p.ht * s.dTa_dV - g.kBeta * s.dTa_dBeta + g.kTauG * p.Ng;
  return (k * torque) * thrust;
}

/// det(sI - A) assembled as rotor * platform + coupling.
template <typename Scalar>
Polynomial<Scalar> coupled_char_poly(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                     const ControlGains<Scalar>& g) {
  return rotor_char_poly(p, s, g.kP, g.kI) * platform_char_poly(p, s, g.kBeta) + coupling_poly(p, s, g);
}

template <typename Scalar>
struct SecondOrderSummary {
  Scalar nu{std::numeric_limits<Scalar>::quiet_NaN()};
  Scalar zeta{std::numeric_limits<Scalar>::quiet_NaN()};
  bool degenerate{true};
};

/// (nu_rot, zeta_rot) of the reduced rotor loop; degenerate when the
/// radicand -(Ng/Jr) dTa_dBeta kI is not positive.
template <typename Scalar>
SecondOrderSummary<Scalar> rotor_summary(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                         Scalar kP, Scalar kI) {
  using std::sqrt;
  const Scalar r = p.Ng / p.Jr;
  const Scalar radicand = -r * s.dTa_dBeta * kI;
  SecondOrderSummary<Scalar> out;
  if (!(radicand > 0) || !std::isfinite(static_cast<double>(radicand))) return out;
  out.nu = sqrt(radicand);
  out.zeta = -(r * s.dTa_dOmega + r * s.dTa_dBeta * kP) / (Scalar(2) * out.nu);
  out.degenerate = false;
  return out;
}

template <typename Scalar>
SecondOrderSummary<Scalar> platform_summary(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                            Scalar kBeta) {
  using std::sqrt;
  SecondOrderSummary<Scalar> out;
  if (!(p.Kt > 0) || !(p.Jt > 0)) return out;
  out.nu = sqrt(p.Kt / p.Jt);
  out.zeta = (p.Dt + p.ht * p.ht * s.dFa_dV - kBeta * p.ht * s.dFa_dBeta) / (Scalar(2) * sqrt(p.Kt * p.Jt));
  out.degenerate = false;
  return out;
}

template <typename Scalar>
struct Mode {
  std::complex<Scalar> eigenvalue;  ///< representative root, Im >= 0
  Scalar nu{0};
  Scalar zeta{0};
  bool oscillatory{false};
};

template <typename Scalar>
struct ModalReport {
  Polynomial<Scalar> characteristic;
  std::vector<std::complex<Scalar>> eigenvalues;
  std::vector<Mode<Scalar>> modes;
  Scalar max_real_part{0};
  bool stable{false};
  bool marginal{false};  ///< no root in the open right half plane, some on the axis
};

/// Roots of det(sI - A) grouped into modes. Roots within 1e-12 of the
/// spectral radius of zero are snapped to zero and get zeta = NaN.
template <typename Derived>
ModalReport<typename Derived::Scalar> modal_report(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  ModalReport<Scalar> rep;
  rep.characteristic = char_poly(A);
  rep.eigenvalues = roots_companion(rep.characteristic);
  Scalar radius(0);
  for (const auto& z : rep.eigenvalues) radius = std::max<Scalar>(radius, abs(z));
  for (auto& z : rep.eigenvalues)
    if (abs(z) <= Scalar(1e-12) * radius) z = std::complex<Scalar>(0);
  rep.max_real_part = -std::numeric_limits<Scalar>::infinity();
  for (const auto& z : rep.eigenvalues) {
    rep.max_real_part = std::max<Scalar>(rep.max_real_part, z.real());
    const Scalar mag = abs(z);
    if (z.imag() < Scalar(0)) continue;
    Mode<Scalar> m;
    m.eigenvalue = z;
    m.nu = mag;
    m.zeta = mag == Scalar(0) ? std::numeric_limits<Scalar>::quiet_NaN() : -z.real() / mag;
    m.oscillatory = z.imag() > Scalar(0);
    rep.modes.push_back(m);
  }
  rep.stable = rep.max_real_part < Scalar(0);
  rep.marginal = rep.max_real_part == Scalar(0);
  return rep;
}

/// Oscillatory mode whose frequency is closest (in ratio) to nu_ref.
template <typename Scalar>
std::optional<Mode<Scalar>> nearest_oscillatory_mode(const ModalReport<Scalar>& rep, Scalar nu_ref) {
  using std::abs;
  using std::log;
  std::optional<Mode<Scalar>> best;
  Scalar best_dist = std::numeric_limits<Scalar>::infinity();
  for (const auto& m : rep.modes) {
    if (!m.oscillatory) continue;
    const Scalar d = abs(log(m.nu / nu_ref));
    if (d < best_dist) {
      best_dist = d;
      best = m;
    }
  }
  return best;
}

}  // namespace fowt
