#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <vector>

#include "fowt/errors.hpp"

namespace fowt {

/// Real polynomial with coefficients stored in ascending powers of s.
template <typename Scalar>
class Polynomial {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Complex = std::complex<Scalar>;

  Polynomial() : c_(Coeffs::Zero(1)) {}
  explicit Polynomial(Coeffs ascending) : c_(std::move(ascending)) {
    if (c_.size() == 0) c_ = Coeffs::Zero(1);
    trim();
  }
  Polynomial(std::initializer_list<Scalar> ascending) : c_(Eigen::Index(ascending.size())) {
    Eigen::Index i = 0;
    for (Scalar v : ascending) c_(i++) = v;
    if (c_.size() == 0) c_ = Coeffs::Zero(1);
    trim();
  }

  static Polynomial monomial(Eigen::Index power, Scalar coeff = Scalar(1)) {
    Coeffs c = Coeffs::Zero(power + 1);
    c(power) = coeff;
    return Polynomial(c);
  }

  const Coeffs& coeffs() const { return c_; }

  /// Coefficient of s^i, zero beyond the degree.
  Scalar operator[](Eigen::Index i) const { return i < c_.size() ? c_(i) : Scalar(0); }

  /// -1 for the zero polynomial.
  Eigen::Index degree() const { return is_zero() ? -1 : c_.size() - 1; }
  bool is_zero() const { return c_.size() == 1 && c_(0) == Scalar(0); }
  Scalar leading() const { return c_(c_.size() - 1); }

  template <typename T>
  T operator()(const T& s) const {
    T acc = T(c_(c_.size() - 1));
    for (Eigen::Index i = c_.size() - 2; i >= 0; --i) acc = acc * s + T(c_(i));
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() == 1) return Polynomial();
    Coeffs d(c_.size() - 1);
    for (Eigen::Index i = 1; i < c_.size(); ++i) d(i - 1) = Scalar(i) * c_(i);
    return Polynomial(d);
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const Eigen::Index n = std::max(a.c_.size(), b.c_.size());
    Coeffs c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = a[i] + b[i];
    return Polynomial(c);
  }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial(Coeffs(-a.c_)); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Coeffs c = Coeffs::Zero(a.c_.size() + b.c_.size() - 1);
    for (Eigen::Index i = 0; i < a.c_.size(); ++i)
      for (Eigen::Index j = 0; j < b.c_.size(); ++j) c(i + j) += a.c_(i) * b.c_(j);
    return Polynomial(c);
  }
  friend Polynomial operator*(Scalar k, const Polynomial& a) { return Polynomial(Coeffs(k * a.c_)); }
  friend Polynomial operator*(const Polynomial& a, Scalar k) { return k * a; }

  /// Largest coefficient-wise relative difference, normalised by the largest
  /// coefficient magnitude of either operand.
  friend Scalar relative_difference(const Polynomial& a, const Polynomial& b) {
    using std::abs;
    const Eigen::Index n = std::max(a.c_.size(), b.c_.size());
    Scalar scale(0), diff(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      scale = std::max<Scalar>(scale, std::max<Scalar>(abs(a[i]), abs(b[i])));
      diff = std::max<Scalar>(diff, abs(a[i] - b[i]));
    }
    return scale == Scalar(0) ? Scalar(0) : diff / scale;
  }

  /// Backward-error style residual |p(z)| / sum |c_i||z|^i.
  Scalar relative_residual(const Complex& z) const {
    using std::abs;
    Scalar denom(0);
    Scalar zp(1);
    for (Eigen::Index i = 0; i < c_.size(); ++i) {
      denom += abs(c_(i)) * zp;
      zp *= abs(z);
    }
    const Scalar num = abs((*this)(z));
    return denom == Scalar(0) ? num : num / denom;
  }

 private:
  void trim() {
    Eigen::Index n = c_.size();
    while (n > 1 && c_(n - 1) == Scalar(0)) --n;
    if (n != c_.size()) c_ = Coeffs(c_.head(n));
  }

  Coeffs c_;
};

using Polynomiald = Polynomial<double>;

namespace detail {

template <typename Scalar>
void sort_roots(std::vector<std::complex<Scalar>>& r) {
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Leading zero roots are split off exactly; returns their count and the
// deflated polynomial.
template <typename Scalar>
Eigen::Index strip_zero_roots(const Polynomial<Scalar>& p, Polynomial<Scalar>& rest) {
  Eigen::Index k = 0;
  while (k < p.coeffs().size() - 1 && p.coeffs()(k) == Scalar(0)) ++k;
  rest = Polynomial<Scalar>(typename Polynomial<Scalar>::Coeffs(p.coeffs().tail(p.coeffs().size() - k)));
  return k;
}

}  // namespace detail

/// All roots via eigenvalues of the companion matrix, each refined by one
/// Newton step when that lowers the residual. Throws NumericalError when a
/// root's relative residual exceeds tol.
template <typename Scalar>
std::vector<std::complex<Scalar>> roots_companion(const Polynomial<Scalar>& p, Scalar tol = Scalar(1e-10)) {
  using Complex = std::complex<Scalar>;
  if (p.is_zero()) throw InvalidArgument("roots of the zero polynomial are undefined");
  Polynomial<Scalar> q;
  const Eigen::Index zeros = detail::strip_zero_roots(p, q);
  std::vector<Complex> out(static_cast<std::size_t>(zeros), Complex(0));
  const Eigen::Index n = q.degree();
  if (n >= 1) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Mat comp = Mat::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = Scalar(1);
    for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -q[i] / q.leading();
    Eigen::EigenSolver<Mat> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericalError("companion eigensolve failed", 0.0);
    const Polynomial<Scalar> dq = q.derivative();
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex z = es.eigenvalues()(i);
      const Complex d = dq(z);
      if (d != Complex(0)) {
        Complex polished = z - q(z) / d;
        if (z.imag() == Scalar(0)) polished = Complex(polished.real(), 0);
        if (std::abs(q(polished)) < std::abs(q(z))) z = polished;
      }
      const Scalar res = q.relative_residual(z);
      if (!(res <= tol)) throw NumericalError("root refinement did not converge", static_cast<double>(res));
      out.push_back(z);
    }
  }
  detail::sort_roots(out);
  return out;
}

/// Simultaneous Aberth-Ehrlich iteration; independent of the companion method.
template <typename Scalar>
std::vector<std::complex<Scalar>> roots_aberth(const Polynomial<Scalar>& p, int max_iter = 500,
                                               Scalar tol = Scalar(1e-14)) {
  using Complex = std::complex<Scalar>;
  using std::abs;
  if (p.is_zero()) throw InvalidArgument("roots of the zero polynomial are undefined");
  Polynomial<Scalar> q;
  const Eigen::Index zeros = detail::strip_zero_roots(p, q);
  std::vector<Complex> out(static_cast<std::size_t>(zeros), Complex(0));
  const Eigen::Index n = q.degree();
  if (n >= 1) {
    const Polynomial<Scalar> dq = q.derivative();
    // Cauchy bound for the initial circle, offset angle avoids symmetric stalls.
    Scalar radius(0);
    for (Eigen::Index i = 0; i < n; ++i) radius = std::max<Scalar>(radius, abs(q[i] / q.leading()));
    radius = Scalar(1) + radius;
    Scalar low(0);
    for (Eigen::Index i = 1; i <= n; ++i) low = std::max<Scalar>(low, abs(q[i] / q[0]));
    const Scalar r0 = std::sqrt(radius / (Scalar(1) + low));
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      const Scalar ang = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(k) / Scalar(n) + Scalar(0.4);
      z[static_cast<std::size_t>(k)] = std::polar(r0, ang);
    }
    for (int it = 0; it < max_iter; ++it) {
      Scalar worst(0);
      for (std::size_t k = 0; k < z.size(); ++k) {
        const Complex pz = q(z[k]);
        if (pz == Complex(0)) continue;
        const Complex ratio = pz / dq(z[k]);
        Complex sum(0);
        for (std::size_t j = 0; j < z.size(); ++j)
          if (j != k) sum += Scalar(1) / (z[k] - z[j]);
        const Complex step = ratio / (Scalar(1) - ratio * sum);
        z[k] -= step;
        worst = std::max<Scalar>(worst, abs(step) / std::max<Scalar>(Scalar(1e-300), abs(z[k])));
      }
      if (worst < tol) break;
    }
    for (auto& r : z) {
      if (abs(r.imag()) <= Scalar(1e-12) * abs(r)) r = Complex(r.real(), 0);
      out.push_back(r);
    }
  }
  detail::sort_roots(out);
  return out;
}

}  // namespace fowt
