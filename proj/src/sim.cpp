#include "fowt/sim.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fowt/errors.hpp"
#include "fowt/gains.hpp"
#include "fowt/waves.hpp"

namespace fowt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0; }

double interpolate(const Eigen::VectorXd& t, const Eigen::VectorXd& v, double x) {
  const Eigen::Index n = t.size();
  if (x <= t(0)) return v(0);
  if (x >= t(n - 1)) return v(n - 1);
  const double* begin = t.data();
  const Eigen::Index hi = std::upper_bound(begin, begin + n, x) - begin;
  const Eigen::Index lo = hi - 1;
  const double a = (x - t(lo)) / (t(hi) - t(lo));
  return v(lo) + a * (v(hi) - v(lo));
}

}  // namespace

void validate(const DisturbanceSpec& d) {
  std::visit(overloaded{
                 [](const StepBeta& s) {
                   if (!std::isfinite(s.amplitude) || !finite_nonneg(s.onset))
                     throw InvalidArgument("step-beta needs a finite amplitude and onset >= 0");
                 },
                 [](const StepWind& s) {
                   if (!std::isfinite(s.amplitude) || !finite_nonneg(s.onset))
                     throw InvalidArgument("step-wind needs a finite amplitude and onset >= 0");
                 },
                 [](const MonoWave& s) {
                   if (!(s.period > 0) || !std::isfinite(s.period)) throw InvalidArgument("mono-wave period must be > 0");
                   if (!finite_nonneg(s.height)) throw InvalidArgument("mono-wave height must be >= 0");
                 },
                 [](const JonswapWave& s) {
                   if (!(s.tp > 0) || !std::isfinite(s.tp)) throw InvalidArgument("jonswap-wave Tp must be > 0");
                   if (!finite_nonneg(s.hs)) throw InvalidArgument("jonswap-wave Hs must be >= 0");
                   if (!(s.gamma >= 1) || !std::isfinite(s.gamma)) throw InvalidArgument("jonswap-wave gamma must be >= 1");
                 },
                 [](const WindFile& s) {
                   if (s.path.empty()) throw InvalidArgument("wind-file needs a path");
                 },
             },
             d);
}

std::string kind_name(const DisturbanceSpec& d) {
  return std::visit(overloaded{
                        [](const StepBeta&) { return std::string("step-beta"); },
                        [](const StepWind&) { return std::string("step-wind"); },
                        [](const MonoWave&) { return std::string("mono-wave"); },
                        [](const JonswapWave&) { return std::string("jonswap-wave"); },
                        [](const WindFile&) { return std::string("wind-file"); },
                    },
                    d);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> load_wind_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open wind file " + path);
  std::vector<double> ts, vs;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::string a, b;
    row >> a >> b;
    char* end_a = nullptr;
    char* end_b = nullptr;
    const double t = std::strtod(a.c_str(), &end_a);
    const double v = std::strtod(b.c_str(), &end_b);
    const bool numeric = !a.empty() && !b.empty() && *end_a == '\0' && *end_b == '\0';
    if (!numeric) {
      if (ts.empty()) continue;
      throw InvalidArgument("malformed row in wind file " + path + ": " + line);
    }
    if (!ts.empty() && !(t > ts.back())) throw InvalidArgument("wind file times must increase: " + path);
    ts.push_back(t);
    vs.push_back(v);
  }
  if (ts.empty()) throw InvalidArgument("wind file has no samples: " + path);
  return {Eigen::Map<Eigen::VectorXd>(ts.data(), Eigen::Index(ts.size())),
          Eigen::Map<Eigen::VectorXd>(vs.data(), Eigen::Index(vs.size()))};
}

InputSignals::InputSignals(const std::vector<DisturbanceSpec>& specs, double dt, double duration) {
  for (const auto& d : specs) {
    validate(d);
    if (const auto* j = std::get_if<JonswapWave>(&d)) {
      TimeSeries w = jonswap_wave(j->hs, j->tp, j->gamma, j->seed, dt, duration);
      warnings_.insert(warnings_.end(), w.warnings.begin(), w.warnings.end());
      sampled_.push_back({kWave, w.times(), w["w"]});
    } else if (const auto* f = std::get_if<WindFile>(&d)) {
      auto [t, v] = load_wind_file(f->path);
      if (f->remove_mean) v.array() -= v.mean();
      if (t(0) > 0 || t(t.size() - 1) < duration)
        warnings_.push_back("wind file " + f->path + " does not cover the run; end values are held");
      sampled_.push_back({kWind, std::move(t), std::move(v)});
    } else {
      analytic_.push_back(d);
    }
  }
}

Eigen::Vector4d InputSignals::at(double t) const {
  Eigen::Vector4d u = Eigen::Vector4d::Zero();
  for (const auto& d : analytic_) {
    if (const auto* s = std::get_if<StepBeta>(&d)) {
      if (t >= s->onset) u(kBetaOl) += s->amplitude;
    } else if (const auto* s = std::get_if<StepWind>(&d)) {
      if (t >= s->onset) u(kWind) += s->amplitude;
    } else if (const auto* m = std::get_if<MonoWave>(&d)) {
      u(kWave) += mono_wave_value(m->period, m->height, t);
    }
  }
  for (const auto& s : sampled_) u(s.column) += interpolate(s.t, s.v, t);
  return u;
}

std::pair<Eigen::Matrix4d, Eigen::Matrix4d> zoh_discretize(const Eigen::Matrix4d& A, const Eigen::Matrix4d& B,
                                                           double dt) {
  Eigen::Matrix<double, 8, 8> m = Eigen::Matrix<double, 8, 8>::Zero();
  m.topLeftCorner<4, 4>() = A * dt;
  m.topRightCorner<4, 4>() = B * dt;
  const Eigen::Matrix<double, 8, 8> e = m.exp();
  return {e.topLeftCorner<4, 4>(), e.topRightCorner<4, 4>()};
}

namespace {

struct PitchWindow {
  double lo{-std::numeric_limits<double>::infinity()};
  double hi{std::numeric_limits<double>::infinity()};
  double clamp(double b) const { return std::clamp(b, lo, hi); }
};

double pitch_command(const ControlGainsd& g, const Eigen::Vector4d& x, double beta_ol) {
  return g.kP * x(kOmega) + g.kI * x(kTheta) + g.kBeta * x(kPhiDot) + beta_ol;
}

ControlGainsd scheduled_target(const std::vector<GainStep>& schedule, const ControlGainsd& base, double t) {
  ControlGainsd g = base;
  for (const auto& s : schedule)
    if (s.time <= t) g = s.gains;
  return g;
}

}  // namespace

TimeSeries simulate(const StateSpaced& closed, const std::vector<DisturbanceSpec>& disturbances,
                    const SimOptions& o) {
  if (!closed.is_closed()) throw InvalidArgument("simulate requires a closed-loop state space");
  if (!(o.dt > 0) || !std::isfinite(o.dt)) throw InvalidArgument("dt must be positive");
  if (!(o.duration >= o.dt) || !std::isfinite(o.duration)) throw InvalidArgument("duration must be >= dt");
  if (!o.x0.allFinite()) throw InvalidArgument("initial state must be finite");
  const bool nonlinear = o.limits.enabled || !o.schedule.empty();
  if (o.method == Method::exact && nonlinear)
    throw InvalidArgument("exact discretisation cannot represent pitch limits or gain scheduling");
  if (o.limits.enabled && (!(o.limits.rate > 0) || !(o.limits.beta_max > o.limits.beta_min)))
    throw InvalidArgument("pitch limits need beta_max > beta_min and a positive rate");

  const InputSignals inputs(disturbances, o.dt, o.duration);
  const Eigen::Index n = sample_count(o.dt, o.duration);
  const double dt = o.dt;
  const bool zoh = o.method == Method::exact || o.hold == InputHold::zoh;
  const StructuralParamsd& p = closed.params;
  const AeroSensitivitiesd& s = closed.sens;

  Eigen::Matrix<double, 4, Eigen::Dynamic> X(4, n);
  Eigen::Matrix<double, 4, Eigen::Dynamic> U(4, n);
  Eigen::VectorXd beta(n), taug(n);
  Eigen::Index filled = 0;
  std::optional<double> diverged_at;

  auto record = [&](Eigen::Index k, const Eigen::Vector4d& x, const Eigen::Vector4d& u, double b,
                    const ControlGainsd& g) {
    X.col(k) = x;
    U.col(k) = u;
    beta(k) = b;
    taug(k) = g.kTauG * x(kPhiDot) + u(kTauGOl);
    filled = k + 1;
  };
  auto diverged = [&](const Eigen::Vector4d& x) { return !x.allFinite() || x.norm() > o.divergence_bound; };

  Eigen::Vector4d x = o.x0;
  if (!nonlinear) {
    const ControlGainsd g = *closed.gains;
    const Eigen::Matrix4d A = closed.A();
    const Eigen::Matrix4d B = closed.B();
    Eigen::Matrix4d Phi, Gamma;
    if (o.method == Method::exact) std::tie(Phi, Gamma) = zoh_discretize(A, B, dt);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double t = dt * static_cast<double>(k);
      const Eigen::Vector4d u = inputs.at(t);
      record(k, x, u, pitch_command(g, x, u(kBetaOl)), g);
      if (k + 1 == n) break;
      if (o.method == Method::exact) {
        x = Phi * x + Gamma * u;
      } else {
        const Eigen::Vector4d um = zoh ? u : inputs.at(t + 0.5 * dt);
        const Eigen::Vector4d ue = zoh ? u : inputs.at(t + dt);
        const Eigen::Vector4d k1 = A * x + B * u;
        const Eigen::Vector4d k2 = A * (x + 0.5 * dt * k1) + B * um;
        const Eigen::Vector4d k3 = A * (x + 0.5 * dt * k2) + B * um;
        const Eigen::Vector4d k4 = A * (x + dt * k3) + B * ue;
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      if (diverged(x)) {
        diverged_at = dt * static_cast<double>(k + 1);
        break;
      }
    }
  } else {
    const ControlGainsd base = *closed.gains;
    GainLowPass filter(o.gain_filter_tau);
    filter.reset(scheduled_target(o.schedule, base, 0.0));
    PitchWindow position;
    if (o.limits.enabled) {
      position.lo = o.limits.beta_min - o.limits.beta_op;
      position.hi = o.limits.beta_max - o.limits.beta_op;
    }
    const double max_step = o.limits.enabled ? o.limits.rate * dt : std::numeric_limits<double>::infinity();
    std::optional<double> beta_prev;

    for (Eigen::Index k = 0; k < n; ++k) {
      const double t = dt * static_cast<double>(k);
      const ControlGainsd g = k == 0 ? filter.value() : filter.update(scheduled_target(o.schedule, base, t), dt);
      PitchWindow win = position;
      if (beta_prev) {
        win.lo = std::max(win.lo, *beta_prev - max_step);
        win.hi = std::min(win.hi, *beta_prev + max_step);
      }
      auto f = [&](const Eigen::Vector4d& xs, const Eigen::Vector4d& u) {
        Eigen::Vector2d uc;
        uc(kBetaInput) = win.clamp(pitch_command(g, xs, u(kBetaOl)));
        uc(kTauGInput) = g.kTauG * xs(kPhiDot) + u(kTauGOl);
        return Eigen::Vector4d(closed.A0 * xs + closed.Bc * uc + closed.Bd * u.tail<2>());
      };
      const Eigen::Vector4d u = inputs.at(t);
      const double b = win.clamp(pitch_command(g, x, u(kBetaOl)));
      record(k, x, u, b, g);
      beta_prev = b;
      if (k + 1 == n) break;
      const Eigen::Vector4d um = zoh ? u : inputs.at(t + 0.5 * dt);
      const Eigen::Vector4d ue = zoh ? u : inputs.at(t + dt);
      const Eigen::Vector4d k1 = f(x, u);
      const Eigen::Vector4d k2 = f(x + 0.5 * dt * k1, um);
      const Eigen::Vector4d k3 = f(x + 0.5 * dt * k2, um);
      const Eigen::Vector4d k4 = f(x + dt * k3, ue);
      x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (diverged(x)) {
        diverged_at = dt * static_cast<double>(k + 1);
        break;
      }
    }
  }

  const Eigen::Index m = filled;
  TimeSeries ts(dt);
  ts.add("theta", "rad", X.row(kTheta).head(m).transpose());
  ts.add("omega", "rad/s", X.row(kOmega).head(m).transpose());
  ts.add("phi", "rad", X.row(kPhi).head(m).transpose());
  ts.add("phidot", "rad/s", X.row(kPhiDot).head(m).transpose());
  ts.add("beta", "rad", beta.head(m));
  ts.add("tau_g", "N m", taug.head(m));
  const Eigen::VectorXd v = U.row(kWind).head(m).transpose();
  const Eigen::VectorXd phidot = X.row(kPhiDot).head(m).transpose();
  const Eigen::VectorXd v_rel = v - p.ht * phidot;
  ts.add("v", "m/s", v);
  ts.add("w", "m", U.row(kWave).head(m).transpose());
  ts.add("v_rel", "m/s", v_rel);
  Eigen::VectorXd moment = p.ht * (s.dFa_dV * v_rel.array() + s.dFa_dOmega * X.row(kOmega).head(m).transpose().array() +
                                   s.dFa_dBeta * beta.head(m).array())
                                      .matrix() +
                           p.Kt * X.row(kPhi).head(m).transpose();
  ts.add("tower_moment", "N m", std::move(moment));
  Eigen::VectorXd power = p.Ng * ((o.op.gen_torque + taug.head(m).array()) *
                                  (o.op.rotor_speed + X.row(kOmega).head(m).transpose().array()))
                                     .matrix();
  ts.add("power", "W", std::move(power));
  ts.warnings = inputs.warnings();
  if (diverged_at) {
    ts.diverged_at = diverged_at;
    std::ostringstream msg;
    msg << "diverged at t = " << *diverged_at << " s";
    ts.warnings.push_back(msg.str());
  }
  return ts;
}

FreeDecayResult free_decay(const Eigen::Matrix4d& A, const Eigen::Vector4d& x0, double dt, double T) {
  if (!(dt > 0) || !(T >= dt)) throw InvalidArgument("free decay needs dt > 0 and T >= dt");
  if (!A.allFinite() || !x0.allFinite()) throw InvalidArgument("free decay inputs must be finite");
  const Eigen::Matrix4d Phi = (A * dt).exp();
  const Eigen::Index n = sample_count(dt, T);
  Eigen::VectorXd phi(n);
  Eigen::Vector4d x = x0;
  for (Eigen::Index k = 0; k < n; ++k) {
    phi(k) = x(kPhi);
    x = Phi * x;
  }
  const double scale = phi.cwiseAbs().maxCoeff();
  FreeDecayResult r;
  if (scale == 0.0) {
    r.overdamped = true;
    return r;
  }

  constexpr std::size_t kMaxExtrema = 12;
  std::vector<double> values, times;
  for (Eigen::Index i = 1; i + 1 < n && values.size() < kMaxExtrema; ++i) {
    const double a = phi(i) - phi(i - 1);
    const double b = phi(i + 1) - phi(i);
    if (!(a * b < 0 || (a != 0 && b == 0))) continue;
    const double denom = phi(i - 1) - 2.0 * phi(i) + phi(i + 1);
    double offset = 0.0, value = phi(i);
    if (denom != 0.0) {
      offset = 0.5 * (phi(i - 1) - phi(i + 1)) / denom;
      value = phi(i) - 0.25 * (phi(i - 1) - phi(i + 1)) * offset;
    }
    if (std::abs(value) < 1e-10 * scale) break;
    values.push_back(value);
    times.push_back(dt * (static_cast<double>(i) + offset));
  }
  r.extrema = values.size();

  if (values.size() < 3) {
    r.overdamped = true;
    // Least-squares slope of log|phi| over the part still above the noise floor.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double cnt = 0;
    for (Eigen::Index k = n / 2; k < n; ++k) {
      const double a = std::abs(phi(k));
      if (a < 1e-12 * scale) continue;
      const double t = dt * static_cast<double>(k), y = std::log(a);
      sx += t;
      sy += y;
      sxx += t * t;
      sxy += t * y;
      cnt += 1;
    }
    if (cnt >= 2) r.decay_rate = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return r;
  }

  double delta = 0.0, spacing = 0.0;
  const std::size_t swings = values.size() - 1;
  for (std::size_t k = 0; k + 1 < swings; ++k) {
    const double d0 = std::abs(values[k + 1] - values[k]);
    const double d1 = std::abs(values[k + 2] - values[k + 1]);
    delta += std::log(d0 / d1);
  }
  delta /= static_cast<double>(swings - 1);
  spacing = (times.back() - times.front()) / static_cast<double>(swings);
  const double zeta = delta / std::sqrt(std::numbers::pi * std::numbers::pi + delta * delta);
  r.zeta = zeta;
  r.nu = std::numbers::pi / spacing / std::sqrt(1.0 - zeta * zeta);
  return r;
}

}  // namespace fowt
