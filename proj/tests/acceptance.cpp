// Acceptance checks. Prints one PASS/FAIL line per criterion and returns
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fowt/commands.hpp"
#include "fowt/fatigue.hpp"
#include "fowt/freq.hpp"
#include "fowt/gains.hpp"
#include "fowt/sim.hpp"
#include "fowt/stability.hpp"
#include "oracles.hpp"

using namespace fowt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass{false};
  std::string detail;
};

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool has_rhp_root(const Polynomial<double>& p) {
  for (const auto& z : roots_companion(p))
    if (z.real() > 0) return true;
  return false;
}

ControlGainsd rotor_pi(const StructuralParamsd& p, const AeroSensitivitiesd& s, RotorTarget<double> t = {}) {
  const auto pi = tune_pi(p, s, t);
  return {pi.kP, pi.kI, 0.0, 0.0};
}

double final_value(const TimeSeries& ts, const std::string& ch) { return ts[ch](ts.size() - 1); }

// 1 ---------------------------------------------------------------------------
Outcome nmpz_classification() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = oracle::iea15();
  const bool t1f = nmpz_phi_condition(oracle::table1_false()).holds;
  const bool t1t = nmpz_phi_condition(oracle::table1_true()).holds;
  const bool t2f = nmpz_omega_condition(p, oracle::table2_false(), 0.0).holds;
  const bool t2t = nmpz_omega_condition(p, oracle::table2_true(), 0.0).holds;
  const bool t3phi = nmpz_phi_condition(oracle::table3()).holds;
  const bool t3om = nmpz_omega_condition(p, oracle::table3(), 0.0).holds;
  const RotorTarget<double> fast{0.6, std::sqrt(p.Kt / p.Jt)};
  const auto rep = modal_report(build_closed_loop(p, oracle::table3(), rotor_pi(p, oracle::table3(), fast)).A());
  const double t = seconds_since(t0);
  const bool ok = !t1f && t1t && !t2f && t2t && t3phi && t3om && !rep.stable && t < 1.0;
  return {ok, std::string("T1 ") + (t1f ? "T" : "F") + "/" + (t1t ? "T" : "F") + ", T2 " + (t2f ? "T" : "F") + "/" +
                  (t2t ? "T" : "F") + ", T3 " + (t3phi ? "T" : "F") + (t3om ? "T" : "F") +
                  " max Re = " + num(rep.max_real_part) + ", " + num(t) + " s"};
}

// 2 ---------------------------------------------------------------------------
Outcome root_sign_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = oracle::iea15();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> m(0.0, 1.0);
  int agree = 0, phi_true = 0, omega_true = 0;
  const int n = 1000;
  for (int k = 0; k < n; ++k) {
    const auto s = oracle::random_sensitivities(rng);
    const double kTauG = ktaug(p, s, m(rng));
    const bool c31 = nmpz_phi_condition(s).holds;
    const bool c21 = nmpz_omega_condition(p, s, kTauG).holds;
    const bool r31 = has_rhp_root(numerator_phi(p, s));
    const bool r21 = has_rhp_root(numerator_omega(p, s, kTauG));
    phi_true += c31;
    omega_true += c21;
    agree += (c31 == r31 && c21 == r21);
  }
  const double t = seconds_since(t0);
  return {agree == n && t < 10.0, std::to_string(agree) + "/" + std::to_string(n) + " agree (phi true " +
                                      std::to_string(phi_true) + ", omega true " + std::to_string(omega_true) +
                                      "), " + num(t) + " s"};
}

// 3 ---------------------------------------------------------------------------
TimeSeries open_loop_pitch_step(const AeroSensitivitiesd& s, double duration) {
  SimOptions o;
  o.dt = 0.01;
  o.duration = duration;
  return simulate(build_closed_loop(oracle::iea15(), s, ControlGainsd{}), {StepBeta{0.01, 0.0}}, o);
}

Outcome step_phi_direction() {
  const TimeSeries f = open_loop_pitch_step(oracle::table1_false(), 600.0);
  const TimeSeries t = open_loop_pitch_step(oracle::table1_true(), 600.0);
  const double pf = final_value(f, "phi"), pt = final_value(t, "phi");
  return {pf * pt < 0, "final phi " + num(pf) + " (false) vs " + num(pt) + " (true)"};
}

Outcome step_omega_undershoot() {
  const TimeSeries ts = open_loop_pitch_step(oracle::table2_true(), 600.0);
  const Eigen::VectorXd& w = ts["omega"];
  const double final = w(w.size() - 1);
  double opposite = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) * final < 0) opposite = std::max(opposite, std::abs(w(i)));
  const auto rep = roots_companion(numerator_omega(oracle::iea15(), oracle::table2_true(), 0.0));
  double zero_re = -INFINITY;
  for (const auto& z : rep) zero_re = std::max(zero_re, z.real());
  return {opposite > 0.0, "final omega " + num(final) + ", largest opposite-sign excursion " + num(opposite) +
                              ", right-half-plane zero Re = " + num(zero_re)};
}

// 4 ---------------------------------------------------------------------------
Outcome damping_imposition() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = oracle::iea15();
  const auto s = oracle::table1_false();
  const auto sd = without_speed_thrust_coupling(s);
  std::ostringstream d;
  bool ok = true;
  double worst = 0;
  for (double z : {0.05, 0.10, 0.25, 0.5}) {
    const double kb = kbeta_zeta_fixed(p, sd, PlatformTarget<double>{z});
    const auto A = build_closed_loop(p, sd, ControlGainsd{0, 0, kb, 0}).A();
    const auto r = free_decay(A, Eigen::Vector4d(0, 0, 0.01, 0), 0.01, 600.0);
    const double err = r.zeta ? std::abs(*r.zeta - z) / z : INFINITY;
    worst = std::max(worst, err);
    ok = ok && err <= 0.02;
  }
  d << "decoupled log-decrement worst " << num(100 * worst) << "%";
  double worst_modal = 0;
  for (double z : {0.10, 0.25}) {
    ControlGainsd g = rotor_pi(p, s);
    g.kBeta = kbeta_zeta_fixed(p, s, PlatformTarget<double>{z});
    const auto rep = modal_report(build_closed_loop(p, s, g).A());
    const auto mode = nearest_oscillatory_mode(rep, std::sqrt(p.Kt / p.Jt));
    const double err = mode ? std::abs(mode->zeta - z) / z : INFINITY;
    worst_modal = std::max(worst_modal, err);
    ok = ok && err <= 0.15;
  }
  d << ", coupled modal worst " << num(100 * worst_modal) << "%";
  // natural frequency of the decoupled platform pair read from the eigenvalues
  const double nu0 = std::sqrt(p.Kt / p.Jt);
  double nu_shift = 0;
  for (double z : {0.05, 0.10, 0.25, 0.5}) {
    const double kb = kbeta_zeta_fixed(p, sd, PlatformTarget<double>{z});
    const auto rep = modal_report(build_closed_loop(p, sd, ControlGainsd{0, 0, kb, 0}).A());
    const auto mode = nearest_oscillatory_mode(rep, nu0);
    nu_shift = std::max(nu_shift, mode ? std::abs(mode->nu - nu0) / nu0 : INFINITY);
  }
  ok = ok && nu_shift <= 1e-10;
  const double t = seconds_since(t0);
  ok = ok && t < 30.0;
  d << ", nu shift " << num(nu_shift) << ", " << num(t) << " s";
  return {ok, d.str()};
}

// 5 ---------------------------------------------------------------------------
Outcome integrator_fidelity() {
  const auto p = oracle::iea15();
  const auto s = oracle::table1_false();
  const auto ss = build_closed_loop(p, s, rotor_pi(p, s));
  SimOptions o;
  o.dt = 0.01;
  o.duration = 100.0;
  o.hold = InputHold::zoh;
  const std::vector<DisturbanceSpec> d{StepBeta{0.01, 5.0}, MonoWave{1.5, 11.0}};
  o.method = Method::rk4;
  const TimeSeries a = simulate(ss, d, o);
  o.method = Method::exact;
  const TimeSeries b = simulate(ss, d, o);
  double err = 0;
  for (const char* ch : {"theta", "omega", "phi", "phidot"}) err = std::max(err, (a[ch] - b[ch]).cwiseAbs().maxCoeff());
  return {modal_report(ss.A()).stable && err < 1e-8, "max state error " + num(err)};
}

// 6 ---------------------------------------------------------------------------
double mono_wave_amplitude(const StructuralParamsd& p, const AeroSensitivitiesd& s, const ControlGainsd& g,
                           double period, double duration, double window_start, const std::string& channel,
                           double* del = nullptr) {
  SimOptions o;
  o.dt = 0.01;
  o.duration = duration;
  const TimeSeries ts = simulate(build_closed_loop(p, s, g), {MonoWave{1.5, period}}, o);
  if (del) {
    const Eigen::VectorXd m = window(ts, "tower_moment", window_start);
    const std::vector<Cycle> c = rainflow(m);
    *del = damage_equivalent_load(c, 3.0, (duration - window_start) * 1.0);
  }
  return half_peak_to_peak(window(ts, channel, window_start));
}

Outcome frequency_time_consistency() {
  const auto p = oracle::iea15();
  const auto sd = without_speed_thrust_coupling(oracle::table1_false());
  const double nu = std::sqrt(p.Kt / p.Jt);
  const double period = 2 * std::numbers::pi / nu;
  std::map<double, double> amp;
  bool ok = true;
  std::ostringstream d;
  for (double z : {0.10, 0.25}) {
    const double kb = kbeta_zeta_fixed(p, sd, PlatformTarget<double>{z});
    VectorX<double> g(1);
    g << nu;
    const double predicted = 0.75 * bode_gplt(p, sd, kb, g, PlatformInput::wave).magnitude(0);
    amp[z] = mono_wave_amplitude(p, sd, ControlGainsd{0, 0, kb, 0}, period, 1500.0, 1200.0, "phi");
    const double err = std::abs(amp[z] - predicted) / predicted;
    ok = ok && err <= 0.01;
    d << "zeta " << z << ": " << num(amp[z]) << " rad vs " << num(predicted) << " (" << num(100 * err) << "%); ";
  }
  const double ratio = amp[0.10] / amp[0.25];
  ok = ok && std::abs(ratio - 2.5) <= 0.25;
  d << "ratio " << num(ratio);
  return {ok, d.str()};
}

// 7 ---------------------------------------------------------------------------
Outcome strategy_comparison() {
  const auto p = oracle::iea15();
  const auto s = oracle::table1_false();
  const ControlGainsd base = rotor_pi(p, s);
  std::ostringstream d;
  bool ok = true;
  std::map<double, double> amp_reduction, del_reduction;
  for (double tp : {28.75, 11.0}) {
    double amp[3], del[3];
    int i = 0;
    for (double z : {0.0, 0.10, 0.25}) {
      ControlGainsd g = base;
      if (z > 0) g.kBeta = kbeta_zeta_fixed(p, s, PlatformTarget<double>{z});
      amp[i] = mono_wave_amplitude(p, s, g, tp, 800.0, 200.0, "phi", &del[i]);
      ++i;
    }
    // strict ordering is required at the platform period only
    if (tp == 28.75) ok = ok && amp[1] < amp[0] && amp[2] < amp[1] && del[1] < del[0] && del[2] < del[1];
    amp_reduction[tp] = 1 - amp[2] / amp[0];
    del_reduction[tp] = 1 - del[2] / del[0];
    d << "Tp " << tp << ": phi " << num(amp[0]) << ", " << num(amp[1]) << ", " << num(amp[2]) << ", DEL "
      << num(del[0]) << ", " << num(del[1]) << ", " << num(del[2]) << "; ";
  }
  ok = ok && amp_reduction[11.0] < amp_reduction[28.75] && del_reduction[11.0] < del_reduction[28.75];
  d << "reduction at 0.25: " << num(100 * amp_reduction[28.75]) << "% vs " << num(100 * amp_reduction[11.0])
    << "% (phi), " << num(100 * del_reduction[28.75]) << "% vs " << num(100 * del_reduction[11.0]) << "% (DEL)";
  return {ok, d.str()};
}

// 8 ---------------------------------------------------------------------------
Outcome fatigue_kernel() {
  Eigen::VectorXd x(9);
  x << -2, 1, -3, 5, -1, 3, -4, 4, -2;
  std::map<double, double> got;
  for (const auto& c : rainflow(x, RainflowOptions{0.0})) got[c.range] += c.count;
  const std::map<double, double> astm{{3, 0.5}, {4, 1.5}, {6, 0.5}, {8, 1.0}, {9, 0.5}};
  const bool astm_ok = got == astm;

  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0, 1);
  Eigen::VectorXd y(5000);
  for (auto& v : y) v = n(rng);
  const double base = damage_equivalent_load(rainflow(y), 3.0, 1000.0);
  double homog = 0;
  for (double c : {1e-3, 2.5, 7.0e5}) {
    const Eigen::VectorXd z = c * y;
    homog = std::max(homog, std::abs(damage_equivalent_load(rainflow(z), 3.0, 1000.0) - c * base) / (c * base));
  }
  const auto w = WohlerCurve::bilinear(3, 5, 1e6, 83.4e6);
  const double lo = w.cycles_to_failure(83.4e6 * (1 - 1e-13));
  const double hi = w.cycles_to_failure(83.4e6 * (1 + 1e-13));
  const double knee = std::abs(lo - hi) / w.cycles_to_failure(83.4e6);
  return {astm_ok && homog <= 1e-12 && knee <= 1e-9, std::string("ASTM ") + (astm_ok ? "exact" : "mismatch") +
                                                         ", homogeneity " + num(homog) + ", knee jump " + num(knee)};
}

// 9 ---------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "fowt_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "campaign.ini") << "param_dir = " << FOWT_DEFAULT_PARAM_DIR << "\n"
                                      << "use = umaine-iea15\n[run]\nseed = 123\n"
                                      << "[disturbance.sea]\nkind = jonswap-wave\nhs = 1.5 m\ntp = 11 s\ngamma = 2\n"
                                      << "[simulation]\ndt = 0.05\nduration = 900\n"
                                      << "[campaign]\nwind_speeds = 12, 16, 20, 24\n"
                                      << "strategies = zeta-fixed:0.10, reference\nsave_series = on\n";
  std::ostringstream sink;
  CommandContext ctx;
  ctx.config = dir / "campaign.ini";
  ctx.report = &sink;
  ctx.diagnostics = &sink;
  ctx.out = dir / "run1";
  ctx.jobs = 4;
  const int a = run_command("campaign", ctx);
  ctx.out = dir / "run2";
  ctx.jobs = 2;
  const int b = run_command("campaign", ctx);
  if (a != 0 || b != 0) return {false, "campaign failed: " + sink.str()};
  int files = 0, same = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir / "run1")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const fs::path other = dir / "run2" / fs::relative(e.path(), dir / "run1");
    same += fs::exists(other) && slurp(e.path()) == slurp(other);
  }
  return {files > 0 && same == files, std::to_string(same) + "/" + std::to_string(files) + " files identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1  NMPZ classification", nmpz_classification},
      {"2  root-sign equivalence", root_sign_equivalence},
      {"3a step response: phi direction", step_phi_direction},
      {"3b step response: omega undershoot", step_omega_undershoot},
      {"4  damping imposition", damping_imposition},
      {"5  integrator fidelity", integrator_fidelity},
      {"6  frequency/time consistency", frequency_time_consistency},
      {"7  strategy comparison", strategy_comparison},
      {"8  fatigue kernel", fatigue_kernel},
      {"9  determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " checks passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
