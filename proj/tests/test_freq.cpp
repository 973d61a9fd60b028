#include <doctest.h>

#include "fowt/freq.hpp"
#include "fowt/gains.hpp"
#include "oracles.hpp"

using namespace fowt;
using C = std::complex<double>;

TEST_CASE("transfer matrix against Cramer's rule") {
  const auto p = oracle::iea15();
  const auto s = oracle::table1_false();
  const auto pi = tune_pi(p, s, RotorTarget<double>{});
  const auto ss = build_closed_loop(p, s, ControlGainsd{pi.kP, pi.kI, 2.0, 0.0});
  for (const C z : {C(0, 0.05), C(0, 0.22), C(0.1, 1.0)}) {
    const auto G = eval_G(ss, z);
    for (int o = 0; o < 4; ++o)
      for (int i = 0; i < 4; ++i) {
        const C ref = oracle::transfer(ss.A(), ss.B(), o, i, z);
        CHECK(std::abs(G(o, i) - ref) <= 1e-9 * std::max(std::abs(ref), 1e-20));
      }
  }
}

TEST_CASE("evaluation at a pole is refused") {
  Eigen::Matrix4d A = -Eigen::Matrix4d::Identity();
  StateSpaced ss;
  ss.gains = ControlGainsd{};
  ss.A_cl = A;
  CHECK_THROWS_AS(eval_G(ss, C(-1, 0)), NearPole);
}

TEST_CASE("reduced platform filter") {
  const auto p = oracle::iea15();
  const auto s = oracle::table1_false();
  const double nu = std::sqrt(p.Kt / p.Jt);
  for (double z : {0.10, 0.25}) {
    const double kb = kbeta_zeta_fixed(p, s, PlatformTarget<double>{z});
    VectorX<double> g(1);
    g << nu;
    const auto fr = bode_gplt(p, s, kb, g, PlatformInput::wave);
    CHECK(fr.magnitude(0) == doctest::Approx(s.dTw_dW / p.Kt / (2 * z)).epsilon(1e-12));
    CHECK(fr.phase(0) == doctest::Approx(-std::numbers::pi / 2));
    // same as the forced single-degree-of-freedom oscillator
    CHECK(fr.magnitude(0) == doctest::Approx(oracle::sdof_amplitude(nu, z, s.dTw_dW / p.Jt, nu)).epsilon(1e-12));
  }
  const auto fr = bode_gplt(p, s, 0.0, default_grid(p));
  CHECK(fr.magnitude(0) == doctest::Approx(1.0).epsilon(1e-3));
  for (Eigen::Index i = 1; i < fr.nu.size(); ++i) CHECK(fr.nu(i) > fr.nu(i - 1));
  CHECK(fr.phase(fr.nu.size() - 1) == doctest::Approx(-std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("reduced rotor filter") {
  const auto p = oracle::iea15();
  const auto s = oracle::table1_false();
  const auto pi = tune_pi(p, s, RotorTarget<double>{0.6, 0.01});
  VectorX<double> g(1);
  g << 0.01;
  const auto fr = bode_grot(p, s, pi.kP, pi.kI, g);
  CHECK_FALSE(fr.degenerate);
  CHECK(fr.magnitude(0) == doctest::Approx(p.Ng / p.Jr * s.dTa_dV / (2 * 0.6 * 0.01)).epsilon(1e-12));
  const auto deg = bode_grot(p, s, pi.kP, 0.0, g);
  CHECK(deg.degenerate);
}

TEST_CASE("grids and band") {
  const auto p = oracle::iea15();
  const auto band = damped_band(p);
  CHECK(band.second / band.first == doctest::Approx(2.0));
  const auto g = default_grid(p);
  CHECK(g.size() == 400);
  CHECK(g(0) == doctest::Approx(std::sqrt(p.Kt / p.Jt) / 100));
  CHECK_THROWS_AS(log_grid(1.0, 0.5, 10), InvalidArgument);
  VectorX<double> bad(2);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(bode_gplt(p, oracle::table1_false(), 0.0, bad), InvalidArgument);
}
