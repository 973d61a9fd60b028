#include <doctest.h>

#include <map>
#include <numbers>
#include <random>

#include "fowt/fatigue.hpp"

using namespace fowt;

TEST_CASE("ASTM E1049 rainflow example") {
  Eigen::VectorXd x(9);
  x << -2, 1, -3, 5, -1, 3, -4, 4, -2;
  const auto cycles = rainflow(x, RainflowOptions{0.0});
  std::map<double, double> by_range;
  for (const auto& c : cycles) by_range[c.range] += c.count;
  const std::map<double, double> expected{{3, 0.5}, {4, 1.5}, {6, 0.5}, {8, 1.0}, {9, 0.5}};
  CHECK(by_range == expected);
  CHECK(total_count(cycles) == 4.0);
}

TEST_CASE("turning points and hysteresis") {
  Eigen::VectorXd x(8);
  x << 0, 1, 2, 1.999, 3, 2, 2.5, 0;
  CHECK(turning_points(x, 0.01) == std::vector<double>{0, 3, 2, 2.5, 0});
  CHECK(turning_points(x, 0.0).size() == 7);
}

TEST_CASE("sinusoid counts one cycle per period") {
  const int n = 1000;
  Eigen::VectorXd x(n + 1);
  for (int i = 0; i <= n; ++i) x(i) = std::cos(2 * std::numbers::pi * 5 * i / n);
  const auto c = rainflow(x);
  CHECK(total_count(c) == doctest::Approx(5.0));
  for (const auto& cy : c) CHECK(cy.range == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("DEL") {
  std::vector<Cycle> c{{2.0, 0.0, 1.0}, {4.0, 0.0, 0.5}};
  CHECK(damage_equivalent_load(c, 3.0, 2.0) == doctest::Approx(std::cbrt((8.0 + 0.5 * 64.0) / 2.0)));
  CHECK(damage_equivalent_load({}, 3.0, 1.0) == 0.0);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0, 1);
  Eigen::VectorXd x(2000);
  for (auto& v : x) v = n(rng);
  const double base = damage_equivalent_load(rainflow(x), 4.0, 100.0);
  for (double k : {0.001, 3.7, 1e6}) {
    const Eigen::VectorXd y = k * x;
    CHECK(std::abs(damage_equivalent_load(rainflow(y), 4.0, 100.0) - k * base) <= 1e-12 * k * base);
  }
}

TEST_CASE("Wohler curves") {
  const auto w = WohlerCurve::bilinear(3, 5, 1e6, 83.4e6);
  CHECK(w.cycles_to_failure(83.4e6) == doctest::Approx(1e6));
  const double below = w.cycles_to_failure(83.4e6 * (1 - 1e-12));
  const double above = w.cycles_to_failure(83.4e6 * (1 + 1e-12));
  CHECK(std::abs(below - above) <= 1e-9 * 1e6);
  CHECK(w.cycles_to_failure(41.7e6) == doctest::Approx(32e6));
  CHECK(w.cycles_to_failure(166.8e6) == doctest::Approx(1.25e5));
  CHECK(std::isinf(w.cycles_to_failure(0.0)));
  const auto s = WohlerCurve::single(3, 1e6, 83.4e6);
  CHECK(s.cycles_to_failure(41.7e6) == doctest::Approx(8e6));
  CHECK_THROWS(WohlerCurve::bilinear(-1, 5, 1e6, 1e6));
}

TEST_CASE("Miner damage") {
  const auto w = WohlerCurve::bilinear(3, 5, 1e6, 83.4e6);
  const std::vector<Cycle> c{{83.4e6 * 2.0, 0, 1.0}, {83.4e6 * 2.0, 0, 0.5}};
  // section modulus 2 puts the stress range at the knee
  CHECK(miner_damage(c, w, 2.0, 1.0) == doctest::Approx(1.5e-6));
  CHECK(miner_damage(c, w, 2.0, 10.0) == doctest::Approx(1.5e-5));
}
