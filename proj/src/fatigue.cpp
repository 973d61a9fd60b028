#include "fowt/fatigue.hpp"

#include <cmath>
#include <limits>

#include "fowt/errors.hpp"

namespace fowt {

std::vector<double> turning_points(const Eigen::Ref<const Eigen::VectorXd>& x, double hysteresis) {
  if (!(hysteresis >= 0)) throw InvalidArgument("hysteresis must be >= 0");
  if (!x.allFinite()) throw InvalidArgument("rainflow input must be finite");
  std::vector<double> out;
  if (x.size() == 0) return out;
  out.push_back(x(0));
  auto exceeds = [hysteresis](double d) { return hysteresis == 0.0 ? d > 0.0 : d > hysteresis; };
  int dir = 0;
  double cand = x(0);
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    const double v = x(i);
    if (dir == 0) {
      if (exceeds(v - x(0))) {
        dir = 1;
        cand = v;
      } else if (exceeds(x(0) - v)) {
        dir = -1;
        cand = v;
      }
    } else if (dir > 0) {
      if (v >= cand) {
        cand = v;
      } else if (exceeds(cand - v)) {
        out.push_back(cand);
        dir = -1;
        cand = v;
      }
    } else {
      if (v <= cand) {
        cand = v;
      } else if (exceeds(v - cand)) {
        out.push_back(cand);
        dir = 1;
        cand = v;
      }
    }
  }
  if (dir != 0) out.push_back(cand);
  return out;
}

std::vector<Cycle> rainflow_turning_points(const std::vector<double>& points) {
  std::vector<Cycle> cycles;
  std::vector<double> stack;
  for (double p : points) {
    stack.push_back(p);
    while (stack.size() >= 4) {
      const std::size_t n = stack.size();
      const double a = stack[n - 4], b = stack[n - 3], c = stack[n - 2], d = stack[n - 1];
      const double inner = std::abs(c - b);
      if (inner <= std::abs(b - a) && inner <= std::abs(d - c)) {
        cycles.push_back({inner, 0.5 * (b + c), 1.0});
        stack.erase(stack.end() - 3, stack.end() - 1);
      } else {
        break;
      }
    }
  }
  for (std::size_t i = 0; i + 1 < stack.size(); ++i)
    cycles.push_back({std::abs(stack[i + 1] - stack[i]), 0.5 * (stack[i] + stack[i + 1]), 0.5});
  return cycles;
}

std::vector<Cycle> rainflow(const Eigen::Ref<const Eigen::VectorXd>& x, const RainflowOptions& options) {
  if (x.size() < 2) throw InvalidArgument("rainflow needs at least two samples");
  if (!(options.hysteresis_fraction >= 0)) throw InvalidArgument("hysteresis fraction must be >= 0");
  if (!x.allFinite()) throw InvalidArgument("rainflow input must be finite");
  const double p2p = x.maxCoeff() - x.minCoeff();
  return rainflow_turning_points(turning_points(x, options.hysteresis_fraction * p2p));
}

double total_count(const std::vector<Cycle>& cycles) {
  double n = 0.0;
  for (const auto& c : cycles) n += c.count;
  return n;
}

double damage_equivalent_load(const std::vector<Cycle>& cycles, double m, double n_ref) {
  if (!(m > 0)) throw InvalidArgument("Wohler exponent must be > 0");
  if (!(n_ref > 0)) throw InvalidArgument("reference cycle count must be > 0");
  if (cycles.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& c : cycles) sum += c.count * std::pow(c.range, m);
  return std::pow(sum / n_ref, 1.0 / m);
}

WohlerCurve WohlerCurve::single(double m, double knee_cycles, double knee_stress) {
  WohlerCurve c{Kind::single, m, m, knee_cycles, knee_stress};
  c.validate();
  return c;
}

WohlerCurve WohlerCurve::bilinear(double m1, double m2, double knee_cycles, double knee_stress) {
  WohlerCurve c{Kind::bilinear, m1, m2, knee_cycles, knee_stress};
  c.validate();
  return c;
}

void WohlerCurve::validate() const {
  if (!(m1 > 0) || (kind == Kind::bilinear && !(m2 > 0))) throw InvalidArgument("Wohler exponents must be > 0");
  if (!(knee_cycles > 0)) throw InvalidArgument("Wohler knee cycle count must be > 0");
  if (!(knee_stress > 0)) throw InvalidArgument("Wohler knee stress must be > 0");
}

double WohlerCurve::cycles_to_failure(double stress_range) const {
  if (!(stress_range >= 0)) throw InvalidArgument("stress range must be >= 0");
  if (stress_range == 0.0) return std::numeric_limits<double>::infinity();
  const double m = (kind == Kind::single || stress_range >= knee_stress) ? m1 : m2;
  return knee_cycles * std::pow(knee_stress / stress_range, m);
}

double miner_damage(const std::vector<Cycle>& cycles, const WohlerCurve& curve, double section_modulus,
                    double lifetime_scale) {
  curve.validate();
  if (!(section_modulus > 0)) throw InvalidArgument("section modulus must be > 0");
  if (!(lifetime_scale >= 0)) throw InvalidArgument("lifetime scale must be >= 0");
  double d = 0.0;
  for (const auto& c : cycles) d += c.count / curve.cycles_to_failure(c.range / section_modulus);
  return lifetime_scale * d;
}

}  // namespace fowt
