#include "fowt/timeseries.hpp"

#include <cmath>

#include "fowt/errors.hpp"

namespace fowt {

TimeSeries::TimeSeries(double dt, double t0) : dt_(dt), t0_(t0) {
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidArgument("time series dt must be positive");
  if (!std::isfinite(t0)) throw InvalidArgument("time series t0 must be finite");
}

Eigen::Index TimeSeries::size() const { return channels_.empty() ? 0 : channels_.front().values.size(); }

Eigen::VectorXd TimeSeries::times() const {
  Eigen::VectorXd t(size());
  for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = time(i);
  return t;
}

void TimeSeries::add(std::string name, std::string unit, Eigen::VectorXd values) {
  if (has(name)) throw InvalidArgument("duplicate channel name: " + name);
  if (!channels_.empty() && values.size() != size())
    throw InvalidArgument("channel " + name + " length does not match the series");
  channels_.push_back({std::move(name), std::move(unit), std::move(values)});
}

bool TimeSeries::has(const std::string& name) const {
  for (const auto& c : channels_)
    if (c.name == name) return true;
  return false;
}

const Channel& TimeSeries::channel(const std::string& name) const {
  for (const auto& c : channels_)
    if (c.name == name) return c;
  throw InvalidArgument("no channel named " + name);
}

void TimeSeries::truncate(Eigen::Index n) {
  if (n < 0 || n >= size()) return;
  for (auto& c : channels_) c.values.conservativeResize(n);
}

Eigen::VectorXd window(const TimeSeries& ts, const std::string& name, double t_start) {
  const Eigen::VectorXd& v = ts[name];
  Eigen::Index first = 0;
  if (t_start > ts.t0()) first = static_cast<Eigen::Index>(std::ceil((t_start - ts.t0()) / ts.dt() - 1e-9));
  if (first >= v.size()) return Eigen::VectorXd();
  return v.tail(v.size() - first);
}

ChannelStats channel_stats(const TimeSeries& ts, const std::string& name, double t_start) {
  const Eigen::VectorXd w = window(ts, name, t_start);
  ChannelStats s;
  s.samples = w.size();
  if (w.size() == 0) {
    s.min = s.mean = s.max = s.stddev = std::nan("");
    return s;
  }
  s.min = w.minCoeff();
  s.max = w.maxCoeff();
  s.mean = w.mean();
  s.stddev = std::sqrt((w.array() - s.mean).square().mean());
  return s;
}

double half_peak_to_peak(const Eigen::VectorXd& x) {
  if (x.size() == 0) return 0.0;
  return 0.5 * (x.maxCoeff() - x.minCoeff());
}

}  // namespace fowt
