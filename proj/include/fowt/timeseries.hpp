#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace fowt {

struct Channel {
  std::string name;
  std::string unit;
  Eigen::VectorXd values;
};

/// Uniformly sampled multi-channel signal. Sample i is at t0 + i*dt.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(double dt, double t0 = 0.0);

  double dt() const { return dt_; }
  double t0() const { return t0_; }
  Eigen::Index size() const;
  double time(Eigen::Index i) const { return t0_ + dt_ * static_cast<double>(i); }
  Eigen::VectorXd times() const;

  /// Adds a channel; its length must match existing channels and its name
  /// must be new.
  void add(std::string name, std::string unit, Eigen::VectorXd values);
  bool has(const std::string& name) const;
  const Channel& channel(const std::string& name) const;
  const Eigen::VectorXd& operator[](const std::string& name) const { return channel(name).values; }
  const std::vector<Channel>& channels() const { return channels_; }

  /// Drops samples at and after index n in every channel.
  void truncate(Eigen::Index n);

  std::optional<double> diverged_at;
  std::vector<std::string> warnings;

 private:
  double dt_{1.0};
  double t0_{0.0};
  std::vector<Channel> channels_;
};

struct ChannelStats {
  double min{0};
  double mean{0};
  double max{0};
  double stddev{0};
  Eigen::Index samples{0};
};

/// Statistics over samples with time >= t_start; population standard deviation.
ChannelStats channel_stats(const TimeSeries& ts, const std::string& name, double t_start);

/// Values with time >= t_start.
Eigen::VectorXd window(const TimeSeries& ts, const std::string& name, double t_start);

/// Amplitude of the oscillation over the window, (max - min)/2.
double half_peak_to_peak(const Eigen::VectorXd& x);

}  // namespace fowt
