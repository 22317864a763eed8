#include "tgtsp/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "tgtsp/errors.hpp"
#include "tgtsp/json_io.hpp"

namespace tgtsp {

Point2 Trajectory::label_at(double t) const {
  if (t <= times.front()) return labels.front();
  if (t >= times.back()) return labels.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - times.begin()) - 1;
  const double s = (t - times[k]) / (times[k + 1] - times[k]);
  return labels[k] + s * (labels[k + 1] - labels[k]);
}

void Trajectory::validate() const {
  const std::size_t n = times.size();
  if (n < 2) throw ValidationError("trajectory: needs at least 2 samples");
  if (labels.size() != n || states.size() != n || controls.size() != n)
    throw ValidationError("trajectory: times/labels/states/controls lengths differ");
  for (std::size_t k = 1; k < n; ++k)
    if (!(times[k - 1] < times[k]))
      throw ValidationError("trajectory: times must strictly increase");
  for (double t : times)
    if (!std::isfinite(t)) throw ValidationError("trajectory: non-finite time");
  if (!(times.back() - times.front() > 0.0))
    throw ValidationError("trajectory: duration must be positive");
}

Trajectory parse_trajectory(const std::string& text) {
  const ordered_json j = parse_json(text, "trajectory");
  Trajectory t;
  try {
    for (const auto& v : j.at("times")) t.times.push_back(v.get<double>());
    for (const auto& v : j.at("labels"))
      t.labels.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    for (const auto& v : j.at("states"))
      t.states.push_back({v.at(0).get<double>(), v.at(1).get<double>(),
                          v.at(2).get<double>(), v.at(3).get<double>()});
    for (const auto& v : j.at("controls"))
      t.controls.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("trajectory: ") + e.what());
  }
  t.validate();
  return t;
}

std::string serialize_trajectory(const Trajectory& t) {
  ordered_json j;
  j["times"] = t.times;
  ordered_json labels = ordered_json::array();
  for (const Point2& p : t.labels) labels.push_back(ordered_json::array({p.x, p.y}));
  j["labels"] = labels;
  ordered_json states = ordered_json::array();
  for (const auto& x : t.states)
    states.push_back(ordered_json::array({x[0], x[1], x[2], x[3]}));
  j["states"] = states;
  ordered_json controls = ordered_json::array();
  for (const auto& u : t.controls)
    controls.push_back(ordered_json::array({u[0], u[1]}));
  j["controls"] = controls;
  return dump_json(j, 2);
}

Trajectory resample_uniform(const Trajectory& t, int n) {
  t.validate();
  if (n < 2) throw ValidationError("resample: need at least 2 nodes");
  Trajectory out;
  out.times.resize(n);
  out.labels.resize(n);
  out.states.resize(n);
  out.controls.resize(n);
  const double t0 = t.t0();
  const double T = t.duration();
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    const double ti = grid_time(t0, T, i, n);
    out.times[i] = ti;
    while (k + 2 < t.times.size() && t.times[k + 1] <= ti) ++k;
    const double span = t.times[k + 1] - t.times[k];
    const double s = std::clamp((ti - t.times[k]) / span, 0.0, 1.0);
    out.labels[i] = t.labels[k] + s * (t.labels[k + 1] - t.labels[k]);
    for (int j = 0; j < 4; ++j)
      out.states[i][j] = t.states[k][j] + s * (t.states[k + 1][j] - t.states[k][j]);
    out.controls[i] = t.controls[k];
  }
  return out;
}

}  // namespace tgtsp
