#include "opdyn/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "opdyn/error.hpp"

namespace opdyn {

PressureMatrix build_pressure_matrix(const Matrix& two_step, double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw ParameterError("f = " + std::to_string(f) + " must lie in [0, 1]");
  }
  const std::size_t n = two_step.rows();
  const double pull = f / static_cast<double>(n);
  PressureMatrix pm{Matrix::square(n), f};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      pm.b(i, j) = (1.0 - f) * two_step(i, j) + pull;
  return pm;
}

PressureMatrix build_pressure_matrix(const WeightModel& w, double f) {
  return build_pressure_matrix(w.two_step, f);
}

OpinionState step(const OpinionState& state, const PressureMatrix& b) {
  if (state.opinions.size() != b.b.cols()) {
    throw ValidationError("opinion vector has " +
                          std::to_string(state.opinions.size()) +
                          " entries but the pressure matrix is " +
                          std::to_string(b.b.rows()) + "x" +
                          std::to_string(b.b.cols()));
  }
  return {multiply(b.b, state.opinions), state.time + 1};
}

double spread(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

double average_opinion(const OpinionState& state) {
  const auto& x = state.opinions;
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

Trajectory simulate(const OpinionState& x0, const PressureMatrix& b,
                    const SimulationOptions& options) {
  const std::size_t stride = std::max<std::size_t>(options.stride, 1);
  Trajectory traj;
  OpinionState current{x0.opinions, 0};
  traj.states.push_back(current);

  double s = spread(current.opinions);
  while (!(s < options.eps) && current.time < options.max_steps) {
    current = step(current, b);
    s = spread(current.opinions);
    if (current.time % stride == 0 || s < options.eps ||
        current.time == options.max_steps) {
      traj.states.push_back(current);
    }
  }
  traj.final_spread = s;
  traj.converged = s < options.eps;
  if (traj.converged) traj.convergence_time = current.time;
  return traj;
}

std::optional<std::size_t> first_time_below(const Trajectory& traj,
                                             double eps) {
  for (const auto& st : traj.states)
    if (spread(st.opinions) < eps) return st.time;
  return std::nullopt;
}

}  // namespace opdyn
