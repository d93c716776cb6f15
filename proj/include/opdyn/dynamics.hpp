#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "opdyn/influence.hpp"
#include "opdyn/matrix.hpp"

namespace opdyn {

struct OpinionState {
  std::vector<double> opinions;  // each in [0, 1]
  std::size_t time = 0;
};

/// Effective update matrix under uniform group pressure:
/// b_ij = (1 - f) * w'_ij + f / n. Strictly positive when f > 0.
struct PressureMatrix {
  Matrix b;
  double f = 0.0;
};

struct Trajectory {
  // states[0] is x(0). With stride 1 the times are 0, 1, 2, ...; with a
  // larger stride every stride-th state plus the final one is kept.
  std::vector<OpinionState> states;
  bool converged = false;
  // First t with spread(x(t)) < eps.
  std::optional<std::size_t> convergence_time;
  double final_spread = 0.0;

  const OpinionState& final_state() const { return states.back(); }
};

struct SimulationOptions {
  std::size_t max_steps = 1'000'000;
  double eps = 1e-8;
  std::size_t stride = 1;
};

/// Throws ParameterError when f is outside [0, 1].
PressureMatrix build_pressure_matrix(const WeightModel& w, double f);
PressureMatrix build_pressure_matrix(const Matrix& two_step, double f);

/// x(t+1) = B x(t). Throws ValidationError on dimension mismatch.
OpinionState step(const OpinionState& state, const PressureMatrix& b);

/// Iterates step until spread < eps or max_steps is reached. Not converging
/// is reported through Trajectory::converged, never thrown.
Trajectory simulate(const OpinionState& x0, const PressureMatrix& b,
                    const SimulationOptions& options = {});

double average_opinion(const OpinionState& state);

/// max_i x_i - min_i x_i.
double spread(std::span<const double> x);

/// First recorded time with spread below eps. Exact for stride-1 trajectories.
std::optional<std::size_t> first_time_below(const Trajectory& traj, double eps);

}  // namespace opdyn
