#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "opdyn/dynamics.hpp"
#include "opdyn/graph.hpp"
#include "opdyn/influence.hpp"
#include "opdyn/matrix.hpp"

namespace opdyn {

inline constexpr double kStationaryTolerance = 1e-12;
inline constexpr double kStochasticTolerance = 1e-12;
inline constexpr std::size_t kPowerIterationCap = 100'000;

/// (n-1)^2 + 1: a primitive n x n matrix has a strictly positive power by
/// then, so a positive column must have appeared.
std::size_t wielandt_bound(std::size_t n);

/// Smallest t <= cap such that m^t has a column with every entry positive,
/// evaluated on the boolean support pattern so underflow cannot fake a zero.
/// cap defaults to the Wielandt bound. Throws ContractError when m is not
/// row-stochastic.
std::optional<std::size_t> positive_column_time(
    const Matrix& m, std::optional<std::size_t> cap = std::nullopt);

struct StationaryVector {
  std::vector<double> lambda;  // lambda * m = lambda, sum 1
  double residual = 0.0;       // max-norm of lambda * m - lambda
};

/// Left fixed point of a row-stochastic matrix. Power iteration from the
/// uniform vector; if that stalls past kPowerIterationCap, falls back to a
/// dense solve of lambda (m - I) = 0 with sum(lambda) = 1. Throws
/// NumericalError carrying the residual if neither reaches
/// kStationaryTolerance.
StationaryVector stationary_vector(const Matrix& m);

enum class Regime { NoPressure, FullPressure, PartialPressure };

std::string_view to_string(Regime regime);
Regime regime_for(double f);

struct ConsensusReport {
  Regime regime = Regime::PartialPressure;
  std::optional<double> predicted_value;
  // Convex weights over x(0); empty when no consensus is predicted.
  // f = 0: stationary vector of W' (numerically supported on celebrities).
  std::vector<double> weights;
  std::vector<AgentId> celebrity_set;  // filled for f = 0 only
  std::optional<std::size_t> positive_column_time;
  std::optional<double> stationary_residual;
  // Set by verify().
  std::optional<double> simulated_value;
  std::optional<double> agreement;
  std::optional<double> max_deviation;
};

/// Analytic consensus prediction for the three group-pressure regimes.
ConsensusReport predict(const TrustGraph& g, const AgentParams& p,
                        const WeightModel& w, const OpinionState& x0);

/// Compares the prediction against a converged trajectory and records the
/// result in the report. Returns |predicted - mean(final opinions)|.
/// Throws VerificationUnavailable if the trajectory did not converge or no
/// value was predicted.
double verify(ConsensusReport& report, const Trajectory& traj);

}  // namespace opdyn
