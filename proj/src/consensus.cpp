#include "opdyn/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "opdyn/error.hpp"

namespace opdyn {

namespace {

void require_stochastic(const Matrix& m, const char* who) {
  if (!is_row_stochastic(m, kStochasticTolerance)) {
    throw ContractError(std::string(who) +
                        ": matrix is not row-stochastic within 1e-12");
  }
}

bool has_full_column(const BoolMatrix& p) {
  for (std::size_t j = 0; j < p.cols(); ++j) {
    bool all = true;
    for (std::size_t i = 0; i < p.rows() && all; ++i) all = p(i, j);
    if (all) return true;
  }
  return false;
}

double fixed_point_residual(const std::vector<double>& lambda, const Matrix& m) {
  const auto next = left_multiply(lambda, m);
  double res = 0.0;
  for (std::size_t j = 0; j < next.size(); ++j)
    res = std::max(res, std::abs(next[j] - lambda[j]));
  return res;
}

void normalize(std::vector<double>& v) {
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= sum;
}

// Solves lambda (m - I) = 0 with the last equation replaced by sum = 1,
// via Gaussian elimination with partial pivoting on the transposed system.
std::vector<double> solve_stationary(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix a = Matrix::square(n);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = m(j, i) - (i == j ? 1.0 : 0.0);
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
  rhs[n - 1] = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0) {
      throw NumericalError("stationary solve: singular system",
                           std::numeric_limits<double>::infinity());
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  for (double& v : x) v = std::max(v, 0.0);
  normalize(x);
  return x;
}

}  // namespace

std::size_t wielandt_bound(std::size_t n) {
  return n == 0 ? 1 : (n - 1) * (n - 1) + 1;
}

std::optional<std::size_t> positive_column_time(const Matrix& m,
                                                std::optional<std::size_t> cap) {
  require_stochastic(m, "positive_column_time");
  const std::size_t limit = cap.value_or(wielandt_bound(m.rows()));
  if (limit < 1) throw ParameterError("positive_column_time: cap must be >= 1");

  const BoolMatrix s = support(m);
  BoolMatrix power = s;
  for (std::size_t t = 1; t <= limit; ++t) {
    if (has_full_column(power)) return t;
    if (t < limit) {
      BoolMatrix next = boolean_multiply(power, s);
      // The support sequence is eventually periodic; a repeat means no
      // later power can differ from ones already checked.
      if (next == power) return std::nullopt;
      power = std::move(next);
    }
  }
  return std::nullopt;
}

StationaryVector stationary_vector(const Matrix& m) {
  require_stochastic(m, "stationary_vector");
  const std::size_t n = m.rows();
  std::vector<double> lambda(n, 1.0 / static_cast<double>(n));

  for (std::size_t it = 0; it < kPowerIterationCap; ++it) {
    auto next = left_multiply(lambda, m);
    double res = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      res = std::max(res, std::abs(next[j] - lambda[j]));
    if (res < kStationaryTolerance) return {std::move(lambda), res};
    normalize(next);
    lambda = std::move(next);
  }

  auto solved = solve_stationary(m);
  const double res = fixed_point_residual(solved, m);
  if (!(res < kStationaryTolerance)) {
    throw NumericalError("stationary vector did not converge (residual " +
                             std::to_string(res) + ")",
                         res);
  }
  return {std::move(solved), res};
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::NoPressure:
      return "no-pressure";
    case Regime::FullPressure:
      return "full-pressure";
    case Regime::PartialPressure:
      return "partial-pressure";
  }
  return "unknown";
}

Regime regime_for(double f) {
  if (f == 0.0) return Regime::NoPressure;
  if (f == 1.0) return Regime::FullPressure;
  return Regime::PartialPressure;
}

ConsensusReport predict(const TrustGraph& g, const AgentParams& p,
                        const WeightModel& w, const OpinionState& x0) {
  const std::size_t n = g.size();
  p.validate(n);
  if (x0.opinions.size() != n || w.two_step.rows() != n) {
    throw ValidationError("predict: dimension mismatch between graph (" +
                          std::to_string(n) + "), weights and x(0) (" +
                          std::to_string(x0.opinions.size()) + ")");
  }
  const auto& x = x0.opinions;
  ConsensusReport report;
  report.regime = regime_for(p.f);

  switch (report.regime) {
    case Regime::FullPressure: {
      report.positive_column_time =
          positive_column_time(build_pressure_matrix(w, 1.0).b);
      report.weights.assign(n, 1.0 / static_cast<double>(n));
      report.predicted_value = average_opinion(x0);
      break;
    }
    case Regime::PartialPressure: {
      const auto b = build_pressure_matrix(w, p.f);
      report.positive_column_time = positive_column_time(b.b);
      auto sv = stationary_vector(b.b);
      report.stationary_residual = sv.residual;
      report.weights = std::move(sv.lambda);
      report.predicted_value =
          std::inner_product(report.weights.begin(), report.weights.end(),
                             x.begin(), 0.0);
      break;
    }
    case Regime::NoPressure: {
      report.celebrity_set = reachability(g).celebrities;
      report.positive_column_time = positive_column_time(w.two_step);
      if (report.celebrity_set.empty()) break;
      auto sv = stationary_vector(w.two_step);
      report.stationary_residual = sv.residual;
      report.weights = std::move(sv.lambda);
      double num = 0.0, den = 0.0;
      for (AgentId i : report.celebrity_set) {
        num += report.weights[i] * x[i];
        den += report.weights[i];
      }
      report.predicted_value = num / den;
      break;
    }
  }
  return report;
}

double verify(ConsensusReport& report, const Trajectory& traj) {
  if (!traj.converged) {
    throw VerificationUnavailable("trajectory did not reach consensus");
  }
  if (!report.predicted_value) {
    throw VerificationUnavailable("no consensus value was predicted");
  }
  const auto& final_state = traj.final_state();
  const double predicted = *report.predicted_value;
  const double simulated = average_opinion(final_state);
  double deviation = 0.0;
  for (double v : final_state.opinions)
    deviation = std::max(deviation, std::abs(v - predicted));
  report.simulated_value = simulated;
  report.agreement = std::abs(predicted - simulated);
  report.max_deviation = deviation;
  return *report.agreement;
}

}  // namespace opdyn
