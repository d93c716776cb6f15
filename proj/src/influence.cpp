#include "opdyn/influence.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "opdyn/error.hpp"

namespace opdyn {

void AgentParams::validate(std::size_t n) const {
  if (alpha.size() != n) {
    throw ParameterError("alpha: expected " + std::to_string(n) +
                         " values, got " + std::to_string(alpha.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(alpha[i] > 0.0 && alpha[i] < 1.0)) {
      throw ParameterError("alpha[" + std::to_string(i + 1) + "] = " +
                           std::to_string(alpha[i]) +
                           " must lie strictly inside (0, 1)");
    }
  }
  if (!(f >= 0.0 && f <= 1.0)) {
    throw ParameterError("f = " + std::to_string(f) + " must lie in [0, 1]");
  }
  if (!(r > 0.0 && r <= 1.0)) {
    throw ParameterError("r = " + std::to_string(r) + " must lie in (0, 1]");
  }
}

namespace {

// Sum of in-degrees over the indirect set; the in-degree share of s is
// deg+_s / indirect_degree_mass.
double indirect_degree_mass(const std::vector<AgentId>& indirect,
                            const std::vector<std::size_t>& in_deg) {
  double mass = 0.0;
  for (AgentId s : indirect) mass += static_cast<double>(in_deg[s]);
  return mass;
}

}  // namespace

InfluenceProfile influence_profile(const TrustGraph& g, const AgentParams& p) {
  const std::size_t n = g.size();
  assert(p.alpha.size() == n);
  const auto sets = neighbor_sets(g);
  const double denom = static_cast<double>(n - 1);

  std::vector<std::size_t> in_deg(n);
  InfluenceProfile prof;
  prof.inf.resize(n);
  prof.beta.resize(n);
  prof.gamma.resize(n);
  prof.con.resize(n);
  prof.total_inf.resize(n);
  for (AgentId i = 0; i < n; ++i) {
    in_deg[i] = in_degree(g, i);
    prof.beta[i] = static_cast<double>(in_deg[i]) / denom;
    prof.gamma[i] = static_cast<double>(out_degree(g, i)) / denom;
    prof.inf[i] = (p.alpha[i] + prof.beta[i] + prof.gamma[i]) / 3.0;
  }

  for (AgentId i = 0; i < n; ++i) {
    double total = 0.0;
    for (AgentId j : sets.direct[i]) total += prof.inf[j];
    const auto& indirect = sets.indirect[i];
    if (!indirect.empty()) {
      const double mass = indirect_degree_mass(indirect, in_deg);
      for (AgentId s : indirect)
        total += prof.inf[s] * static_cast<double>(in_deg[s]) / mass;
    }
    // Out-degree >= 1 and INF > 0 make this strictly positive.
    assert(total > 0.0);
    prof.total_inf[i] = total;
    prof.con[i] = (1.0 - p.alpha[i]) / total;
  }
  return prof;
}

Matrix one_step_weights(const InfluenceProfile& profile, const TrustGraph& g,
                        const AgentParams& p) {
  const std::size_t n = g.size();
  Matrix w = Matrix::square(n);
  for (AgentId i = 0; i < n; ++i) {
    double direct_inf = 0.0;
    for (AgentId k = 0; k < n; ++k)
      if (g.trusts(i, k)) direct_inf += profile.inf[k];
    for (AgentId j = 0; j < n; ++j) {
      if (g.trusts(i, j))
        w(i, j) = profile.inf[j] / direct_inf * (1.0 - p.alpha[i]);
    }
    w(i, i) = p.alpha[i];
  }
  return w;
}

WeightModel two_step_weights(const InfluenceProfile& profile,
                             const TrustGraph& g, const AgentParams& p) {
  const std::size_t n = g.size();
  const auto sets = neighbor_sets(g);
  std::vector<std::size_t> in_deg(n);
  for (AgentId i = 0; i < n; ++i) in_deg[i] = in_degree(g, i);

  WeightModel model{one_step_weights(profile, g, p), Matrix::square(n), profile};
  Matrix& w2 = model.two_step;
  const Matrix& w1 = model.one_step;
  for (AgentId i = 0; i < n; ++i) {
    const double con = profile.con[i];
    for (AgentId j : sets.direct[i])
      w2(i, j) = (con * profile.inf[j] - w1(i, j)) * p.r + w1(i, j);
    const auto& indirect = sets.indirect[i];
    if (!indirect.empty()) {
      const double mass = indirect_degree_mass(indirect, in_deg);
      for (AgentId s : indirect)
        w2(i, s) = con * profile.inf[s] * p.r *
                   static_cast<double>(in_deg[s]) / mass;
    }
    w2(i, i) = p.alpha[i];
  }
  return model;
}

WeightModel build_weight_model(const TrustGraph& g, const AgentParams& p) {
  p.validate(g.size());
  return two_step_weights(influence_profile(g, p), g, p);
}

}  // namespace opdyn
