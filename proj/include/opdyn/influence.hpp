#pragma once

#include <vector>

#include "opdyn/graph.hpp"
#include "opdyn/matrix.hpp"

namespace opdyn {

/// Per-agent self-confidence alpha in (0,1), uniform group pressure f in
/// [0,1], and the appetite r in (0,1] for listening to indirect neighbors.
struct AgentParams {
  std::vector<double> alpha;
  double f = 0.0;
  double r = 1.0;

  /// Throws ParameterError naming the offending field.
  void validate(std::size_t n) const;
};

struct InfluenceProfile {
  std::vector<double> inf;        // (alpha + beta + gamma) / 3
  std::vector<double> beta;       // in-degree / (n-1)
  std::vector<double> gamma;      // out-degree / (n-1)
  std::vector<double> con;        // (1 - alpha) / total_inf
  std::vector<double> total_inf;  // influence mass over direct + indirect
};

struct WeightModel {
  Matrix one_step;  // W
  Matrix two_step;  // W'
  InfluenceProfile profile;
};

/// Influence indices, centralities and confidence scales.
///
/// total_inf_i sums INF_j over direct neighbors, plus INF_s weighted by
/// in-degree share over indirect neighbors (zero when there are none).
InfluenceProfile influence_profile(const TrustGraph& g, const AgentParams& p);

/// One-step weights: w_ij = INF_j / sum_{k in N1(i)} INF_k * (1 - alpha_i)
/// for trusted j, alpha_i on the diagonal.
Matrix one_step_weights(const InfluenceProfile& profile, const TrustGraph& g,
                        const AgentParams& p);

/// Two-step weights W'. Direct neighbors blend r * con_i * INF_j with the
/// one-step weight; indirect neighbors get r * con_i * INF_j scaled by their
/// in-degree share. Rows sum to one.
WeightModel two_step_weights(const InfluenceProfile& profile,
                             const TrustGraph& g, const AgentParams& p);

/// Validates p and runs the full pipeline.
WeightModel build_weight_model(const TrustGraph& g, const AgentParams& p);

}  // namespace opdyn
