#pragma once

#include <array>
#include <utility>
#include <vector>

#include "opdyn/graph.hpp"
#include "opdyn/matrix.hpp"

// Six-agent reference network with its published parameters and the
// matrices printed (rounded to 4 decimals) for it.
namespace opdyn::fixture {

inline constexpr std::size_t kAgents = 6;

// 1-based trust edges i -> j.
inline const std::vector<std::pair<std::size_t, std::size_t>> kEdges = {
    {1, 2}, {1, 4}, {2, 1}, {2, 3}, {3, 6}, {4, 5}, {5, 6}, {6, 3}};

inline const std::vector<double> kAlpha = {0.32, 0.63, 0.1, 0.84, 0.76, 0.55};
inline const std::vector<double> kX0 = {0.14, 0.8, 0.4, 0.9, 0.2, 0.36};
inline constexpr double kR = 0.8;
inline constexpr double kBaselineF = 0.5;

// Printed values are rounded to 4 decimals.
inline constexpr double kPrintedTolerance = 5e-4;

inline const std::vector<double> kGroupPressureSweep = {0.001, 0.2, 0.4,
                                                        0.6,   0.8, 0.999};
inline const std::vector<double> kSelfConfidenceSweep = {0.1, 0.3, 0.6, 0.9};
inline constexpr double kSelfConfidenceF = 0.3;
inline constexpr double kTimingEps = 1e-4;

inline TrustGraph graph() { return graph_from_one_based(kEdges, kAgents); }

inline Matrix printed_w() {
  return {{0.32, 0.3386, 0, 0.3414, 0, 0},
          {0.2101, 0.63, 0.1599, 0, 0, 0},
          {0, 0, 0.1, 0, 0, 0.9},
          {0, 0, 0, 0.84, 0.16, 0},
          {0, 0, 0, 0, 0.76, 0.24},
          {0, 0, 0.45, 0, 0, 0.55}};
}

inline Matrix printed_w_prime() {
  return {{0.32, 0.2691, 0.0764, 0.2713, 0.0633, 0},
          {0.1393, 0.63, 0.106, 0.0437, 0, 0.081},
          {0, 0, 0.1, 0, 0, 0.9},
          {0, 0, 0, 0.84, 0.0963, 0.0637},
          {0, 0, 0.0726, 0, 0.76, 0.1674},
          {0, 0, 0.45, 0, 0, 0.55}};
}

// Printed for f = 0.5.
inline Matrix printed_b() {
  return {{0.2433, 0.2179, 0.1215, 0.219, 0.115, 0.0833},
          {0.153, 0.3983, 0.1363, 0.1052, 0.0833, 0.1239},
          {0.0833, 0.0833, 0.1333, 0.0833, 0.0833, 0.5333},
          {0.0833, 0.0833, 0.08333, 0.5033, 0.1315, 0.1152},
          {0.0833, 0.0833, 0.1197, 0.0833, 0.4633, 0.167},
          {0.0833, 0.0833, 0.3083, 0.0833, 0.0833, 0.3583}};
}

}  // namespace opdyn::fixture
