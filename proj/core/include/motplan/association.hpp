#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "motplan/geometry.hpp"

namespace motplan {

inline constexpr double kGatedCost = std::numeric_limits<double>::infinity();

/// |observations| x |tracks| distances, row-major. Entries beyond the gate
/// are +inf.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double gate = kGatedCost);
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values, double gate = kGatedCost);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double gate() const { return gate_; }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double gate_ = kGatedCost;
  std::vector<double> values_;
};

using MatchPair = std::pair<std::size_t, std::size_t>;  // (observation, track)

struct Assignment {
  std::vector<MatchPair> pairs;  // sorted by observation index
  std::vector<std::size_t> unmatched_observations;
  std::vector<std::size_t> unmatched_tracks;

  /// Sum of the matched costs, accumulated in pair order.
  double total_cost(const CostMatrix& cost) const;
};

CostMatrix build_cost_matrix(std::span<const Vec2> observations, std::span<const Vec2> tracks,
                             double dist_thresh);

/// Global nearest neighbour: a one-to-one matching that first maximizes the
/// number of finite-cost pairs and then minimizes their total cost. Among
/// equal optima the lexicographically smallest pair list is returned.
Assignment solve_gnn(const CostMatrix& cost);

/// Repeatedly takes the smallest finite entry (ties: lowest row, then column)
/// and removes its row and column.
Assignment solve_greedy(const CostMatrix& cost);

enum class Associator { gnn, greedy };

Associator parse_associator(std::string_view name);
std::string_view to_string(Associator a);

Assignment associate(const CostMatrix& cost, Associator method);

}  // namespace motplan
