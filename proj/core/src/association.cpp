#include "motplan/association.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace motplan {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double gate)
    : rows_(rows), cols_(cols), gate_(gate), values_(rows * cols, kGatedCost) {}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> values, double gate)
    : rows_(rows), cols_(cols), gate_(gate), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw std::invalid_argument("CostMatrix: value count does not match shape");
  }
  for (double v : values_) {
    if (std::isnan(v) || v < 0.0) {
      throw std::invalid_argument("CostMatrix: entries must be >= 0 or +inf");
    }
  }
}

double Assignment::total_cost(const CostMatrix& cost) const {
  double total = 0.0;
  for (const auto& [r, c] : pairs) {
    total += cost(r, c);
  }
  return total;
}

CostMatrix build_cost_matrix(std::span<const Vec2> observations, std::span<const Vec2> tracks,
                             double dist_thresh) {
  CostMatrix cost(observations.size(), tracks.size(), dist_thresh);
  for (std::size_t i = 0; i < observations.size(); ++i) {
    for (std::size_t j = 0; j < tracks.size(); ++j) {
      const double d = distance(observations[i], tracks[j]);
      cost(i, j) = d > dist_thresh ? kGatedCost : d;
    }
  }
  return cost;
}

namespace {

struct MatchingValue {
  std::size_t count = 0;  // finite pairs
  double cost = 0.0;
  std::vector<MatchPair> pairs;
};

/// Min-cost matching restricted to the given rows and columns. Gated
/// entries and the square padding are priced so that every gated pick costs
/// more than all finite entries combined.
MatchingValue hungarian(const CostMatrix& cost, std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols) {
  MatchingValue result;
  const std::size_t r = rows.size();
  const std::size_t c = cols.size();
  if (r == 0 || c == 0) {
    return result;
  }
  const std::size_t n = std::max(r, c);

  double max_finite = 0.0;
  for (std::size_t i : rows) {
    for (std::size_t j : cols) {
      if (std::isfinite(cost(i, j))) {
        max_finite = std::max(max_finite, cost(i, j));
      }
    }
  }
  const double big = static_cast<double>(n + 1) * (max_finite + 1.0);

  // a is 1-indexed, (n+1) x (n+1).
  std::vector<double> a((n + 1) * (n + 1), 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * (n + 1) + j]; };
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double v = cost(rows[i], cols[j]);
      at(i + 1, j + 1) = std::isfinite(v) ? v : big;
    }
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) {
          continue;
        }
        const double cur = at(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> row_to_col(n + 1, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    row_to_col[p[j]] = j;
  }
  for (std::size_t i = 1; i <= r; ++i) {
    const std::size_t j = row_to_col[i];
    if (j == 0 || j > c) {
      continue;
    }
    const double value = cost(rows[i - 1], cols[j - 1]);
    if (std::isfinite(value)) {
      result.pairs.emplace_back(rows[i - 1], cols[j - 1]);
      result.count += 1;
      result.cost += value;
    }
  }
  return result;
}

void fill_unmatched(const CostMatrix& cost, Assignment& out) {
  std::vector<char> row_used(cost.rows(), 0), col_used(cost.cols(), 0);
  for (const auto& [r, c] : out.pairs) {
    row_used[r] = 1;
    col_used[c] = 1;
  }
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    if (!row_used[r]) {
      out.unmatched_observations.push_back(r);
    }
  }
  for (std::size_t c = 0; c < cost.cols(); ++c) {
    if (!col_used[c]) {
      out.unmatched_tracks.push_back(c);
    }
  }
}

}  // namespace

Assignment solve_gnn(const CostMatrix& cost) {
  std::vector<std::size_t> rows(cost.rows()), cols(cost.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;

  const MatchingValue optimum = hungarian(cost, rows, cols);
  const double tol = 1e-12 * (1.0 + optimum.cost);

  // Walk the rows in order and give each the smallest column that still
  // admits an optimal completion of the remaining rows.
  Assignment out;
  std::size_t acc_count = 0;
  double acc_cost = 0.0;
  std::vector<std::size_t> free_cols = cols;
  bool consistent = true;
  for (std::size_t i = 0; i < rows.size() && consistent; ++i) {
    const std::span<const std::size_t> rest(rows.begin() + static_cast<std::ptrdiff_t>(i + 1), rows.end());
    bool placed = false;
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      const std::size_t j = free_cols[k];
      const double cij = cost(i, j);
      if (!std::isfinite(cij)) {
        continue;
      }
      std::vector<std::size_t> remaining = free_cols;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
      const MatchingValue sub = hungarian(cost, rest, remaining);
      const std::size_t count = acc_count + 1 + sub.count;
      const double total = acc_cost + cij + sub.cost;
      if (count == optimum.count && total <= optimum.cost + tol) {
        out.pairs.emplace_back(i, j);
        acc_count += 1;
        acc_cost += cij;
        free_cols = std::move(remaining);
        placed = true;
        break;
      }
    }
    if (!placed) {
      // Row i stays unmatched; the remaining rows must still reach the optimum.
      const MatchingValue sub = hungarian(cost, rest, free_cols);
      consistent = acc_count + sub.count == optimum.count && acc_cost + sub.cost <= optimum.cost + tol;
    }
  }
  if (!consistent) {
    out.pairs = optimum.pairs;
    std::sort(out.pairs.begin(), out.pairs.end());
  }
  fill_unmatched(cost, out);
  return out;
}

Assignment solve_greedy(const CostMatrix& cost) {
  Assignment out;
  std::vector<char> row_used(cost.rows(), 0), col_used(cost.cols(), 0);
  while (true) {
    double best = kGatedCost;
    std::size_t best_r = 0, best_c = 0;
    for (std::size_t r = 0; r < cost.rows(); ++r) {
      if (row_used[r]) {
        continue;
      }
      for (std::size_t c = 0; c < cost.cols(); ++c) {
        if (!col_used[c] && cost(r, c) < best) {
          best = cost(r, c);
          best_r = r;
          best_c = c;
        }
      }
    }
    if (!std::isfinite(best)) {
      break;
    }
    row_used[best_r] = 1;
    col_used[best_c] = 1;
    out.pairs.emplace_back(best_r, best_c);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  fill_unmatched(cost, out);
  return out;
}

Associator parse_associator(std::string_view name) {
  if (name == "gnn") {
    return Associator::gnn;
  }
  if (name == "greedy") {
    return Associator::greedy;
  }
  throw std::invalid_argument("unknown associator '" + std::string(name) + "' (expected gnn|greedy)");
}

std::string_view to_string(Associator a) { return a == Associator::gnn ? "gnn" : "greedy"; }

Assignment associate(const CostMatrix& cost, Associator method) {
  return method == Associator::gnn ? solve_gnn(cost) : solve_greedy(cost);
}

}  // namespace motplan
