#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spd/diagram.hpp"

namespace spd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double euclid(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Splits a signed diagram into expanded unsigned positive/negative point
// lists; weights must be integral.
void expand_signed(const SignedDiagram& d, std::vector<Point>& pos, std::vector<Point>& neg) {
  for (const auto& p : d.points) {
    const double r = std::round(p.weight);
    if (std::abs(p.weight - r) > 1e-9)
      throw std::invalid_argument("Wasserstein distance requires integer weights");
    const long copies = std::lround(std::abs(r));
    auto& side = r > 0 ? pos : neg;
    for (long c = 0; c < copies; ++c) side.push_back(p.x);
  }
}

// Minimum-cost perfect assignment on a square matrix via shortest augmenting
// paths with potentials, O(n^3).
std::vector<int> assignment(const std::vector<double>& cost, int n) {
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
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
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_of_col(n);
  for (int j = 1; j <= n; ++j) row_of_col[j - 1] = p[j] - 1;
  return row_of_col;
}

// Quotient-space W1 between unsigned point lists via the diagonal-augmented
// matrix: real-real cost min(d, d_A + d_A), real-diagonal cost d_A.
double w1_unsigned(const PolyhedralPair& pair, const std::vector<Point>& xs,
                   const std::vector<Point>& ys, MatchingResult* matching) {
  const int m = static_cast<int>(xs.size());
  const int n = static_cast<int>(ys.size());
  const int s = m + n;
  if (s == 0) {
    if (matching) *matching = MatchingResult{};
    return 0.0;
  }
  std::vector<double> da_x(m), da_y(n);
  for (int i = 0; i < m; ++i) da_x[i] = pair.distance_to_a(xs[i]);
  for (int j = 0; j < n; ++j) da_y[j] = pair.distance_to_a(ys[j]);

  std::vector<double> cost(static_cast<std::size_t>(s) * s, 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      double c = 0.0;
      if (i < m && j < n) c = std::min(euclid(xs[i], ys[j]), da_x[i] + da_y[j]);
      else if (i < m) c = da_x[i];
      else if (j < n) c = da_y[j];
      cost[static_cast<std::size_t>(i) * s + j] = c;
    }

  const std::vector<int> row_of_col = assignment(cost, s);
  double total = 0;
  for (int j = 0; j < s; ++j) total += cost[static_cast<std::size_t>(row_of_col[j]) * s + j];

  if (matching) {
    matching->cost = total;
    matching->left = xs;
    matching->right = ys;
    matching->edges.clear();
    for (int j = 0; j < s; ++j) {
      const int i = row_of_col[j];
      if (i < m && j < n) {
        if (da_x[i] + da_y[j] < euclid(xs[i], ys[j])) {
          matching->edges.push_back(MatchEdge{i, -1});
          matching->edges.push_back(MatchEdge{-1, j});
        } else {
          matching->edges.push_back(MatchEdge{i, j});
        }
      } else if (i < m) {
        matching->edges.push_back(MatchEdge{i, -1});
      } else if (j < n) {
        matching->edges.push_back(MatchEdge{-1, j});
      }
    }
  }
  return total;
}

void reduce_signed(const SignedDiagram& a, const SignedDiagram& b, std::vector<Point>& left,
                   std::vector<Point>& right, int cap) {
  if (!(a.pair == b.pair)) throw std::invalid_argument("diagrams live on different pairs");
  std::vector<Point> a_pos, a_neg, b_pos, b_neg;
  expand_signed(a, a_pos, a_neg);
  expand_signed(b, b_pos, b_neg);
  // W1(a, b) = W1(a+ + b-, b+ + a-)
  left = std::move(a_pos);
  left.insert(left.end(), b_neg.begin(), b_neg.end());
  right = std::move(b_pos);
  right.insert(right.end(), a_neg.begin(), a_neg.end());
  if (static_cast<int>(left.size()) > cap || static_cast<int>(right.size()) > cap)
    throw std::invalid_argument("expanded diagram exceeds the matching cap of " +
                                std::to_string(cap) + " points");
}

}  // namespace

double wasserstein1(const SignedDiagram& a, const SignedDiagram& b, int expansion_cap) {
  std::vector<Point> left, right;
  reduce_signed(a, b, left, right, expansion_cap);
  return w1_unsigned(a.pair, left, right, nullptr);
}

MatchingResult wasserstein1_matching(const SignedDiagram& a, const SignedDiagram& b,
                                     int expansion_cap) {
  std::vector<Point> left, right;
  reduce_signed(a, b, left, right, expansion_cap);
  MatchingResult out;
  w1_unsigned(a.pair, left, right, &out);
  return out;
}

double wasserstein1_bruteforce(const SignedDiagram& a, const SignedDiagram& b) {
  std::vector<Point> left, right;
  reduce_signed(a, b, left, right, 5);
  const PolyhedralPair& pair = a.pair;
  const int m = static_cast<int>(left.size());
  const int n = static_cast<int>(right.size());

  std::vector<double> da_left(m), da_right(n);
  for (int i = 0; i < m; ++i) da_left[i] = pair.distance_to_a(left[i]);
  for (int j = 0; j < n; ++j) da_right[j] = pair.distance_to_a(right[j]);

  double best = kInf;
  // Assign each left point to an unused right point or to A; leftovers go to A.
  auto rec = [&](auto&& self, int i, unsigned used, double acc) -> void {
    if (acc >= best) return;
    if (i == m) {
      double total = acc;
      for (int j = 0; j < n; ++j)
        if (!(used >> j & 1u)) total += da_right[j];
      best = std::min(best, total);
      return;
    }
    self(self, i + 1, used, acc + da_left[i]);
    for (int j = 0; j < n; ++j)
      if (!(used >> j & 1u)) self(self, i + 1, used | (1u << j), acc + euclid(left[i], right[j]));
  };
  rec(rec, 0, 0u, 0.0);
  return best == kInf ? 0.0 : best;
}

double diagram_norm(const SignedDiagram& a, int expansion_cap) {
  return wasserstein1(a, empty_diagram(a.pair), expansion_cap);
}

}  // namespace spd
