// Brute-force numeric oracles used by the tests. Independent of the closed
// forms and point-location code they check: everything here goes through
// dense linear algebra or exhaustive scans.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "spd/polyhedral.hpp"

namespace oracles {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  std::uint64_t below(std::uint64_t n) { return gen() % n; }
};

inline spd::Point sample_point(const spd::PolyhedralPair& pair, double lo, double hi, Rng& rng) {
  spd::Point x(pair.dimension);
  for (;;) {
    for (double& c : x) c = rng.uniform(lo, hi);
    if (pair.contains(x)) return x;
  }
}

// Gaussian elimination with partial pivoting; a is n x n, b length n.
inline std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int best = c;
    for (int r = c; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[best][c])) best = r;
    std::swap(a[c], a[best]);
    std::swap(b[c], b[best]);
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (int c = 0; c < n; ++c) x[c] = b[c] / a[c][c];
  return x;
}

struct AffineSolution {
  std::vector<double> weights;
  double residual = 0;  // distance between x and the reconstructed point
};

// Barycentric coordinates of x with respect to arbitrary simplex vertices,
// via the normal equations of [V; 1] w = [x; 1].
inline AffineSolution affine_coordinates(const std::vector<spd::Point>& vertices,
                                         const spd::Point& x) {
  const int d = static_cast<int>(x.size());
  const int k = static_cast<int>(vertices.size());
  // rows: d coordinates plus the affine constraint
  std::vector<std::vector<double>> a(d + 1, std::vector<double>(k));
  std::vector<double> b(d + 1);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < k; ++c) a[r][c] = vertices[c][r];
    b[r] = x[r];
  }
  for (int c = 0; c < k; ++c) a[d][c] = 1.0;
  b[d] = 1.0;

  std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
  std::vector<double> atb(k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int r = 0; r <= d; ++r) ata[i][j] += a[r][i] * a[r][j];
  for (int i = 0; i < k; ++i)
    for (int r = 0; r <= d; ++r) atb[i] += a[r][i] * b[r];

  AffineSolution out;
  out.weights = solve_linear(std::move(ata), std::move(atb));
  double res = 0;
  for (int r = 0; r < d; ++r) {
    double rec = 0;
    for (int c = 0; c < k; ++c) rec += out.weights[c] * vertices[c][r];
    res += (rec - x[r]) * (rec - x[r]);
  }
  out.residual = std::sqrt(res);
  return out;
}

inline bool simplex_contains(const std::vector<spd::Point>& vertices, const spd::Point& x,
                             double tol = 1e-9) {
  const AffineSolution sol = affine_coordinates(vertices, x);
  if (sol.residual > tol) return false;
  for (double w : sol.weights)
    if (w < -tol) return false;
  return true;
}

// Distance from p to the hyperplane through the given points, via the
// nullspace of the edge matrix.
inline double hyperplane_distance(const spd::Point& p, const std::vector<spd::Point>& plane) {
  const int d = static_cast<int>(p.size());
  std::vector<std::vector<double>> m;
  for (std::size_t t = 1; t < plane.size(); ++t) {
    std::vector<double> row(d);
    for (int k = 0; k < d; ++k) row[k] = plane[t][k] - plane[0][k];
    m.push_back(std::move(row));
  }
  // Nullspace by elimination with a free column set to 1.
  const int rows = static_cast<int>(m.size());
  std::vector<int> pivot_col(rows, -1);
  int r = 0;
  for (int c = 0; c < d && r < rows; ++c) {
    int best = r;
    for (int i = r; i < rows; ++i)
      if (std::abs(m[i][c]) > std::abs(m[best][c])) best = i;
    if (std::abs(m[best][c]) < 1e-12) continue;
    std::swap(m[r], m[best]);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = m[i][c] / m[r][c];
      for (int k = c; k < d; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col[r++] = c;
  }
  std::vector<char> is_pivot(d, 0);
  for (int i = 0; i < r; ++i) is_pivot[pivot_col[i]] = 1;
  int free_col = 0;
  while (free_col < d && is_pivot[free_col]) ++free_col;
  std::vector<double> n(d, 0.0);
  n[free_col] = 1.0;
  for (int i = r - 1; i >= 0; --i) {
    const int c = pivot_col[i];
    double s = 0;
    for (int k = c + 1; k < d; ++k) s += m[i][k] * n[k];
    n[c] = -s / m[i][c];
  }
  double dot = 0, norm = 0;
  for (int k = 0; k < d; ++k) {
    dot += n[k] * (p[k] - plane[0][k]);
    norm += n[k] * n[k];
  }
  return std::abs(dot) / std::sqrt(norm);
}

inline double euclid(const spd::Point& a, const spd::Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace oracles
