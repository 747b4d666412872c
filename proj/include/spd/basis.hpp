#pragma once

#include <functional>
#include <map>
#include <memory>

#include "spd/diagram.hpp"
#include "spd/triangulation.hpp"

namespace spd {

// Per-layer Lipschitz constants: L_0 = l0, L_n = a * rho^n for n >= 1, so the
// total and every tail sum have closed forms.
struct LipschitzSchedule {
  double l0 = 1.0;
  double a = 1.0;
  double rho = 0.5;

  bool operator==(const LipschitzSchedule&) const = default;

  double at(int n) const;
  double total() const;               // sum over all layers
  double tail(int after_layer) const;  // sum over layers > after_layer

  static LipschitzSchedule geometric(double l0, double rho);
  // L_0 = total - eps, L_n = eps * 2^-n: the tightness schedule.
  static LipschitzSchedule front_loaded(double total, double eps);
};

enum class BasisKind { Plain, Stacked };

struct BasisConfig {
  TriangulationConfig tri;
  LipschitzSchedule schedule;
  int max_layer = 6;
  int rafter_radius = 8;
  BasisKind kind = BasisKind::Plain;
  std::shared_ptr<BasisIndexer> indexer;  // shared across copies of the config

  int dimension() const { return tri.pair.dimension; }
  int z() const { return tri.z; }
  bool same_basis(const BasisConfig& other) const;
};

BasisConfig make_basis(TriangulationConfig tri, LipschitzSchedule schedule, int max_layer,
                       int rafter_radius, BasisKind kind);
// The stacked construction hard-codes Lip(K_v^n) = z^-n.
BasisConfig make_stacked_basis(TriangulationConfig tri, int max_layer, int rafter_radius);

// K_v(v) = L_n * z^-n / sqrt(2): the CFK minimal vertex-to-opposite-hyperplane
// distance is z^-n / sqrt(2) at every vertex.
double kernel_peak(const BasisConfig&, int layer);

// The n-linear hat at v with Lip L_n: barycentric weight of x at v in its
// minimal T^n face, times kernel_peak(n). Requires n >= layer(v).
double eval_kernel(const BasisConfig&, const LatticeVertex& v, int scale_index,
                   std::span<const double> x);

// Stacked functional, truncated at max_layer:
//   sqrt(2) d(v,A) (z^2-1)/z^2 * sum_{n=layer(v)}^{max_layer} K_v^n(x).
double eval_stacked(const BasisConfig&, const LatticeVertex& v, std::span<const double> x);

// Truncated peak d(v,A) z^-2N (1 - z^-2(max_layer-N+1)); the full-series value
// d(v,A)/z^2N minus the closed-form geometric tail.
double stacked_peak(const BasisConfig&, const LatticeVertex& v);
double stacked_scale_factor(const BasisConfig&, const LatticeVertex& v);

// All window vertices whose stacked functional is nonzero at x.
std::vector<LatticeVertex> stacked_support(const BasisConfig&, std::span<const double> x);

struct CoefficientMap {
  BasisConfig config;
  std::map<LatticeVertex, double, BasisLess> entries;
};

// A functional supplied as an evaluation callback with a declared Lipschitz
// constant; must vanish on A.
struct LipschitzFunctional {
  std::function<double(std::span<const double>)> eval;
  double lipschitz = 1.0;
  double sup_abs = 0.0;  // bound on |f|, used by the stacked error chain
};

// Schauder coefficients a_v = (f(v) - f^(n-1)(v)) / K_v(v) for the plain
// basis; f^(n-1)(v) is the (n-1)-linear interpolation of f.
CoefficientMap schauder_coefficients(const BasisConfig&, const LipschitzFunctional& f);

// Iterative coefficients for the stacked basis; the running partial sums are
// not piecewise linear, so each new layer is evaluated against the already
// computed coefficients.
CoefficientMap stacked_coefficients(const BasisConfig&, const LipschitzFunctional& f);

// Partial sum through coefficient layers <= through_layer (negative: all).
// For the stacked basis, kernel_layer_cap truncates the inner kernel stack as
// well (negative: the config's max_layer); the hat-truncated sums of the
// stacked error chain use kernel_layer_cap == through_layer.
double eval_expansion(const CoefficientMap&, std::span<const double> x, int through_layer = -1,
                      int kernel_layer_cap = -1);

// Weighted diagram beta != delta_v that agrees with delta_v against every
// basis functional except K_v, built by descending through the minimal
// simplices of v at the coarser layers.
SignedDiagram minimality_witness(const BasisConfig&, const LatticeVertex& v);

// Per-layer counts of basis functionals nonzero at x (at most d+1 each).
std::vector<int> support_counts(const BasisConfig&, std::span<const double> x);

// Sum of Lipschitz constants of all basis functionals nonzero at x, truncated
// at max_layer; bounded by (d+1) * sum L_n.
double lipschitz_budget(const BasisConfig&, std::span<const double> x);

}  // namespace spd
