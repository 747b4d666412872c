#include "spd/basis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace spd {

namespace {

const double kSqrt2 = std::sqrt(2.0);

LatticeVertex require_basis_vertex(const BasisConfig& config, const LatticeVertex& v) {
  if (!is_canonical(config.tri, v)) throw std::invalid_argument("vertex is not canonical");
  for (auto [i, j] : config.tri.pair.essential)
    if (v.coords[i] == v.coords[j]) throw std::invalid_argument("vertex lies in A");
  for (auto [i, j] : config.tri.pair.relations)
    if (v.coords[i] > v.coords[j]) throw std::domain_error("vertex outside X");
  return v;
}

// Rescales v to the lattice of T^n; requires n >= layer(v).
std::vector<std::int64_t> coords_at_scale(const BasisConfig& config, const LatticeVertex& v,
                                          int scale_index) {
  if (scale_index < v.layer)
    throw std::invalid_argument("kernel layer below the vertex's birth layer");
  const std::int64_t m = ipow(config.z(), scale_index - v.layer);
  std::vector<std::int64_t> out(v.coords.size());
  for (std::size_t i = 0; i < v.coords.size(); ++i) out[i] = v.coords[i] * m;
  return out;
}

// Probes that must vanish for a functional claimed to be zero on A: ascending
// sequences with the [i..j] span flattened land on the essential hyperplanes.
void check_vanishes_on_a(const BasisConfig& config, const LipschitzFunctional& f) {
  const int d = config.dimension();
  const double r = static_cast<double>(config.rafter_radius);
  for (auto [i, j] : config.tri.pair.essential) {
    for (double t : {-0.5, 0.0, 0.375}) {
      Point x(d);
      for (int k = 0; k < d; ++k) x[k] = t * r + 0.25 * k;
      for (int k = i; k <= j; ++k) x[k] = x[i];
      if (std::abs(f.eval(x)) > 1e-9)
        throw std::invalid_argument("functional does not vanish on A");
    }
  }
}

}  // namespace

double LipschitzSchedule::at(int n) const {
  if (n < 0) throw std::invalid_argument("layer must be nonnegative");
  return n == 0 ? l0 : a * std::pow(rho, n);
}

double LipschitzSchedule::total() const { return l0 + a * rho / (1.0 - rho); }

double LipschitzSchedule::tail(int after_layer) const {
  if (after_layer < 0) return total();
  const int n = std::max(after_layer, 0);
  return a * std::pow(rho, n + 1) / (1.0 - rho);
}

LipschitzSchedule LipschitzSchedule::geometric(double l0, double rho) {
  if (!(l0 > 0) || !(rho > 0) || !(rho < 1))
    throw std::invalid_argument("geometric schedule needs l0 > 0 and 0 < rho < 1");
  return LipschitzSchedule{l0, l0, rho};
}

LipschitzSchedule LipschitzSchedule::front_loaded(double total, double eps) {
  if (!(eps > 0) || !(eps < total))
    throw std::invalid_argument("front-loaded schedule needs 0 < eps < total");
  return LipschitzSchedule{total - eps, eps, 0.5};
}

bool BasisConfig::same_basis(const BasisConfig& other) const {
  return tri == other.tri && schedule == other.schedule && max_layer == other.max_layer &&
         rafter_radius == other.rafter_radius && kind == other.kind;
}

BasisConfig make_basis(TriangulationConfig tri, LipschitzSchedule schedule, int max_layer,
                       int rafter_radius, BasisKind kind) {
  if (max_layer < 0) throw std::invalid_argument("max_layer must be nonnegative");
  if (rafter_radius < 1) throw std::invalid_argument("rafter radius must be >= 1");
  if (!(schedule.l0 > 0) || !(schedule.a > 0) || !(schedule.rho > 0) || !(schedule.rho < 1))
    throw std::invalid_argument("schedule must have positive layers and a convergent tail");
  if (kind == BasisKind::Stacked) {
    const LipschitzSchedule fixed = LipschitzSchedule::geometric(1.0, 1.0 / tri.z);
    if (!(schedule == fixed))
      throw std::invalid_argument("the stacked basis fixes the schedule to L_n = z^-n");
  }
  BasisConfig config;
  config.tri = std::move(tri);
  config.schedule = schedule;
  config.max_layer = max_layer;
  config.rafter_radius = rafter_radius;
  config.kind = kind;
  config.indexer = std::make_shared<BasisIndexer>(config.tri, max_layer, rafter_radius);
  return config;
}

BasisConfig make_stacked_basis(TriangulationConfig tri, int max_layer, int rafter_radius) {
  const LipschitzSchedule schedule = LipschitzSchedule::geometric(1.0, 1.0 / tri.z);
  return make_basis(std::move(tri), schedule, max_layer, rafter_radius, BasisKind::Stacked);
}

double kernel_peak(const BasisConfig& config, int layer) {
  if (layer < 0) throw std::invalid_argument("layer must be nonnegative");
  return config.schedule.at(layer) / (static_cast<double>(ipow(config.z(), layer)) * kSqrt2);
}

double eval_kernel(const BasisConfig& config, const LatticeVertex& v, int scale_index,
                   std::span<const double> x) {
  require_basis_vertex(config, v);
  const std::vector<std::int64_t> target = coords_at_scale(config, v, scale_index);
  const SimplexRef ref = locate_simplex(config.tri, scale_index, x);
  const auto coords = ref.vertex_coords();
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (coords[t] == target) {
      const double w = barycentric(config.tri, ref, x)[t];
      return w * kernel_peak(config, scale_index);
    }
  }
  return 0.0;
}

double stacked_scale_factor(const BasisConfig& config, const LatticeVertex& v) {
  const double z2 = static_cast<double>(config.z()) * config.z();
  const double da = config.tri.pair.distance_to_a(vertex_point(config.tri, v));
  return kSqrt2 * da * (z2 - 1.0) / z2;
}

double stacked_peak(const BasisConfig& config, const LatticeVertex& v) {
  require_basis_vertex(config, v);
  const double da = config.tri.pair.distance_to_a(vertex_point(config.tri, v));
  const double z2n = static_cast<double>(ipow(config.z(), v.layer));
  const double ideal = da / (z2n * z2n);
  const double tail_ratio = std::pow(1.0 / (static_cast<double>(config.z()) * config.z()),
                                     config.max_layer - v.layer + 1);
  return ideal * (1.0 - tail_ratio);
}

double eval_stacked(const BasisConfig& config, const LatticeVertex& v, std::span<const double> x) {
  require_basis_vertex(config, v);
  double sum = 0;
  for (int n = v.layer; n <= config.max_layer; ++n) {
    const std::vector<std::int64_t> target = coords_at_scale(config, v, n);
    const SimplexRef ref = locate_simplex(config.tri, n, x);
    const auto coords = ref.vertex_coords();
    for (std::size_t t = 0; t < coords.size(); ++t) {
      if (coords[t] == target) {
        sum += barycentric(config.tri, ref, x)[t] * kernel_peak(config, n);
        break;
      }
    }
  }
  return stacked_scale_factor(config, v) * sum;
}

std::vector<LatticeVertex> stacked_support(const BasisConfig& config, std::span<const double> x) {
  std::set<LatticeVertex, BasisLess> seen{BasisLess{config.z()}};
  for (int n = 0; n <= config.max_layer; ++n)
    for (const FaceVertex& fv : face_vertices(config.tri, n, x))
      if (!fv.in_a && fv.weight > 0 && config.indexer->in_window(fv.vertex)) seen.insert(fv.vertex);
  return {seen.begin(), seen.end()};
}

CoefficientMap schauder_coefficients(const BasisConfig& config, const LipschitzFunctional& f) {
  if (config.kind != BasisKind::Plain)
    throw std::invalid_argument("schauder_coefficients requires a plain basis");
  check_vanishes_on_a(config, f);
  CoefficientMap out{config, std::map<LatticeVertex, double, BasisLess>(BasisLess{config.z()})};
  for (int n = 0; n <= config.max_layer; ++n) {
    const double peak = kernel_peak(config, n);
    for (const LatticeVertex& v : enumerate_vertices(config.tri, n, config.rafter_radius)) {
      const Point pv = vertex_point(config.tri, v);
      double interp = 0;
      if (n > 0)
        for (const FaceVertex& fv : face_vertices(config.tri, n - 1, pv))
          if (!fv.in_a) interp += fv.weight * f.eval(vertex_point(config.tri, fv.vertex));
      const double a = (f.eval(pv) - interp) / peak;
      if (a != 0.0) out.entries.emplace(v, a);
    }
  }
  return out;
}

CoefficientMap stacked_coefficients(const BasisConfig& config, const LipschitzFunctional& f) {
  if (config.kind != BasisKind::Stacked)
    throw std::invalid_argument("stacked_coefficients requires a stacked basis");
  check_vanishes_on_a(config, f);
  CoefficientMap out{config, std::map<LatticeVertex, double, BasisLess>(BasisLess{config.z()})};
  for (int n = 0; n <= config.max_layer; ++n) {
    // Stacked functionals of layer n vanish at the other layer-n vertices, so
    // the whole layer is filled from the running sum below it.
    for (const LatticeVertex& v : enumerate_vertices(config.tri, n, config.rafter_radius)) {
      const Point pv = vertex_point(config.tri, v);
      const double running = n == 0 ? 0.0 : eval_expansion(out, pv, n - 1);
      const double a = (f.eval(pv) - running) / stacked_peak(config, v);
      if (a != 0.0) out.entries.emplace(v, a);
    }
  }
  return out;
}

double eval_expansion(const CoefficientMap& coeffs, std::span<const double> x, int through_layer,
                      int kernel_layer_cap) {
  const BasisConfig& config = coeffs.config;
  const int coef_cap = through_layer < 0 ? config.max_layer : std::min(through_layer, config.max_layer);
  double sum = 0;
  if (config.kind == BasisKind::Plain) {
    for (int n = 0; n <= coef_cap; ++n) {
      const double peak = kernel_peak(config, n);
      for (const FaceVertex& fv : face_vertices(config.tri, n, x)) {
        if (fv.in_a || fv.vertex.layer != n) continue;
        auto it = coeffs.entries.find(fv.vertex);
        if (it != coeffs.entries.end()) sum += it->second * fv.weight * peak;
      }
    }
    return sum;
  }
  const int k_cap = kernel_layer_cap < 0 ? config.max_layer
                                         : std::min(kernel_layer_cap, config.max_layer);
  for (int n = 0; n <= k_cap; ++n) {
    const double peak = kernel_peak(config, n);
    for (const FaceVertex& fv : face_vertices(config.tri, n, x)) {
      if (fv.in_a || fv.vertex.layer > coef_cap) continue;
      auto it = coeffs.entries.find(fv.vertex);
      if (it != coeffs.entries.end())
        sum += it->second * stacked_scale_factor(config, fv.vertex) * fv.weight * peak;
    }
  }
  return sum;
}

SignedDiagram minimality_witness(const BasisConfig& config, const LatticeVertex& v) {
  require_basis_vertex(config, v);
  if (v.layer > config.max_layer) throw std::invalid_argument("vertex beyond max_layer");
  const Point pv = vertex_point(config.tri, v);

  std::map<LatticeVertex, double, BasisLess> weights{BasisLess{config.z()}};
  auto beta_eval = [&](const LatticeVertex& u) {
    double s = 0;
    for (const auto& [w, c] : weights)
      s += c * eval_kernel(config, u, u.layer, vertex_point(config.tri, w));
    return s;
  };

  // Descend through the minimal simplices of v at the coarser scales; each
  // stage corrects all its non-A vertices simultaneously. Same-or-lower layer
  // kernels vanish at each other's vertices, so layer-m equalities become
  // final once stage m has run.
  for (int s = v.layer - 1; s >= 0; --s) {
    std::vector<std::pair<LatticeVertex, double>> updates;
    for (const FaceVertex& fv : face_vertices(config.tri, s, pv)) {
      if (fv.in_a) continue;
      const double target = eval_kernel(config, fv.vertex, fv.vertex.layer, pv);
      const double delta = (target - beta_eval(fv.vertex)) / kernel_peak(config, fv.vertex.layer);
      updates.emplace_back(fv.vertex, delta);
    }
    for (const auto& [u, delta] : updates) weights[u] += delta;
  }

  std::vector<WeightedPoint> points;
  for (const auto& [u, c] : weights) points.push_back(WeightedPoint{vertex_point(config.tri, u), c});
  return make_diagram(config.tri.pair, std::move(points));
}

std::vector<int> support_counts(const BasisConfig& config, std::span<const double> x) {
  std::vector<int> counts(config.max_layer + 1, 0);
  for (int n = 0; n <= config.max_layer; ++n)
    for (const FaceVertex& fv : face_vertices(config.tri, n, x))
      if (!fv.in_a && fv.vertex.layer == n && fv.weight > 0) ++counts[n];
  return counts;
}

double lipschitz_budget(const BasisConfig& config, std::span<const double> x) {
  if (config.kind == BasisKind::Plain) {
    const std::vector<int> counts = support_counts(config, x);
    double budget = 0;
    for (int n = 0; n <= config.max_layer; ++n) budget += counts[n] * config.schedule.at(n);
    return budget;
  }
  double budget = 0;
  const double z = config.z();
  for (const LatticeVertex& v : stacked_support(config, x)) {
    const double geo = (std::pow(1.0 / z, v.layer) - std::pow(1.0 / z, config.max_layer + 1)) /
                       (1.0 - 1.0 / z);
    budget += stacked_scale_factor(config, v) * geo;
  }
  return budget;
}

}  // namespace spd
