#include "spd/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace spd::checks {

namespace {

const double kSqrt2 = std::sqrt(2.0);

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  std::uint64_t below(std::uint64_t n) { return gen() % n; }
};

Point sample_point(const PolyhedralPair& pair, double lo, double hi, Rng& rng) {
  Point x(pair.dimension);
  for (;;) {
    for (double& c : x) c = rng.uniform(lo, hi);
    if (pair.contains(x)) return x;
  }
}

SignedDiagram sample_diagram(const PolyhedralPair& pair, int max_points, double lo, double hi,
                             Rng& rng, bool signed_weights) {
  std::vector<WeightedPoint> points;
  const int n = static_cast<int>(rng.below(max_points + 1));
  for (int i = 0; i < n; ++i) {
    WeightedPoint p;
    p.x = sample_point(pair, lo, hi, rng);
    p.weight = signed_weights && rng.below(2) == 0 ? -1.0 : 1.0;
    points.push_back(std::move(p));
  }
  return make_diagram(pair, std::move(points));
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string describe(double max_violation, const std::string& extra = "") {
  std::ostringstream os;
  os << "max violation " << max_violation;
  if (!extra.empty()) os << "; " << extra;
  return os.str();
}

// ---------------------------------------------------------------------------
// Small dense linear algebra for the brute-force oracles (independent of the
// closed forms they check).

// One nonzero solution of M n = 0 for a (d-1) x d matrix of full row rank.
std::vector<double> nullspace_vector(std::vector<std::vector<double>> m, int d) {
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
    pivot_col[r] = c;
    ++r;
  }
  std::vector<char> is_pivot(d, 0);
  for (int i = 0; i < r; ++i) is_pivot[pivot_col[i]] = 1;
  int free_col = -1;
  for (int c = 0; c < d; ++c)
    if (!is_pivot[c]) { free_col = c; break; }
  std::vector<double> n(d, 0.0);
  n[free_col] = 1.0;
  for (int i = r - 1; i >= 0; --i) {
    const int c = pivot_col[i];
    double s = 0;
    for (int k = c + 1; k < d; ++k) s += m[i][k] * n[k];
    n[c] = -s / m[i][c];
  }
  return n;
}

double point_hyperplane_distance(const Point& p, const std::vector<Point>& plane_points) {
  const int d = static_cast<int>(p.size());
  std::vector<std::vector<double>> m;
  for (std::size_t t = 1; t < plane_points.size(); ++t) {
    std::vector<double> row(d);
    for (int k = 0; k < d; ++k) row[k] = plane_points[t][k] - plane_points[0][k];
    m.push_back(std::move(row));
  }
  const std::vector<double> n = nullspace_vector(std::move(m), d);
  double dot = 0, norm = 0;
  for (int k = 0; k < d; ++k) {
    dot += n[k] * (p[k] - plane_points[0][k]);
    norm += n[k] * n[k];
  }
  return std::abs(dot) / std::sqrt(norm);
}

// Minimum, over all d-simplices of T^n that contain the vertex, of the
// distance from the vertex to the hyperplane spanned by its opposite face.
double min_opposite_face_distance(const TriangulationConfig& tri, const Point& vertex, int n) {
  const int d = tri.pair.dimension;
  const double scale = 1.0 / static_cast<double>(ipow(tri.z, n));
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  double best = std::numeric_limits<double>::infinity();
  do {
    for (int pos = 0; pos <= d; ++pos) {
      // vertex sits at position pos of the Freudenthal chain
      Point v0 = vertex;
      for (int j = 0; j < pos; ++j) v0[perm[j]] -= scale;
      std::vector<Point> verts(d + 1, v0);
      bool ok = tri.pair.contains(v0);
      for (int t = 1; t <= d && ok; ++t) {
        verts[t] = verts[t - 1];
        verts[t][perm[t - 1]] += scale;
        ok = tri.pair.contains(verts[t]);
      }
      if (!ok) continue;
      std::vector<Point> opposite;
      for (int t = 0; t <= d; ++t)
        if (t != pos) opposite.push_back(verts[t]);
      best = std::min(best, point_hyperplane_distance(verts[pos], opposite));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Suite 1: CFK stability constant sqrt(2d) L.

CheckResult check_stability(std::uint64_t seed, std::uint64_t trials) {
  Timer timer;
  const std::uint64_t n_trials = trials ? trials : 1000;
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const BasisConfig basis =
      make_basis(tri, LipschitzSchedule::geometric(1.0, 0.5), 6, 8, BasisKind::Plain);
  const double bound_factor = std::sqrt(2.0 * basis.dimension()) * basis.schedule.total();

  Rng rng(seed);
  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    const SignedDiagram a = sample_diagram(tri.pair, 6, 0.0, 6.0, rng, true);
    const SignedDiagram b = sample_diagram(tri.pair, 6, 0.0, 6.0, rng, true);
    const double lhs = l1_distance(vectorize(basis, a), vectorize(basis, b));
    const double rhs = bound_factor * wasserstein1(a, b) + tail_bound(basis, a) +
                       tail_bound(basis, b) + 1e-9;
    max_violation = std::max(max_violation, lhs - rhs);
    if (lhs > rhs) ++violations;
  }
  CheckResult out{"stability",
                  "CFK stability: |F(a)-F(b)|_1 <= sqrt(2d) L W1(a,b) + tails + 1e-9",
                  violations == 0,
                  n_trials,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " violations")};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 2: tightness of the sqrt(2d) constant along the odd-gradient
// direction inside a single scale-1 simplex.

CheckResult check_tightness(std::uint64_t seed, std::uint64_t trials) {
  (void)seed;
  (void)trials;
  Timer timer;
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const double eps = 1e-3;
  const double total = LipschitzSchedule::geometric(1.0, 0.5).total();  // L = 2 at z = 2
  const LipschitzSchedule schedule = LipschitzSchedule::front_loaded(total, eps);
  const BasisConfig basis = make_basis(tri, schedule, 0, 4, BasisKind::Plain);

  // Simplex <(0,2),(1,2),(1,3)> has all vertices off the diagonal. The layer-0
  // hats restricted to it have gradients (L0/sqrt2) g_p with g_0 + g_1 + g_2 = 0,
  // and moving along the middle gradient realizes the 2 L0 quotient.
  const Point center{2.0 / 3.0, 7.0 / 3.0};
  const double s = 0.1;
  const Point x{center[0] + s / kSqrt2, center[1] - s / kSqrt2};
  const Point y{center[0] - s / kSqrt2, center[1] + s / kSqrt2};
  const double dist = 2.0 * s;

  const SignedDiagram dx = make_diagram(tri.pair, {WeightedPoint{x, 1.0}});
  const SignedDiagram dy = make_diagram(tri.pair, {WeightedPoint{y, 1.0}});
  const double diff = l1_distance(vectorize(basis, dx), vectorize(basis, dy));
  const double required = 2.0 * schedule.l0 * dist - 1e-9;

  CheckResult out{"tightness",
                  "layer-0 feature difference reaches sqrt(2d) L0 |x-y| along the alternating direction",
                  diff >= required,
                  1,
                  required - diff,
                  timer.seconds(),
                  describe(required - diff, "achieved " + std::to_string(diff / dist) +
                                                " per unit distance, bound " +
                                                std::to_string(2.0 * schedule.l0))};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 3: partition identity sum_v stacked_v = d(-, A) up to the closed-form
// geometric truncation tail d(x,A) z^-2(N+1), slack factor 2.

CheckResult check_partition(std::uint64_t seed, std::uint64_t trials) {
  Timer timer;
  const std::uint64_t n_trials = trials ? trials : 200;
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const BasisConfig basis = make_stacked_basis(tri, 8, 8);
  const double tail_ratio =
      std::pow(1.0 / (static_cast<double>(basis.z()) * basis.z()), basis.max_layer + 1);

  Rng rng(seed);
  const double margin = 8.0 - kSqrt2;
  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    const Point x = sample_point(tri.pair, -margin, margin, rng);
    double sum = 0;
    for (const LatticeVertex& v : stacked_support(basis, x)) sum += eval_stacked(basis, v, x);
    const double target = tri.pair.distance_to_a(x);
    const double allowed = 2.0 * target * tail_ratio + 1e-12;
    const double err = std::abs(sum - target);
    max_violation = std::max(max_violation, err - allowed);
    if (err > allowed) ++violations;
  }
  CheckResult out{"partition",
                  "stacked partition identity |sum_v K_v(x) - d(x,A)| within the geometric tail",
                  violations == 0,
                  n_trials,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " violations")};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 4: norm identity |F(alpha)|_1 = W1(alpha, empty) for unsigned input.

CheckResult check_norm(std::uint64_t seed, std::uint64_t trials) {
  Timer timer;
  const std::uint64_t n_trials = trials ? trials : 100;
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const BasisConfig basis = make_stacked_basis(tri, 8, 8);
  const double tail_ratio =
      std::pow(1.0 / (static_cast<double>(basis.z()) * basis.z()), basis.max_layer + 1);

  Rng rng(seed);
  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    std::vector<WeightedPoint> points;
    const int n = static_cast<int>(rng.below(6));
    for (int i = 0; i < n; ++i)
      points.push_back(
          WeightedPoint{sample_point(tri.pair, 0.0, 6.0, rng), rng.below(2) == 0 ? 1.0 : 2.0});
    const SignedDiagram alpha = make_diagram(tri.pair, std::move(points));

    double max_da = 0;
    for (const auto& p : alpha.points) max_da = std::max(max_da, tri.pair.distance_to_a(p.x));
    const double allowed = 2.0 * max_da * tail_ratio * alpha.total_mass() + 1e-9;

    const double l1 = vectorize(basis, alpha).norm;
    const double w1 = wasserstein1(alpha, empty_diagram(tri.pair));
    const double err = std::abs(l1 - w1);
    max_violation = std::max(max_violation, err - allowed);
    if (err > allowed) ++violations;
  }
  CheckResult out{"norm",
                  "stacked norm identity | |F(a)|_1 - W1(a, empty) | within the truncation tail",
                  violations == 0,
                  n_trials,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " violations")};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 5: Schauder reconstruction error |f - f^N|_inf <= Lip(f) M_N.

struct Cone {
  Point center;
  double radius;
  double height;
};

double eval_cones(const std::vector<Cone>& cones, std::span<const double> x) {
  double s = 0;
  for (const Cone& c : cones) {
    double dist = 0;
    for (std::size_t i = 0; i < c.center.size(); ++i)
      dist += (x[i] - c.center[i]) * (x[i] - c.center[i]);
    dist = std::sqrt(dist);
    s += c.height * std::max(0.0, 1.0 - dist / c.radius);
  }
  return s;
}

CheckResult check_reconstruction(std::uint64_t seed, std::uint64_t trials) {
  Timer timer;
  const std::uint64_t n_functionals = trials ? trials : 5;
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const BasisConfig basis =
      make_basis(tri, LipschitzSchedule::geometric(1.0, 0.5), 5, 8, BasisKind::Plain);

  Rng rng(seed);
  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < n_functionals; ++t) {
    std::vector<Cone> cones;
    const int n_cones = t + 1 == n_functionals ? 2 : 1;
    double lip = 0, sup = 0;
    for (int c = 0; c < n_cones; ++c) {
      Cone cone;
      cone.radius = rng.uniform(0.3, 0.8);
      cone.height = rng.uniform(0.5, 2.0);
      // keep the support inside X and away from the diagonal
      for (;;) {
        cone.center = sample_point(tri.pair, 0.5, 5.5, rng);
        if (tri.pair.distance_to_a(cone.center) > cone.radius + 0.05) break;
      }
      lip += cone.height / cone.radius;
      sup += cone.height;
      cones.push_back(std::move(cone));
    }
    LipschitzFunctional f{[cones](std::span<const double> x) { return eval_cones(cones, x); }, lip,
                          sup};
    const CoefficientMap coeffs = schauder_coefficients(basis, f);

    for (int layer = 0; layer <= basis.max_layer; ++layer) {
      const double allowed = lip * mesh_diameter(tri, layer) + 1e-9;
      double worst = 0;
      for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 100; ++j) {
          const Point x{6.0 * i / 99.0, 6.0 * j / 99.0};
          if (!tri.pair.contains(x)) continue;
          worst = std::max(worst, std::abs(f.eval(x) - eval_expansion(coeffs, x, layer)));
        }
      }
      max_violation = std::max(max_violation, worst - allowed);
      if (worst > allowed) ++violations;
    }
  }
  CheckResult out{"reconstruction",
                  "plain partial sums obey |f - f^N|_inf <= Lip(f) M_N on a 100x100 grid",
                  violations == 0,
                  n_functionals,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " grid/layer violations")};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 6: Hungarian solver vs exhaustive matching enumeration.

CheckResult check_wasserstein(std::uint64_t seed, std::uint64_t trials) {
  Timer timer;
  const std::uint64_t n_trials = trials ? trials : 500;
  const std::vector<PolyhedralPair> pairs{half_plane_pair(), mixup_pair(), rectangle_pair(2)};

  Rng rng(seed);
  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    const PolyhedralPair& pair = pairs[t % pairs.size()];
    SignedDiagram a, b;
    for (;;) {
      a = sample_diagram(pair, 4, 0.0, 4.0, rng, true);
      b = sample_diagram(pair, 4, 0.0, 4.0, rng, true);
      int left = 0, right = 0;
      for (const auto& p : a.points) (p.weight > 0 ? left : right) += 1;
      for (const auto& p : b.points) (p.weight > 0 ? right : left) += 1;
      if (left <= 5 && right <= 5) break;  // brute-force cap after sign reduction
    }
    const double fast = wasserstein1(a, b);
    const double brute = wasserstein1_bruteforce(a, b);
    const double err = std::abs(fast - brute);
    max_violation = std::max(max_violation, err - 1e-9);
    if (err > 1e-9) ++violations;
  }
  CheckResult out{"wasserstein",
                  "assignment solver equals exhaustive matching enumeration to 1e-9",
                  violations == 0,
                  n_trials,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " mismatches")};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 7: minimality witness agrees with delta_v everywhere except at v.

CheckResult check_witness(std::uint64_t seed, std::uint64_t trials) {
  Timer timer;
  const std::uint64_t n_vertices = trials ? trials : 20;
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const BasisConfig basis =
      make_basis(tri, LipschitzSchedule::geometric(1.0, 0.5), 3, 3, BasisKind::Plain);

  std::vector<LatticeVertex> all_window;
  for (int m = 0; m <= basis.max_layer; ++m)
    for (const LatticeVertex& v : enumerate_vertices(tri, m, basis.rafter_radius))
      all_window.push_back(v);

  // one candidate pool per layer so every layer 0..2 gets exercised
  std::vector<std::vector<LatticeVertex>> pools(3);
  for (int m = 0; m <= 2; ++m) pools[m] = enumerate_vertices(tri, m, basis.rafter_radius);

  Rng rng(seed);
  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  std::uint64_t used = 0;
  for (std::uint64_t t = 0; t < n_vertices; ++t) {
    const auto& pool = pools[t % pools.size()];
    const LatticeVertex v = pool[rng.below(pool.size())];
    ++used;
    const Point pv = vertex_point(tri, v);
    const SignedDiagram beta = minimality_witness(basis, v);

    for (const LatticeVertex& u : all_window) {
      double beta_eval = 0;
      for (const auto& wp : beta.points) beta_eval += wp.weight * eval_kernel(basis, u, u.layer, wp.x);
      const double delta_eval = eval_kernel(basis, u, u.layer, pv);
      if (u == v) {
        const double sep = std::abs(beta_eval - delta_eval);
        max_violation = std::max(max_violation, 1e-6 - sep);
        if (sep <= 1e-6) ++violations;
      } else {
        const double err = std::abs(beta_eval - delta_eval);
        max_violation = std::max(max_violation, err - 1e-12);
        if (err > 1e-12) ++violations;
      }
    }
  }
  CheckResult out{"witness",
                  "witness matches delta_v on every window index except basis_index(v)",
                  violations == 0,
                  used,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " index mismatches")};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 8: locally-Lipschitz-finite budget, M = (d+1) sum L_n.

CheckResult check_budget(std::uint64_t seed, std::uint64_t trials) {
  Timer timer;
  const std::uint64_t n_trials = trials ? trials : 1000;
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const BasisConfig basis =
      make_basis(tri, LipschitzSchedule::geometric(1.0, 0.5), 6, 8, BasisKind::Plain);

  double partial = 0;
  for (int n = 0; n <= basis.max_layer; ++n) partial += basis.schedule.at(n);
  const double bound = (basis.dimension() + 1) * partial;

  Rng rng(seed);
  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < n_trials; ++t) {
    const Point x = sample_point(tri.pair, 0.0, 6.0, rng);
    const std::vector<int> counts = support_counts(basis, x);
    for (int c : counts) {
      max_violation = std::max(max_violation, static_cast<double>(c - basis.dimension() - 1));
      if (c > basis.dimension() + 1) ++violations;
    }
    const double budget = lipschitz_budget(basis, x);
    max_violation = std::max(max_violation, budget - bound - 1e-12);
    if (budget > bound + 1e-12) ++violations;
  }
  CheckResult out{"budget",
                  "per-layer support <= d+1 and total budget <= (d+1) sum L_n",
                  violations == 0,
                  n_trials,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " violations")};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 9: subset sums of one layer's kernels are sqrt(d/2) L_n Lipschitz.

CheckResult check_subset_lipschitz(std::uint64_t seed, std::uint64_t trials) {
  Timer timer;
  const std::uint64_t n_subsets = trials ? trials : 100;
  const std::uint64_t pairs_per_subset = 10000;

  struct Setup {
    TriangulationConfig tri;
    BasisConfig basis;
    int rafter;
  };
  const TriangulationConfig tri2 = make_triangulation(half_plane_pair(), 2);
  const TriangulationConfig tri3 = make_triangulation(mixup_pair(), 2);
  const std::vector<Setup> setups{
      {tri2, make_basis(tri2, LipschitzSchedule::geometric(1.0, 0.5), 2, 6, BasisKind::Plain), 6},
      {tri3, make_basis(tri3, LipschitzSchedule::geometric(1.0, 0.5), 2, 3, BasisKind::Plain), 3}};

  Rng rng(seed);
  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  for (std::uint64_t s = 0; s < n_subsets; ++s) {
    const Setup& setup = setups[s % setups.size()];
    const int d = setup.tri.pair.dimension;
    const int n = static_cast<int>(rng.below(2));  // triangulation layer of the kernels

    // V^n: all T^n lattice vertices off A inside the window, as coords at scale n.
    std::set<std::vector<std::int64_t>> subset;
    for (int m = 0; m <= n; ++m) {
      const std::int64_t mult = ipow(setup.tri.z, n - m);
      for (const LatticeVertex& v : enumerate_vertices(setup.tri, m, setup.rafter)) {
        if (rng.below(2)) continue;
        std::vector<std::int64_t> at_scale(v.coords.size());
        for (std::size_t i = 0; i < v.coords.size(); ++i) at_scale[i] = v.coords[i] * mult;
        subset.insert(std::move(at_scale));
      }
    }

    const double peak = kernel_peak(setup.basis, n);
    auto eval_subset_sum = [&](const Point& x) {
      const SimplexRef ref = locate_simplex(setup.tri, n, x);
      const std::vector<double> w = barycentric(setup.tri, ref, x);
      const auto coords = ref.vertex_coords();
      double sum = 0;
      for (std::size_t t = 0; t < coords.size(); ++t)
        if (subset.count(coords[t])) sum += w[t] * peak;
      return sum;
    };

    const double bound = std::sqrt(d / 2.0) * setup.basis.schedule.at(n) + 1e-9;
    for (std::uint64_t p = 0; p < pairs_per_subset; ++p) {
      const Point x = sample_point(setup.tri.pair, -setup.rafter, setup.rafter, rng);
      const Point y = sample_point(setup.tri.pair, -setup.rafter, setup.rafter, rng);
      double dist = 0;
      for (int k = 0; k < d; ++k) dist += (x[k] - y[k]) * (x[k] - y[k]);
      dist = std::sqrt(dist);
      if (dist < 1e-9) continue;
      const double quotient = std::abs(eval_subset_sum(x) - eval_subset_sum(y)) / dist;
      max_violation = std::max(max_violation, quotient - bound);
      if (quotient > bound) ++violations;
    }
  }
  CheckResult out{"subset-lipschitz",
                  "empirical Lipschitz quotient of single-layer kernel subsets <= sqrt(d/2) L_n",
                  violations == 0,
                  n_subsets,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " violations")};
  return out;
}

// ---------------------------------------------------------------------------
// Suite 10: kernel peak closed form vs hand values and the incident
// simplex oracle.

CheckResult check_kernel_peak(std::uint64_t seed, std::uint64_t trials) {
  (void)seed;
  (void)trials;
  Timer timer;
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const BasisConfig basis =
      make_basis(tri, LipschitzSchedule::geometric(1.0, 0.5), 6, 8, BasisKind::Plain);

  double max_violation = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  std::uint64_t cases = 0;
  for (int n = 0; n <= 6; ++n) {
    ++cases;
    const double expected = 1.0 / (kSqrt2 * std::pow(4.0, n));
    const double err = std::abs(kernel_peak(basis, n) - expected);
    max_violation = std::max(max_violation, err - 1e-15);
    if (err > 1e-15) ++violations;
  }

  // Brute-force incident-simplex distances at representative vertices.
  const std::vector<std::pair<Point, int>> probes{
      {{2.0, 4.0}, 0}, {{1.0, 2.0}, 0}, {{2.0, 4.5}, 1}, {{2.25, 4.25}, 2}};
  for (const auto& [v, n] : probes) {
    ++cases;
    const double oracle = min_opposite_face_distance(tri, v, n) * basis.schedule.at(n);
    const double err = std::abs(kernel_peak(basis, n) - oracle);
    max_violation = std::max(max_violation, err - 1e-12);
    if (err > 1e-12) ++violations;
  }
  const TriangulationConfig tri3 = make_triangulation(mixup_pair(), 2);
  const BasisConfig basis3 =
      make_basis(tri3, LipschitzSchedule::geometric(1.0, 0.5), 2, 3, BasisKind::Plain);
  {
    ++cases;
    const double oracle = min_opposite_face_distance(tri3, {0.0, 1.0, 2.0}, 0) * basis3.schedule.at(0);
    const double err = std::abs(kernel_peak(basis3, 0) - oracle);
    max_violation = std::max(max_violation, err - 1e-12);
    if (err > 1e-12) ++violations;
  }

  CheckResult out{"kernel-peak",
                  "kernel peak equals 1/(sqrt(2) 4^n) and the incident-simplex oracle",
                  violations == 0,
                  cases,
                  max_violation,
                  timer.seconds(),
                  describe(max_violation, std::to_string(violations) + " mismatches")};
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"stability", "tightness",  "partition", "norm",   "reconstruction",
          "wasserstein", "witness", "budget",    "subset-lipschitz", "kernel-peak"};
}

CheckResult run_suite(const std::string& name, std::uint64_t seed, std::uint64_t trials) {
  if (name == "stability") return check_stability(seed, trials);
  if (name == "tightness") return check_tightness(seed, trials);
  if (name == "partition") return check_partition(seed, trials);
  if (name == "norm") return check_norm(seed, trials);
  if (name == "reconstruction") return check_reconstruction(seed, trials);
  if (name == "wasserstein") return check_wasserstein(seed, trials);
  if (name == "witness") return check_witness(seed, trials);
  if (name == "budget") return check_budget(seed, trials);
  if (name == "subset-lipschitz") return check_subset_lipschitz(seed, trials);
  if (name == "kernel-peak") return check_kernel_peak(seed, trials);
  throw std::invalid_argument("unknown check suite '" + name + "'");
}

std::vector<CheckResult> run_suites(const std::vector<std::string>& names, std::uint64_t seed,
                                    std::uint64_t trials) {
  std::vector<CheckResult> out;
  for (const std::string& name : names) out.push_back(run_suite(name, seed, trials));
  return out;
}

}  // namespace spd::checks
