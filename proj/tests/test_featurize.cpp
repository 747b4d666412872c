#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spd/featurize.hpp"

using namespace spd;

namespace {

const double kSqrt2 = std::sqrt(2.0);

BasisConfig plain_basis(int max_layer = 4, int rafter = 6) {
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  return make_basis(tri, LipschitzSchedule::geometric(1.0, 0.5), max_layer, rafter,
                    BasisKind::Plain);
}

SignedDiagram sample(const PolyhedralPair& pair, int max_pts, oracles::Rng& rng,
                     bool signed_weights = true) {
  std::vector<WeightedPoint> pts;
  const int n = static_cast<int>(rng.below(max_pts + 1));
  for (int i = 0; i < n; ++i)
    pts.push_back(WeightedPoint{oracles::sample_point(pair, 0.0, 4.0, rng),
                                signed_weights && rng.below(2) == 0 ? -1.0 : 1.0});
  return make_diagram(pair, std::move(pts));
}

}  // namespace

TEST_CASE("the empty diagram maps to the zero vector") {
  const BasisConfig basis = plain_basis();
  const FeatureVector fv = vectorize(basis, empty_diagram(basis.tri.pair));
  CHECK(fv.entries.empty());
  CHECK(fv.norm == 0.0);
}

TEST_CASE("a Dirac at a layer-0 vertex matches per-index direct evaluation") {
  const BasisConfig basis = plain_basis(2, 3);
  const Point w{1, 2};
  const double weight = 2.0;
  const FeatureVector fv =
      vectorize(basis, make_diagram(basis.tri.pair, {WeightedPoint{w, weight}}));

  for (int m = 0; m <= basis.max_layer; ++m) {
    for (const LatticeVertex& v : enumerate_vertices(basis.tri, m, basis.rafter_radius)) {
      const double expected = weight * eval_kernel(basis, v, v.layer, w);
      const auto it = fv.entries.find(v);
      const double got = it == fv.entries.end() ? 0.0 : it->second;
      CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("stacked entries match direct stacked evaluation at every window index") {
  const BasisConfig basis = make_stacked_basis(make_triangulation(half_plane_pair(), 2), 3, 3);
  const SignedDiagram alpha = make_diagram(
      basis.tri.pair, {WeightedPoint{{0.3, 1.7}, 2.0}, WeightedPoint{{-0.75, 0.5}, -1.0}});
  const FeatureVector fv = vectorize(basis, alpha);
  for (int m = 0; m <= basis.max_layer; ++m) {
    for (const LatticeVertex& v : enumerate_vertices(basis.tri, m, basis.rafter_radius)) {
      double expected = 0;
      for (const auto& wp : alpha.points) expected += wp.weight * eval_stacked(basis, v, wp.x);
      const auto it = fv.entries.find(v);
      const double got = it == fv.entries.end() ? 0.0 : it->second;
      CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("stacked l1 norm approaches W1 to the empty diagram") {
  const BasisConfig basis = make_stacked_basis(make_triangulation(half_plane_pair(), 2), 10, 6);
  const SignedDiagram alpha = make_diagram(basis.tri.pair, {WeightedPoint{{0, 2}, 1.0}});
  const FeatureVector fv = vectorize(basis, alpha);
  const double tail = kSqrt2 * std::pow(2.0, -2.0 * (basis.max_layer + 1));
  CHECK(std::abs(fv.norm - kSqrt2) <= tail + 1e-12);
  CHECK(fv.norm == doctest::Approx(wasserstein1(alpha, empty_diagram(basis.tri.pair)))
                       .epsilon(1e-6));
}

TEST_CASE("tail_bound closed forms") {
  const BasisConfig basis = plain_basis(4, 8);
  CHECK(tail_bound(basis, empty_diagram(basis.tri.pair)) == 0.0);

  const SignedDiagram alpha = make_diagram(basis.tri.pair, {WeightedPoint{{0, 2}, 1.0}});
  // sqrt(2*2) * (sum_{n>=5} 2^-n) * sqrt(2) = 2 * (1/16) * sqrt(2)
  CHECK(tail_bound(basis, alpha) == doctest::Approx(2.0 * kSqrt2 / 16.0).epsilon(1e-12));
}

TEST_CASE("stacked tail_bound dominates the actual truncation error") {
  const BasisConfig basis = make_stacked_basis(make_triangulation(half_plane_pair(), 2), 4, 8);
  oracles::Rng rng(97);
  for (int t = 0; t < 50; ++t) {
    const SignedDiagram alpha = sample(basis.tri.pair, 4, rng, false);  // unsigned
    const double l1 = vectorize(basis, alpha).norm;
    const double w1 = wasserstein1(alpha, empty_diagram(basis.tri.pair));
    CHECK(std::abs(l1 - w1) <= tail_bound(basis, alpha) + 1e-9);
  }
}

TEST_CASE("stacked budget vanishes on A and stays finite inside") {
  const BasisConfig basis = make_stacked_basis(make_triangulation(half_plane_pair(), 2), 4, 4);
  CHECK(lipschitz_budget(basis, Point{1.5, 1.5}) == 0.0);
  oracles::Rng rng(101);
  for (int t = 0; t < 50; ++t) {
    const Point x = oracles::sample_point(basis.tri.pair, -2.0, 2.0, rng);
    const double budget = lipschitz_budget(basis, x);
    CHECK(budget >= 0.0);
    CHECK(std::isfinite(budget));
    if (basis.tri.pair.distance_to_a(x) > 0.5) CHECK(budget > 0.0);
  }
}

TEST_CASE("vectorize is linear in the diagram") {
  const BasisConfig basis = plain_basis();
  oracles::Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    const SignedDiagram a = sample(basis.tri.pair, 4, rng);
    const SignedDiagram b = sample(basis.tri.pair, 4, rng);
    SignedDiagram both = a;
    both.points.insert(both.points.end(), b.points.begin(), b.points.end());

    const FeatureVector fa = vectorize(basis, a);
    const FeatureVector fb = vectorize(basis, b);
    const FeatureVector fboth = vectorize(basis, both);
    for (const auto& [v, value] : fboth.entries) {
      const double va = fa.entries.count(v) ? fa.entries.at(v) : 0.0;
      const double vb = fb.entries.count(v) ? fb.entries.at(v) : 0.0;
      CHECK(value == doctest::Approx(va + vb).epsilon(1e-12));
    }

    SignedDiagram neg = a;
    for (auto& p : neg.points) p.weight = -p.weight;
    const FeatureVector fneg = vectorize(basis, neg);
    for (const auto& [v, value] : fa.entries) CHECK(fneg.entries.at(v) == -value);
  }
}

TEST_CASE("points of A and zero-weight points never change the output") {
  const BasisConfig basis = plain_basis();
  const SignedDiagram a =
      make_diagram(basis.tri.pair, {WeightedPoint{{0, 2}, 1.0}, WeightedPoint{{1, 3.5}, -1.0}});
  std::vector<WeightedPoint> padded = a.points;
  padded.push_back(WeightedPoint{{2.25, 2.25}, 5.0});  // in A
  padded.push_back(WeightedPoint{{0.5, 3}, 0.0});      // zero weight
  const SignedDiagram b = make_diagram(basis.tri.pair, std::move(padded));
  CHECK(l1_distance(vectorize(basis, a), vectorize(basis, b)) == 0.0);
}

TEST_CASE("generic and CFK stability bounds on sampled pairs") {
  const BasisConfig basis = plain_basis(5, 8);
  const double L = basis.schedule.total();
  const int d = basis.dimension();
  oracles::Rng rng(67);
  for (int t = 0; t < 100; ++t) {
    const SignedDiagram a = sample(basis.tri.pair, 5, rng);
    const SignedDiagram b = sample(basis.tri.pair, 5, rng);
    const double dist = l1_distance(vectorize(basis, a), vectorize(basis, b));
    const double w1 = wasserstein1(a, b);
    const double tails = tail_bound(basis, a) + tail_bound(basis, b);
    CHECK(dist <= std::sqrt(2.0 * d) * L * w1 + tails + 1e-9);   // CFK constant
    CHECK(dist <= 2.0 * (d + 1) * L * w1 + tails + 1e-9);        // generic l.l.f. constant
  }
}

TEST_CASE("vectors of well-separated distinct diagrams stay apart") {
  const BasisConfig basis = plain_basis(4, 6);
  const double sep = 2.0 * std::pow(2.0, -basis.max_layer);
  oracles::Rng rng(71);
  int tested = 0;
  while (tested < 500) {
    // diagrams of distinct points, pairwise separated and away from A
    std::vector<WeightedPoint> pts;
    const int n = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < n; ++i) {
      for (;;) {
        Point x = oracles::sample_point(basis.tri.pair, 0.0, 4.0, rng);
        if (basis.tri.pair.distance_to_a(x) < 2.0 * sep) continue;
        bool far = true;
        for (const auto& p : pts)
          if (oracles::euclid(p.x, x) < 2.0 * sep) far = false;
        if (!far) continue;
        pts.push_back(WeightedPoint{std::move(x), 1.0});
        break;
      }
    }
    const SignedDiagram a = make_diagram(basis.tri.pair, pts);
    std::vector<WeightedPoint> moved = pts;
    moved.back().x[1] += sep;
    if (!basis.tri.pair.contains(moved.back().x)) continue;
    const SignedDiagram b = make_diagram(basis.tri.pair, std::move(moved));
    CHECK(l1_distance(vectorize(basis, a), vectorize(basis, b)) > 0.0);
    ++tested;
  }
}

TEST_CASE("batch vectorization equals the sequential path and is linear") {
  const BasisConfig basis = plain_basis(2, 3);
  oracles::Rng rng(73);
  std::vector<SignedDiagram> diagrams;
  for (int i = 0; i < 100; ++i) diagrams.push_back(sample(basis.tri.pair, 4, rng));
  // one empty diagram gives one zero row
  diagrams.push_back(empty_diagram(basis.tri.pair));

  const FeatureMatrix matrix = batch_vectorize(basis, diagrams);
  CHECK(matrix.rows == diagrams.size());
  CHECK(matrix.cols == basis.indexer->count());

  for (std::size_t r = 0; r < diagrams.size(); ++r) {
    const FeatureVector fv = vectorize(basis, diagrams[r]);
    std::vector<double> dense(matrix.cols, 0.0);
    for (const auto& [v, value] : fv.entries) dense[basis.indexer->index_of(v)] = value;
    for (std::size_t c = 0; c < matrix.cols; ++c) CHECK(matrix.at(r, c) == dense[c]);
  }
  for (std::size_t c = 0; c < matrix.cols; ++c) CHECK(matrix.at(diagrams.size() - 1, c) == 0.0);

  // row additivity on a stacked pair of diagrams
  SignedDiagram both = diagrams[0];
  both.points.insert(both.points.end(), diagrams[1].points.begin(), diagrams[1].points.end());
  const FeatureMatrix sum = batch_vectorize(basis, {diagrams[0], diagrams[1], both});
  for (std::size_t c = 0; c < sum.cols; ++c)
    CHECK(sum.at(0, c) + sum.at(1, c) == doctest::Approx(sum.at(2, c)).epsilon(1e-12));
}

TEST_CASE("embed_lp keeps entries and re-caches the norm") {
  const BasisConfig basis = plain_basis(2, 3);
  const SignedDiagram alpha =
      make_diagram(basis.tri.pair, {WeightedPoint{{0, 2}, 1.0}, WeightedPoint{{1, 3}, -2.0}});
  const FeatureVector fv = vectorize(basis, alpha);

  const FeatureVector same = embed_lp(fv, 1.0);
  CHECK(same.norm == doctest::Approx(fv.norm).epsilon(1e-15));
  CHECK(same.entries == fv.entries);

  const FeatureVector l2 = embed_lp(fv, 2.0);
  double expected = 0;
  for (const auto& [v, value] : fv.entries) expected += value * value;
  CHECK(l2.norm == doctest::Approx(std::sqrt(expected)).epsilon(1e-12));
  CHECK(l2.norm <= fv.norm + 1e-12);

  oracles::Rng rng(79);
  for (int t = 0; t < 100; ++t) {
    const FeatureVector r = vectorize(basis, sample(basis.tri.pair, 4, rng));
    CHECK(embed_lp(r, 2.0).norm <= r.norm + 1e-12);
  }
  CHECK_THROWS_AS(embed_lp(fv, 0.5), std::invalid_argument);
}

TEST_CASE("window escape metadata counts points whose layer-0 star leaves the window") {
  const TriangulationConfig tri = make_triangulation(half_plane_pair(), 2);
  const BasisConfig tight = make_basis(tri, LipschitzSchedule::geometric(1.0, 0.5), 2, 2,
                                       BasisKind::Plain);
  const SignedDiagram inside = make_diagram(tri.pair, {WeightedPoint{{0.25, 0.75}, 1.0}});
  CHECK(vectorize(tight, inside).window_escapes == 0);

  const SignedDiagram outside = make_diagram(tri.pair, {WeightedPoint{{1.5, 2.5}, 1.0}});
  const FeatureVector fv = vectorize(tight, outside);
  CHECK(fv.window_escapes == 1);
  CHECK(fv.escaped_mass ==
        doctest::Approx(tri.pair.distance_to_a(Point{1.5, 2.5})).epsilon(1e-12));
}

TEST_CASE("pair mismatch is rejected") {
  const BasisConfig basis = plain_basis(2, 2);
  const SignedDiagram wrong = from_mixup({{0.0, 0.5, 1.0}});
  CHECK_THROWS_AS(vectorize(basis, wrong), std::invalid_argument);
}
