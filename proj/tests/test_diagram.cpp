#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "spd/diagram.hpp"

using namespace spd;

namespace {

const double kSqrt2 = std::sqrt(2.0);

SignedDiagram diag(const PolyhedralPair& pair, std::vector<WeightedPoint> pts) {
  return make_diagram(pair, std::move(pts));
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

TEST_CASE("csv parsing: weight then coordinates") {
  const PolyhedralPair half = half_plane_pair();
  const SignedDiagram d = parse_diagram(half, "1,0,2\n", DiagramFormat::Csv);
  REQUIRE(d.points.size() == 1);
  CHECK(d.points[0].x == Point{0, 2});
  CHECK(d.points[0].weight == 1.0);

  // unicode minus, higher-dimensional pair
  const PolyhedralPair rect = rectangle_pair(2);
  const SignedDiagram neg = parse_diagram(rect, "\xe2\x88\x92" "1,1,1,2,3\n", DiagramFormat::Csv);
  REQUIRE(neg.points.size() == 1);
  CHECK(neg.points[0].x == Point{1, 1, 2, 3});
  CHECK(neg.points[0].weight == -1.0);

  const SignedDiagram plus = parse_diagram(half, "+1,0,2\n", DiagramFormat::Csv);
  CHECK(plus.points[0].weight == 1.0);

  CHECK_THROWS_WITH_AS(parse_diagram(half, "1,3,1\n", DiagramFormat::Csv),
                       doctest::Contains("row 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_diagram(half, "1,0,2\n1,zebra,3\n", DiagramFormat::Csv),
                       doctest::Contains("row 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_diagram(half, "1,0,2,9\n", DiagramFormat::Csv), std::invalid_argument);
}

TEST_CASE("jsonl parsing") {
  const PolyhedralPair half = half_plane_pair();
  const SignedDiagram d =
      parse_diagram(half, "{\"w\": 2, \"x\": [0, 1]}\n{\"w\": -1, \"x\": [1, 3]}\n",
                    DiagramFormat::Jsonl);
  REQUIRE(d.points.size() == 2);
  CHECK(d.points[0].weight == 2.0);
  CHECK(d.points[1].x == Point{1, 3});
  CHECK_THROWS_WITH_AS(parse_diagram(half, "{\"w\": 1}\n", DiagramFormat::Jsonl),
                       doctest::Contains("row 1"), std::invalid_argument);
}

TEST_CASE("A-points and zero weights are dropped at construction") {
  const PolyhedralPair half = half_plane_pair();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(diag(half, {{{0, inf}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(diag(half, {{{0, 1}, std::nan("")}}), std::invalid_argument);
  const SignedDiagram d = diag(half, {{{1, 1}, 1.0}, {{0, 2}, 0.0}, {{0, 3}, 2.0}});
  REQUIRE(d.points.size() == 1);
  CHECK(d.points[0].x == Point{0, 3});
  CHECK_THROWS_AS(diag(half, {{{2, 1}, 1.0}}), std::domain_error);
}

TEST_CASE("rectangle barcodes map to (a, b) points and drop flat bars") {
  std::vector<RectangleBar> bars{{{0, 0}, {1, 2}, 1}, {{0, 1}, {0, 3}, 1}};
  const SignedDiagram d = from_rectangles(2, bars);
  REQUIRE(d.points.size() == 1);  // the flat bar (a1 = b1) is ephemeral
  CHECK(d.points[0].x == Point{0, 0, 1, 2});
  CHECK(d.points[0].weight == 1.0);
  REQUIRE(d.bars.size() == 1);
  CHECK(d.bars[0].a == std::vector<double>{0, 0});

  // d = 1 specializes to ordinary persistence bars
  const SignedDiagram bars1 = from_rectangles(1, {{{1}, {3}, 1}, {{2}, {4}, 1}});
  REQUIRE(bars1.points.size() == 2);
  CHECK(bars1.points[0].x == Point{1, 3});
  CHECK(bars1.points[1].x == Point{2, 4});

  CHECK_THROWS_AS(from_rectangles(2, {{{1, 0}, {0, 2}, 1}}), std::invalid_argument);

  const SignedDiagram parsed = parse_rectangles_json(
      "{\"d\": 2, \"bars\": [{\"a\": [0, 0], \"b\": [1, 2], \"sign\": -1}]}");
  REQUIRE(parsed.points.size() == 1);
  CHECK(parsed.points[0].weight == -1.0);
}

TEST_CASE("mixup triples live on the mixup pair") {
  const SignedDiagram d = from_mixup({{0.2, 1.0, std::sqrt(3.0)}, {0.2, 1.5, 1.5}});
  REQUIRE(d.points.size() == 1);  // zero-mixup triple dropped
  CHECK(d.points[0].x == Point{0.2, 1.0, std::sqrt(3.0)});
  CHECK_THROWS_AS(from_mixup({{1.0, 0.5, 2.0}}), std::invalid_argument);

  const SignedDiagram parsed = parse_mixup_csv("0.2,1,1.5\n");
  REQUIRE(parsed.points.size() == 1);
  CHECK_THROWS_WITH_AS(parse_mixup_csv("1,0.5,2\n"), doctest::Contains("row 1"),
                       std::invalid_argument);
}

TEST_CASE("wasserstein1 worked examples") {
  const PolyhedralPair half = half_plane_pair();
  const SignedDiagram a = diag(half, {{{0, 2}, 1.0}});
  CHECK(wasserstein1(a, empty_diagram(half)) == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(wasserstein1(a, a) == doctest::Approx(0.0).epsilon(1e-12));

  const SignedDiagram b = diag(half, {{{0.5, 2}, 1.0}});
  // direct cost 0.5 beats the double-diagonal route 2/sqrt2 + 1.5/sqrt2
  CHECK(wasserstein1(a, b) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(wasserstein1(diag(half, {{{0, 2}, 0.5}}), a), std::invalid_argument);
}

TEST_CASE("brute force enumeration worked examples") {
  const PolyhedralPair half = half_plane_pair();
  CHECK(wasserstein1_bruteforce(empty_diagram(half), empty_diagram(half)) == 0.0);

  const SignedDiagram a = diag(half, {{{0, 1}, 1.0}, {{0, 2}, 1.0}});
  const SignedDiagram b = diag(half, {{{0, 1}, 1.0}});
  CHECK(wasserstein1_bruteforce(a, b) == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(wasserstein1(a, b) == doctest::Approx(kSqrt2).epsilon(1e-12));
}

TEST_CASE("solver equals brute force on random instances") {
  oracles::Rng rng(51);
  const std::vector<PolyhedralPair> pairs{half_plane_pair(), mixup_pair(), rectangle_pair(2)};
  for (int t = 0; t < 150; ++t) {
    const PolyhedralPair& pair = pairs[t % pairs.size()];
    SignedDiagram a, b;
    for (;;) {
      a = sample(pair, 4, rng);
      b = sample(pair, 4, rng);
      int left = 0, right = 0;
      for (const auto& p : a.points) (p.weight > 0 ? left : right) += 1;
      for (const auto& p : b.points) (p.weight > 0 ? right : left) += 1;
      if (left <= 5 && right <= 5) break;
    }
    CHECK(wasserstein1(a, b) == doctest::Approx(wasserstein1_bruteforce(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("degenerate instances with repeated points and cost ties") {
  const PolyhedralPair half = half_plane_pair();
  const Point x{0, 2}, y{1, 4};

  const SignedDiagram a = diag(half, {{x, 1.0}, {x, 1.0}, {y, 1.0}});
  const SignedDiagram b = diag(half, {{x, 1.0}, {y, 1.0}, {y, 1.0}});
  CHECK(wasserstein1(a, b) == doctest::Approx(wasserstein1_bruteforce(a, b)).epsilon(1e-12));
  CHECK(wasserstein1(a, a) == doctest::Approx(0.0).epsilon(1e-12));

  // a point equidistant from its two candidates
  const SignedDiagram c = diag(half, {{{0.5, 2.5}, 1.0}});
  const SignedDiagram d2 = diag(half, {{{0, 2}, 1.0}, {{1, 3}, 1.0}});
  CHECK(wasserstein1(c, d2) == doctest::Approx(wasserstein1_bruteforce(c, d2)).epsilon(1e-12));

  // matching to A exactly ties with the direct route
  const SignedDiagram e = diag(half, {{{0, 2 + 2 * kSqrt2}, 1.0}});
  const SignedDiagram f = diag(half, {{{0, 2}, 1.0}});
  // direct cost 2*sqrt2 equals d_A(e) + d_A(f) = (sqrt2 + 2) + ... pick brute force as truth
  CHECK(wasserstein1(e, f) == doctest::Approx(wasserstein1_bruteforce(e, f)).epsilon(1e-12));
}

TEST_CASE("wasserstein1 is a pseudometric") {
  oracles::Rng rng(53);
  const PolyhedralPair pair = half_plane_pair();
  for (int t = 0; t < 200; ++t) {
    const SignedDiagram a = sample(pair, 3, rng);
    const SignedDiagram b = sample(pair, 3, rng);
    const SignedDiagram c = sample(pair, 3, rng);
    const double ab = wasserstein1(a, b), ba = wasserstein1(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
    CHECK(ab <= wasserstein1(a, c) + wasserstein1(c, b) + 1e-9);
    CHECK(ab >= -1e-12);
  }
}

TEST_CASE("quotient invariance: A points and cancelling pairs do not matter") {
  oracles::Rng rng(57);
  const PolyhedralPair pair = half_plane_pair();
  for (int t = 0; t < 100; ++t) {
    const SignedDiagram a = sample(pair, 3, rng);
    const SignedDiagram b = sample(pair, 3, rng);
    const double base = wasserstein1(a, b);

    SignedDiagram a_padded = a;
    // a point of A (dropped on construction) plus a cancelling +/- pair
    const Point x = oracles::sample_point(pair, 0.0, 4.0, rng);
    std::vector<WeightedPoint> pts = a.points;
    pts.push_back(WeightedPoint{{1.5, 1.5}, 1.0});
    pts.push_back(WeightedPoint{x, 1.0});
    pts.push_back(WeightedPoint{x, -1.0});
    a_padded = make_diagram(pair, std::move(pts));
    CHECK(wasserstein1(a_padded, b) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("diagram_norm worked examples") {
  const PolyhedralPair half = half_plane_pair();

  // unsigned diagrams must send every point to the diagonal
  const SignedDiagram u = diag(half, {{{0, 1}, 1.0}, {{2, 5}, 1.0}});
  CHECK(diagram_norm(u) == doctest::Approx(u.total_persistence()).epsilon(1e-12));

  const SignedDiagram cancel = diag(half, {{{0, 2}, 1.0}, {{0, 2}, -1.0}});
  CHECK(diagram_norm(cancel) == doctest::Approx(0.0).epsilon(1e-12));

  const SignedDiagram mixed = diag(half, {{{0, 2}, 1.0}, {{0.5, 2}, -1.0}});
  CHECK(diagram_norm(mixed) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("flat-rectangle perturbation moves the norm by at most eps per bar") {
  oracles::Rng rng(59);
  for (int t = 0; t < 50; ++t) {
    std::vector<RectangleBar> bars;
    const int n = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < n; ++i) {
      const double a0 = rng.uniform(0, 2), a1 = rng.uniform(0, 2);
      const double b0 = a0 + (rng.below(3) == 0 ? 0.0 : rng.uniform(0, 2));
      const double b1 = a1 + rng.uniform(0, 2);
      bars.push_back(RectangleBar{{a0, a1}, {b0, b1}, 1});
    }
    const double eps = 1e-3;
    std::vector<RectangleBar> perturbed = bars;
    for (RectangleBar& bar : perturbed) bar.b[0] += eps;

    const SignedDiagram before = from_rectangles(2, bars);
    const SignedDiagram after = from_rectangles(2, perturbed);
    const double delta = std::abs(diagram_norm(after) - diagram_norm(before));
    CHECK(delta <= eps * bars.size() + 1e-9);
  }
}

TEST_CASE("matching output covers every reduced point exactly once") {
  const PolyhedralPair half = half_plane_pair();
  const SignedDiagram a = diag(half, {{{0, 2}, 1.0}, {{1, 4}, -1.0}});
  const SignedDiagram b = diag(half, {{{0.5, 2}, 1.0}});
  const MatchingResult m = wasserstein1_matching(a, b);
  CHECK(m.cost == doctest::Approx(wasserstein1(a, b)).epsilon(1e-12));
  CHECK(m.left.size() == 1);   // a+ = {(0,2)}
  CHECK(m.right.size() == 2);  // b+ + a- = {(0.5,2), (1,4)}
  std::vector<int> left_seen(m.left.size(), 0), right_seen(m.right.size(), 0);
  for (const MatchEdge& e : m.edges) {
    if (e.from >= 0) ++left_seen[e.from];
    if (e.to >= 0) ++right_seen[e.to];
  }
  for (int c : left_seen) CHECK(c == 1);
  for (int c : right_seen) CHECK(c == 1);
}

TEST_CASE("integer multiplicities expand into copies") {
  const PolyhedralPair half = half_plane_pair();
  const SignedDiagram two = diag(half, {{{0, 2}, 2.0}});
  const SignedDiagram one = diag(half, {{{0, 2}, 1.0}});
  CHECK(wasserstein1(two, one) == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(wasserstein1_bruteforce(two, one) == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(diagram_norm(two) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
}

TEST_CASE("expansion cap rejects oversized instances") {
  const PolyhedralPair half = half_plane_pair();
  const SignedDiagram a = diag(half, {{{0, 2}, 150.0}});
  CHECK_THROWS_AS(wasserstein1(a, empty_diagram(half), 100), std::invalid_argument);
  CHECK(wasserstein1(a, empty_diagram(half)) == doctest::Approx(150.0 * kSqrt2).epsilon(1e-9));
}
