#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "spd/polyhedral.hpp"

namespace spd {

struct WeightedPoint {
  Point x;
  double weight = 1.0;
};

// Provenance of a point that came from a rectangle or hook barcode entry,
// kept so visualizations can draw the segment between a and b.
struct BarSource {
  std::vector<double> a, b;
  int sign = 1;
  bool hook = false;
};

// Finite weighted sum of points of X, considered modulo A: points at zero
// distance to A are dropped at construction. Weights may be real; the
// Wasserstein routines additionally require them to be integral.
struct SignedDiagram {
  PolyhedralPair pair;
  std::vector<WeightedPoint> points;
  std::vector<BarSource> bars;  // aligned with points when built from a barcode, else empty

  double total_mass() const;         // sum |w|
  double total_persistence() const;  // sum |w| * d(x, A)
};

SignedDiagram make_diagram(PolyhedralPair pair, std::vector<WeightedPoint> points);
SignedDiagram empty_diagram(PolyhedralPair pair);

enum class DiagramFormat { Csv, Jsonl };

// CSV rows "weight,c1,...,cd"; JSONL rows {"w": w, "x": [c1,...,cd]}.
// Parse errors carry the 1-based row number.
SignedDiagram parse_diagram(const PolyhedralPair& pair, std::string_view text, DiagramFormat format);

struct RectangleBar {
  std::vector<double> a, b;  // a <= b componentwise
  int sign = 1;
};

// Rectangle/hook barcode over d parameters, mapped onto (R^(2d)_<=, Delta^d):
// each bar becomes the point (a_1..a_d, b_1..b_d); flat bars land in A and
// are dropped. Hooks use the identical encoding; the flag is only recorded.
SignedDiagram from_rectangles(int params, const std::vector<RectangleBar>& bars, bool hooks = false);

// Mixup triples (b, d', d) with b <= d' <= d on (R^3_{<=,<=}, Delta^M);
// zero-mixup triples (d' = d) are dropped.
SignedDiagram from_mixup(const std::vector<std::array<double, 3>>& triples);

// Mixup CSV rows "b,dprime,d".
SignedDiagram parse_mixup_csv(std::string_view text);

// Rectangle barcode JSON {"d": int, "bars": [{"a": [..], "b": [..], "sign": s}],
// "hooks": bool (optional)}.
SignedDiagram parse_rectangles_json(std::string_view text);

struct MatchEdge {
  int from = -1;  // index into the left reduced unsigned diagram, -1 = A
  int to = -1;    // index into the right reduced unsigned diagram, -1 = A
};

struct MatchingResult {
  double cost = 0;
  std::vector<MatchEdge> edges;
  std::vector<Point> left, right;  // the reduced unsigned point lists the edges refer to
};

// Exact 1-Wasserstein distance between signed diagrams: signs are reduced via
// W1(a+ + b-, b+ + a-), integer weights are expanded, and the unsigned
// problem is solved exactly by an assignment solver on the diagonal-augmented
// cost matrix with real-real cost min(|x-y|, d_A(x)+d_A(y)).
double wasserstein1(const SignedDiagram& a, const SignedDiagram& b, int expansion_cap = 2000);
MatchingResult wasserstein1_matching(const SignedDiagram& a, const SignedDiagram& b,
                                     int expansion_cap = 2000);

// Exhaustive enumeration over all partial matchings, diagonal assignments
// included. Test oracle; at most 5 points per side after reduction.
double wasserstein1_bruteforce(const SignedDiagram& a, const SignedDiagram& b);

// |alpha| = W1(alpha+, alpha-) = W1(alpha, empty).
double diagram_norm(const SignedDiagram& a, int expansion_cap = 2000);

}  // namespace spd
