#include "spd/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spd {

double SignedDiagram::total_mass() const {
  double m = 0;
  for (const auto& p : points) m += std::abs(p.weight);
  return m;
}

double SignedDiagram::total_persistence() const {
  double m = 0;
  for (const auto& p : points) m += std::abs(p.weight) * pair.distance_to_a(p.x);
  return m;
}

SignedDiagram make_diagram(PolyhedralPair pair, std::vector<WeightedPoint> points) {
  SignedDiagram d;
  d.pair = std::move(pair);
  for (auto& p : points) {
    if (!std::isfinite(p.weight) ||
        std::any_of(p.x.begin(), p.x.end(), [](double c) { return !std::isfinite(c); }))
      throw std::invalid_argument("diagram entries must be finite");
    if (!d.pair.contains(p.x)) throw std::domain_error("diagram point outside X");
    if (d.pair.distance_to_a(p.x) == 0.0) continue;  // represents the class of A
    if (p.weight == 0.0) continue;
    d.points.push_back(std::move(p));
  }
  return d;
}

SignedDiagram empty_diagram(PolyhedralPair pair) { return SignedDiagram{std::move(pair), {}, {}}; }

SignedDiagram from_rectangles(int params, const std::vector<RectangleBar>& bars, bool hooks) {
  PolyhedralPair pair = rectangle_pair(params);
  SignedDiagram d;
  d.pair = pair;
  for (std::size_t idx = 0; idx < bars.size(); ++idx) {
    const auto& bar = bars[idx];
    if (static_cast<int>(bar.a.size()) != params || static_cast<int>(bar.b.size()) != params)
      throw std::invalid_argument("bar " + std::to_string(idx) + ": endpoint dimension mismatch");
    if (bar.sign != 1 && bar.sign != -1)
      throw std::invalid_argument("bar " + std::to_string(idx) + ": sign must be +1 or -1");
    Point x(2 * params);
    bool flat = false;
    for (int i = 0; i < params; ++i) {
      if (bar.a[i] > bar.b[i])
        throw std::invalid_argument("bar " + std::to_string(idx) + ": a must be <= b componentwise");
      if (bar.a[i] == bar.b[i]) flat = true;
      x[i] = bar.a[i];
      x[params + i] = bar.b[i];
    }
    if (flat) continue;  // ephemeral: the point lies in Delta^d
    d.points.push_back(WeightedPoint{std::move(x), static_cast<double>(bar.sign)});
    d.bars.push_back(BarSource{bar.a, bar.b, bar.sign, hooks});
  }
  return d;
}

SignedDiagram from_mixup(const std::vector<std::array<double, 3>>& triples) {
  PolyhedralPair pair = mixup_pair();
  std::vector<WeightedPoint> points;
  for (std::size_t idx = 0; idx < triples.size(); ++idx) {
    auto [b, dprime, death] = triples[idx];
    if (!(b <= dprime && dprime <= death))
      throw std::invalid_argument("triple " + std::to_string(idx) + ": requires b <= d' <= d");
    if (dprime == death) continue;  // no mixup: ephemeral
    points.push_back(WeightedPoint{{b, dprime, death}, 1.0});
  }
  return make_diagram(std::move(pair), std::move(points));
}

}  // namespace spd
