#include "spd/featurize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace spd {

namespace {

double sum_abs_pow(const std::map<LatticeVertex, double, BasisLess>& entries, double p) {
  double s = 0;
  for (const auto& [v, value] : entries) s += p == 1.0 ? std::abs(value) : std::pow(std::abs(value), p);
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

}  // namespace

FeatureVector vectorize(const BasisConfig& config, const SignedDiagram& diagram) {
  if (!(diagram.pair == config.tri.pair))
    throw std::invalid_argument("diagram pair does not match the basis pair");
  FeatureVector out{config, std::map<LatticeVertex, double, BasisLess>(BasisLess{config.z()}), 0, 1, 0, 0};

  // Fixed summation order: point, then layer, then local vertex.
  for (const WeightedPoint& wp : diagram.points) {
    {
      // Window-truncation metadata: does the layer-0 star of this point leave
      // the rafter window?
      const SimplexRef ref0 = locate_simplex(config.tri, 0, wp.x);
      std::int64_t star_norm = 0;
      for (const auto& coords : ref0.vertex_coords())
        for (std::int64_t c : coords) star_norm = std::max(star_norm, std::abs(c));
      if (star_norm > config.rafter_radius) {
        ++out.window_escapes;
        out.escaped_mass += std::abs(wp.weight) * config.tri.pair.distance_to_a(wp.x);
      }
    }
    for (int n = 0; n <= config.max_layer; ++n) {
      const double peak = kernel_peak(config, n);
      for (const FaceVertex& fv : face_vertices(config.tri, n, wp.x)) {
        if (fv.in_a || fv.weight <= 0) continue;
        if (config.kind == BasisKind::Plain && fv.vertex.layer != n) continue;
        if (!config.indexer->in_window(fv.vertex)) continue;
        const double contribution =
            config.kind == BasisKind::Plain
                ? wp.weight * fv.weight * peak
                : wp.weight * fv.weight * peak * stacked_scale_factor(config, fv.vertex);
        out.entries[fv.vertex] += contribution;
      }
    }
  }
  out.norm = sum_abs_pow(out.entries, 1.0);
  return out;
}

double l1_distance(const FeatureVector& a, const FeatureVector& b) {
  if (!a.config.same_basis(b.config))
    throw std::invalid_argument("feature vectors come from different bases");
  double s = 0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  const BasisLess less{a.config.z()};
  while (ia != a.entries.end() || ib != b.entries.end()) {
    if (ib == b.entries.end() || (ia != a.entries.end() && less(ia->first, ib->first))) {
      s += std::abs(ia->second);
      ++ia;
    } else if (ia == a.entries.end() || less(ib->first, ia->first)) {
      s += std::abs(ib->second);
      ++ib;
    } else {
      s += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return s;
}

double tail_bound(const BasisConfig& config, const SignedDiagram& diagram, int expansion_cap) {
  const double tail = config.schedule.tail(config.max_layer);
  if (tail == 0.0) return 0.0;
  const double w1 = diagram_norm(diagram, expansion_cap);
  return std::sqrt(2.0 * config.dimension()) * tail * w1;
}

FeatureMatrix batch_vectorize(const BasisConfig& config, const std::vector<SignedDiagram>& diagrams) {
  for (const SignedDiagram& d : diagrams)
    if (!(d.pair == config.tri.pair))
      throw std::invalid_argument("diagram pair does not match the basis pair");

  FeatureMatrix out;
  out.config = config;
  out.rows = diagrams.size();
  out.cols = config.indexer->count();
  out.values.assign(out.rows * out.cols, 0.0);

  std::vector<FeatureVector> rows(diagrams.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t r = next.fetch_add(1); r < diagrams.size(); r = next.fetch_add(1))
      rows[r] = vectorize(config, diagrams[r]);
  };
  if (diagrams.size() > 1 && workers > 1) {
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  } else {
    work();
  }

  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [v, value] : rows[r].entries)
      out.values[r * out.cols + config.indexer->index_of(v)] = value;
  return out;
}

FeatureVector embed_lp(const FeatureVector& vec, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("embed_lp requires p >= 1");
  FeatureVector out = vec;
  out.norm_exponent = p;
  out.norm = sum_abs_pow(vec.entries, p);
  return out;
}

}  // namespace spd
