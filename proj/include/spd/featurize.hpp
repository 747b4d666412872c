#pragma once

#include "spd/basis.hpp"

namespace spd {

// Sparse vectorization F_B(alpha): one entry per basis vertex with nonzero
// evaluation, keyed by vertex identity in basis order. norm caches the l_p
// norm of the entries (p = 1 after vectorize; embed_lp re-marks it).
struct FeatureVector {
  BasisConfig config;
  std::map<LatticeVertex, double, BasisLess> entries;
  double norm = 0;
  double norm_exponent = 1;

  // Window-truncation metadata: diagram points whose layer-0 star leaves the
  // rafter window, and their total weighted A-distance.
  int window_escapes = 0;
  double escaped_mass = 0;
};

FeatureVector vectorize(const BasisConfig&, const SignedDiagram&);

// l1 distance between two feature vectors over the same basis.
double l1_distance(const FeatureVector&, const FeatureVector&);

// Upper bound on the l1 mass lost to the layer truncation, sqrt(2d) times the
// schedule tail times W1(alpha, empty); needs integer weights.
double tail_bound(const BasisConfig&, const SignedDiagram&, int expansion_cap = 2000);

// Dense row-major matrix over the full window index range, rows in input
// order; rows are computed in parallel but the output is deterministic.
struct FeatureMatrix {
  BasisConfig config;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

FeatureMatrix batch_vectorize(const BasisConfig&, const std::vector<SignedDiagram>&);

// Identity on entries (l1 is contained in every l_p, p >= 1); re-caches the
// norm as the l_p norm so downstream kernels can work in Hilbert space.
FeatureVector embed_lp(const FeatureVector&, double p);

}  // namespace spd
