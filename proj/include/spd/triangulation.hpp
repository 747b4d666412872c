#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <vector>

#include "spd/polyhedral.hpp"

namespace spd {

// Nested Coxeter-Freudenthal-Kuhn triangulation family: T^n is the CFK
// triangulation of the pair at scale z^-n, S^n its subcomplex inside A.
struct TriangulationConfig {
  PolyhedralPair pair;
  int z = 2;  // refinement ratio between consecutive scales

  bool operator==(const TriangulationConfig&) const = default;
};
TriangulationConfig make_triangulation(PolyhedralPair pair, int z);

// Exact vertex identity: integer lattice coordinates at scale z^-layer.
// Canonical form: layer 0, or not all coordinates divisible by z (otherwise
// the vertex already exists at an earlier layer).
struct LatticeVertex {
  int layer = 0;
  std::vector<std::int64_t> coords;

  bool operator==(const LatticeVertex&) const = default;
};

Point vertex_point(const TriangulationConfig&, const LatticeVertex&);
LatticeVertex canonical_vertex(const TriangulationConfig&, int layer, std::vector<std::int64_t> coords);
bool is_canonical(const TriangulationConfig&, const LatticeVertex&);

// Result of Freudenthal point location: the minimal face of T^n containing a
// point. Vertices are base, then cumulative unit steps along perm, one tie
// group at a time; group_sizes partitions the strictly positive fractional
// parts into levels of equal value, so active_dims() is the face dimension.
struct SimplexRef {
  int scale_index = 0;
  std::vector<std::int64_t> base;
  std::vector<int> perm;         // all dims, sorted by descending fractional part, ties by index
  std::vector<int> group_sizes;  // tie groups with positive fractional part; sum <= d

  int active_dims() const { return static_cast<int>(group_sizes.size()); }
  // The p+1 vertices of the minimal face, as lattice coords at scale z^-n.
  std::vector<std::vector<std::int64_t>> vertex_coords() const;
};

// Freudenthal walk at scale z^-n. Requires pair.contains(x); the located
// face's vertices always lie in X. Coordinates within 1e-12 (at the scaled
// lattice) of a hyperplane are snapped before sorting.
SimplexRef locate_simplex(const TriangulationConfig&, int scale_index, std::span<const double> x);

// Barycentric coordinates of x in the referenced minimal face, one weight per
// vertex, nonnegative and summing to 1. Throws if x is not in the closed face
// (any weight < -1e-12 or a tie group with inconsistent fractional parts).
std::vector<double> barycentric(const TriangulationConfig&, const SimplexRef&, std::span<const double> x);

struct VertexClass {
  enum Kind { Layer, InA, NotAVertex } kind = NotAVertex;
  int layer = -1;
};

// Minimal n with point in z^-n Z^d, InA on an essential equality, NotAVertex
// past the layer cap (non-dyadic input guard).
VertexClass vertex_layer(const TriangulationConfig&, std::span<const double> x, int layer_cap = 48);

// All canonical layer-n vertices in X \ A with |point|_inf <= rafter_radius,
// in lexicographic coordinate order.
std::vector<LatticeVertex> enumerate_vertices(const TriangulationConfig&, int layer, int rafter_radius);

// One vertex of the minimal face of T^n containing a query point, with the
// point's barycentric weight there. Vertices inside A carry no canonical
// vertex identity.
struct FaceVertex {
  LatticeVertex vertex;  // canonical form; meaningful only when !in_a
  double weight = 0;
  bool in_a = false;
};
std::vector<FaceVertex> face_vertices(const TriangulationConfig&, int scale_index,
                                      std::span<const double> x);

// sqrt(d) * z^-n: diameter of the scaled standard simplex.
double mesh_diameter(const TriangulationConfig&, int scale_index);

// Rafter shell index N with N-1 < |point|_inf <= N (N >= 1).
int rafter_of(const TriangulationConfig&, const LatticeVertex&);

// Basis order: blocks B^(M,N) of layer-M vertices in rafter N, enumerated by
// anti-diagonals (B^(M,N) is followed by B^(M+1,N-1) when N > 1, else by
// B^(0,N+1)); inside a block, lexicographic by coordinates.
struct BasisLess {
  int z = 2;
  bool operator()(const LatticeVertex& a, const LatticeVertex& b) const;
};

// Bijection between the window's canonical vertices (layer <= max_layer,
// rafter <= rafter_radius) and contiguous 0-based indices, in basis order.
// Block counts and ranks are computed by lattice scans and cached; all
// methods are safe for concurrent use.
class BasisIndexer {
 public:
  BasisIndexer(TriangulationConfig tri, int max_layer, int rafter_radius);

  const TriangulationConfig& triangulation() const { return tri_; }
  int max_layer() const { return max_layer_; }
  int rafter_radius() const { return rafter_radius_; }

  std::uint64_t index_of(const LatticeVertex&) const;
  LatticeVertex vertex_at(std::uint64_t index) const;
  std::uint64_t count() const;

  std::uint64_t block_size(int layer, int rafter) const;
  void for_each_in_block(int layer, int rafter,
                         const std::function<void(const LatticeVertex&)>&) const;
  // True when the vertex falls inside the configured window.
  bool in_window(const LatticeVertex&) const;

 private:
  std::uint64_t block_offset(int layer, int rafter) const;
  std::uint64_t rank_in_block(const LatticeVertex&, int rafter) const;

  TriangulationConfig tri_;
  int max_layer_ = 0;
  int rafter_radius_ = 0;

  mutable std::mutex mutex_;
  mutable std::vector<std::int64_t> block_counts_;  // (max_layer+1) x rafter_radius, -1 = unknown
};

std::int64_t ipow(std::int64_t base, int exp);

}  // namespace spd
