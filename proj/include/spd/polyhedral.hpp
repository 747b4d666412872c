#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spd {

using Point = std::vector<double>;
using IndexPair = std::pair<int, int>;

// Polyhedron X = {x : x_i <= x_j for all (i,j) in relations} together with the
// ephemeral locus A = union over the essential relations of {x : x_i = x_j}.
// Indices are stored 0-based; the JSON interchange form is 1-based.
struct PolyhedralPair {
  int dimension = 0;
  std::vector<IndexPair> relations;
  std::vector<IndexPair> essential;

  bool operator==(const PolyhedralPair&) const = default;

  bool contains(std::span<const double> x) const;

  // d(x, A) = min over essential (i,j) of (x_j - x_i)/sqrt(2).
  // The projection onto {x_i = x_j} sets both coordinates to their mean and
  // stays inside X for order-relation polyhedra, so this closed form is exact.
  // Requires contains(x).
  double distance_to_a(std::span<const double> x) const;

  bool in_a(std::span<const double> x) const;
};

// Validates and builds a pair from 1-based index pairs (the interchange form).
// Rejects: empty essential set, indices out of [1, d], i >= j, essential
// relations not present in the relation set.
PolyhedralPair validate_pair(int dimension, std::vector<IndexPair> relations_1based,
                             std::vector<IndexPair> essential_1based);

// (R^2_<=, Delta): 1-parameter persistence diagrams above the diagonal.
PolyhedralPair half_plane_pair();

// (R^3_{<=,<=}, Delta^M): mixup triples (b, d', d), ephemerals on the plane y = z.
PolyhedralPair mixup_pair();

// (R^(2d)_<=, Delta^d): d-parameter rectangle/hook barcodes mapped to
// (a_1..a_d, b_1..b_d); relations and ephemerals are x_i <= x_(i+d).
PolyhedralPair rectangle_pair(int params);

}  // namespace spd
