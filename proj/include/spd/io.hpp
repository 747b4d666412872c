#pragma once

#include <string>

#include "spd/featurize.hpp"

namespace spd {

// JSON interchange forms. Pair specs use 1-based indices:
//   {"dimension": d, "relations": [[i,j],...], "essential": [[i,j],...]}

std::string pair_to_json(const PolyhedralPair&);
PolyhedralPair pair_from_json(std::string_view text);

std::string basis_config_to_json(const BasisConfig&);

// {"config": {...}, "entries": {"idx": value}, "l1": float} plus the window
// truncation metadata.
std::string features_to_sparse_json(const FeatureVector&);

// One dense CSV row over the full window index range, and a sidecar JSON
// mapping column -> {layer, coords}.
std::string features_to_dense_csv(const FeatureVector&);
std::string dense_columns_json(const BasisConfig&);
std::string matrix_to_dense_csv(const FeatureMatrix&);

// {index: value} with the basis config embedded for reproducibility.
std::string coefficients_to_json(const CoefficientMap&);

std::string matching_to_json(const MatchingResult&);

// Plot-data export: one record per diagram point with the ordered segment
// lengths |entries of F_B(delta_point)| and their basis index labels; for
// barcode-sourced points the (a, b) endpoints and tower orientation are
// included (positive up, negative down).
std::string viz_bundle_json(const BasisConfig&, const SignedDiagram&);

// Exported vertex lists for debugging: JSON array of {layer, coords}.
std::string vertices_to_json(const std::vector<LatticeVertex>&);

}  // namespace spd
