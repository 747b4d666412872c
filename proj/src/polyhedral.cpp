#include "spd/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace spd {

namespace {

void require_dimension(const PolyhedralPair& pair, std::span<const double> x) {
  if (static_cast<int>(x.size()) != pair.dimension)
    throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                " does not match pair dimension " + std::to_string(pair.dimension));
}

}  // namespace

bool PolyhedralPair::contains(std::span<const double> x) const {
  require_dimension(*this, x);
  for (auto [i, j] : relations)
    if (!(x[i] <= x[j])) return false;
  return true;
}

double PolyhedralPair::distance_to_a(std::span<const double> x) const {
  if (!contains(x)) throw std::domain_error("point outside X");
  double best = std::numeric_limits<double>::infinity();
  for (auto [i, j] : essential) best = std::min(best, (x[j] - x[i]) / std::sqrt(2.0));
  return best;
}

bool PolyhedralPair::in_a(std::span<const double> x) const {
  require_dimension(*this, x);
  for (auto [i, j] : essential)
    if (x[i] == x[j]) return true;
  return false;
}

PolyhedralPair validate_pair(int dimension, std::vector<IndexPair> relations_1based,
                             std::vector<IndexPair> essential_1based) {
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  if (essential_1based.empty()) throw std::invalid_argument("essential relation set must be nonempty");

  auto check = [&](const IndexPair& r) {
    auto [i, j] = r;
    if (i < 1 || j < 1 || i > dimension || j > dimension)
      throw std::invalid_argument("relation index out of range: (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") with d=" + std::to_string(dimension));
    if (i >= j)
      throw std::invalid_argument("relation must have i < j, got (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
  };
  for (const auto& r : relations_1based) check(r);
  for (const auto& r : essential_1based) check(r);

  std::set<IndexPair> rel(relations_1based.begin(), relations_1based.end());
  for (const auto& r : essential_1based)
    if (!rel.count(r))
      throw std::invalid_argument("essential relation (" + std::to_string(r.first) + "," +
                                  std::to_string(r.second) + ") is not in the relation set");
  std::set<IndexPair> ess(essential_1based.begin(), essential_1based.end());

  PolyhedralPair pair;
  pair.dimension = dimension;
  for (const auto& [i, j] : rel) pair.relations.emplace_back(i - 1, j - 1);
  for (const auto& [i, j] : ess) pair.essential.emplace_back(i - 1, j - 1);
  return pair;
}

PolyhedralPair half_plane_pair() { return validate_pair(2, {{1, 2}}, {{1, 2}}); }

PolyhedralPair mixup_pair() { return validate_pair(3, {{1, 2}, {2, 3}}, {{2, 3}}); }

PolyhedralPair rectangle_pair(int params) {
  if (params < 1) throw std::invalid_argument("rectangle_pair needs at least one parameter");
  std::vector<IndexPair> rel;
  for (int i = 1; i <= params; ++i) rel.emplace_back(i, i + params);
  return validate_pair(2 * params, rel, rel);
}

}  // namespace spd
