#include "spd/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <stdexcept>

namespace spd {

namespace {

constexpr double kSnapTol = 1e-12;

std::int64_t euclid_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Multiples of z in [a, b].
std::int64_t multiples_in(std::int64_t a, std::int64_t b, std::int64_t z) {
  if (a > b) return 0;
  return floor_div(b, z) - floor_div(a - 1, z);
}

// Visits every integer k with lo < |k|_inf <= hi (lo < 0 disables the inner
// exclusion) satisfying k_i <= k_j for all relations and k_i < k_j for the
// essential ones, in lexicographic order. When canonical_layer >= 1, points
// with all coordinates divisible by z are skipped. The visitor may return
// false to stop the scan.
class LatticeScanner {
 public:
  LatticeScanner(const PolyhedralPair& pair, std::int64_t lo, std::int64_t hi, int z,
                 int canonical_layer)
      : pair_(pair), lo_(lo), hi_(hi), z_(z), canonical_layer_(canonical_layer),
        k_(pair.dimension) {
    for (auto [i, j] : pair_.relations) bounds_[j].push_back({i, false});
    for (auto [i, j] : pair_.essential) bounds_[j].push_back({i, true});
  }

  void run(const std::function<bool(std::span<const std::int64_t>)>& visit) {
    visit_ = &visit;
    stopped_ = false;
    descend(0, lo_ < 0);
  }

 private:
  void descend(int dim, bool outer) {
    if (stopped_) return;
    const int d = pair_.dimension;
    if (dim == d) {
      if (canonical_layer_ >= 1) {
        bool all_div = true;
        for (std::int64_t c : k_)
          if (euclid_mod(c, z_) != 0) { all_div = false; break; }
        if (all_div) return;
      }
      if (!(*visit_)(k_)) stopped_ = true;
      return;
    }
    std::int64_t lb = -hi_;
    auto it = bounds_.find(dim);
    if (it != bounds_.end())
      for (auto [i, strict] : it->second) lb = std::max(lb, k_[i] + (strict ? 1 : 0));

    auto emit_range = [&](std::int64_t a, std::int64_t b, bool now_outer) {
      for (std::int64_t v = a; v <= b && !stopped_; ++v) {
        k_[dim] = v;
        descend(dim + 1, now_outer || std::abs(v) > lo_);
      }
    };
    if (!outer && dim == d - 1) {
      // Last coordinate must leave the inner box.
      emit_range(lb, std::min(hi_, -lo_ - 1), true);
      emit_range(std::max(lb, lo_ + 1), hi_, true);
    } else {
      emit_range(lb, hi_, outer);
    }
  }

  const PolyhedralPair& pair_;
  std::int64_t lo_, hi_;
  int z_, canonical_layer_;
  std::vector<std::int64_t> k_;
  std::unordered_map<int, std::vector<std::pair<int, bool>>> bounds_;
  const std::function<bool(std::span<const std::int64_t>)>* visit_ = nullptr;
  bool stopped_ = false;
};

bool lattice_in_a(const PolyhedralPair& pair, std::span<const std::int64_t> k) {
  for (auto [i, j] : pair.essential)
    if (k[i] == k[j]) return true;
  return false;
}

// Counts the points a LatticeScanner with the same parameters would visit,
// intersected with optional per-dimension interval bounds, but resolves the
// last dimension in closed form instead of iterating it. Relations are folded
// into per-dimension lower bounds (strict ones add 1), the shell condition is
// split off at the last dimension, and canonicality subtracts the fully
// divisible sublattice from each final range.
class LatticeCounter {
 public:
  LatticeCounter(const PolyhedralPair& pair, std::int64_t lo, std::int64_t hi, int z,
                 int canonical_layer)
      : pair_(pair), lo_(lo), hi_(hi), z_(z), canonical_layer_(canonical_layer),
        k_(pair.dimension) {
    for (auto [i, j] : pair_.relations) bounds_[j].push_back({i, false});
    for (auto [i, j] : pair_.essential) bounds_[j].push_back({i, true});
  }

  std::uint64_t count(std::span<const std::int64_t> extra_lb,
                      std::span<const std::int64_t> extra_ub) {
    extra_lb_ = extra_lb;
    extra_ub_ = extra_ub;
    return descend(0, lo_ < 0, true);
  }

 private:
  std::pair<std::int64_t, std::int64_t> range_at(int dim) const {
    std::int64_t lb = std::max(-hi_, extra_lb_[dim]);
    std::int64_t ub = std::min(hi_, extra_ub_[dim]);
    auto it = bounds_.find(dim);
    if (it != bounds_.end())
      for (auto [i, strict] : it->second) lb = std::max(lb, k_[i] + (strict ? 1 : 0));
    return {lb, ub};
  }

  std::uint64_t count_final(std::int64_t a, std::int64_t b, bool all_div) const {
    if (a > b) return 0;
    std::uint64_t n = static_cast<std::uint64_t>(b - a + 1);
    if (canonical_layer_ >= 1 && all_div) n -= multiples_in(a, b, z_);
    return n;
  }

  std::uint64_t descend(int dim, bool outer, bool all_div) {
    const int d = pair_.dimension;
    auto [lb, ub] = range_at(dim);
    if (dim == d - 1) {
      // the final coordinate is counted, not iterated; canonicality can only
      // strike when every earlier coordinate was divisible
      if (outer) return count_final(lb, ub, all_div);
      return count_final(lb, std::min(ub, -lo_ - 1), all_div) +
             count_final(std::max(lb, lo_ + 1), ub, all_div);
    }
    std::uint64_t total = 0;
    for (std::int64_t v = lb; v <= ub; ++v) {
      k_[dim] = v;
      total += descend(dim + 1, outer || std::abs(v) > lo_,
                       all_div && euclid_mod(v, z_) == 0);
    }
    return total;
  }

  const PolyhedralPair& pair_;
  std::int64_t lo_, hi_;
  int z_, canonical_layer_;
  std::vector<std::int64_t> k_;
  std::unordered_map<int, std::vector<std::pair<int, bool>>> bounds_;
  std::span<const std::int64_t> extra_lb_, extra_ub_;
};

// Counts {|k_i| <= B, relations} by factorizing over the connected components
// of the relation graph; dimensions without relations contribute plain (2B+1)
// factors. Shells and canonicality reduce to differences of box counts.
class BoxCounter {
 public:
  explicit BoxCounter(const PolyhedralPair& pair) {
    const int d = pair.dimension;
    std::vector<int> parent(d);
    for (int i = 0; i < d; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto [i, j] : pair.relations) parent[find(i)] = find(j);

    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < d; ++i) groups[find(i)].push_back(i);
    for (const auto& [root, dims] : groups) {
      if (dims.size() == 1) {
        ++free_dims_;
        continue;
      }
      std::map<int, int> remap;
      for (std::size_t t = 0; t < dims.size(); ++t) remap[dims[t]] = static_cast<int>(t);
      PolyhedralPair sub;
      sub.dimension = static_cast<int>(dims.size());
      for (auto [i, j] : pair.relations)
        if (remap.count(i) && remap.count(j)) sub.relations.emplace_back(remap[i], remap[j]);
      for (auto [i, j] : pair.essential)
        if (remap.count(i) && remap.count(j)) sub.essential.emplace_back(remap[i], remap[j]);
      components_.push_back(std::move(sub));
    }
  }

  std::uint64_t count(std::int64_t box) const {
    if (box < 0) return 0;
    std::uint64_t total = 1;
    for (int t = 0; t < free_dims_; ++t) total *= static_cast<std::uint64_t>(2 * box + 1);
    for (const PolyhedralPair& sub : components_) {
      const std::vector<std::int64_t> lb(sub.dimension, std::numeric_limits<std::int64_t>::min() / 4);
      const std::vector<std::int64_t> ub(sub.dimension, std::numeric_limits<std::int64_t>::max() / 4);
      LatticeCounter counter(sub, -1, box, 2, 0);  // z and layer are unused without canonicality
      total *= counter.count(lb, ub);
    }
    return total;
  }

 private:
  std::vector<PolyhedralPair> components_;
  int free_dims_ = 0;
};

}  // namespace

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (std::int64_t{1} << 62) / base) throw std::overflow_error("lattice scale overflow");
    r *= base;
  }
  return r;
}

TriangulationConfig make_triangulation(PolyhedralPair pair, int z) {
  if (z < 2) throw std::invalid_argument("refinement ratio z must be >= 2");
  return TriangulationConfig{std::move(pair), z};
}

Point vertex_point(const TriangulationConfig& config, const LatticeVertex& v) {
  const double scale = static_cast<double>(ipow(config.z, v.layer));
  Point p(v.coords.size());
  for (std::size_t i = 0; i < v.coords.size(); ++i) p[i] = static_cast<double>(v.coords[i]) / scale;
  return p;
}

LatticeVertex canonical_vertex(const TriangulationConfig& config, int layer,
                               std::vector<std::int64_t> coords) {
  if (layer < 0) throw std::invalid_argument("layer must be nonnegative");
  if (static_cast<int>(coords.size()) != config.pair.dimension)
    throw std::invalid_argument("vertex dimension mismatch");
  while (layer > 0) {
    bool all_div = std::all_of(coords.begin(), coords.end(),
                               [&](std::int64_t c) { return euclid_mod(c, config.z) == 0; });
    if (!all_div) break;
    for (auto& c : coords) c /= config.z;
    --layer;
  }
  return LatticeVertex{layer, std::move(coords)};
}

bool is_canonical(const TriangulationConfig& config, const LatticeVertex& v) {
  if (v.layer == 0) return true;
  return std::any_of(v.coords.begin(), v.coords.end(),
                     [&](std::int64_t c) { return euclid_mod(c, config.z) != 0; });
}

std::vector<std::vector<std::int64_t>> SimplexRef::vertex_coords() const {
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(group_sizes.size() + 1);
  out.push_back(base);
  std::vector<std::int64_t> cur = base;
  int at = 0;
  for (int g : group_sizes) {
    for (int t = 0; t < g; ++t) cur[perm[at + t]] += 1;
    at += g;
    out.push_back(cur);
  }
  return out;
}

SimplexRef locate_simplex(const TriangulationConfig& config, int scale_index,
                          std::span<const double> x) {
  if (scale_index < 0) throw std::invalid_argument("scale index must be nonnegative");
  if (!config.pair.contains(x)) throw std::domain_error("point outside X");
  const int d = config.pair.dimension;
  const double scale = static_cast<double>(ipow(config.z, scale_index));

  SimplexRef ref;
  ref.scale_index = scale_index;
  ref.base.resize(d);
  std::vector<double> frac(d);
  for (int i = 0; i < d; ++i) {
    const double y = x[i] * scale;
    double b = std::floor(y);
    double f = y - b;
    if (f >= 1.0 - kSnapTol) { b += 1.0; f = 0.0; }
    else if (f <= kSnapTol) f = 0.0;
    ref.base[i] = static_cast<std::int64_t>(b);
    frac[i] = f;
  }

  ref.perm.resize(d);
  std::iota(ref.perm.begin(), ref.perm.end(), 0);
  std::sort(ref.perm.begin(), ref.perm.end(), [&](int a, int b) {
    if (frac[a] != frac[b]) return frac[a] > frac[b];
    return a < b;
  });

  // Group strictly positive fractional parts into tie levels.
  double group_value = -1.0;
  for (int t = 0; t < d; ++t) {
    const double f = frac[ref.perm[t]];
    if (f <= kSnapTol) break;
    if (!ref.group_sizes.empty() && group_value - f <= kSnapTol) {
      ++ref.group_sizes.back();
    } else {
      ref.group_sizes.push_back(1);
      group_value = f;
    }
  }
  return ref;
}

std::vector<double> barycentric(const TriangulationConfig& config, const SimplexRef& ref,
                                std::span<const double> x) {
  const int d = config.pair.dimension;
  if (static_cast<int>(x.size()) != d) throw std::invalid_argument("point dimension mismatch");
  const double scale = static_cast<double>(ipow(config.z, ref.scale_index));
  std::vector<double> frac(d);
  for (int i = 0; i < d; ++i) frac[i] = x[i] * scale - static_cast<double>(ref.base[i]);

  constexpr double kMemberTol = 1e-9;
  const int p = ref.active_dims();
  std::vector<double> level(p);
  int at = 0;
  for (int g = 0; g < p; ++g) {
    level[g] = frac[ref.perm[at]];
    for (int t = 1; t < ref.group_sizes[g]; ++t)
      if (std::abs(frac[ref.perm[at + t]] - level[g]) > kMemberTol)
        throw std::domain_error("point not in the referenced simplex");
    at += ref.group_sizes[g];
  }
  for (int t = at; t < d; ++t)
    if (std::abs(frac[ref.perm[t]]) > kMemberTol)
      throw std::domain_error("point not in the referenced simplex");

  std::vector<double> w(p + 1);
  w[0] = p == 0 ? 1.0 : 1.0 - level[0];
  for (int g = 1; g < p; ++g) w[g] = level[g - 1] - level[g];
  if (p > 0) w[p] = level[p - 1];
  for (double v : w)
    if (v < -1e-12) throw std::domain_error("point not in the referenced simplex");
  return w;
}

VertexClass vertex_layer(const TriangulationConfig& config, std::span<const double> x,
                         int layer_cap) {
  if (!config.pair.contains(x)) throw std::domain_error("point outside X");
  if (config.pair.in_a(x)) return VertexClass{VertexClass::InA, -1};
  double scale = 1.0;
  for (int n = 0; n <= layer_cap; ++n) {
    bool integral = true;
    for (double c : x) {
      const double y = c * scale;
      // past 2^50 the integer spacing approaches the double resolution and
      // the test stops being meaningful
      if (std::abs(y) > 0x1p50) return VertexClass{VertexClass::NotAVertex, -1};
      if (std::abs(y - std::round(y)) > 1e-9) { integral = false; break; }
    }
    if (integral) return VertexClass{VertexClass::Layer, n};
    scale *= config.z;
  }
  return VertexClass{VertexClass::NotAVertex, -1};
}

std::vector<LatticeVertex> enumerate_vertices(const TriangulationConfig& config, int layer,
                                              int rafter_radius) {
  if (layer < 0 || rafter_radius < 0)
    throw std::invalid_argument("layer must be >= 0 and rafter radius >= 0");
  const std::int64_t hi = ipow(config.z, layer) * rafter_radius;
  std::vector<LatticeVertex> out;
  LatticeScanner scan(config.pair, -1, hi, config.z, layer);
  scan.run([&](std::span<const std::int64_t> k) {
    out.push_back(LatticeVertex{layer, {k.begin(), k.end()}});
    return true;
  });
  return out;
}

std::vector<FaceVertex> face_vertices(const TriangulationConfig& config, int scale_index,
                                      std::span<const double> x) {
  const SimplexRef ref = locate_simplex(config, scale_index, x);
  const std::vector<double> weights = barycentric(config, ref, x);
  const auto coords = ref.vertex_coords();
  std::vector<FaceVertex> out(coords.size());
  for (std::size_t t = 0; t < coords.size(); ++t) {
    out[t].weight = weights[t];
    out[t].in_a = lattice_in_a(config.pair, coords[t]);
    if (!out[t].in_a) out[t].vertex = canonical_vertex(config, scale_index, coords[t]);
  }
  return out;
}

double mesh_diameter(const TriangulationConfig& config, int scale_index) {
  if (scale_index < 0) throw std::invalid_argument("scale index must be nonnegative");
  return std::sqrt(static_cast<double>(config.pair.dimension)) /
         static_cast<double>(ipow(config.z, scale_index));
}

int rafter_of(const TriangulationConfig& config, const LatticeVertex& v) {
  std::int64_t norm = 0;
  for (std::int64_t c : v.coords) norm = std::max(norm, std::abs(c));
  const std::int64_t scale = ipow(config.z, v.layer);
  const std::int64_t n = (norm + scale - 1) / scale;
  return static_cast<int>(std::max<std::int64_t>(n, 1));
}

bool BasisLess::operator()(const LatticeVertex& a, const LatticeVertex& b) const {
  auto raft = [&](const LatticeVertex& v) {
    std::int64_t norm = 0;
    for (std::int64_t c : v.coords) norm = std::max(norm, std::abs(c));
    const std::int64_t scale = ipow(z, v.layer);
    return std::max<std::int64_t>((norm + scale - 1) / scale, 1);
  };
  const std::int64_t da = a.layer + raft(a), db = b.layer + raft(b);
  if (da != db) return da < db;
  if (a.layer != b.layer) return a.layer < b.layer;
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                      b.coords.end());
}

BasisIndexer::BasisIndexer(TriangulationConfig tri, int max_layer, int rafter_radius)
    : tri_(std::move(tri)), max_layer_(max_layer), rafter_radius_(rafter_radius) {
  if (max_layer < 0 || rafter_radius < 1)
    throw std::invalid_argument("max_layer must be >= 0 and rafter radius >= 1");
  block_counts_.assign(static_cast<std::size_t>(max_layer + 1) * rafter_radius, -1);
}

std::uint64_t BasisIndexer::block_size(int layer, int rafter) const {
  if (layer < 0 || layer > max_layer_ || rafter < 1 || rafter > rafter_radius_)
    throw std::invalid_argument("block outside the configured window");
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = block_counts_[static_cast<std::size_t>(layer) * rafter_radius_ + (rafter - 1)];
  if (slot < 0) {
    const BoxCounter boxes(tri_.pair);
    const std::int64_t scale = ipow(tri_.z, layer);
    const std::int64_t hi = rafter * scale;
    const std::int64_t lo = static_cast<std::int64_t>(rafter - 1) * scale;
    // shell count, minus the fully z-divisible sublattice (the earlier layer)
    std::uint64_t n = boxes.count(hi) - boxes.count(lo);
    if (layer >= 1) n -= boxes.count(hi / tri_.z) - boxes.count(lo / tri_.z);
    slot = static_cast<std::int64_t>(n);
  }
  return static_cast<std::uint64_t>(slot);
}

std::uint64_t BasisIndexer::rank_in_block(const LatticeVertex& v, int rafter) const {
  const std::int64_t scale = ipow(tri_.z, v.layer);
  const int d = tri_.pair.dimension;
  LatticeCounter counter(tri_.pair, static_cast<std::int64_t>(rafter - 1) * scale,
                         rafter * scale, tri_.z, v.layer);
  // lexicographic rank: sum over prefixes pinned to v with the next
  // coordinate strictly below it
  std::uint64_t rank = 0;
  std::vector<std::int64_t> lb(d, std::numeric_limits<std::int64_t>::min() / 4);
  std::vector<std::int64_t> ub(d, std::numeric_limits<std::int64_t>::max() / 4);
  for (int t = 0; t < d; ++t) {
    const std::int64_t keep = ub[t];
    ub[t] = v.coords[t] - 1;
    rank += counter.count(lb, ub);
    ub[t] = keep;
    lb[t] = ub[t] = v.coords[t];
  }
  return rank;
}

void BasisIndexer::for_each_in_block(int layer, int rafter,
                                     const std::function<void(const LatticeVertex&)>& fn) const {
  const std::int64_t scale = ipow(tri_.z, layer);
  LatticeScanner scan(tri_.pair, static_cast<std::int64_t>(rafter - 1) * scale, rafter * scale,
                      tri_.z, layer);
  scan.run([&](std::span<const std::int64_t> k) {
    fn(LatticeVertex{layer, {k.begin(), k.end()}});
    return true;
  });
}

std::uint64_t BasisIndexer::block_offset(int layer, int rafter) const {
  const int diag = layer + rafter;
  std::uint64_t off = 0;
  for (int d = 1; d <= diag; ++d) {
    const int m_hi = d == diag ? layer - 1 : std::min(d - 1, max_layer_);
    for (int m = std::max(0, d - rafter_radius_); m <= m_hi; ++m) off += block_size(m, d - m);
  }
  return off;
}

bool BasisIndexer::in_window(const LatticeVertex& v) const {
  return v.layer <= max_layer_ && rafter_of(tri_, v) <= rafter_radius_;
}

std::uint64_t BasisIndexer::index_of(const LatticeVertex& v) const {
  if (!is_canonical(tri_, v)) throw std::invalid_argument("vertex is not in canonical form");
  if (lattice_in_a(tri_.pair, v.coords)) throw std::invalid_argument("vertex lies in A");
  for (auto [i, j] : tri_.pair.relations)
    if (v.coords[i] > v.coords[j]) throw std::domain_error("vertex outside X");
  if (!in_window(v)) throw std::domain_error("vertex outside the configured window");
  const int rafter = rafter_of(tri_, v);
  return block_offset(v.layer, rafter) + rank_in_block(v, rafter);
}

LatticeVertex BasisIndexer::vertex_at(std::uint64_t index) const {
  std::uint64_t at = 0;
  const int diag_max = max_layer_ + rafter_radius_;
  for (int d = 1; d <= diag_max; ++d) {
    for (int m = std::max(0, d - rafter_radius_); m <= std::min(d - 1, max_layer_); ++m) {
      const std::uint64_t size = block_size(m, d - m);
      if (index < at + size) {
        const std::uint64_t local = index - at;
        LatticeVertex found;
        std::uint64_t seen = 0;
        const std::int64_t scale = ipow(tri_.z, m);
        LatticeScanner scan(tri_.pair, static_cast<std::int64_t>(d - m - 1) * scale,
                            static_cast<std::int64_t>(d - m) * scale, tri_.z, m);
        scan.run([&](std::span<const std::int64_t> k) {
          if (seen++ == local) {
            found = LatticeVertex{m, {k.begin(), k.end()}};
            return false;
          }
          return true;
        });
        return found;
      }
      at += size;
    }
  }
  throw std::out_of_range("basis index beyond the configured window");
}

std::uint64_t BasisIndexer::count() const {
  std::uint64_t total = 0;
  for (int m = 0; m <= max_layer_; ++m)
    for (int n = 1; n <= rafter_radius_; ++n) total += block_size(m, n);
  return total;
}

}  // namespace spd
