#include "spd/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace spd {

using nlohmann::json;

namespace {

json pair_json(const PolyhedralPair& pair) {
  json rel = json::array(), ess = json::array();
  for (auto [i, j] : pair.relations) rel.push_back({i + 1, j + 1});
  for (auto [i, j] : pair.essential) ess.push_back({i + 1, j + 1});
  return json{{"dimension", pair.dimension}, {"relations", rel}, {"essential", ess}};
}

json config_json(const BasisConfig& config) {
  return json{{"pair", pair_json(config.tri.pair)},
              {"z", config.z()},
              {"schedule", {{"l0", config.schedule.l0}, {"a", config.schedule.a}, {"rho", config.schedule.rho}}},
              {"max_layer", config.max_layer},
              {"rafter", config.rafter_radius},
              {"kind", config.kind == BasisKind::Plain ? "plain" : "stacked"}};
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json vertex_json(const LatticeVertex& v) {
  return json{{"layer", v.layer}, {"coords", v.coords}};
}

double entries_l1(const FeatureVector& vec) {
  double s = 0;
  for (const auto& [v, value] : vec.entries) s += std::abs(value);
  return s;
}

}  // namespace

std::string pair_to_json(const PolyhedralPair& pair) { return pair_json(pair).dump(); }

PolyhedralPair pair_from_json(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw std::invalid_argument("pair spec is not a JSON object");
  if (!doc.contains("dimension") || !doc.contains("relations") || !doc.contains("essential"))
    throw std::invalid_argument("pair spec needs dimension, relations and essential");
  auto read_pairs = [](const json& arr) {
    std::vector<IndexPair> out;
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("relation must be [i, j]");
      out.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return out;
  };
  return validate_pair(doc.at("dimension").get<int>(), read_pairs(doc.at("relations")),
                       read_pairs(doc.at("essential")));
}

std::string basis_config_to_json(const BasisConfig& config) { return config_json(config).dump(); }

std::string features_to_sparse_json(const FeatureVector& vec) {
  json entries = json::object();
  for (const auto& [v, value] : vec.entries)
    entries[std::to_string(vec.config.indexer->index_of(v))] = value;
  json doc{{"config", config_json(vec.config)},
           {"entries", entries},
           {"l1", vec.norm_exponent == 1 ? vec.norm : entries_l1(vec)},
           {"norm", vec.norm},
           {"norm_exponent", vec.norm_exponent},
           {"window_escapes", vec.window_escapes},
           {"escaped_mass", vec.escaped_mass}};
  return doc.dump();
}

std::string features_to_dense_csv(const FeatureVector& vec) {
  const std::uint64_t cols = vec.config.indexer->count();
  std::vector<double> dense(cols, 0.0);
  for (const auto& [v, value] : vec.entries) dense[vec.config.indexer->index_of(v)] = value;
  std::string out;
  for (std::uint64_t c = 0; c < cols; ++c) {
    if (c) out += ',';
    out += format_double(dense[c]);
  }
  out += '\n';
  return out;
}

std::string dense_columns_json(const BasisConfig& config) {
  json cols = json::array();
  const std::uint64_t n = config.indexer->count();
  for (std::uint64_t i = 0; i < n; ++i) cols.push_back(vertex_json(config.indexer->vertex_at(i)));
  return json{{"columns", cols}}.dump();
}

std::string matrix_to_dense_csv(const FeatureMatrix& matrix) {
  std::string out;
  for (std::size_t r = 0; r < matrix.rows; ++r) {
    for (std::size_t c = 0; c < matrix.cols; ++c) {
      if (c) out += ',';
      out += format_double(matrix.at(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string coefficients_to_json(const CoefficientMap& coeffs) {
  json entries = json::object();
  for (const auto& [v, value] : coeffs.entries)
    entries[std::to_string(coeffs.config.indexer->index_of(v))] = value;
  return json{{"config", config_json(coeffs.config)}, {"entries", entries}}.dump();
}

std::string matching_to_json(const MatchingResult& matching) {
  json edges = json::array();
  for (const MatchEdge& e : matching.edges) {
    json from = e.from < 0 ? json("A") : json(matching.left[e.from]);
    json to = e.to < 0 ? json("A") : json(matching.right[e.to]);
    edges.push_back({{"from", from}, {"to", to}});
  }
  return json{{"cost", matching.cost}, {"edges", edges}}.dump();
}

std::string viz_bundle_json(const BasisConfig& config, const SignedDiagram& diagram) {
  json records = json::array();
  for (std::size_t i = 0; i < diagram.points.size(); ++i) {
    const WeightedPoint& wp = diagram.points[i];
    SignedDiagram single;
    single.pair = diagram.pair;
    single.points.push_back(WeightedPoint{wp.x, 1.0});
    const FeatureVector fv = vectorize(config, single);

    json segments = json::array(), labels = json::array();
    for (const auto& [v, value] : fv.entries) {
      segments.push_back(std::abs(value));
      labels.push_back(config.indexer->index_of(v));
    }
    json rec{{"point", wp.x},
             {"weight", wp.weight},
             {"segments", segments},
             {"indices", labels},
             {"total_length", fv.norm}};
    if (i < diagram.bars.size()) {
      rec["a"] = diagram.bars[i].a;
      rec["b"] = diagram.bars[i].b;
      rec["orientation"] = diagram.bars[i].sign >= 0 ? "up" : "down";
      rec["hook"] = diagram.bars[i].hook;
    }
    records.push_back(std::move(rec));
  }
  return json{{"config", config_json(config)}, {"points", records}}.dump();
}

std::string vertices_to_json(const std::vector<LatticeVertex>& vertices) {
  json arr = json::array();
  for (const LatticeVertex& v : vertices) arr.push_back(vertex_json(v));
  return arr.dump();
}

}  // namespace spd
