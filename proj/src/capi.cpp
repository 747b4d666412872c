#include "spd.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "spd/checks.hpp"
#include "spd/io.hpp"

struct spd_pair {
  spd::PolyhedralPair value;
};
struct spd_basis {
  spd::BasisConfig value;
};
struct spd_diagram {
  spd::SignedDiagram value;
};
struct spd_features {
  spd::FeatureVector value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps C++ exceptions onto status codes and the thread-local error slot.
template <typename Fn>
spd_status guarded(Fn&& fn) {
  try {
    fn();
    return SPD_OK;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return SPD_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return SPD_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPD_ERR_INTERNAL;
  }
}

spd_status invalid(const char* message) {
  g_last_error = message;
  return SPD_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* spd_status_string(spd_status status) {
  switch (status) {
    case SPD_OK: return "ok";
    case SPD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SPD_ERR_PARSE: return "parse error";
    case SPD_ERR_DOMAIN: return "domain error";
    case SPD_ERR_CHECK_FAILED: return "check failed";
    case SPD_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* spd_last_error(void) { return g_last_error.c_str(); }

void spd_string_free(char* s) { std::free(s); }

spd_status spd_pair_from_json(const char* json_text, spd_pair** out) {
  if (!json_text || !out) return invalid("null argument");
  const spd_status status = guarded([&] { *out = new spd_pair{spd::pair_from_json(json_text)}; });
  return status == SPD_ERR_INVALID_ARGUMENT ? SPD_ERR_PARSE : status;
}

void spd_pair_free(spd_pair* pair) { delete pair; }

int spd_pair_dimension(const spd_pair* pair) { return pair ? pair->value.dimension : 0; }

spd_status spd_pair_contains(const spd_pair* pair, const double* x, int len, int* out_contains) {
  if (!pair || !x || !out_contains) return invalid("null argument");
  return guarded([&] {
    *out_contains = pair->value.contains(std::span<const double>(x, len)) ? 1 : 0;
  });
}

spd_status spd_pair_distance_to_a(const spd_pair* pair, const double* x, int len, double* out) {
  if (!pair || !x || !out) return invalid("null argument");
  return guarded([&] { *out = pair->value.distance_to_a(std::span<const double>(x, len)); });
}

spd_status spd_basis_create(const spd_pair* pair, int z, double l0, double a, double rho,
                            int max_layer, int rafter_radius, int stacked, spd_basis** out) {
  if (!pair || !out) return invalid("null argument");
  return guarded([&] {
    const spd::TriangulationConfig tri = spd::make_triangulation(pair->value, z);
    const spd::LipschitzSchedule schedule{l0, a, rho};
    *out = new spd_basis{spd::make_basis(tri, schedule, max_layer, rafter_radius,
                                         stacked ? spd::BasisKind::Stacked : spd::BasisKind::Plain)};
  });
}

void spd_basis_free(spd_basis* basis) { delete basis; }

spd_status spd_basis_info_json(const spd_basis* basis, char** out_json) {
  if (!basis || !out_json) return invalid("null argument");
  return guarded([&] {
    const spd::BasisConfig& config = basis->value;
    nlohmann::json per_layer = nlohmann::json::array();
    nlohmann::json diameters = nlohmann::json::array();
    for (int n = 0; n <= config.max_layer; ++n) {
      std::uint64_t count = 0;
      for (int r = 1; r <= config.rafter_radius; ++r) count += config.indexer->block_size(n, r);
      per_layer.push_back(count);
      diameters.push_back(spd::mesh_diameter(config.tri, n));
    }
    const double total = config.schedule.total();
    nlohmann::json doc{
        {"config", nlohmann::json::parse(spd::basis_config_to_json(config))},
        {"index_count", config.indexer->count()},
        {"per_layer_counts", per_layer},
        {"mesh_diameters", diameters},
        {"lipschitz_total", total},
        {"llf_bound", (config.dimension() + 1) * total},
        {"cfk_stability_constant", std::sqrt(2.0 * config.dimension()) * total},
        {"tail_coefficient",
         std::sqrt(2.0 * config.dimension()) * config.schedule.tail(config.max_layer)}};
    *out_json = dup_string(doc.dump());
  });
}

spd_status spd_basis_index_count(const spd_basis* basis, uint64_t* out) {
  if (!basis || !out) return invalid("null argument");
  return guarded([&] { *out = basis->value.indexer->count(); });
}

spd_status spd_diagram_parse(const spd_pair* pair, const char* text, const char* format,
                             spd_diagram** out, spd_pair** out_pair) {
  if (!text || !format || !out) return invalid("null argument");
  const std::string fmt = format;
  const spd_status status = guarded([&] {
    spd::SignedDiagram diagram;
    if (fmt == "csv" || fmt == "jsonl") {
      if (!pair) throw std::invalid_argument("csv/jsonl formats need a pair spec");
      diagram = spd::parse_diagram(pair->value, text,
                                   fmt == "csv" ? spd::DiagramFormat::Csv : spd::DiagramFormat::Jsonl);
    } else if (fmt == "rects") {
      diagram = spd::parse_rectangles_json(text);
    } else if (fmt == "mixup") {
      diagram = spd::parse_mixup_csv(text);
    } else {
      throw std::invalid_argument("unknown format '" + fmt + "'");
    }
    if (out_pair) *out_pair = new spd_pair{diagram.pair};
    *out = new spd_diagram{std::move(diagram)};
  });
  return status == SPD_ERR_INVALID_ARGUMENT ? SPD_ERR_PARSE : status;
}

void spd_diagram_free(spd_diagram* diagram) { delete diagram; }

int spd_diagram_size(const spd_diagram* diagram) {
  return diagram ? static_cast<int>(diagram->value.points.size()) : 0;
}

spd_status spd_wasserstein1(const spd_diagram* a, const spd_diagram* b, double* out) {
  if (!a || !b || !out) return invalid("null argument");
  return guarded([&] { *out = spd::wasserstein1(a->value, b->value); });
}

spd_status spd_wasserstein1_matching_json(const spd_diagram* a, const spd_diagram* b,
                                          char** out_json) {
  if (!a || !b || !out_json) return invalid("null argument");
  return guarded([&] {
    *out_json = dup_string(spd::matching_to_json(spd::wasserstein1_matching(a->value, b->value)));
  });
}

spd_status spd_diagram_norm(const spd_diagram* diagram, double* out) {
  if (!diagram || !out) return invalid("null argument");
  return guarded([&] { *out = spd::diagram_norm(diagram->value); });
}

spd_status spd_vectorize(const spd_basis* basis, const spd_diagram* diagram, spd_features** out) {
  if (!basis || !diagram || !out) return invalid("null argument");
  return guarded(
      [&] { *out = new spd_features{spd::vectorize(basis->value, diagram->value)}; });
}

void spd_features_free(spd_features* features) { delete features; }

double spd_features_l1(const spd_features* features) {
  if (!features) return 0;
  double s = 0;
  for (const auto& [v, value] : features->value.entries) s += std::abs(value);
  return s;
}

spd_status spd_features_sparse_json(const spd_features* features, char** out_json) {
  if (!features || !out_json) return invalid("null argument");
  return guarded([&] { *out_json = dup_string(spd::features_to_sparse_json(features->value)); });
}

spd_status spd_features_dense_csv(const spd_features* features, char** out_csv,
                                  char** out_columns_json) {
  if (!features || !out_csv) return invalid("null argument");
  return guarded([&] {
    *out_csv = dup_string(spd::features_to_dense_csv(features->value));
    if (out_columns_json)
      *out_columns_json = dup_string(spd::dense_columns_json(features->value.config));
  });
}

spd_status spd_tail_bound(const spd_basis* basis, const spd_diagram* diagram, double* out) {
  if (!basis || !diagram || !out) return invalid("null argument");
  return guarded([&] { *out = spd::tail_bound(basis->value, diagram->value); });
}

spd_status spd_viz_export_json(const spd_basis* basis, const spd_diagram* diagram,
                               char** out_json) {
  if (!basis || !diagram || !out_json) return invalid("null argument");
  return guarded(
      [&] { *out_json = dup_string(spd::viz_bundle_json(basis->value, diagram->value)); });
}

spd_status spd_run_checks(const char* suites, uint64_t seed, uint64_t trials, char** report_json,
                          int* all_passed) {
  if (!report_json || !all_passed) return invalid("null argument");
  return guarded([&] {
    std::vector<std::string> names;
    if (!suites || std::string(suites).empty()) {
      names = spd::checks::suite_names();
    } else {
      std::string list = suites;
      std::size_t at = 0;
      while (at <= list.size()) {
        std::size_t comma = list.find(',', at);
        if (comma == std::string::npos) comma = list.size();
        std::string name = list.substr(at, comma - at);
        if (!name.empty()) names.push_back(name);
        at = comma + 1;
      }
    }
    const std::vector<spd::checks::CheckResult> results =
        spd::checks::run_suites(names, seed, trials);

    bool ok = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
      ok = ok && r.passed;
      arr.push_back({{"name", r.name},
                     {"statement", r.statement},
                     {"passed", r.passed},
                     {"trials", r.trials},
                     {"max_violation", r.max_violation},
                     {"elapsed_seconds", r.elapsed_seconds},
                     {"details", r.details}});
    }
    nlohmann::json doc{{"seed", seed}, {"all_passed", ok}, {"suites", arr}};
    *report_json = dup_string(doc.dump());
    *all_passed = ok ? 1 : 0;
  });
}

spd_status spd_check_suite_names(char** out_json) {
  if (!out_json) return invalid("null argument");
  return guarded([&] {
    nlohmann::json arr = spd::checks::suite_names();
    *out_json = dup_string(arr.dump());
  });
}

}  // extern "C"
