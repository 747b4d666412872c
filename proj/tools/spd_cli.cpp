// Command-line front end for the spd shared library. Talks to the core
// exclusively through the C API in spd.h.
//
// Exit codes: 0 success, 1 verification failure, 2 input/config error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spd.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct StringDeleter {
  void operator()(char* s) const { spd_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct PairDeleter {
  void operator()(spd_pair* p) const { spd_pair_free(p); }
};
struct BasisDeleter {
  void operator()(spd_basis* b) const { spd_basis_free(b); }
};
struct DiagramDeleter {
  void operator()(spd_diagram* d) const { spd_diagram_free(d); }
};
struct FeaturesDeleter {
  void operator()(spd_features* f) const { spd_features_free(f); }
};

[[noreturn]] void fail(const std::string& message, int code = kExitInputError) {
  std::cerr << "error: " << message << "\n";
  std::exit(code);
}

void require_ok(spd_status status, const std::string& what) {
  if (status != SPD_OK)
    fail(what + ": " + spd_status_string(status) + " (" + spd_last_error() + ")");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path + "'");
  out << content;
}

struct RunConfig {
  std::string pair_path;
  int z = 2;
  std::string schedule;  // geometric:<L0>,<rho>; empty = geometric:1,1/z
  int layers = 6;
  int rafter = 8;
  std::string kind = "plain";
  std::string format = "csv";
  std::uint64_t seed = 42;
  std::string out_path;
};

void add_shared_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--pair", config.pair_path, "pair spec JSON file");
  cmd->add_option("--z", config.z, "refinement ratio (>= 2)");
  cmd->add_option("--schedule", config.schedule, "Lipschitz schedule geometric:<L0>,<rho>");
  cmd->add_option("--layers", config.layers, "layer truncation N_max");
  cmd->add_option("--rafter", config.rafter, "rafter window radius R");
  cmd->add_option("--kind", config.kind, "basis kind: plain|stacked")
      ->check(CLI::IsMember({"plain", "stacked"}));
  cmd->add_option("--format", config.format, "input format: csv|jsonl|rects|mixup")
      ->check(CLI::IsMember({"csv", "jsonl", "rects", "mixup"}));
  cmd->add_option("--seed", config.seed, "seed for randomized suites");
  cmd->add_option("--out", config.out_path, "output path (default stdout)");
}

struct ScheduleParams {
  double l0, a, rho;
};

ScheduleParams resolve_schedule(const RunConfig& config) {
  if (config.schedule.empty())
    return {1.0, 1.0, 1.0 / config.z};
  const std::string prefix = "geometric:";
  if (config.schedule.rfind(prefix, 0) != 0)
    fail("schedule must look like geometric:<L0>,<rho>");
  const std::string rest = config.schedule.substr(prefix.size());
  const std::size_t comma = rest.find(',');
  if (comma == std::string::npos) fail("schedule must look like geometric:<L0>,<rho>");
  try {
    const double l0 = std::stod(rest.substr(0, comma));
    const double rho = std::stod(rest.substr(comma + 1));
    return {l0, l0, rho};
  } catch (const std::exception&) {
    fail("schedule must look like geometric:<L0>,<rho>");
  }
}

std::unique_ptr<spd_pair, PairDeleter> load_pair(const RunConfig& config, bool required) {
  if (config.pair_path.empty()) {
    if (required) fail("--pair is required for this format");
    return nullptr;
  }
  spd_pair* pair = nullptr;
  require_ok(spd_pair_from_json(read_file(config.pair_path).c_str(), &pair), "pair spec");
  return std::unique_ptr<spd_pair, PairDeleter>(pair);
}

struct LoadedDiagram {
  std::unique_ptr<spd_diagram, DiagramDeleter> diagram;
  std::unique_ptr<spd_pair, PairDeleter> pair;
};

LoadedDiagram load_diagram(const RunConfig& config, const std::string& path) {
  LoadedDiagram out;
  const bool derives_pair = config.format == "rects" || config.format == "mixup";
  auto given = load_pair(config, !derives_pair);
  const std::string text = read_file(path);
  spd_diagram* diagram = nullptr;
  spd_pair* diagram_pair = nullptr;
  require_ok(spd_diagram_parse(given.get(), text.c_str(), config.format.c_str(), &diagram,
                               &diagram_pair),
             "parsing '" + path + "'");
  out.diagram.reset(diagram);
  out.pair.reset(diagram_pair);
  return out;
}

std::unique_ptr<spd_basis, BasisDeleter> make_basis(const RunConfig& config, const spd_pair* pair) {
  const ScheduleParams sched = resolve_schedule(config);
  spd_basis* basis = nullptr;
  require_ok(spd_basis_create(pair, config.z, sched.l0, sched.a, sched.rho, config.layers,
                              config.rafter, config.kind == "stacked" ? 1 : 0, &basis),
             "basis config");
  return std::unique_ptr<spd_basis, BasisDeleter>(basis);
}

int cmd_vectorize(const RunConfig& config, const std::string& input, bool dense) {
  LoadedDiagram loaded = load_diagram(config, input);
  auto basis = make_basis(config, loaded.pair.get());

  spd_features* features = nullptr;
  require_ok(spd_vectorize(basis.get(), loaded.diagram.get(), &features), "vectorize");
  std::unique_ptr<spd_features, FeaturesDeleter> owned(features);

  double tail = 0;
  require_ok(spd_tail_bound(basis.get(), loaded.diagram.get(), &tail), "tail bound");
  double w1_empty = 0;
  const bool have_w1 = spd_diagram_norm(loaded.diagram.get(), &w1_empty) == SPD_OK;

  std::ostringstream summary;
  summary << "{\"l1\": " << spd_features_l1(features) << ", \"tail_bound\": " << tail;
  if (have_w1) summary << ", \"w1_empty\": " << w1_empty;
  summary << "}";
  std::cout << summary.str() << "\n";

  if (dense) {
    char* csv = nullptr;
    char* columns = nullptr;
    require_ok(spd_features_dense_csv(features, &csv, &columns), "dense export");
    OwnedString csv_owned(csv), columns_owned(columns);
    write_output(config.out_path, csv);
    if (!config.out_path.empty() && config.out_path != "-")
      write_output(config.out_path + ".columns.json", columns);
  } else {
    char* sparse = nullptr;
    require_ok(spd_features_sparse_json(features, &sparse), "sparse export");
    OwnedString sparse_owned(sparse);
    write_output(config.out_path, sparse);
  }
  return kExitOk;
}

int cmd_distance(const RunConfig& config, const std::string& file_a, const std::string& file_b,
                 bool print_matching) {
  LoadedDiagram a = load_diagram(config, file_a);
  LoadedDiagram b = load_diagram(config, file_b);
  if (print_matching) {
    char* json = nullptr;
    require_ok(spd_wasserstein1_matching_json(a.diagram.get(), b.diagram.get(), &json),
               "distance");
    OwnedString owned(json);
    write_output(config.out_path, json);
  } else {
    double w1 = 0;
    require_ok(spd_wasserstein1(a.diagram.get(), b.diagram.get(), &w1), "distance");
    std::ostringstream os;
    os << w1;
    write_output(config.out_path, os.str());
  }
  return kExitOk;
}

int cmd_check(const RunConfig& config, const std::string& suites, std::uint64_t trials) {
  // A corrupted pair spec is a config error even though the suites pin their
  // own configurations.
  if (!config.pair_path.empty()) load_pair(config, true);
  char* report = nullptr;
  int all_passed = 0;
  require_ok(spd_run_checks(suites.empty() ? nullptr : suites.c_str(), config.seed, trials,
                            &report, &all_passed),
             "checks");
  OwnedString owned(report);
  write_output(config.out_path, report);
  return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_viz_export(const RunConfig& config, const std::string& input) {
  LoadedDiagram loaded = load_diagram(config, input);
  auto basis = make_basis(config, loaded.pair.get());
  char* json = nullptr;
  require_ok(spd_viz_export_json(basis.get(), loaded.diagram.get(), &json), "viz export");
  OwnedString owned(json);
  write_output(config.out_path, json);
  return kExitOk;
}

int cmd_basis_info(const RunConfig& config) {
  auto pair = load_pair(config, true);
  auto basis = make_basis(config, pair.get());
  char* json = nullptr;
  require_ok(spd_basis_info_json(basis.get(), &json), "basis info");
  OwnedString owned(json);
  write_output(config.out_path, json);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed persistence diagram vectorization via Schauder bases"};
  app.require_subcommand(1);

  RunConfig config;

  std::string input, file_a, file_b, suites;
  bool dense = false, matching = false;
  std::uint64_t trials = 0;

  CLI::App* vectorize = app.add_subcommand("vectorize", "embed a diagram file into l1");
  add_shared_flags(vectorize, config);
  vectorize->add_option("input", input, "diagram file")->required();
  vectorize->add_flag("--dense", dense, "write a dense CSV row plus a column sidecar");

  CLI::App* distance = app.add_subcommand("distance", "exact 1-Wasserstein distance");
  add_shared_flags(distance, config);
  distance->add_option("a", file_a, "first diagram file")->required();
  distance->add_option("b", file_b, "second diagram file")->required();
  distance->add_flag("--matching", matching, "print the optimal matching as JSON");

  CLI::App* check = app.add_subcommand("check", "run the verification suites");
  add_shared_flags(check, config);
  check->add_option("--suite", suites, "comma-separated suite names (default: all)");
  check->add_option("--trials", trials, "override per-suite trial counts");

  CLI::App* viz = app.add_subcommand("viz-export", "emit per-point plot data as JSON");
  add_shared_flags(viz, config);
  viz->add_option("input", input, "diagram file")->required();

  CLI::App* info = app.add_subcommand("basis-info", "summarize the configured basis");
  add_shared_flags(info, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (vectorize->parsed()) return cmd_vectorize(config, input, dense);
    if (distance->parsed()) return cmd_distance(config, file_a, file_b, matching);
    if (check->parsed()) return cmd_check(config, suites, trials);
    if (viz->parsed()) return cmd_viz_export(config, input);
    if (info->parsed()) return cmd_basis_info(config);
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return kExitInputError;
}
