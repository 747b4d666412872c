#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "spd/diagram.hpp"

namespace spd {

namespace {

[[noreturn]] void row_error(std::size_t row, const std::string& what) {
  throw std::invalid_argument("row " + std::to_string(row) + ": " + what);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t at = 0;
  while (at < text.size()) {
    std::size_t nl = text.find('\n', at);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(at, nl - at);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    at = nl + 1;
  }
  return lines;
}

bool blank(std::string_view line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::vector<double> parse_csv_row(std::string_view line, std::size_t row) {
  std::vector<double> out;
  std::size_t at = 0;
  while (at <= line.size()) {
    const std::size_t comma = line.find(',', at);
    std::string_view field =
        line.substr(at, comma == std::string_view::npos ? std::string_view::npos : comma - at);
    std::string buf;
    for (char c : field)
      if (!std::isspace(static_cast<unsigned char>(c))) buf += c;
    // tolerate a unicode minus sign and an explicit plus
    if (std::size_t pos = buf.find("\xe2\x88\x92"); pos != std::string::npos)
      buf.replace(pos, 3, "-");
    if (!buf.empty() && buf.front() == '+') buf.erase(0, 1);
    if (buf.empty()) row_error(row, "empty field");
    double value = 0;
    auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{} || ptr != buf.data() + buf.size())
      row_error(row, "malformed number '" + buf + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    at = comma + 1;
  }
  return out;
}

SignedDiagram parse_csv(const PolyhedralPair& pair, std::string_view text) {
  std::vector<WeightedPoint> points;
  std::size_t row = 0;
  for (std::string_view line : split_lines(text)) {
    ++row;
    if (blank(line)) continue;
    std::vector<double> fields = parse_csv_row(line, row);
    if (static_cast<int>(fields.size()) != pair.dimension + 1)
      row_error(row, "expected weight plus " + std::to_string(pair.dimension) +
                         " coordinates, got " + std::to_string(fields.size()) + " fields");
    WeightedPoint p;
    p.weight = fields[0];
    p.x.assign(fields.begin() + 1, fields.end());
    if (!pair.contains(p.x)) row_error(row, "point outside X");
    points.push_back(std::move(p));
  }
  return make_diagram(pair, std::move(points));
}

SignedDiagram parse_jsonl(const PolyhedralPair& pair, std::string_view text) {
  std::vector<WeightedPoint> points;
  std::size_t row = 0;
  for (std::string_view line : split_lines(text)) {
    ++row;
    if (blank(line)) continue;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("w") || !rec.contains("x"))
      row_error(row, "expected {\"w\": number, \"x\": [coords]}");
    WeightedPoint p;
    try {
      p.weight = rec.at("w").get<double>();
      p.x = rec.at("x").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      row_error(row, e.what());
    }
    if (static_cast<int>(p.x.size()) != pair.dimension) row_error(row, "coordinate count mismatch");
    if (!pair.contains(p.x)) row_error(row, "point outside X");
    points.push_back(std::move(p));
  }
  return make_diagram(pair, std::move(points));
}

}  // namespace

SignedDiagram parse_diagram(const PolyhedralPair& pair, std::string_view text,
                            DiagramFormat format) {
  switch (format) {
    case DiagramFormat::Csv: return parse_csv(pair, text);
    case DiagramFormat::Jsonl: return parse_jsonl(pair, text);
  }
  throw std::invalid_argument("unknown diagram format");
}

SignedDiagram parse_mixup_csv(std::string_view text) {
  std::vector<std::array<double, 3>> triples;
  std::size_t row = 0;
  for (std::string_view line : split_lines(text)) {
    ++row;
    if (blank(line)) continue;
    std::vector<double> fields = parse_csv_row(line, row);
    if (fields.size() != 3) row_error(row, "expected b,dprime,d");
    if (!(fields[0] <= fields[1] && fields[1] <= fields[2])) row_error(row, "requires b <= d' <= d");
    triples.push_back({fields[0], fields[1], fields[2]});
  }
  return from_mixup(triples);
}

SignedDiagram parse_rectangles_json(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("d") || !doc.contains("bars"))
    throw std::invalid_argument("expected {\"d\": int, \"bars\": [...]}");
  const int params = doc.at("d").get<int>();
  const bool hooks = doc.value("hooks", false);
  std::vector<RectangleBar> bars;
  for (const auto& rec : doc.at("bars")) {
    RectangleBar bar;
    bar.a = rec.at("a").get<std::vector<double>>();
    bar.b = rec.at("b").get<std::vector<double>>();
    bar.sign = rec.value("sign", 1);
    bars.push_back(std::move(bar));
  }
  return from_rectangles(params, bars, hooks);
}

}  // namespace spd
