#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "dstfuse/error.hpp"

namespace dstfuse {

enum class ScoreFormat { Csv, Jsonl };

inline ScoreFormat parse_score_format(std::string_view text) {
  if (text == "csv") return ScoreFormat::Csv;
  if (text == "jsonl") return ScoreFormat::Jsonl;
  throw Error(Errc::SchemaError, "unknown score format '" + std::string(text) + "'");
}

// Scores of one model over a batch of samples, row-major (samples x classes).
struct ScoreMatrix {
  std::string model_id;
  std::vector<std::string> class_labels;
  std::vector<std::string> sample_ids;
  std::vector<double> scores;

  std::size_t num_classes() const noexcept { return class_labels.size(); }
  std::size_t num_samples() const noexcept { return sample_ids.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(scores).subspan(i * num_classes(), num_classes());
  }
};

// Ground-truth class index per sample id.
using LabelSet = std::map<std::string, std::size_t>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string where(const std::filesystem::path& path, std::size_t line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

inline double parse_score(std::string_view field, const std::filesystem::path& path, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range)
    throw Error(Errc::NonFiniteScore, where(path, line_no) + ": value '" + std::string(field) + "' overflows");
  if (ec != std::errc() || ptr != last || field.empty())
    throw Error(Errc::SchemaError, where(path, line_no) + ": not a number: '" + std::string(field) + "'");
  if (!std::isfinite(value))
    throw Error(Errc::NonFiniteScore, where(path, line_no) + ": value '" + std::string(field) + "'");
  return value;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  return in;
}

inline void add_sample_id(ScoreMatrix& m, std::unordered_set<std::string>& seen, std::string id,
                          const std::filesystem::path& path, std::size_t line_no) {
  if (id.empty()) throw Error(Errc::SchemaError, where(path, line_no) + ": empty sample_id");
  if (!seen.insert(id).second)
    throw Error(Errc::DuplicateSampleId, where(path, line_no) + ": '" + id + "'");
  m.sample_ids.push_back(std::move(id));
}

inline ScoreMatrix load_scores_csv(const std::filesystem::path& path, std::string model_id) {
  auto in = open_input(path);
  ScoreMatrix m;
  m.model_id = std::move(model_id);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (!have_header) {
      if (fields.front() != "sample_id")
        throw Error(Errc::SchemaError, where(path, line_no) + ": header must start with 'sample_id'");
      if (fields.size() < 3)
        throw Error(Errc::SchemaError, where(path, line_no) + ": need at least 2 class columns");
      for (std::size_t i = 1; i < fields.size(); ++i) m.class_labels.emplace_back(fields[i]);
      have_header = true;
      continue;
    }
    if (fields.size() != m.num_classes() + 1)
      throw Error(Errc::SchemaError, where(path, line_no) + ": expected " +
                                         std::to_string(m.num_classes() + 1) + " fields, got " +
                                         std::to_string(fields.size()));
    add_sample_id(m, seen, std::string(fields[0]), path, line_no);
    for (std::size_t i = 1; i < fields.size(); ++i)
      m.scores.push_back(parse_score(fields[i], path, line_no));
  }
  if (in.bad()) throw Error(Errc::IoError, "read error on '" + path.string() + "'");
  if (!have_header || m.sample_ids.empty())
    throw Error(Errc::EmptyFile, "'" + path.string() + "' has no samples");
  return m;
}

inline ScoreMatrix load_scores_jsonl(const std::filesystem::path& path, std::string model_id) {
  auto in = open_input(path);
  ScoreMatrix m;
  m.model_id = std::move(model_id);
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::SchemaError, where(path, line_no) + ": " + e.what());
    }
    if (!row.is_object() || !row.contains("sample_id") || !row.contains("scores") ||
        !row["sample_id"].is_string() || !row["scores"].is_array())
      throw Error(Errc::SchemaError,
                  where(path, line_no) + ": expected {\"sample_id\": string, \"scores\": [numbers]}");
    const auto& scores = row["scores"];
    if (m.class_labels.empty()) {
      if (scores.size() < 2)
        throw Error(Errc::SchemaError, where(path, line_no) + ": need at least 2 scores");
      for (std::size_t i = 0; i < scores.size(); ++i) m.class_labels.push_back("c" + std::to_string(i));
    }
    if (scores.size() != m.num_classes())
      throw Error(Errc::SchemaError, where(path, line_no) + ": expected " +
                                         std::to_string(m.num_classes()) + " scores, got " +
                                         std::to_string(scores.size()));
    add_sample_id(m, seen, row["sample_id"].get<std::string>(), path, line_no);
    for (const auto& v : scores) {
      if (!v.is_number())
        throw Error(Errc::SchemaError, where(path, line_no) + ": non-numeric score");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw Error(Errc::NonFiniteScore, where(path, line_no));
      m.scores.push_back(x);
    }
  }
  if (in.bad()) throw Error(Errc::IoError, "read error on '" + path.string() + "'");
  if (m.sample_ids.empty()) throw Error(Errc::EmptyFile, "'" + path.string() + "' has no samples");
  return m;
}

}  // namespace detail

// Reads one model's score file. The model id defaults to the file stem.
inline ScoreMatrix load_scores(const std::filesystem::path& path, ScoreFormat format,
                               std::string model_id = {}) {
  if (model_id.empty()) model_id = path.stem().string();
  return format == ScoreFormat::Csv ? detail::load_scores_csv(path, std::move(model_id))
                                    : detail::load_scores_jsonl(path, std::move(model_id));
}

// Reads a `sample_id,label` CSV.
inline LabelSet load_labels(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  LabelSet labels;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv(line);
    if (!have_header) {
      if (fields.size() != 2 || fields[0] != "sample_id" || fields[1] != "label")
        throw Error(Errc::SchemaError, detail::where(path, line_no) + ": header must be 'sample_id,label'");
      have_header = true;
      continue;
    }
    if (fields.size() != 2 || fields[0].empty())
      throw Error(Errc::SchemaError, detail::where(path, line_no) + ": expected 'sample_id,label'");
    std::size_t label = 0;
    const auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), label);
    if (ec != std::errc() || ptr != fields[1].data() + fields[1].size() || fields[1].empty())
      throw Error(Errc::SchemaError, detail::where(path, line_no) + ": bad label '" + std::string(fields[1]) + "'");
    if (!labels.emplace(std::string(fields[0]), label).second)
      throw Error(Errc::DuplicateSampleId, detail::where(path, line_no) + ": '" + std::string(fields[0]) + "'");
  }
  if (in.bad()) throw Error(Errc::IoError, "read error on '" + path.string() + "'");
  if (labels.empty()) throw Error(Errc::EmptyFile, "'" + path.string() + "' has no labels");
  return labels;
}

// Shortest decimal text that reads back as the same double.
inline std::string format_shortest(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace dstfuse
