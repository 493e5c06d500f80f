#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dstfuse/error.hpp"
#include "dstfuse/pipeline.hpp"

namespace dstfuse {

// Rounds to 9 significant digits so the serialized value is stable across platforms.
inline double round_sig9(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

// Canonical JSON form of a report. Object keys are sorted by the json type itself.
inline nlohmann::json report_to_json(const FusionReport& report, bool include_per_sample) {
  nlohmann::json j;
  j["classes"] = report.classes;
  j["models"] = report.model_ids;
  j["policy"] = {{"mode", std::string(to_string(report.policy.mode))},
                 {"theta_floor", round_sig9(report.policy.theta_floor)}};
  nlohmann::json per_model = nlohmann::json::object();
  for (std::size_t m = 0; m < report.model_ids.size(); ++m)
    per_model[report.model_ids[m]] = round_sig9(report.per_model_accuracy[m]);
  j["per_model_accuracy"] = per_model;
  j["fused_accuracy"] = round_sig9(report.fused_accuracy);
  j["mean_conflict"] = round_sig9(report.mean_conflict);
  j["sample_count"] = report.sample_count;
  j["dropped_samples"] = report.dropped_samples;
  j["tie_count"] = report.tie_count;
  j["near_tie_count"] = report.near_tie_count;
  if (include_per_sample) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& o : report.per_sample) {
      nlohmann::json conflicts = nlohmann::json::array();
      for (double k : o.conflicts) conflicts.push_back(round_sig9(k));
      rows.push_back({{"sample_id", o.sample_id},
                      {"label", o.label},
                      {"model_argmax", o.model_argmax},
                      {"fused_prediction", o.fused_prediction},
                      {"max_utility", round_sig9(o.max_utility)},
                      {"tie", o.tie},
                      {"near_tie", o.near_tie},
                      {"conflicts", conflicts}});
    }
    j["per_sample"] = std::move(rows);
  }
  return j;
}

inline std::string report_json_text(const FusionReport& report, bool include_per_sample) {
  return report_to_json(report, include_per_sample).dump(2) + "\n";
}

// Accuracy table: one row per model followed by the fused ensemble.
inline std::string report_table_text(const FusionReport& report) {
  std::size_t width = std::string("DST ensemble").size();
  for (const auto& id : report.model_ids) width = std::max(width, id.size());
  auto line = [&](const std::string& name, double acc) {
    std::string s = name;
    s.resize(width + 2, ' ');
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", acc);
    return s + buf + "\n";
  };
  std::string out;
  std::string head = "model";
  head.resize(width + 2, ' ');
  out += head + "accuracy\n";
  out += std::string(width + 2 + 8, '-') + "\n";
  for (std::size_t m = 0; m < report.model_ids.size(); ++m)
    out += line(report.model_ids[m], report.per_model_accuracy[m]);
  out += std::string(width + 2 + 8, '-') + "\n";
  out += line("DST ensemble", report.fused_accuracy);
  std::ostringstream tail;
  tail << "\nsamples: " << report.sample_count << "  dropped: " << report.dropped_samples
       << "  ties: " << report.tie_count << "  mean K: " << round_sig9(report.mean_conflict) << "\n";
  return out + tail.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw Error(Errc::IoError, "write failed on '" + path.string() + "'");
}

inline void emit_report(const FusionReport& report, const std::filesystem::path& path,
                        bool include_per_sample) {
  write_text_file(path, report_json_text(report, include_per_sample));
}

}  // namespace dstfuse
