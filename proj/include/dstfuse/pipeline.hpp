#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "dstfuse/compact_mass.hpp"
#include "dstfuse/decision.hpp"
#include "dstfuse/error.hpp"
#include "dstfuse/evidence.hpp"
#include "dstfuse/io.hpp"

namespace dstfuse {

// Top-two utilities closer than this are counted as near ties.
inline constexpr double kNearTieGap = 1e-9;

struct SampleOutcome {
  std::string sample_id;
  std::size_t label = 0;
  // Argmax of each model's raw scores, in model order.
  std::vector<std::size_t> model_argmax;
  std::size_t fused_prediction = 0;
  double max_utility = 0.0;
  bool tie = false;
  bool near_tie = false;
  // K at every fold step (models - 1 entries).
  std::vector<double> conflicts;
};

struct FusionReport {
  std::vector<std::string> classes;
  BuildPolicy policy;
  std::vector<std::string> model_ids;
  // Aligned with model_ids.
  std::vector<double> per_model_accuracy;
  double fused_accuracy = 0.0;
  double mean_conflict = 0.0;
  std::size_t sample_count = 0;
  std::size_t dropped_samples = 0;
  std::size_t tie_count = 0;
  std::size_t near_tie_count = 0;
  std::vector<SampleOutcome> per_sample;
};

struct EvaluateOptions {
  // 0 = DST_FUSE_THREADS, falling back to the hardware concurrency.
  unsigned threads = 0;
};

// Worker count for `requested` (0 = consult DST_FUSE_THREADS, then the hardware).
inline unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DST_FUSE_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 1024UL));
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

// Argmax with ties resolved to the lowest index.
inline std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

// Fuses one sample's model scores: build each mass, combine in model order, decide.
inline SampleOutcome fuse_sample(std::span<const ScoreVector> scores, const BuildPolicy& policy) {
  const auto evidence = build_evidence(scores, policy);
  auto [fused, reports] = compact_combine_all(evidence);
  const auto decision = predict(fused);

  SampleOutcome out;
  out.fused_prediction = decision.predicted_class;
  out.max_utility = decision.utilities[decision.predicted_class];
  out.tie = decision.tie;
  for (std::size_t c = 0; c < decision.utilities.size(); ++c)
    if (c != decision.predicted_class && out.max_utility - decision.utilities[c] <= kNearTieGap)
      out.near_tie = true;
  out.conflicts.reserve(reports.size());
  for (const auto& r : reports) out.conflicts.push_back(r.k);
  for (const auto& s : scores) out.model_argmax.push_back(argmax(s.scores));
  return out;
}

// Runs every common sample through the fusion pipeline and scores both the individual models
// (argmax of raw scores) and the fused decision against the labels.
inline FusionReport evaluate(std::span<const ScoreMatrix> models, const LabelSet& labels,
                             const BuildPolicy& policy, const EvaluateOptions& options = {}) {
  policy.validate();
  if (models.empty()) throw Error(Errc::EmptyList, "no models to evaluate");

  const auto& reference = models.front();
  const std::size_t n = reference.num_classes();
  {
    std::set<std::string> ids;
    for (const auto& m : models) {
      if (m.num_classes() != n)
        throw Error(Errc::ClassCountMismatch, "model '" + m.model_id + "' has " +
                                                  std::to_string(m.num_classes()) + " classes, '" +
                                                  reference.model_id + "' has " + std::to_string(n));
      if (m.class_labels != reference.class_labels)
        throw Error(Errc::SchemaError, "class columns of '" + m.model_id + "' differ from '" +
                                           reference.model_id + "'");
      if (!ids.insert(m.model_id).second)
        throw Error(Errc::SchemaError, "duplicate model id '" + m.model_id + "'");
    }
  }
  Frame frame(reference.class_labels);
  for (const auto& [id, label] : labels)
    if (label >= n)
      throw Error(Errc::LabelOutOfRange, "sample '" + id + "' has label " + std::to_string(label) +
                                             " but there are " + std::to_string(n) + " classes");

  // Common samples in ascending id order, with each model's row index.
  std::set<std::string> all_ids;
  std::vector<std::map<std::string, std::size_t>> row_index(models.size());
  for (std::size_t j = 0; j < models.size(); ++j)
    for (std::size_t i = 0; i < models[j].num_samples(); ++i) {
      row_index[j].emplace(models[j].sample_ids[i], i);
      all_ids.insert(models[j].sample_ids[i]);
    }
  for (const auto& [id, label] : labels) all_ids.insert(id);

  std::vector<std::string> common;
  for (const auto& [id, label] : labels) {
    bool everywhere = true;
    for (const auto& idx : row_index) everywhere = everywhere && idx.contains(id);
    if (everywhere) common.push_back(id);
  }
  if (common.empty()) throw Error(Errc::NoCommonSamples, "no sample id is present in every input");

  std::vector<SampleOutcome> outcomes(common.size());
  std::vector<std::exception_ptr> failures(common.size());
  auto work = [&](std::size_t i) {
    try {
      std::vector<ScoreVector> scores;
      scores.reserve(models.size());
      for (std::size_t j = 0; j < models.size(); ++j) {
        const auto row = models[j].row(row_index[j].at(common[i]));
        scores.push_back(ScoreVector{{row.begin(), row.end()}, models[j].model_id});
      }
      try {
        outcomes[i] = fuse_sample(scores, policy);
      } catch (const TotalConflictError& e) {
        throw TotalConflictError(e.step(), e.k(), "sample '" + common[i] + "'");
      }
      outcomes[i].sample_id = common[i];
      outcomes[i].label = labels.at(common[i]);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_thread_count(options.threads), common.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < common.size(); ++i) work(i);
  } else {
    // Strided partition; each slot is written by exactly one worker.
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < common.size(); i += workers) work(i);
      });
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  FusionReport report;
  report.classes = frame.labels();
  report.policy = policy;
  report.sample_count = common.size();
  report.dropped_samples = all_ids.size() - common.size();
  for (const auto& m : models) report.model_ids.push_back(m.model_id);

  std::vector<std::size_t> model_correct(models.size(), 0);
  std::size_t fused_correct = 0;
  double conflict_sum = 0.0;
  std::size_t conflict_steps = 0;
  for (const auto& o : outcomes) {
    for (std::size_t j = 0; j < models.size(); ++j) model_correct[j] += o.model_argmax[j] == o.label;
    fused_correct += o.fused_prediction == o.label;
    report.tie_count += o.tie;
    report.near_tie_count += o.near_tie;
    for (double k : o.conflicts) conflict_sum += k;
    conflict_steps += o.conflicts.size();
  }
  const auto total = static_cast<double>(common.size());
  for (auto c : model_correct) report.per_model_accuracy.push_back(static_cast<double>(c) / total);
  report.fused_accuracy = static_cast<double>(fused_correct) / total;
  report.mean_conflict = conflict_steps == 0 ? 0.0 : conflict_sum / static_cast<double>(conflict_steps);
  report.per_sample = std::move(outcomes);
  return report;
}

}  // namespace dstfuse
