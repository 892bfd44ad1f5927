#include "maskaug/metrics.hpp"

#include <algorithm>
#include <string>

#include "maskaug/error.hpp"

namespace maskaug {

std::string_view to_string(EvalVariant variant) noexcept {
  switch (variant) {
    case EvalVariant::Unmasked: return "unmasked";
    case EvalVariant::PersonBboxMasked: return "person-bbox";
    case EvalVariant::BackgroundMasked: return "background";
  }
  return "unmasked";
}

std::optional<EvalVariant> parse_eval_variant(std::string_view name) noexcept {
  for (EvalVariant v : kAllEvalVariants) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

int predicted_label(const PredictionRecord& record) {
  if (record.scores.empty()) {
    throw Error(ErrorKind::InvalidArgument, "record '" + record.video_id + "' has no scores");
  }
  // std::map iterates ascending, so strict > keeps the smallest id on ties.
  auto best = record.scores.begin();
  for (auto it = std::next(best); it != record.scores.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

double top1(std::span<const PredictionRecord> records, EvalVariant variant) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const PredictionRecord& r : records) {
    if (r.variant != variant) continue;
    ++total;
    if (predicted_label(r) == r.true_label) ++correct;
  }
  if (total == 0) {
    throw Error(ErrorKind::InvalidArgument,
                "no records with variant '" + std::string(to_string(variant)) + "'");
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

double b_top1(std::span<const PredictionRecord> records) {
  return top1(records, EvalVariant::PersonBboxMasked);
}

double p_top1(std::span<const PredictionRecord> records) {
  return top1(records, EvalVariant::BackgroundMasked);
}

MetricTriple evaluate(std::span<const PredictionRecord> records) {
  return {top1(records, EvalVariant::Unmasked), b_top1(records), p_top1(records)};
}

std::vector<EpochMetrics> per_epoch(std::span<const PredictionRecord> records) {
  std::map<int, std::vector<PredictionRecord>> by_epoch;
  for (const PredictionRecord& r : records) by_epoch[r.epoch].push_back(r);
  std::vector<EpochMetrics> out;
  out.reserve(by_epoch.size());
  for (const auto& [epoch, group] : by_epoch) out.push_back({epoch, evaluate(group)});
  return out;
}

EpochMetrics best_over_epochs(std::span<const EpochMetrics> series) {
  if (series.empty()) throw Error(ErrorKind::InvalidArgument, "empty epoch series");
  const EpochMetrics* best = &series.front();
  for (const EpochMetrics& e : series) {
    if (e.metrics.top1 > best->metrics.top1) best = &e;
  }
  return *best;
}

MetricTriple average_over_splits(std::span<const MetricTriple> splits) {
  if (splits.size() != 3) {
    throw Error(ErrorKind::InvalidArgument,
                "split averaging needs exactly 3 reports, got " + std::to_string(splits.size()));
  }
  MetricTriple mean;
  for (const MetricTriple& s : splits) {
    mean.top1 += s.top1;
    mean.b_top1 += s.b_top1;
    mean.p_top1 += s.p_top1;
  }
  mean.top1 /= 3.0;
  mean.b_top1 /= 3.0;
  mean.p_top1 /= 3.0;
  return mean;
}

MetricsReport build_report(std::span<const PredictionRecord> records) {
  std::vector<std::string> order;
  std::map<std::string, std::map<int, std::vector<PredictionRecord>>> grouped;
  for (const PredictionRecord& r : records) {
    auto [it, inserted] = grouped.try_emplace(r.split);
    if (inserted) order.push_back(r.split);
    it->second[r.split_index].push_back(r);
  }

  MetricsReport report;
  for (const std::string& name : order) {
    GroupReport group{name, {}, {}};
    for (const auto& [index, group_records] : grouped[name]) {
      SplitResult split{index, {}, per_epoch(group_records)};
      split.best = best_over_epochs(split.series);
      group.splits.push_back(std::move(split));
    }
    if (group.splits.size() == 1) {
      group.value = group.splits.front().best.metrics;
    } else if (group.splits.size() == 3) {
      std::vector<MetricTriple> bests;
      for (const SplitResult& s : group.splits) bests.push_back(s.best.metrics);
      group.value = average_over_splits(bests);
    } else {
      throw Error(ErrorKind::InvalidArgument, "split group '" + name + "' has " +
                                                  std::to_string(group.splits.size()) +
                                                  " split indices; expected 1 or 3");
    }
    report.groups.push_back(std::move(group));
  }
  return report;
}

}  // namespace maskaug
