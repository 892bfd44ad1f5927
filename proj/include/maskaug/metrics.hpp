#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maskaug {

/// How validation clips were masked before scoring.
///   Unmasked          -> top1
///   PersonBboxMasked  -> B-top1 (lower is better)
///   BackgroundMasked  -> P-top1
enum class EvalVariant { Unmasked, PersonBboxMasked, BackgroundMasked };

inline constexpr std::array<EvalVariant, 3> kAllEvalVariants{
    EvalVariant::Unmasked, EvalVariant::PersonBboxMasked, EvalVariant::BackgroundMasked};

/// Log spelling: unmasked, person-bbox, background.
std::string_view to_string(EvalVariant variant) noexcept;
std::optional<EvalVariant> parse_eval_variant(std::string_view name) noexcept;

/// One scored validation clip.
struct PredictionRecord {
  std::string video_id;
  int true_label = 0;
  EvalVariant variant = EvalVariant::Unmasked;
  int epoch = 0;
  std::string split;
  /// Base-to-novel split index (1-3); 1 when there is a single split.
  int split_index = 1;
  std::map<int, double> scores;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Label with the highest score; ties go to the smallest label id.
int predicted_label(const PredictionRecord& record);

/// Percentage of records of `variant` whose prediction is the true label.
/// Throws if no record of that variant exists.
double top1(std::span<const PredictionRecord> records, EvalVariant variant = EvalVariant::Unmasked);
double b_top1(std::span<const PredictionRecord> records);
double p_top1(std::span<const PredictionRecord> records);

struct MetricTriple {
  double top1 = 0.0;
  double b_top1 = 0.0;
  double p_top1 = 0.0;

  friend bool operator==(const MetricTriple&, const MetricTriple&) = default;
};

/// All three metrics over one record set.
MetricTriple evaluate(std::span<const PredictionRecord> records);

struct EpochMetrics {
  int epoch = 0;
  MetricTriple metrics;

  friend bool operator==(const EpochMetrics&, const EpochMetrics&) = default;
};

/// Groups by epoch (ascending) and evaluates each group.
std::vector<EpochMetrics> per_epoch(std::span<const PredictionRecord> records);

/// Epoch with the highest unmasked top1; B-top1 and P-top1 come from that same
/// epoch. Earliest epoch wins ties.
EpochMetrics best_over_epochs(std::span<const EpochMetrics> series);

/// Arithmetic mean of exactly three per-split triples.
MetricTriple average_over_splits(std::span<const MetricTriple> splits);

/// Best-over-epochs result for one split index.
struct SplitResult {
  int split_index = 1;
  EpochMetrics best;
  std::vector<EpochMetrics> series;

  friend bool operator==(const SplitResult&, const SplitResult&) = default;
};

/// One evaluation set (a column group of the results table).
struct GroupReport {
  std::string name;
  std::vector<SplitResult> splits;
  /// The single split's best, or the mean over three splits.
  MetricTriple value;

  friend bool operator==(const GroupReport&, const GroupReport&) = default;
};

struct MetricsReport {
  std::vector<GroupReport> groups;
  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Groups records by split name (first-appearance order), then by split index.
/// A group must carry one or three split indices.
MetricsReport build_report(std::span<const PredictionRecord> records);

inline constexpr std::string_view kBestEpochRule = "best-unmasked-top1-epoch";

}  // namespace maskaug
