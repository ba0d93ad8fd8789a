#include "rsa/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_set>

#include "rsa/stats.hpp"

namespace rsa {

std::string_view to_string(Orientation orientation) {
  return orientation == Orientation::HigherBetter ? "higher_better"
                                                  : "lower_better";
}

Orientation orientation_from_string(std::string_view name) {
  if (name == "higher_better") return Orientation::HigherBetter;
  if (name == "lower_better") return Orientation::LowerBetter;
  throw Error(ErrorCode::MissingOrientation,
              "orientation must be higher_better or lower_better, got '" +
                  std::string(name) + "'");
}

AffinityTable::AffinityTable(TaskId target, std::vector<AffinityEntry> entries,
                             Orientation orientation)
    : target_(std::move(target)),
      entries_(std::move(entries)),
      orientation_(orientation) {
  if (entries_.empty()) {
    throw Error(ErrorCode::Validation, "affinity table has no entries");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& entry : entries_) {
    if (!std::isfinite(entry.performance)) {
      throw Error(ErrorCode::NonFiniteScore,
                  "non-finite performance for source '" +
                      entry.source.name() + "'");
    }
    if (!seen.insert(entry.source.name()).second) {
      throw Error(ErrorCode::DuplicateSource,
                  "duplicate source task '" + entry.source.name() + "'");
    }
  }
}

std::vector<TaskId> AffinityTable::ordered_sources() const {
  std::vector<AffinityEntry> sorted = entries_;
  const bool higher = orientation_ == Orientation::HigherBetter;
  std::sort(sorted.begin(), sorted.end(),
            [higher](const AffinityEntry& a, const AffinityEntry& b) {
              if (a.performance != b.performance) {
                return higher ? a.performance > b.performance
                              : a.performance < b.performance;
              }
              return a.source.name() < b.source.name();
            });
  std::vector<TaskId> out;
  out.reserve(sorted.size());
  for (auto& entry : sorted) out.push_back(std::move(entry.source));
  return out;
}

namespace {

std::vector<RankedTask> sort_ranked(std::vector<RankedTask> scored) {
  std::sort(scored.begin(), scored.end(),
            [](const RankedTask& a, const RankedTask& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.task.name() < b.task.name();
            });
  return scored;
}

}  // namespace

Ranking rank_by_similarity(const RDM& probe_rdm,
                           const std::vector<RDM>& candidates) {
  if (candidates.empty()) {
    throw Error(ErrorCode::Validation, "need at least one candidate RDM");
  }
  std::vector<RankedTask> scored;
  scored.reserve(candidates.size());
  for (const auto& candidate : candidates) {
    scored.push_back({candidate.task(), rdm_similarity(probe_rdm, candidate)});
  }
  return Ranking(probe_rdm.task(), sort_ranked(std::move(scored)));
}

Ranking ranking_from_affinity(const AffinityTable& table) {
  const bool higher = table.orientation() == Orientation::HigherBetter;
  std::vector<RankedTask> scored;
  scored.reserve(table.entries().size());
  for (const auto& entry : table.entries()) {
    scored.push_back(
        {entry.source, higher ? entry.performance : -entry.performance});
  }
  return Ranking(table.target(), sort_ranked(std::move(scored)));
}

namespace {

void require_same_task_set(const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  std::vector<std::string> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) {
    throw Error(ErrorCode::TaskMismatch, "task sets differ");
  }
}

std::vector<std::string> ranking_tasks(const Ranking& r) {
  std::vector<std::string> out;
  out.reserve(r.ordered().size());
  for (const auto& entry : r.ordered()) out.push_back(entry.task.name());
  return out;
}

}  // namespace

bool topk_agreement(const Ranking& rsa, const AffinityTable& transfer,
                    std::size_t k) {
  if (k < 1) {
    throw Error(ErrorCode::InvalidK, "top-k needs k >= 1");
  }
  std::vector<std::string> transfer_tasks;
  transfer_tasks.reserve(transfer.entries().size());
  for (const auto& entry : transfer.entries()) {
    transfer_tasks.push_back(entry.source.name());
  }
  require_same_task_set(ranking_tasks(rsa), transfer_tasks);

  const TaskId& best = rsa.ordered().front().task;
  const std::vector<TaskId> ordered = transfer.ordered_sources();
  const std::size_t limit = std::min(k, ordered.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (ordered[i] == best) return true;
  }
  return false;
}

double ranking_correlation(const Ranking& a, const Ranking& b,
                           CorrelationMethod method) {
  require_same_task_set(ranking_tasks(a), ranking_tasks(b));
  std::map<std::string_view, double> b_scores;
  for (const auto& entry : b.ordered()) {
    b_scores.emplace(entry.task.name(), entry.score);
  }
  std::vector<double> scores_a, scores_b;
  scores_a.reserve(a.ordered().size());
  scores_b.reserve(a.ordered().size());
  for (const auto& entry : a.ordered()) {
    scores_a.push_back(entry.score);
    scores_b.push_back(b_scores.at(entry.task.name()));
  }
  return method == CorrelationMethod::Pearson ? pearson(scores_a, scores_b)
                                              : spearman(scores_a, scores_b);
}

std::vector<StabilityEntry> stability_report(
    const std::vector<Ranking>& rankings, const Ranking& reference) {
  std::vector<StabilityEntry> out;
  out.reserve(rankings.size());
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    out.push_back({std::to_string(i),
                   ranking_correlation(rankings[i], reference,
                                       CorrelationMethod::Pearson),
                   ranking_correlation(rankings[i], reference,
                                       CorrelationMethod::Spearman)});
  }
  return out;
}

}  // namespace rsa
