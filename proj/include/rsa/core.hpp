#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsa {

enum class ErrorCode {
  Validation,
  LengthMismatch,
  DegenerateVector,
  ConditionMismatch,
  TaskMismatch,
  InvalidSimilarity,
  InvalidK,
  BadMagic,
  VersionUnsupported,
  TruncatedPayload,
  TrailingData,
  NonFinite,
  DuplicateConditionId,
  MissingOrientation,
  DuplicateSource,
  NonFiniteScore,
  AsymmetricBeyondTolerance,
  BadDiagonal,
  ParseError,
  IoFailure,
};

/// Machine-readable token, e.g. "degenerate_vector".
std::string_view to_string(ErrorCode code);

/// Exit-code category for the CLI: 3 for data/validation errors, 4 for I/O.
int cli_exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Task label, unique within a study. Non-empty, case-sensitive.
class TaskId {
 public:
  explicit TaskId(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const TaskId&, const TaskId&) = default;
  friend auto operator<=>(const TaskId& a, const TaskId& b) {
    return a.name_ <=> b.name_;
  }

 private:
  std::string name_;
};

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {values_.data() + r * cols_, cols_};
  }

  const std::vector<double>& values() const noexcept { return values_; }
  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// One task's representation: one flat feature vector per condition.
///
/// Invariants, checked at construction: at least 3 conditions, at least 2
/// features, unique condition ids, every entry finite. The condition order
/// is the canonical order inherited by every RDM derived from this matrix.
class FeatureMatrix {
 public:
  FeatureMatrix(TaskId task, std::vector<std::string> conditions, Matrix data);

  const TaskId& task() const noexcept { return task_; }
  const std::vector<std::string>& conditions() const noexcept {
    return conditions_;
  }
  const Matrix& data() const noexcept { return data_; }

  std::size_t condition_count() const noexcept { return data_.rows(); }
  std::size_t feature_count() const noexcept { return data_.cols(); }

 private:
  TaskId task_;
  std::vector<std::string> conditions_;
  Matrix data_;
};

/// Representational dissimilarity matrix: entry (i, j) is 1 - Pearson
/// correlation between the feature vectors of conditions i and j.
///
/// Invariants: square over the condition list, exactly symmetric, zero
/// diagonal, entries in [0, 2], all finite. `degenerate_conditions` lists
/// conditions whose rows had no variance when the RDM was built under the
/// max-dissimilarity policy (empty otherwise).
class RDM {
 public:
  RDM(TaskId task, std::vector<std::string> conditions, Matrix values,
      std::vector<std::string> degenerate_conditions = {});

  const TaskId& task() const noexcept { return task_; }
  const std::vector<std::string>& conditions() const noexcept {
    return conditions_;
  }
  const Matrix& values() const noexcept { return values_; }
  const std::vector<std::string>& degenerate_conditions() const noexcept {
    return degenerate_conditions_;
  }

  std::size_t condition_count() const noexcept { return values_.rows(); }

 private:
  TaskId task_;
  std::vector<std::string> conditions_;
  Matrix values_;
  std::vector<std::string> degenerate_conditions_;
};

/// Task-by-task matrix of RDM-pair Spearman scores.
///
/// Invariants: square over a unique task list, exactly symmetric, unit
/// diagonal, entries in [-1, 1].
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::vector<TaskId> tasks, Matrix values);

  const std::vector<TaskId>& tasks() const noexcept { return tasks_; }
  const Matrix& values() const noexcept { return values_; }
  std::size_t task_count() const noexcept { return tasks_.size(); }

 private:
  std::vector<TaskId> tasks_;
  Matrix values_;
};

struct RankedTask {
  TaskId task;
  double score;
};

/// Candidate tasks ordered by score, best first. Ties are broken by
/// ascending task name; the probe never appears in the list.
class Ranking {
 public:
  static constexpr std::string_view kTieRule = "score_desc_then_name_asc";

  Ranking(TaskId probe, std::vector<RankedTask> ordered);

  const TaskId& probe() const noexcept { return probe_; }
  const std::vector<RankedTask>& ordered() const noexcept { return ordered_; }
  std::string_view tie_rule() const noexcept { return kTieRule; }

  /// Score of `task`; throws TaskMismatch if absent.
  double score_of(const TaskId& task) const;

 private:
  TaskId probe_;
  std::vector<RankedTask> ordered_;
};

}  // namespace rsa
