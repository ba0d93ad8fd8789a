#include "rsa/core.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

namespace rsa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return "validation";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::DegenerateVector: return "degenerate_vector";
    case ErrorCode::ConditionMismatch: return "condition_mismatch";
    case ErrorCode::TaskMismatch: return "task_mismatch";
    case ErrorCode::InvalidSimilarity: return "invalid_similarity";
    case ErrorCode::InvalidK: return "invalid_k";
    case ErrorCode::BadMagic: return "bad_magic";
    case ErrorCode::VersionUnsupported: return "version_unsupported";
    case ErrorCode::TruncatedPayload: return "truncated_payload";
    case ErrorCode::TrailingData: return "trailing_data";
    case ErrorCode::NonFinite: return "non_finite";
    case ErrorCode::DuplicateConditionId: return "duplicate_condition_id";
    case ErrorCode::MissingOrientation: return "missing_orientation";
    case ErrorCode::DuplicateSource: return "duplicate_source";
    case ErrorCode::NonFiniteScore: return "non_finite_score";
    case ErrorCode::AsymmetricBeyondTolerance:
      return "asymmetric_beyond_tolerance";
    case ErrorCode::BadDiagonal: return "bad_diagonal";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::IoFailure: return "io_failure";
  }
  return "unknown";
}

int cli_exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoFailure:
      return 4;
    default:
      return 3;
  }
}

TaskId::TaskId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) {
    throw Error(ErrorCode::Validation, "task name must be non-empty");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    std::ostringstream msg;
    msg << "matrix value count " << values_.size() << " does not match "
        << rows_ << "x" << cols_;
    throw Error(ErrorCode::Validation, msg.str());
  }
}

bool Matrix::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

namespace {

void check_unique_ids(const std::vector<std::string>& ids,
                      const char* what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids) {
    if (id.empty()) {
      std::ostringstream msg;
      msg << what << " id must be non-empty";
      throw Error(ErrorCode::Validation, msg.str());
    }
    if (!seen.insert(id).second) {
      std::ostringstream msg;
      msg << "duplicate " << what << " id '" << id << "'";
      throw Error(ErrorCode::DuplicateConditionId, msg.str());
    }
  }
}

}  // namespace

FeatureMatrix::FeatureMatrix(TaskId task, std::vector<std::string> conditions,
                             Matrix data)
    : task_(std::move(task)),
      conditions_(std::move(conditions)),
      data_(std::move(data)) {
  if (conditions_.size() != data_.rows()) {
    std::ostringstream msg;
    msg << "condition list length " << conditions_.size()
        << " does not match row count " << data_.rows();
    throw Error(ErrorCode::Validation, msg.str());
  }
  if (data_.rows() < 3) {
    throw Error(ErrorCode::Validation,
                "feature matrix needs at least 3 conditions");
  }
  if (data_.cols() < 2) {
    throw Error(ErrorCode::Validation,
                "feature matrix needs at least 2 features");
  }
  check_unique_ids(conditions_, "condition");
  if (!data_.all_finite()) {
    for (std::size_t r = 0; r < data_.rows(); ++r) {
      for (std::size_t c = 0; c < data_.cols(); ++c) {
        if (!std::isfinite(data_(r, c))) {
          std::ostringstream msg;
          msg << "non-finite value at condition '" << conditions_[r]
              << "', feature " << c;
          throw Error(ErrorCode::NonFinite, msg.str());
        }
      }
    }
  }
}

RDM::RDM(TaskId task, std::vector<std::string> conditions, Matrix values,
         std::vector<std::string> degenerate_conditions)
    : task_(std::move(task)),
      conditions_(std::move(conditions)),
      values_(std::move(values)),
      degenerate_conditions_(std::move(degenerate_conditions)) {
  const std::size_t n = conditions_.size();
  if (n < 3) {
    throw Error(ErrorCode::Validation, "RDM needs at least 3 conditions");
  }
  if (values_.rows() != n || values_.cols() != n) {
    std::ostringstream msg;
    msg << "RDM shape " << values_.rows() << "x" << values_.cols()
        << " does not match " << n << " conditions";
    throw Error(ErrorCode::Validation, msg.str());
  }
  check_unique_ids(conditions_, "condition");
  for (std::size_t i = 0; i < n; ++i) {
    if (values_(i, i) != 0.0) {
      std::ostringstream msg;
      msg << "RDM diagonal entry for condition '" << conditions_[i]
          << "' is not zero";
      throw Error(ErrorCode::BadDiagonal, msg.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double v = values_(i, j);
      if (v != values_(j, i)) {
        std::ostringstream msg;
        msg << "RDM asymmetric at (" << i << ", " << j << ")";
        throw Error(ErrorCode::AsymmetricBeyondTolerance, msg.str());
      }
      if (!std::isfinite(v) || v < 0.0 || v > 2.0) {
        std::ostringstream msg;
        msg << "RDM entry (" << i << ", " << j << ") = " << v
            << " outside [0, 2]";
        throw Error(ErrorCode::Validation, msg.str());
      }
    }
  }
}

SimilarityMatrix::SimilarityMatrix(std::vector<TaskId> tasks, Matrix values)
    : tasks_(std::move(tasks)), values_(std::move(values)) {
  const std::size_t t = tasks_.size();
  if (t < 2) {
    throw Error(ErrorCode::Validation,
                "similarity matrix needs at least 2 tasks");
  }
  if (values_.rows() != t || values_.cols() != t) {
    std::ostringstream msg;
    msg << "similarity matrix shape " << values_.rows() << "x"
        << values_.cols() << " does not match " << t << " tasks";
    throw Error(ErrorCode::Validation, msg.str());
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& task : tasks_) {
    if (!seen.insert(task.name()).second) {
      throw Error(ErrorCode::Validation,
                  "duplicate task name '" + task.name() + "'");
    }
  }
  for (std::size_t i = 0; i < t; ++i) {
    if (values_(i, i) != 1.0) {
      std::ostringstream msg;
      msg << "similarity diagonal for task '" << tasks_[i].name()
          << "' is not 1";
      throw Error(ErrorCode::BadDiagonal, msg.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double v = values_(i, j);
      if (v != values_(j, i)) {
        std::ostringstream msg;
        msg << "similarity matrix asymmetric at (" << i << ", " << j << ")";
        throw Error(ErrorCode::AsymmetricBeyondTolerance, msg.str());
      }
      if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
        std::ostringstream msg;
        msg << "similarity entry (" << i << ", " << j << ") = " << v
            << " outside [-1, 1]";
        throw Error(ErrorCode::InvalidSimilarity, msg.str());
      }
    }
  }
}

Ranking::Ranking(TaskId probe, std::vector<RankedTask> ordered)
    : probe_(std::move(probe)), ordered_(std::move(ordered)) {
  if (ordered_.empty()) {
    throw Error(ErrorCode::Validation, "ranking must have at least one entry");
  }
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < ordered_.size(); ++i) {
    const auto& entry = ordered_[i];
    if (!std::isfinite(entry.score)) {
      throw Error(ErrorCode::NonFiniteScore,
                  "non-finite score for task '" + entry.task.name() + "'");
    }
    if (entry.task == probe_) {
      throw Error(ErrorCode::Validation,
                  "probe task '" + probe_.name() + "' cannot be ranked");
    }
    if (!seen.insert(entry.task.name()).second) {
      throw Error(ErrorCode::Validation,
                  "duplicate task '" + entry.task.name() + "' in ranking");
    }
    if (i > 0) {
      const auto& prev = ordered_[i - 1];
      if (entry.score > prev.score ||
          (entry.score == prev.score && entry.task.name() < prev.task.name())) {
        throw Error(ErrorCode::Validation,
                    "ranking order violates score_desc_then_name_asc at '" +
                        entry.task.name() + "'");
      }
    }
  }
}

double Ranking::score_of(const TaskId& task) const {
  for (const auto& entry : ordered_) {
    if (entry.task == task) return entry.score;
  }
  throw Error(ErrorCode::TaskMismatch,
              "task '" + task.name() + "' not present in ranking");
}

}  // namespace rsa
