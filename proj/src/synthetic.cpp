#include "rsa/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_set>

namespace rsa {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product =
      static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline Philox4x32::Counter round_once(Philox4x32::Counter c,
                                      Philox4x32::Key k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter counter, Key key) {
  for (int round = 0; round < 10; ++round) {
    counter = round_once(counter, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

namespace {

enum StreamClass : std::uint32_t {
  kGroupLatent = 1,
  kTaskLatent = 2,
  kProjection = 3,
  kNoise = 4,
};

/// Standard-normal matrix from the (stream_class, entity) Philox stream.
Matrix gaussian_matrix(std::uint64_t seed, std::uint32_t stream_class,
                       std::uint32_t entity, std::size_t rows,
                       std::size_t cols) {
  const Philox4x32::Key key = {static_cast<std::uint32_t>(seed),
                               static_cast<std::uint32_t>(seed >> 32)};
  const std::size_t count = rows * cols;
  std::vector<double> flat(count);
  constexpr double kTwoPow53Inv = 0x1.0p-53;
  for (std::size_t block = 0; block * 2 < count; ++block) {
    const Philox4x32::Counter ctr = {
        static_cast<std::uint32_t>(block),
        static_cast<std::uint32_t>(static_cast<std::uint64_t>(block) >> 32),
        entity, stream_class};
    const auto words = Philox4x32::generate(ctr, key);
    const std::uint64_t a =
        static_cast<std::uint64_t>(words[0]) |
        (static_cast<std::uint64_t>(words[1]) << 32);
    const std::uint64_t b =
        static_cast<std::uint64_t>(words[2]) |
        (static_cast<std::uint64_t>(words[3]) << 32);
    // u1 in (0, 1] so the log is finite; u2 in [0, 1).
    const double u1 = static_cast<double>((a >> 11) + 1) * kTwoPow53Inv;
    const double u2 = static_cast<double>(b >> 11) * kTwoPow53Inv;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    flat[block * 2] = radius * std::cos(angle);
    if (block * 2 + 1 < count) {
      flat[block * 2 + 1] = radius * std::sin(angle);
    }
  }
  return Matrix(rows, cols, std::move(flat));
}

}  // namespace

void SyntheticSpec::validate() const {
  if (groups.empty()) {
    throw Error(ErrorCode::Validation, "synthetic spec needs >= 1 group");
  }
  if (n_conditions < 2 || latent_dim < 2 || feature_dim_per_task < 2) {
    throw Error(ErrorCode::Validation,
                "n_conditions, latent_dim and feature_dim_per_task must all "
                "be >= 2");
  }
  if (!std::isfinite(noise_sigma) || noise_sigma < 0.0) {
    throw Error(ErrorCode::Validation,
                "noise_sigma must be finite and >= 0");
  }
  std::unordered_set<std::string_view> group_names;
  std::unordered_set<std::string_view> names;
  for (const auto& group : groups) {
    if (group.name.empty()) {
      throw Error(ErrorCode::Validation, "group name must be non-empty");
    }
    if (!group_names.insert(group.name).second) {
      throw Error(ErrorCode::Validation,
                  "duplicate group name '" + group.name + "'");
    }
    if (group.tasks.empty()) {
      throw Error(ErrorCode::Validation,
                  "group '" + group.name + "' has no tasks");
    }
    if (!std::isfinite(group.alpha) || group.alpha < 0.0 ||
        group.alpha > 1.0) {
      throw Error(ErrorCode::Validation,
                  "alpha for group '" + group.name + "' outside [0, 1]");
    }
    for (const auto& task : group.tasks) {
      if (task.empty()) {
        throw Error(ErrorCode::Validation, "task name must be non-empty");
      }
      if (!names.insert(task).second) {
        throw Error(ErrorCode::Validation,
                    "task name '" + task + "' appears in more than one slot");
      }
    }
  }
}

std::vector<std::string> SyntheticSpec::task_names() const {
  std::vector<std::string> out;
  for (const auto& group : groups) {
    out.insert(out.end(), group.tasks.begin(), group.tasks.end());
  }
  return out;
}

std::vector<FeatureMatrix> generate(const SyntheticSpec& spec) {
  spec.validate();
  if (spec.n_conditions < 3) {
    throw Error(ErrorCode::Validation,
                "generation needs n_conditions >= 3 to form valid feature "
                "matrices");
  }

  const std::size_t n_c = spec.n_conditions;
  const std::size_t d = spec.latent_dim;
  const std::size_t f = spec.feature_dim_per_task;

  std::vector<std::string> conditions(n_c);
  for (std::size_t i = 0; i < n_c; ++i) conditions[i] = "c" + std::to_string(i);

  std::vector<FeatureMatrix> out;
  std::uint32_t task_index = 0;
  for (std::uint32_t group_index = 0; group_index < spec.groups.size();
       ++group_index) {
    const SyntheticGroup& group = spec.groups[group_index];
    const double alpha = group.alpha;
    Matrix group_latent;
    if (alpha > 0.0) {
      group_latent = gaussian_matrix(spec.seed, kGroupLatent, group_index,
                                     n_c, d);
    }
    for (const auto& task_name : group.tasks) {
      Matrix pre(n_c, d);
      if (alpha == 1.0) {
        pre = group_latent;
      } else {
        Matrix task_latent =
            gaussian_matrix(spec.seed, kTaskLatent, task_index, n_c, d);
        for (std::size_t i = 0; i < n_c; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            const double shared = alpha > 0.0 ? alpha * group_latent(i, j) : 0.0;
            pre(i, j) = shared + (1.0 - alpha) * task_latent(i, j);
          }
        }
      }

      const Matrix projection =
          gaussian_matrix(spec.seed, kProjection, task_index, d, f);
      Matrix features(n_c, f);
      for (std::size_t i = 0; i < n_c; ++i) {
        for (std::size_t j = 0; j < f; ++j) {
          double sum = 0.0;
          for (std::size_t k = 0; k < d; ++k) {
            sum += pre(i, k) * projection(k, j);
          }
          features(i, j) = sum;
        }
      }

      if (spec.noise_sigma > 0.0) {
        const Matrix noise =
            gaussian_matrix(spec.seed, kNoise, task_index, n_c, f);
        for (std::size_t i = 0; i < n_c; ++i) {
          for (std::size_t j = 0; j < f; ++j) {
            features(i, j) += spec.noise_sigma * noise(i, j);
          }
        }
      }

      out.emplace_back(TaskId(task_name), conditions, std::move(features));
      ++task_index;
    }
  }
  return out;
}

}  // namespace rsa
