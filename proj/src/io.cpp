#include "rsa/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rsa {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

using nlohmann::json;

std::string fmt17(double value) { return format_double(value); }

// Shortest decimal form that parses back to the same double; used for
// Newick branch lengths.
std::string fmt_shortest(double value) {
  char buffer[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) return buffer;
  }
  return buffer;
}

[[noreturn]] void fail(ErrorCode code, const std::string& origin,
                       const std::string& message) {
  throw Error(code, origin + ": " + message);
}

// ---------------------------------------------------------------------------
// Binary feature format
// ---------------------------------------------------------------------------

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, const std::string& origin)
      : bytes_(bytes), origin_(origin) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t remaining() const noexcept { return bytes_.size() - offset_; }

  void require(std::size_t count, const char* what) {
    if (remaining() < count) {
      std::ostringstream msg;
      msg << "truncated while reading " << what << " at byte offset "
          << offset_ << " (need " << count << " bytes, have " << remaining()
          << ")";
      fail(ErrorCode::TruncatedPayload, origin_, msg.str());
    }
  }

  std::uint16_t read_u16(const char* what) {
    require(2, what);
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[offset_]) |
                      static_cast<std::uint16_t>(bytes_[offset_ + 1]) << 8;
    offset_ += 2;
    return v;
  }

  std::uint32_t read_u32(const char* what) {
    require(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) {
      v = (v << 8) | bytes_[offset_ + static_cast<std::size_t>(i)];
    }
    offset_ += 4;
    return v;
  }

  double read_f64(const char* what) {
    require(8, what);
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) {
      bits = (bits << 8) | bytes_[offset_ + static_cast<std::size_t>(i)];
    }
    offset_ += 8;
    double value;
    std::memcpy(&value, &bits, sizeof(value));
    return value;
  }

  std::string read_string(const char* what) {
    const std::uint32_t length = read_u32(what);
    require(length, what);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + offset_),
                  length);
    offset_ += length;
    return s;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::string origin_;
  std::size_t offset_ = 0;
};

void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void append_f64(std::vector<std::uint8_t>& out, double value) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof(bits));
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

void append_string(std::vector<std::uint8_t>& out, const std::string& s) {
  append_u32(out, static_cast<std::uint32_t>(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

constexpr char kMagic[4] = {'R', 'S', 'A', 'F'};

FeatureMatrix parse_features_binary(std::span<const std::uint8_t> bytes,
                                    const std::string& origin) {
  ByteReader reader(bytes, origin);
  reader.require(4, "magic");
  reader.read_u32("magic");  // already matched by the caller

  const std::uint16_t version = reader.read_u16("version");
  if (version != kFeatureFormatVersion) {
    std::ostringstream msg;
    msg << "unsupported format version " << version;
    fail(ErrorCode::VersionUnsupported, origin, msg.str());
  }

  const std::uint32_t n_conditions = reader.read_u32("condition count");
  const std::uint32_t n_features = reader.read_u32("feature count");
  const std::string task_name = reader.read_string("task name");
  if (task_name.empty()) {
    fail(ErrorCode::Validation, origin, "task name is empty");
  }

  // Each condition id needs at least its 4-byte length prefix, so implausible
  // counts are truncation; checking first keeps allocations bounded.
  if (n_conditions > reader.remaining() / 4) {
    std::ostringstream msg;
    msg << "truncated condition table at byte offset " << reader.offset()
        << " (header declares " << n_conditions << " conditions)";
    fail(ErrorCode::TruncatedPayload, origin, msg.str());
  }
  std::vector<std::string> conditions;
  conditions.reserve(n_conditions);
  for (std::uint32_t i = 0; i < n_conditions; ++i) {
    conditions.push_back(reader.read_string("condition id"));
  }

  const std::uint64_t element_count =
      static_cast<std::uint64_t>(n_conditions) * n_features;
  // Compare against remaining()/8 so huge header dimensions cannot overflow.
  if (element_count > reader.remaining() / 8) {
    std::ostringstream msg;
    msg << "truncated payload at byte offset " << reader.offset() << " (need "
        << element_count << " doubles, have " << reader.remaining()
        << " bytes)";
    fail(ErrorCode::TruncatedPayload, origin, msg.str());
  }

  std::vector<double> values;
  values.reserve(element_count);
  for (std::uint32_t r = 0; r < n_conditions; ++r) {
    for (std::uint32_t c = 0; c < n_features; ++c) {
      const double v = reader.read_f64("payload");
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite payload value in row " << r << " (condition '"
            << conditions[r] << "')";
        fail(ErrorCode::NonFinite, origin, msg.str());
      }
      values.push_back(v);
    }
  }
  if (reader.remaining() != 0) {
    std::ostringstream msg;
    msg << reader.remaining() << " trailing bytes after payload at offset "
        << reader.offset();
    fail(ErrorCode::TrailingData, origin, msg.str());
  }

  return FeatureMatrix(TaskId(task_name), std::move(conditions),
                       Matrix(n_conditions, n_features, std::move(values)));
}

// ---------------------------------------------------------------------------
// CSV primitives
// ---------------------------------------------------------------------------

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const std::string& field) {
  if (!needs_quoting(field)) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line,
                                        const std::string& origin,
                                        std::size_t line_number) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      if (!current.empty()) {
        std::ostringstream msg;
        msg << "stray quote in line " << line_number;
        fail(ErrorCode::ParseError, origin, msg.str());
      }
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
    ++i;
  }
  if (quoted) {
    std::ostringstream msg;
    msg << "unterminated quote in line " << line_number;
    fail(ErrorCode::ParseError, origin, msg.str());
  }
  fields.push_back(std::move(current));
  return fields;
}

double parse_double(const std::string& field, const std::string& origin,
                    std::size_t line_number) {
  if (field.empty()) {
    std::ostringstream msg;
    msg << "empty numeric field in line " << line_number;
    fail(ErrorCode::ParseError, origin, msg.str());
  }
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size()) {
    std::ostringstream msg;
    msg << "cannot parse '" << field << "' as a number in line "
        << line_number;
    fail(ErrorCode::ParseError, origin, msg.str());
  }
  return value;
}

std::vector<std::string> read_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) {
    if (current.back() == '\r') current.pop_back();
    lines.push_back(std::move(current));
  }
  return lines;
}

FeatureMatrix parse_features_csv(const std::string& text,
                                 const std::string& origin,
                                 const std::string& task_name) {
  const std::vector<std::string> lines = read_lines(text);
  if (lines.size() < 2) {
    fail(ErrorCode::ParseError, origin,
         "feature CSV needs a header row and at least one data row");
  }
  const std::size_t columns =
      split_csv_line(lines[0], origin, 1).size();
  if (columns < 2) {
    fail(ErrorCode::ParseError, origin,
         "feature CSV needs an id column plus at least one feature column");
  }

  std::vector<std::string> conditions;
  std::vector<double> values;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_csv_line(lines[i], origin, i + 1);
    if (fields.size() != columns) {
      std::ostringstream msg;
      msg << "row " << i + 1 << " has " << fields.size()
          << " fields, expected " << columns;
      fail(ErrorCode::ParseError, origin, msg.str());
    }
    conditions.push_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      values.push_back(parse_double(fields[c], origin, i + 1));
    }
  }

  const std::size_t n_c = conditions.size();
  const std::size_t n_f = columns - 1;
  // CSV carries no task field; the caller supplies one (the file stem).
  return FeatureMatrix(TaskId(task_name), std::move(conditions),
                       Matrix(n_c, n_f, std::move(values)));
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoFailure,
                "cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::IoFailure, "read failed for '" + path.string() + "'");
  }
  return buffer.str();
}

void write_file_text(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoFailure,
                "cannot open '" + path.string() + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoFailure, "write failed for '" + path.string() + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Feature matrices
// ---------------------------------------------------------------------------

std::vector<std::uint8_t> serialize_features(const FeatureMatrix& features) {
  std::vector<std::uint8_t> out;
  const std::size_t payload =
      features.condition_count() * features.feature_count() * 8;
  out.reserve(64 + payload);
  out.insert(out.end(), kMagic, kMagic + 4);
  append_u16(out, kFeatureFormatVersion);
  append_u32(out, static_cast<std::uint32_t>(features.condition_count()));
  append_u32(out, static_cast<std::uint32_t>(features.feature_count()));
  append_string(out, features.task().name());
  for (const auto& id : features.conditions()) append_string(out, id);
  for (double v : features.data().values()) append_f64(out, v);
  return out;
}

namespace {

bool looks_binary(std::span<const std::uint8_t> bytes) {
  for (std::uint8_t b : bytes) {
    if (b == 0) return true;
  }
  return false;
}

FeatureMatrix parse_features_any(std::span<const std::uint8_t> bytes,
                                 const std::string& origin,
                                 const std::string& csv_task_name) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
    return parse_features_binary(bytes, origin);
  }
  if (looks_binary(bytes)) {
    fail(ErrorCode::BadMagic, origin,
         "binary content without the RSAF magic at offset 0");
  }
  return parse_features_csv(
      std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
      origin, csv_task_name);
}

}  // namespace

FeatureMatrix parse_features(std::span<const std::uint8_t> bytes,
                             const std::string& origin) {
  return parse_features_any(bytes, origin, origin);
}

FeatureMatrix read_features(const std::filesystem::path& path) {
  const std::string text = read_file_text(path);
  const std::span<const std::uint8_t> bytes(
      reinterpret_cast<const std::uint8_t*>(text.data()), text.size());
  return parse_features_any(bytes, path.string(), path.stem().string());
}

void write_features(const FeatureMatrix& features,
                    const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = serialize_features(features);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoFailure,
                "cannot open '" + path.string() + "' for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoFailure, "write failed for '" + path.string() + "'");
  }
}

// ---------------------------------------------------------------------------
// Affinity tables
// ---------------------------------------------------------------------------

AffinityTable read_affinity(const std::filesystem::path& path) {
  const std::string origin = path.string();
  const std::vector<std::string> lines = read_lines(read_file_text(path));
  if (lines.empty() || lines[0].rfind("#affinity", 0) != 0) {
    fail(ErrorCode::MissingOrientation, origin,
         "first line must be '#affinity,<target>,<orientation>'");
  }
  const auto meta = split_csv_line(lines[0], origin, 1);
  if (meta.size() != 3 || meta[1].empty()) {
    fail(ErrorCode::MissingOrientation, origin,
         "metadata line needs target task and orientation");
  }
  const Orientation orientation = orientation_from_string(meta[2]);

  if (lines.size() < 2 || split_csv_line(lines[1], origin, 2) !=
                              std::vector<std::string>{"source_task",
                                                       "performance"}) {
    fail(ErrorCode::ParseError, origin,
         "second line must be the header 'source_task,performance'");
  }

  std::vector<AffinityEntry> entries;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_csv_line(lines[i], origin, i + 1);
    if (fields.size() != 2) {
      std::ostringstream msg;
      msg << "row " << i + 1 << " has " << fields.size()
          << " fields, expected 2";
      fail(ErrorCode::ParseError, origin, msg.str());
    }
    const double performance = parse_double(fields[1], origin, i + 1);
    if (!std::isfinite(performance)) {
      fail(ErrorCode::NonFiniteScore, origin,
           "non-finite performance for source '" + fields[0] + "'");
    }
    entries.push_back({TaskId(fields[0]), performance});
  }
  if (entries.empty()) {
    fail(ErrorCode::Validation, origin, "affinity table has no entries");
  }
  return AffinityTable(TaskId(meta[1]), std::move(entries), orientation);
}

// ---------------------------------------------------------------------------
// Matrix CSV
// ---------------------------------------------------------------------------

namespace {

std::string matrix_csv_body(const std::vector<std::string>& ids,
                            const Matrix& values, const char* id_column) {
  std::ostringstream out;
  out << id_column;
  for (const auto& id : ids) out << ',' << csv_field(id);
  out << '\n';
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << csv_field(ids[i]);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      out << ',' << fmt17(values(i, j));
    }
    out << '\n';
  }
  return out.str();
}

struct ParsedMatrix {
  std::vector<std::string> ids;
  Matrix values;
};

ParsedMatrix parse_matrix_body(const std::vector<std::string>& lines,
                               std::size_t first_line,
                               const std::string& origin, double diagonal) {
  if (lines.size() <= first_line) {
    fail(ErrorCode::ParseError, origin, "missing matrix header row");
  }
  auto header = split_csv_line(lines[first_line], origin, first_line + 1);
  if (header.size() < 2) {
    fail(ErrorCode::ParseError, origin, "matrix header row has no ids");
  }
  std::vector<std::string> ids(header.begin() + 1, header.end());
  const std::size_t n = ids.size();

  Matrix values(n, n);
  std::size_t row = 0;
  for (std::size_t i = first_line + 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_csv_line(lines[i], origin, i + 1);
    if (row >= n) {
      fail(ErrorCode::ParseError, origin, "more matrix rows than header ids");
    }
    if (fields.size() != n + 1) {
      std::ostringstream msg;
      msg << "row " << i + 1 << " has " << fields.size()
          << " fields, expected " << n + 1;
      fail(ErrorCode::ParseError, origin, msg.str());
    }
    if (fields[0] != ids[row]) {
      std::ostringstream msg;
      msg << "row label '" << fields[0] << "' does not match header id '"
          << ids[row] << "'";
      fail(ErrorCode::ParseError, origin, msg.str());
    }
    for (std::size_t j = 0; j < n; ++j) {
      values(row, j) = parse_double(fields[j + 1], origin, i + 1);
    }
    ++row;
  }
  if (row != n) {
    std::ostringstream msg;
    msg << "matrix has " << row << " rows, expected " << n;
    fail(ErrorCode::ParseError, origin, msg.str());
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (values(i, i) != diagonal) {
      std::ostringstream msg;
      msg << "diagonal entry for '" << ids[i] << "' is " << values(i, i)
          << ", expected exactly " << fmt17(diagonal);
      fail(ErrorCode::BadDiagonal, origin, msg.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(values(i, j) - values(j, i)) > 1e-9) {
        std::ostringstream msg;
        msg << "asymmetry beyond 1e-9 between ('" << ids[i] << "', '"
            << ids[j] << "')";
        fail(ErrorCode::AsymmetricBeyondTolerance, origin, msg.str());
      }
      values(j, i) = values(i, j);  // mirror the lower triangle
    }
  }
  return {std::move(ids), std::move(values)};
}

}  // namespace

void write_matrix(const RDM& rdm, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "#rdm," << csv_field(rdm.task().name());
  for (const auto& id : rdm.degenerate_conditions()) {
    out << ',' << csv_field(id);
  }
  out << '\n'
      << matrix_csv_body(rdm.conditions(), rdm.values(), "condition");
  write_file_text(path, out.str());
}

void write_matrix(const SimilarityMatrix& sim,
                  const std::filesystem::path& path) {
  std::vector<std::string> ids;
  ids.reserve(sim.task_count());
  for (const auto& task : sim.tasks()) ids.push_back(task.name());
  write_file_text(path, "#similarity\n" +
                            matrix_csv_body(ids, sim.values(), "task"));
}

MatrixFile read_matrix(const std::filesystem::path& path) {
  const std::string origin = path.string();
  const std::vector<std::string> lines = read_lines(read_file_text(path));
  if (lines.empty()) {
    fail(ErrorCode::ParseError, origin, "empty matrix file");
  }
  const auto meta = split_csv_line(lines[0], origin, 1);
  if (meta[0] == "#rdm") {
    if (meta.size() < 2 || meta[1].empty()) {
      fail(ErrorCode::ParseError, origin, "#rdm line is missing a task name");
    }
    ParsedMatrix parsed = parse_matrix_body(lines, 1, origin, 0.0);
    std::vector<std::string> degenerate(meta.begin() + 2, meta.end());
    return RDM(TaskId(meta[1]), std::move(parsed.ids),
               std::move(parsed.values), std::move(degenerate));
  }
  if (meta[0] == "#similarity") {
    ParsedMatrix parsed = parse_matrix_body(lines, 1, origin, 1.0);
    std::vector<TaskId> tasks;
    tasks.reserve(parsed.ids.size());
    for (auto& id : parsed.ids) tasks.emplace_back(std::move(id));
    return SimilarityMatrix(std::move(tasks), std::move(parsed.values));
  }
  fail(ErrorCode::ParseError, origin,
       "first line must be '#rdm,<task>' or '#similarity'");
}

RDM read_rdm(const std::filesystem::path& path) {
  MatrixFile file = read_matrix(path);
  if (auto* rdm = std::get_if<RDM>(&file)) return std::move(*rdm);
  throw Error(ErrorCode::ParseError,
              path.string() + ": expected an RDM file, found a similarity "
                              "matrix");
}

SimilarityMatrix read_similarity(const std::filesystem::path& path) {
  MatrixFile file = read_matrix(path);
  if (auto* sim = std::get_if<SimilarityMatrix>(&file)) {
    return std::move(*sim);
  }
  throw Error(ErrorCode::ParseError,
              path.string() + ": expected a similarity matrix file, found an "
                              "RDM");
}

// ---------------------------------------------------------------------------
// Dendrograms
// ---------------------------------------------------------------------------

namespace {

bool newick_needs_quotes(const std::string& label) {
  if (label.empty()) return true;
  for (char c : label) {
    const bool plain = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                       (c >= '0' && c <= '9') || c == '_' || c == '.' ||
                       c == '-' || c == '|';
    if (!plain) return true;
  }
  return false;
}

std::string newick_label(const std::string& label) {
  if (!newick_needs_quotes(label)) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

void build_newick(const Dendrogram& dend, std::size_t node,
                  double parent_height, std::string& out) {
  const std::size_t t = dend.leaf_count();
  if (node < t) {
    out += newick_label(dend.leaves()[node].name());
    out += ':';
    out += fmt_shortest(parent_height);
    return;
  }
  const Merge& merge = dend.merges()[node - t];
  out += '(';
  build_newick(dend, merge.left, merge.height, out);
  out += ',';
  build_newick(dend, merge.right, merge.height, out);
  out += ')';
  out += ':';
  out += fmt_shortest(parent_height - merge.height);
}

}  // namespace

std::string to_newick(const Dendrogram& dend) {
  const Merge& root = dend.merges().back();
  std::string out = "(";
  build_newick(dend, root.left, root.height, out);
  out += ',';
  build_newick(dend, root.right, root.height, out);
  out += ");\n";
  return out;
}

std::string to_dendrogram_json(const Dendrogram& dend) {
  json j;
  j["leaves"] = json::array();
  for (const auto& leaf : dend.leaves()) j["leaves"].push_back(leaf.name());
  j["merges"] = json::array();
  for (const auto& merge : dend.merges()) {
    j["merges"].push_back({{"left", merge.left},
                           {"right", merge.right},
                           {"height", merge.height}});
  }
  j["tie_break"] = std::string(dend.tie_break());
  return j.dump(2) + "\n";
}

void write_dendrogram(const Dendrogram& dend,
                      const std::filesystem::path& path,
                      DendrogramFormat format) {
  write_file_text(path, format == DendrogramFormat::Newick
                            ? to_newick(dend)
                            : to_dendrogram_json(dend));
}

Dendrogram read_dendrogram_json(const std::filesystem::path& path) {
  const std::string origin = path.string();
  json j;
  try {
    j = json::parse(read_file_text(path));
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, origin, e.what());
  }
  try {
    std::vector<TaskId> leaves;
    for (const auto& name : j.at("leaves")) {
      leaves.emplace_back(name.get<std::string>());
    }
    std::vector<Merge> merges;
    for (const auto& merge : j.at("merges")) {
      merges.push_back({merge.at("left").get<std::size_t>(),
                        merge.at("right").get<std::size_t>(),
                        merge.at("height").get<double>()});
    }
    return Dendrogram(std::move(leaves), std::move(merges));
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, origin, e.what());
  }
}

// ---------------------------------------------------------------------------
// Synthetic spec JSON
// ---------------------------------------------------------------------------

SyntheticSpec parse_synthetic_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("spec JSON: ") + e.what());
  }

  SyntheticSpec spec;
  auto get_field = [&j](const char* field) -> const json& {
    auto it = j.find(field);
    if (it == j.end()) {
      throw Error(ErrorCode::ParseError,
                  std::string("spec JSON: missing field '") + field + "'");
    }
    return *it;
  };
  try {
    spec.seed = get_field("seed").get<std::uint64_t>();
    spec.n_conditions = get_field("n_conditions").get<std::uint32_t>();
    spec.latent_dim = get_field("latent_dim").get<std::uint32_t>();
    spec.feature_dim_per_task =
        get_field("feature_dim_per_task").get<std::uint32_t>();
    spec.noise_sigma = get_field("noise_sigma").get<double>();
    for (const auto& group_json : get_field("groups")) {
      SyntheticGroup group;
      group.name = group_json.at("name").get<std::string>();
      group.alpha = group_json.at("alpha").get<double>();
      for (const auto& task : group_json.at("tasks")) {
        group.tasks.push_back(task.get<std::string>());
      }
      spec.groups.push_back(std::move(group));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("spec JSON: ") + e.what());
  }
  spec.validate();
  return spec;
}

SyntheticSpec read_synthetic_spec(const std::filesystem::path& path) {
  try {
    return parse_synthetic_spec(read_file_text(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoFailure) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_synthetic_spec(const SyntheticSpec& spec,
                          const std::filesystem::path& path) {
  spec.validate();
  json j;
  j["seed"] = spec.seed;
  j["n_conditions"] = spec.n_conditions;
  j["latent_dim"] = spec.latent_dim;
  j["groups"] = json::array();
  for (const auto& group : spec.groups) {
    j["groups"].push_back(
        {{"name", group.name}, {"tasks", group.tasks}, {"alpha", group.alpha}});
  }
  j["feature_dim_per_task"] = spec.feature_dim_per_task;
  j["noise_sigma"] = spec.noise_sigma;
  write_file_text(path, j.dump(2) + "\n");
}

}  // namespace rsa
