#include <charconv>
#include <cmath>
#include <optional>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "credal/io.hpp"
#include "json.hpp"

namespace credal::io {

using detail::require;
using nlohmann::json;

namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

bool parse_index(std::string_view s, std::size_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoFailure, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::IoFailure, "cannot write " + path.string());
  out << text;
  require(static_cast<bool>(out), ErrorCode::IoFailure, "write failed for " + path.string());
}

PredictionFile parse_jsonl(const std::string& text, double tolerance) {
  PredictionFile file;
  file.format = "jsonl";
  auto& batch = file.batch;
  std::vector<std::size_t> labels;
  std::size_t labelled = 0;
  std::size_t classes = 0;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::MalformedLine, at_line(line_no) + e.what());
    }
    require(obj.is_object(), ErrorCode::MalformedLine, at_line(line_no) + "expected an object");
    if (batch.instances.empty() && obj.contains("meta") && !obj.contains("probs")) {
      file.metadata_json = obj["meta"].dump();
      continue;
    }
    require(obj.contains("probs") && obj["probs"].is_array() && !obj["probs"].empty(),
            ErrorCode::MalformedLine, at_line(line_no) + "missing non-empty \"probs\" array");

    std::vector<std::vector<double>> rows;
    for (const auto& row : obj["probs"]) {
      require(row.is_array(), ErrorCode::MalformedLine, at_line(line_no) + "\"probs\" rows must be arrays");
      std::vector<double> r;
      r.reserve(row.size());
      for (const auto& v : row) {
        require(v.is_number(), ErrorCode::InvalidProbability,
                at_line(line_no) + "non-numeric probability (NaN/Inf are rejected)");
        r.push_back(v.get<double>());
      }
      if (classes == 0) classes = r.size();
      require(r.size() == classes, ErrorCode::InconsistentC,
              at_line(line_no) + "row has " + std::to_string(r.size()) + " classes, expected " +
                  std::to_string(classes));
      rows.push_back(std::move(r));
    }
    try {
      batch.instances.push_back(PredictionSet::from_rows(rows, tolerance));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidProbability, at_line(line_no) + e.what());
    }

    if (obj.contains("id")) {
      const auto& id = obj["id"];
      batch.ids.push_back(id.is_string() ? id.get<std::string>() : id.dump());
    } else {
      batch.ids.push_back(std::to_string(batch.instances.size() - 1));
    }

    if (obj.contains("label") && !obj["label"].is_null()) {
      const auto& l = obj["label"];
      require(l.is_number_integer() && l.get<long long>() >= 0, ErrorCode::MalformedLine,
              at_line(line_no) + "\"label\" must be a non-negative integer");
      const auto y = l.get<std::size_t>();
      require(y < classes, ErrorCode::LabelOutOfRange, at_line(line_no) + "label out of range");
      labels.push_back(y);
      ++labelled;
    } else {
      labels.push_back(0);
    }
  }

  require(labelled == 0 || labelled == batch.instances.size(), ErrorCode::MalformedLine,
          "some instances have labels and others do not");
  if (labelled > 0) batch.labels = std::move(labels);
  return file;
}

PredictionFile read_jsonl(const std::filesystem::path& path, double tolerance) {
  return parse_jsonl(read_text(path), tolerance);
}

PredictionFile parse_csv(const std::string& text, double tolerance) {
  std::istringstream in(text);
  std::string raw;
  require(static_cast<bool>(std::getline(in, raw)), ErrorCode::HeaderMismatch, "empty CSV file");

  const auto header = split(strip_cr(raw), ',');
  require(header.size() >= 5 && header[0] == "instance_id" && header[1] == "sample_idx" &&
              header[2] == "label",
          ErrorCode::HeaderMismatch, "header must start with instance_id,sample_idx,label");
  const std::size_t classes = header.size() - 3;
  for (std::size_t k = 0; k < classes; ++k) {
    require(header[3 + k] == "p" + std::to_string(k), ErrorCode::HeaderMismatch,
            "column " + std::to_string(3 + k) + " should be p" + std::to_string(k));
  }

  struct Pending {
    std::string id;
    std::vector<std::vector<double>> rows;  // indexed by sample_idx
    std::vector<bool> seen;
    std::optional<std::size_t> label;
    std::size_t first_line = 0;
  };
  std::vector<Pending> pending;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = strip_cr(raw);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    require(cells.size() == header.size(), ErrorCode::MalformedLine,
            at_line(line_no) + "expected " + std::to_string(header.size()) + " fields");

    std::string id(cells[0]);
    auto [it, inserted] = index.try_emplace(id, pending.size());
    if (inserted) pending.push_back(Pending{id, {}, {}, std::nullopt, line_no});
    Pending& inst = pending[it->second];

    std::size_t sample = 0;
    require(parse_index(cells[1], sample), ErrorCode::MalformedLine,
            at_line(line_no) + "bad sample_idx");
    if (sample >= inst.rows.size()) {
      inst.rows.resize(sample + 1);
      inst.seen.resize(sample + 1, false);
    }
    require(!inst.seen[sample], ErrorCode::DuplicateSample,
            at_line(line_no) + "instance '" + id + "' repeats sample " + std::to_string(sample));
    inst.seen[sample] = true;

    if (!cells[2].empty()) {
      std::size_t y = 0;
      require(parse_index(cells[2], y), ErrorCode::MalformedLine, at_line(line_no) + "bad label");
      require(y < classes, ErrorCode::LabelOutOfRange, at_line(line_no) + "label out of range");
      require(!inst.label || *inst.label == y, ErrorCode::MalformedLine,
              at_line(line_no) + "conflicting labels for instance '" + id + "'");
      inst.label = y;
    }

    std::vector<double> row(classes);
    for (std::size_t k = 0; k < classes; ++k) {
      require(parse_double(cells[3 + k], row[k]) && std::isfinite(row[k]),
              ErrorCode::InvalidProbability,
              at_line(line_no) + "bad probability in column p" + std::to_string(k));
    }
    inst.rows[sample] = std::move(row);
  }

  PredictionFile file;
  file.format = "csv";
  auto& batch = file.batch;
  std::size_t labelled = 0;
  std::vector<std::size_t> labels;
  for (auto& inst : pending) {
    for (std::size_t n = 0; n < inst.seen.size(); ++n) {
      require(inst.seen[n], ErrorCode::MissingSample,
              "instance '" + inst.id + "' lacks sample " + std::to_string(n));
    }
    try {
      batch.instances.push_back(PredictionSet::from_rows(inst.rows, tolerance));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidProbability,
                  "instance '" + inst.id + "' (from line " + std::to_string(inst.first_line) +
                      "): " + e.what());
    }
    batch.ids.push_back(inst.id);
    labels.push_back(inst.label.value_or(0));
    labelled += inst.label.has_value();
  }
  require(labelled == 0 || labelled == batch.instances.size(), ErrorCode::MalformedLine,
          "some instances have labels and others do not");
  if (labelled > 0) batch.labels = std::move(labels);
  return file;
}

PredictionFile read_csv(const std::filesystem::path& path, double tolerance) {
  return parse_csv(read_text(path), tolerance);
}

PredictionFile read_predictions(const std::filesystem::path& path, double tolerance) {
  const std::string ext = lower_extension(path);
  if (ext == ".npy") {
    const auto array = read_npy(path);
    PredictionFile file;
    file.format = "npy";
    file.dtype = array.dtype;
    file.batch = batch_from_npy(array, tolerance);
    return file;
  }
  if (ext == ".csv") return read_csv(path, tolerance);
  if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return read_jsonl(path, tolerance);
  throw Error(ErrorCode::IoFailure, "unrecognized prediction file extension '" + ext + "'");
}

void write_jsonl(const std::filesystem::path& path, const LabeledBatch& batch,
                 const std::string& metadata_json) {
  std::ostringstream out;
  if (!metadata_json.empty()) out << json{{"meta", json::parse(metadata_json)}}.dump() << '\n';
  for (std::size_t i = 0; i < batch.size(); ++i) {
    json obj;
    obj["id"] = batch.ids.empty() ? std::to_string(i) : batch.ids[i];
    json probs = json::array();
    const auto& inst = batch.instances[i];
    for (std::size_t n = 0; n < inst.samples(); ++n) {
      const auto row = inst.row(n);
      probs.push_back(std::vector<double>(row.begin(), row.end()));
    }
    obj["probs"] = std::move(probs);
    if (batch.labels) obj["label"] = (*batch.labels)[i];
    out << obj.dump() << '\n';
  }
  write_text(path, out.str());
}

}  // namespace credal::io
