#include "mofa/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace mofa {

using nlohmann::ordered_json;

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  return out;
}

template <typename T>
T field(const ordered_json& j, const char* key) {
  if (!j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const ordered_json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

NpyMatrix to_matrix(const FeatureSequence& seq) {
  NpyMatrix m;
  m.rows = seq.size();
  m.cols = seq.dim() + 1;
  m.data.reserve(m.rows * m.cols);
  for (const auto& f : seq) {
    m.data.push_back(f.timestamp);
    m.data.insert(m.data.end(), f.feature.begin(), f.feature.end());
  }
  return m;
}

FeatureSequence feature_sequence_from_matrix(const NpyMatrix& m) {
  if (m.rows == 0) {
    throw FormatError("feature file has no frames");
  }
  if (m.cols < 2) {
    throw FormatError("feature file needs a timestamp column and at least one feature column");
  }
  std::vector<FeatureFrame> frames(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const float* row = &m.data[i * m.cols];
    frames[i].timestamp = row[0];
    frames[i].feature.assign(row + 1, row + m.cols);
  }
  try {
    return FeatureSequence::from_frames(std::move(frames));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

FeatureSequence read_feature_file(const std::filesystem::path& path) {
  return feature_sequence_from_matrix(read_npy(path));
}

void write_feature_file(const FeatureSequence& seq, const std::filesystem::path& path) {
  if (seq.empty()) {
    throw std::invalid_argument("refusing to write a feature file with zero frames");
  }
  write_npy(path, to_matrix(seq));
}

EmbeddingTable read_embedding_table(const std::filesystem::path& path) {
  auto m = read_npy(path);
  try {
    return EmbeddingTable(m.rows, m.cols, std::move(m.data));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

void write_embedding_table(const EmbeddingTable& table, const std::filesystem::path& path) {
  write_npy(path, NpyMatrix{table.rows(), table.dim(), table.values()});
}

std::vector<Anchor> read_anchors(std::istream& in) {
  std::vector<Anchor> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const std::string where = "anchor line " + std::to_string(line_no) + ": ";
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw FormatError(where + "invalid JSON");
    }
    if (!j.is_object() || !j.contains("t") || !j["t"].is_number()) {
      throw FormatError(where + "expected an object with numeric \"t\"");
    }
    Anchor a;
    a.timestamp = j["t"].get<double>();
    if (j.contains("caption")) {
      if (!j["caption"].is_string()) {
        throw FormatError(where + "\"caption\" must be a string");
      }
      a.caption = j["caption"].get<std::string>();
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Anchor> read_anchors(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_anchors(in);
}

void write_anchors(std::ostream& out, const std::vector<Anchor>& anchors) {
  for (const auto& a : anchors) {
    ordered_json j;
    j["t"] = a.timestamp;
    j["caption"] = a.caption;
    out << j.dump() << '\n';
  }
}

void write_anchors(const std::filesystem::path& path, const std::vector<Anchor>& anchors) {
  auto out = open_out(path);
  write_anchors(out, anchors);
}

Manifest manifest_from_json(const ordered_json& j) {
  if (!j.is_object()) {
    throw FormatError("manifest must be a JSON object");
  }
  Manifest m;
  m.version = field<std::string>(j, "version");
  if (m.version != "1") {
    throw FormatError("unsupported manifest version '" + m.version + "'");
  }
  m.duration = field<double>(j, "duration");
  m.fps = field<double>(j, "fps");
  m.dim = field<std::size_t>(j, "dim");
  m.frame_count = field<std::size_t>(j, "frame_count");
  m.features = field<std::string>(j, "features");
  m.anchors = field_or<std::vector<std::string>>(j, "anchors", {});
  return m;
}

ordered_json to_json(const Manifest& m) {
  ordered_json j;
  j["version"] = m.version;
  j["duration"] = m.duration;
  j["fps"] = m.fps;
  j["dim"] = m.dim;
  j["frame_count"] = m.frame_count;
  j["features"] = m.features;
  j["anchors"] = m.anchors;
  return j;
}

Manifest read_manifest(const std::filesystem::path& path) {
  auto in = open_in(path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error&) {
    throw FormatError("manifest is not valid JSON");
  }
  return manifest_from_json(j);
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << to_json(m).dump(2) << '\n';
}

void check_manifest(const Manifest& m, const std::filesystem::path& base_dir) {
  if (m.version != "1") {
    throw FormatError("unsupported manifest version '" + m.version + "'");
  }
  const auto seq = read_feature_file(base_dir / m.features);
  if (seq.size() != m.frame_count) {
    throw FormatError("manifest frame_count " + std::to_string(m.frame_count) +
                      " does not match the feature file's " + std::to_string(seq.size()) + " rows");
  }
  if (seq.dim() != m.dim) {
    throw FormatError("manifest dim " + std::to_string(m.dim) +
                      " does not match the feature file's " + std::to_string(seq.dim()));
  }
}

StreamSpec stream_spec_from_json(const ordered_json& j) {
  if (!j.is_object()) {
    throw FormatError("stream spec must be a JSON object");
  }
  StreamSpec spec;
  spec.dim = field<std::size_t>(j, "dim");
  spec.fps = field_or<double>(j, "fps", 1.0);
  spec.seed = field_or<std::uint64_t>(j, "seed", 0);
  if (!j.contains("segments") || !j["segments"].is_array()) {
    throw FormatError("stream spec needs a \"segments\" array");
  }
  for (const auto& s : j["segments"]) {
    SegmentSpec seg;
    seg.length = field<std::size_t>(s, "length");
    const auto kind = field_or<std::string>(s, "kind", "static");
    if (kind == "static") {
      seg.kind = SegmentKind::static_scene;
    } else if (kind == "burst") {
      seg.kind = SegmentKind::burst;
    } else {
      throw FormatError("unknown segment kind '" + kind + "'");
    }
    seg.jitter = field_or<double>(s, "jitter", seg.jitter);
    seg.step = field_or<double>(s, "step", seg.step);
    spec.segments.push_back(seg);
  }
  return spec;
}

ordered_json to_json(const StreamSpec& spec) {
  ordered_json j;
  j["dim"] = spec.dim;
  j["fps"] = spec.fps;
  j["seed"] = spec.seed;
  j["segments"] = ordered_json::array();
  for (const auto& s : spec.segments) {
    j["segments"].push_back({{"length", s.length},
                             {"kind", s.kind == SegmentKind::burst ? "burst" : "static"},
                             {"jitter", s.jitter},
                             {"step", s.step}});
  }
  return j;
}

ordered_json to_json(const CompressionReport& r) {
  ordered_json j;
  j["schema"] = 1;
  j["input_len"] = r.input_len;
  j["output_len"] = r.output_len;
  j["passthrough"] = r.passthrough;
  j["clusters"] = r.clusters;
  j["boundaries"] = r.boundaries;
  j["variances"] = r.variances;
  j["motion_scores"] = r.motion_scores;
  j["r_origin"] = r.r_origin;
  j["r_raw"] = r.r_raw;
  j["r_final"] = r.r_final;
  j["merges"] = r.merge_count();
  j["discards"] = r.discard_count();
  ordered_json traces = ordered_json::array();
  for (const auto& trace : r.traces) {
    ordered_json events = ordered_json::array();
    for (const auto& e : trace) {
      events.push_back({{"kind", e.kind == MergeKind::merged ? "merged" : "discarded"},
                        {"pair_index", e.pair_index},
                        {"penalty", e.penalty}});
    }
    traces.push_back(std::move(events));
  }
  j["traces"] = std::move(traces);
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string shortest_decimal(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

ordered_json to_json(const EvalReport& r, double expansion) {
  ordered_json j;
  j["schema"] = 1;
  j["num_preds"] = r.num_preds;
  j["num_gts"] = r.num_gts;
  j["expansion"] = expansion;
  ordered_json precision = ordered_json::object();
  ordered_json recall = ordered_json::object();
  for (std::size_t i = 0; i < r.thresholds.size(); ++i) {
    const auto key = shortest_decimal(r.thresholds[i]);
    precision[key] = r.precision[i];
    recall[key] = r.recall[i];
  }
  j["precision"] = std::move(precision);
  j["recall"] = std::move(recall);
  j["f1_threshold"] = r.f1_threshold;
  j["f1"] = r.f1;
  ordered_json matches = ordered_json::array();
  for (const auto& m : r.matches) {
    matches.push_back({{"pred", m.pred}, {"gt", m.gt}, {"iou", m.iou}});
  }
  j["matches"] = std::move(matches);
  return j;
}

}  // namespace mofa
