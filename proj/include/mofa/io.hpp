#pragma once

#include "mofa/compressor.hpp"
#include "mofa/geometry.hpp"
#include "mofa/npy.hpp"
#include "mofa/posenc.hpp"
#include "mofa/sdvc_eval.hpp"
#include "mofa/synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

namespace mofa {

// Feature files are (N, D + 1) float32 arrays: column 0 holds timestamps,
// columns 1..D the feature vector.

NpyMatrix to_matrix(const FeatureSequence& seq);
/// Validates the ingestion invariants (strictly increasing timestamps, no
/// zero-norm rows); failures surface as FormatError.
FeatureSequence feature_sequence_from_matrix(const NpyMatrix& m);

FeatureSequence read_feature_file(const std::filesystem::path& path);
/// Throws std::invalid_argument for an empty sequence.
void write_feature_file(const FeatureSequence& seq, const std::filesystem::path& path);

EmbeddingTable read_embedding_table(const std::filesystem::path& path);
void write_embedding_table(const EmbeddingTable& table, const std::filesystem::path& path);

/// JSON lines, one {"t": seconds, "caption": text} object per line; blank
/// lines are skipped. The duration is supplied separately.
std::vector<Anchor> read_anchors(std::istream& in);
std::vector<Anchor> read_anchors(const std::filesystem::path& path);
void write_anchors(std::ostream& out, const std::vector<Anchor>& anchors);
void write_anchors(const std::filesystem::path& path, const std::vector<Anchor>& anchors);

struct Manifest {
  std::string version = "1";
  double duration = 0.0;
  double fps = 1.0;
  std::size_t dim = 0;
  std::size_t frame_count = 0;
  std::string features;
  std::vector<std::string> anchors;
};

Manifest manifest_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& m, const std::filesystem::path& path);

/// Checks the version and that the referenced feature file (resolved against
/// base_dir) has frame_count rows of dim features. Throws FormatError.
void check_manifest(const Manifest& m, const std::filesystem::path& base_dir);

StreamSpec stream_spec_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const StreamSpec& spec);

/// Report keys in fixed order: schema, input_len, output_len, passthrough,
/// clusters, boundaries, variances, motion_scores, r_origin, r_raw, r_final,
/// merges, discards, traces, elapsed_ms.
nlohmann::ordered_json to_json(const CompressionReport& report);
nlohmann::ordered_json to_json(const EvalReport& report, double expansion);

/// Shortest decimal that round-trips, e.g. 0.3 -> "0.3".
std::string shortest_decimal(double v);

}  // namespace mofa
