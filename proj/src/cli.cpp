#include "mofa/cli.hpp"

#include "mofa/compressor.hpp"
#include "mofa/io.hpp"
#include "mofa/parallel.hpp"
#include "mofa/posenc.hpp"
#include "mofa/sdvc_eval.hpp"
#include "mofa/segmenter.hpp"
#include "mofa/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

namespace mofa {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct CompressArgs {
  std::string in, out, report, prompt;
  CompressionConfig cfg;
};

struct SegmentArgs {
  std::string in;
  SegmenterConfig cfg;
  bool exact = false;
};

struct EvalArgs {
  std::string pred, gt, manifest;
  std::optional<double> duration;
  EvalConfig cfg;
};

struct SynthArgs {
  std::string spec, out_features, out_anchors, out_manifest;
};

struct PosencArgs {
  std::string in, out, mode = "periodic";
  std::size_t len = 0;
};

struct InspectArgs {
  std::string in, manifest;
};

int run_compress(const CompressArgs& a, std::ostream& out) {
  validate(a.cfg);
  const auto seq = read_feature_file(a.in);
  CompressionConfig cfg = a.cfg;
  cfg.threads = threads_from_env();
  const auto result = compress(seq, cfg);
  write_feature_file(result.sequence, a.out);
  if (!a.report.empty()) {
    std::ofstream r(a.report, std::ios::trunc);
    if (!r) {
      throw std::runtime_error("cannot open " + a.report + " for writing");
    }
    r << to_json(result.report).dump(2) << '\n';
  }
  if (!a.prompt.empty()) {
    std::ofstream p(a.prompt, std::ios::trunc);
    if (!p) {
      throw std::runtime_error("cannot open " + a.prompt + " for writing");
    }
    p << format_timestamp_prompt(result.sequence) << '\n';
  }
  (void)out;
  return kExitOk;
}

int run_segment(const SegmentArgs& a, std::ostream& out) {
  const auto seq = read_feature_file(a.in);
  SegmenterConfig cfg = a.cfg;
  cfg.threads = threads_from_env();
  if (cfg.max_iters == 0) {
    throw std::invalid_argument("max-iters must be ≥ 1");
  }
  const bool exact = a.exact || seq.size() <= cfg.exact_threshold;
  const Partition p = exact ? dp_optimal_partition(seq, cfg.num_clusters, cfg.threads)
                            : segment(seq, cfg);
  ordered_json j;
  j["schema"] = 1;
  j["method"] = exact ? "exact" : "descent";
  j["boundaries"] = p.boundaries();
  j["objective"] = cluster_objective(seq, p);
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_eval(const EvalArgs& a, std::ostream& out) {
  double duration = 0.0;
  if (a.duration) {
    duration = *a.duration;
  } else if (!a.manifest.empty()) {
    duration = read_manifest(a.manifest).duration;
  } else {
    throw std::invalid_argument("either --duration or --manifest is required");
  }
  AnchorSet preds{read_anchors(fs::path(a.pred)), duration};
  AnchorSet gts{read_anchors(fs::path(a.gt)), duration};
  const auto report = evaluate(preds, gts, a.cfg);
  out << to_json(report, a.cfg.expansion).dump(2) << '\n';
  return kExitOk;
}

int run_synth(const SynthArgs& a, std::ostream&) {
  std::ifstream in(a.spec);
  if (!in) {
    throw std::runtime_error("cannot open " + a.spec);
  }
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error&) {
    throw FormatError("stream spec is not valid JSON");
  }
  const auto spec = stream_spec_from_json(j);
  const auto stream = generate_stream(spec);
  write_feature_file(stream.features, a.out_features);
  write_anchors(fs::path(a.out_anchors), stream.anchors.items);
  if (!a.out_manifest.empty()) {
    const fs::path manifest_path(a.out_manifest);
    const fs::path base = manifest_path.parent_path();
    Manifest m;
    m.duration = stream.anchors.duration;
    m.fps = spec.fps;
    m.dim = spec.dim;
    m.frame_count = stream.features.size();
    m.features = fs::proximate(fs::absolute(a.out_features), fs::absolute(base)).generic_string();
    m.anchors = {fs::proximate(fs::absolute(a.out_anchors), fs::absolute(base)).generic_string()};
    write_manifest(m, manifest_path);
  }
  return kExitOk;
}

int run_posenc(const PosencArgs& a, std::ostream&) {
  const auto table = read_embedding_table(a.in);
  EmbeddingTable extended;
  if (a.mode == "periodic") {
    extended = extend_periodic(table, a.len);
  } else {
    extended = extend_interpolate(table, a.len);
  }
  write_embedding_table(extended, a.out);
  return kExitOk;
}

int run_inspect(const InspectArgs& a, std::ostream& out) {
  ordered_json j;
  j["schema"] = 1;
  if (!a.manifest.empty()) {
    const fs::path path(a.manifest);
    const auto m = read_manifest(path);
    check_manifest(m, path.parent_path());
    j["manifest"] = to_json(m);
    j["valid"] = true;
  } else {
    const auto seq = read_feature_file(a.in);
    j["frames"] = seq.size();
    j["dim"] = seq.dim();
    j["t_first"] = seq[0].timestamp;
    j["t_last"] = seq[seq.size() - 1].timestamp;
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motion-aware compression of timestamped feature sequences", "mofa"};
  app.require_subcommand(1);

  CompressArgs ca;
  auto* compress_cmd = app.add_subcommand("compress", "Compress a feature file to a fixed length");
  compress_cmd->add_option("--in", ca.in, "Input feature file (.npy)")->required();
  compress_cmd->add_option("--out", ca.out, "Output feature file (.npy)")->required();
  compress_cmd->add_option("--report", ca.report, "Write the compression report (JSON)");
  compress_cmd->add_option("--prompt", ca.prompt, "Write the timestamp prompt (text)");
  compress_cmd->add_option("--target-len", ca.cfg.target_len, "Output length N_p")->capture_default_str();
  compress_cmd->add_option("--clusters", ca.cfg.num_clusters, "Temporal clusters U")->capture_default_str();
  compress_cmd->add_option("--delta", ca.cfg.delta, "Motion-penalty threshold")->capture_default_str();
  compress_cmd->add_option("--max-iters", ca.cfg.max_iters, "Boundary sweeps cap")->capture_default_str();
  compress_cmd->add_option("--exact-threshold", ca.cfg.exact_threshold,
                           "Largest input segmented exactly")->capture_default_str();

  SegmentArgs sa;
  auto* segment_cmd = app.add_subcommand("segment", "Print the temporal clustering of a feature file");
  segment_cmd->add_option("--in", sa.in, "Input feature file (.npy)")->required();
  segment_cmd->add_option("--clusters", sa.cfg.num_clusters, "Temporal clusters U")->capture_default_str();
  segment_cmd->add_option("--max-iters", sa.cfg.max_iters, "Boundary sweeps cap")->capture_default_str();
  segment_cmd->add_option("--exact-threshold", sa.cfg.exact_threshold,
                          "Largest input segmented exactly")->capture_default_str();
  segment_cmd->add_flag("--exact", sa.exact, "Always use the exact dynamic program");

  EvalArgs ea;
  double duration = 0.0;
  auto* eval_cmd = app.add_subcommand("eval", "Score predicted anchors against references");
  eval_cmd->add_option("--pred", ea.pred, "Predicted anchors (JSON lines)")->required();
  eval_cmd->add_option("--gt", ea.gt, "Reference anchors (JSON lines)")->required();
  auto* duration_opt = eval_cmd->add_option("--duration", duration, "Video length in seconds");
  eval_cmd->add_option("--manifest", ea.manifest, "Manifest supplying the duration")->excludes(duration_opt);
  eval_cmd->add_option("--expansion", ea.cfg.expansion, "Seconds added on each side of an anchor")
      ->capture_default_str();
  eval_cmd->add_option("--thresholds", ea.cfg.thresholds, "IoU thresholds")->delimiter(',');
  eval_cmd->add_option("--f1-threshold", ea.cfg.f1_threshold, "IoU threshold for F1")->capture_default_str();

  SynthArgs ya;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic feature stream");
  synth_cmd->add_option("--spec", ya.spec, "Stream spec (JSON)")->required();
  synth_cmd->add_option("--out-features", ya.out_features, "Output feature file (.npy)")->required();
  synth_cmd->add_option("--out-anchors", ya.out_anchors, "Output anchors (JSON lines)")->required();
  synth_cmd->add_option("--out-manifest", ya.out_manifest, "Output manifest (JSON)");

  PosencArgs pa;
  auto* posenc_cmd = app.add_subcommand("posenc", "Extend a positional-embedding table");
  posenc_cmd->add_option("--in", pa.in, "Input table (.npy, L x D)")->required();
  posenc_cmd->add_option("--out", pa.out, "Output table (.npy)")->required();
  posenc_cmd->add_option("--mode", pa.mode, "periodic or interpolate")
      ->check(CLI::IsMember({"periodic", "interpolate"}))
      ->capture_default_str();
  posenc_cmd->add_option("--len", pa.len, "New table length")->required();

  InspectArgs ia;
  auto* inspect_cmd = app.add_subcommand("inspect", "Describe a feature file or validate a manifest");
  auto* in_opt = inspect_cmd->add_option("--in", ia.in, "Feature file (.npy)");
  auto* manifest_opt = inspect_cmd->add_option("--manifest", ia.manifest, "Manifest (JSON)");
  in_opt->excludes(manifest_opt);
  inspect_cmd->require_option(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) {
      return kExitOk;
    }
    err << app.help();
    return kExitUsage;
  }
  if (duration_opt->count() > 0) {
    ea.duration = duration;
  }

  try {
    if (compress_cmd->parsed()) {
      return run_compress(ca, out);
    }
    if (segment_cmd->parsed()) {
      return run_segment(sa, out);
    }
    if (eval_cmd->parsed()) {
      return run_eval(ea, out);
    }
    if (synth_cmd->parsed()) {
      return run_synth(ya, out);
    }
    if (posenc_cmd->parsed()) {
      return run_posenc(pa, out);
    }
    if (inspect_cmd->parsed()) {
      return run_inspect(ia, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace mofa
