#include "mofa/cli.hpp"
#include "mofa/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace mofa;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("mofa_cli_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

const char* kSpec = R"({"dim": 32, "fps": 1, "seed": 42, "segments": [
  {"length": 100}, {"length": 100}, {"length": 100},
  {"length": 100, "kind": "burst"}, {"length": 100}, {"length": 100}]})";

// Writes the 600-frame stream and returns its directory layout.
void make_stream(const TempDir& d) {
  spit(d / "spec.json", kSpec);
  const auto r = run({"synth", "--spec", d / "spec.json", "--out-features", d / "f.npy",
                      "--out-anchors", d / "a.jsonl", "--out-manifest", d / "m.json"});
  REQUIRE(r.code == 0);
}

ordered_json without_elapsed(const std::string& text) {
  auto j = ordered_json::parse(text);
  j.erase("elapsed_ms");
  return j;
}

}  // namespace

TEST_CASE("synth writes features, anchors and a valid manifest") {
  TempDir d;
  make_stream(d);
  const auto seq = read_feature_file(fs::path(d / "f.npy"));
  CHECK(seq.size() == 600);
  CHECK(seq.dim() == 32);
  CHECK(read_anchors(fs::path(d / "a.jsonl")).size() == 6);
  const auto m = read_manifest(d / "m.json");
  CHECK(m.features == "f.npy");
  CHECK(m.anchors == std::vector<std::string>{"a.jsonl"});
  CHECK(m.duration == 600.0);
  const auto r = run({"inspect", "--manifest", d / "m.json"});
  CHECK(r.code == 0);
  CHECK(ordered_json::parse(r.out)["valid"] == true);
}

TEST_CASE("compress writes 60 rows, a report and a prompt") {
  TempDir d;
  make_stream(d);
  const auto r = run({"compress", "--in", d / "f.npy", "--out", d / "c.npy", "--target-len", "60",
                      "--report", d / "r.json", "--prompt", d / "p.txt"});
  REQUIRE(r.code == 0);
  const auto out = read_feature_file(fs::path(d / "c.npy"));
  CHECK(out.size() == 60);
  const auto report = ordered_json::parse(slurp(d / "r.json"));
  CHECK(report["output_len"] == 60);
  CHECK(report["input_len"] == 600);
  std::size_t total = 0;
  for (const auto& v : report["r_final"]) total += v.get<std::size_t>();
  CHECK(total == 60);
  CHECK(slurp(d / "p.txt").rfind("This video contains 60 frames sampled at ", 0) == 0);

  const auto info = ordered_json::parse(run({"inspect", "--in", d / "c.npy"}).out);
  CHECK(info["frames"] == 60);
  CHECK(info["dim"] == 32);
}

TEST_CASE("compress output is byte-identical across runs and worker counts") {
  TempDir d;
  make_stream(d);
  const std::vector<std::string> base{"compress", "--in", d / "f.npy", "--target-len", "60"};
  auto with = [&](const std::string& tag) {
    auto args = base;
    args.insert(args.end(), {"--out", d / (tag + ".npy"), "--report", d / (tag + ".json")});
    return args;
  };
  REQUIRE(run(with("one")).code == 0);
  REQUIRE(run(with("two")).code == 0);
  ::setenv("MOFA_THREADS", "3", 1);
  REQUIRE(run(with("three")).code == 0);
  ::unsetenv("MOFA_THREADS");
  CHECK(slurp(d / "one.npy") == slurp(d / "two.npy"));
  CHECK(slurp(d / "one.npy") == slurp(d / "three.npy"));
  CHECK(without_elapsed(slurp(d / "one.json")) == without_elapsed(slurp(d / "two.json")));
  CHECK(without_elapsed(slurp(d / "one.json")) == without_elapsed(slurp(d / "three.json")));
}

TEST_CASE("compress validation errors exit 1") {
  TempDir d;
  make_stream(d);
  auto r = run({"compress", "--in", d / "f.npy", "--out", d / "c.npy", "--target-len", "0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("target-len must be ≥ 1") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "c.npy"));

  spit(d / "junk.npy", "junk");
  r = run({"compress", "--in", d / "junk.npy", "--out", d / "c.npy"});
  CHECK(r.code == 1);
  CHECK(r.err.find("bad magic") != std::string::npos);

  r = run({"compress", "--in", d / "missing.npy", "--out", d / "c.npy"});
  CHECK(r.code == 1);
}

TEST_CASE("eval self-match scores 1 at every threshold") {
  TempDir d;
  make_stream(d);
  for (const auto& dur : {std::vector<std::string>{"--manifest", d / "m.json"},
                          std::vector<std::string>{"--duration", "600"}}) {
    std::vector<std::string> args{"eval", "--pred", d / "a.jsonl", "--gt", d / "a.jsonl"};
    args.insert(args.end(), dur.begin(), dur.end());
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto j = ordered_json::parse(r.out);
    for (const char* k : {"0.3", "0.5", "0.7", "0.9"}) {
      CHECK(j["precision"][k] == 1.0);
      CHECK(j["recall"][k] == 1.0);
    }
    CHECK(j["f1"] == 1.0);
  }
}

TEST_CASE("eval options") {
  TempDir d;
  spit(d / "p.jsonl", "{\"t\": 10}\n");
  spit(d / "g.jsonl", "{\"t\": 14}\n");
  auto r = run({"eval", "--pred", d / "p.jsonl", "--gt", d / "g.jsonl", "--duration", "100",
                "--thresholds", "0.3,0.5"});
  REQUIRE(r.code == 0);
  auto j = ordered_json::parse(r.out);
  CHECK(j["precision"]["0.3"] == 1.0);
  CHECK(j["precision"]["0.5"] == 0.0);
  CHECK(j["precision"].size() == 2);

  r = run({"eval", "--pred", d / "p.jsonl", "--gt", d / "g.jsonl", "--duration", "100",
           "--expansion", "10"});
  REQUIRE(r.code == 0);
  j = ordered_json::parse(r.out);
  // Windows [0, 20] and [4, 24]: IoU 16/24.
  CHECK(j["precision"]["0.5"] == 1.0);
  CHECK(j["precision"]["0.7"] == 0.0);

  r = run({"eval", "--pred", d / "p.jsonl", "--gt", d / "g.jsonl"});
  CHECK(r.code == 1);
  r = run({"eval", "--pred", d / "p.jsonl", "--gt", d / "g.jsonl", "--duration", "5"});
  CHECK(r.code == 1);
}

TEST_CASE("segment prints boundaries") {
  TempDir d;
  make_stream(d);
  auto r = run({"segment", "--in", d / "f.npy"});
  REQUIRE(r.code == 0);
  auto j = ordered_json::parse(r.out);
  CHECK(j["method"] == "descent");
  const auto b = j["boundaries"].get<std::vector<std::size_t>>();
  REQUIRE(b.size() == 7);
  CHECK(b[1] == 100);
  CHECK(b[2] == 200);
  CHECK(b[3] == 300);
  CHECK(b[5] == 500);
  r = run({"segment", "--in", d / "f.npy", "--exact"});
  REQUIRE(r.code == 0);
  CHECK(ordered_json::parse(r.out)["method"] == "exact");
  CHECK(run({"segment", "--in", d / "f.npy", "--clusters", "601"}).code == 1);
}

TEST_CASE("posenc extends a table") {
  TempDir d;
  write_embedding_table(EmbeddingTable(4, 1, {0, 1, 2, 3}), d / "pe.npy");
  auto r = run({"posenc", "--in", d / "pe.npy", "--out", d / "p.npy", "--len", "6"});
  REQUIRE(r.code == 0);
  CHECK(read_embedding_table(d / "p.npy").values() == std::vector<float>{0, 1, 2, 3, 0, 1});
  r = run({"posenc", "--in", d / "pe.npy", "--out", d / "i.npy", "--len", "7", "--mode",
           "interpolate"});
  REQUIRE(r.code == 0);
  CHECK(read_embedding_table(d / "i.npy").values() ==
        std::vector<float>{0, 0.5f, 1, 1.5f, 2, 2.5f, 3});
  CHECK(run({"posenc", "--in", d / "pe.npy", "--out", d / "x.npy", "--len", "6", "--mode", "cubic"})
            .code == 2);
  CHECK(run({"posenc", "--in", d / "pe.npy", "--out", d / "x.npy", "--len", "0"}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  const auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("Subcommands") != std::string::npos);
  CHECK(run({"compress", "--in", "x.npy"}).code == 2);
  CHECK(run({"compress", "--in", "x.npy", "--out", "y.npy", "--target-len", "abc"}).code == 2);
  CHECK(run({"inspect"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
