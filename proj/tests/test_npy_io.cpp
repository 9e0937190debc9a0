#include "mofa/io.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace mofa;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("mofa_io_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Hand-built v1.0 file with an arbitrary header dictionary.
std::string npy_with_header(const std::string& dict, std::size_t payload_bytes) {
  std::string header = dict;
  const std::size_t total = 10 + header.size() + 1;
  header.append((64 - total % 64) % 64, ' ');
  header.push_back('\n');
  std::string s("\x93NUMPY\x01\x00", 8);
  s.push_back(char(header.size() & 0xff));
  s.push_back(char(header.size() >> 8));
  s += header;
  s.append(payload_bytes, '\0');
  return s;
}

}  // namespace

TEST_CASE("npy header layout") {
  std::ostringstream out;
  write_npy(out, NpyMatrix{2, 3, {1, 2, 3, 4, 5, 6}});
  const std::string s = out.str();
  CHECK(s.substr(0, 8) == std::string("\x93NUMPY\x01\x00", 8));
  const std::size_t hlen = std::size_t(std::uint8_t(s[8])) | (std::size_t(std::uint8_t(s[9])) << 8);
  CHECK((10 + hlen) % 64 == 0);
  CHECK(s.find("{'descr': '<f4', 'fortran_order': False, 'shape': (2, 3), }") == 10);
  CHECK(s[10 + hlen - 1] == '\n');
  CHECK(s.size() == 10 + hlen + 24);
}

TEST_CASE("npy round trip is bitwise") {
  std::mt19937_64 rng(3);
  std::normal_distribution<float> g;
  for (std::size_t rows : {1, 7, 100}) {
    NpyMatrix m{rows, 5, std::vector<float>(rows * 5)};
    for (auto& x : m.data) x = g(rng);
    std::stringstream buf;
    write_npy(buf, m);
    CHECK(read_npy(buf) == m);
  }
}

TEST_CASE("npy reader accepts version 2 headers") {
  std::string s = npy_with_header("{'descr': '<f4', 'fortran_order': False, 'shape': (1, 2), }", 0);
  // Rewrite as v2.0 with a 4-byte header length.
  const std::string header = s.substr(10);
  std::string v2("\x93NUMPY\x02\x00", 8);
  const std::uint32_t hlen = std::uint32_t(header.size());
  for (int b = 0; b < 4; ++b) v2.push_back(char((hlen >> (8 * b)) & 0xff));
  v2 += header;
  const float vals[2] = {1.5f, -2.0f};
  v2.append(reinterpret_cast<const char*>(vals), sizeof vals);
  std::istringstream in(v2);
  CHECK(read_npy(in) == NpyMatrix{1, 2, {1.5f, -2.0f}});
}

TEST_CASE("npy reader errors") {
  std::istringstream junk(std::string("not an npy file at all"));
  CHECK_THROWS_WITH_AS(read_npy(junk), "bad magic", FormatError);

  std::istringstream f8(npy_with_header("{'descr': '<f8', 'fortran_order': False, 'shape': (1, 2), }", 16));
  CHECK_THROWS_AS(read_npy(f8), FormatError);

  std::istringstream fortran(
      npy_with_header("{'descr': '<f4', 'fortran_order': True, 'shape': (2, 2), }", 16));
  CHECK_THROWS_AS(read_npy(fortran), FormatError);

  std::istringstream rank(npy_with_header("{'descr': '<f4', 'fortran_order': False, 'shape': (4,), }", 16));
  CHECK_THROWS_AS(read_npy(rank), FormatError);

  std::istringstream shortdata(
      npy_with_header("{'descr': '<f4', 'fortran_order': False, 'shape': (2, 2), }", 8));
  CHECK_THROWS_AS(read_npy(shortdata), FormatError);
}

TEST_CASE("feature files round trip bitwise and write identical bytes") {
  TempDir dir;
  std::mt19937_64 rng(11);
  const auto seq = oracle::random_sequence(rng, 40, 9);
  write_feature_file(seq, dir.path / "a.npy");
  write_feature_file(seq, dir.path / "b.npy");
  CHECK(read_feature_file(dir.path / "a.npy") == seq);
  CHECK(bytes_of(dir.path / "a.npy") == bytes_of(dir.path / "b.npy"));
}

TEST_CASE("feature file ingestion rules") {
  CHECK_THROWS_WITH_AS(feature_sequence_from_matrix(NpyMatrix{2, 2, {0, 1, 0, 1}}),
                       "non-increasing timestamps", FormatError);
  CHECK_THROWS_AS(feature_sequence_from_matrix(NpyMatrix{2, 3, {0, 1, 0, 1, 0, 0}}), FormatError);
  CHECK_THROWS_AS(feature_sequence_from_matrix(NpyMatrix{1, 1, {0}}), FormatError);
  CHECK_THROWS_AS(feature_sequence_from_matrix(NpyMatrix{0, 3, {}}), FormatError);
  const auto ok = feature_sequence_from_matrix(NpyMatrix{2, 3, {0, 1, 0, 0.5f, 0, 2}});
  CHECK(ok.size() == 2);
  CHECK(ok[1].timestamp == 0.5f);
  CHECK(to_matrix(ok) == NpyMatrix{2, 3, {0, 1, 0, 0.5f, 0, 2}});
  CHECK_THROWS_AS(write_feature_file(FeatureSequence{}, fs::temp_directory_path() / "never.npy"),
                  std::invalid_argument);
}

TEST_CASE("embedding tables round trip") {
  TempDir dir;
  const EmbeddingTable t(3, 2, {1, 2, 3, 4, 5, 6});
  write_embedding_table(t, dir.path / "pe.npy");
  CHECK(read_embedding_table(dir.path / "pe.npy") == t);
}

TEST_CASE("anchor JSON lines") {
  std::stringstream buf;
  write_anchors(buf, {{1.5, "a goal"}, {30, "free kick"}});
  CHECK(buf.str() == "{\"t\":1.5,\"caption\":\"a goal\"}\n{\"t\":30.0,\"caption\":\"free kick\"}\n");
  const auto back = read_anchors(buf);
  CHECK(back == std::vector<Anchor>{{1.5, "a goal"}, {30, "free kick"}});

  std::istringstream blank("\n{\"t\": 2}\n\n");
  CHECK(read_anchors(blank) == std::vector<Anchor>{{2, ""}});
  std::istringstream bad("{\"caption\": \"x\"}\n");
  CHECK_THROWS_AS(read_anchors(bad), FormatError);
  std::istringstream broken("{\"t\": \n");
  CHECK_THROWS_AS(read_anchors(broken), FormatError);
}

TEST_CASE("manifest round trip and check") {
  TempDir dir;
  std::mt19937_64 rng(12);
  const auto seq = oracle::random_sequence(rng, 10, 4);
  write_feature_file(seq, dir.path / "f.npy");
  Manifest m;
  m.duration = 10;
  m.dim = 4;
  m.frame_count = 10;
  m.features = "f.npy";
  m.anchors = {"a.jsonl"};
  write_manifest(m, dir.path / "m.json");
  const auto back = read_manifest(dir.path / "m.json");
  CHECK(to_json(back) == to_json(m));
  check_manifest(back, dir.path);

  auto wrong = m;
  wrong.frame_count = 11;
  CHECK_THROWS_AS(check_manifest(wrong, dir.path), FormatError);
  wrong = m;
  wrong.dim = 5;
  CHECK_THROWS_AS(check_manifest(wrong, dir.path), FormatError);
  wrong = m;
  wrong.version = "2";
  CHECK_THROWS_AS(check_manifest(wrong, dir.path), FormatError);
}

TEST_CASE("shortest_decimal") {
  CHECK(shortest_decimal(0.3) == "0.3");
  CHECK(shortest_decimal(1.0) == "1");
  CHECK(shortest_decimal(2.5) == "2.5");
}
