#include "mofa/compressor.hpp"
#include "mofa/synth.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace mofa;

TEST_CASE("config defaults") {
  const CompressionConfig cfg;
  CHECK(cfg.num_clusters == 6);
  CHECK(cfg.delta == 0.3);
  CHECK(cfg.target_len == 96);
  CHECK(MergeConfig{}.delta == 0.3);
  CHECK(SegmenterConfig{}.num_clusters == 6);
  CHECK(SegmenterConfig{}.max_iters == 100);
  CHECK(SegmenterConfig{}.exact_threshold == 512);
}

TEST_CASE("short inputs pass through unchanged") {
  std::mt19937_64 rng(1);
  const auto seq = oracle::random_sequence(rng, 50, 8);
  const auto r = compress(seq, CompressionConfig{});
  CHECK(r.sequence == seq);
  CHECK(r.report.passthrough);
  CHECK(r.report.input_len == 50);
  CHECK(r.report.output_len == 50);
}

TEST_CASE("synthetic stream of 600 frames compresses to exactly 60") {
  const auto stream = generate_stream(static_and_burst_spec(64, 100, 42));
  CompressionConfig cfg;
  cfg.target_len = 60;
  const auto r = compress(stream.features, cfg);
  CHECK(r.sequence.size() == 60);
  CHECK_FALSE(r.report.passthrough);
  CHECK(std::accumulate(r.report.r_final.begin(), r.report.r_final.end(), std::size_t{0}) == 60);
  CHECK(r.report.merge_count() + r.report.discard_count() == 540);
  for (std::size_t i = 1; i < r.sequence.size(); ++i) {
    CHECK(r.sequence[i].timestamp >= r.sequence[i - 1].timestamp);
  }
  CHECK(r.sequence[0].timestamp >= stream.features[0].timestamp);
  CHECK(r.sequence[59].timestamp <= stream.features[599].timestamp);
  // Static scene cuts are recovered; burst frames cost about the same in either
  // neighbouring cluster, so the burst/static cut is free to drift.
  REQUIRE(r.report.boundaries.size() == 7);
  CHECK(r.report.boundaries[1] == 100);
  CHECK(r.report.boundaries[2] == 200);
  CHECK(r.report.boundaries[3] == 300);
  CHECK(r.report.boundaries[5] == 500);
}

TEST_CASE("cluster count is clamped to the target length") {
  std::mt19937_64 rng(2);
  const auto seq = oracle::random_sequence(rng, 40, 4);
  CompressionConfig cfg;
  cfg.target_len = 3;
  cfg.num_clusters = 6;
  const auto r = compress(seq, cfg);
  CHECK(r.report.clusters == 3);
  CHECK(r.sequence.size() == 3);
  cfg.target_len = 1;
  CHECK(compress(seq, cfg).sequence.size() == 1);
}

TEST_CASE("output length is min(N_o, N_p) (randomized)") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> n_dist(1, 300);
  std::uniform_int_distribution<std::size_t> p_dist(1, 128);
  std::uniform_int_distribution<std::size_t> u_dist(1, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = n_dist(rng);
    const auto seq = oracle::random_sequence(rng, n, 4);
    CompressionConfig cfg;
    cfg.target_len = p_dist(rng);
    cfg.num_clusters = u_dist(rng);
    const auto r = compress(seq, cfg);
    CHECK(r.sequence.size() == std::min(n, cfg.target_len));
    CHECK(r.report.output_len == r.sequence.size());
  }
}

TEST_CASE("compress is deterministic across worker counts") {
  const auto stream = generate_stream(static_and_burst_spec(32, 120, 9));
  CompressionConfig cfg;
  cfg.target_len = 40;
  cfg.threads = 1;
  const auto one = compress(stream.features, cfg);
  cfg.threads = 4;
  const auto four = compress(stream.features, cfg);
  CHECK(one.sequence == four.sequence);
  CHECK(one.report.boundaries == four.report.boundaries);
  CHECK(one.report.r_final == four.report.r_final);
  CHECK(one.report.traces == four.report.traces);
}

TEST_CASE("config validation") {
  std::mt19937_64 rng(4);
  const auto seq = oracle::random_sequence(rng, 10, 4);
  CompressionConfig cfg;
  cfg.target_len = 0;
  CHECK_THROWS_WITH_AS(compress(seq, cfg), "target-len must be ≥ 1", std::invalid_argument);
  cfg.target_len = 5;
  cfg.num_clusters = 0;
  CHECK_THROWS_AS(compress(seq, cfg), std::invalid_argument);
  cfg.num_clusters = 2;
  cfg.delta = -0.1;
  CHECK_THROWS_AS(compress(seq, cfg), std::invalid_argument);
  CHECK_THROWS_AS(compress(FeatureSequence{}, CompressionConfig{}), std::invalid_argument);
}

TEST_CASE("format_timestamp_prompt") {
  const auto three = FeatureSequence::from_frames({{1, {1}}, {2, {1}}, {3, {1}}});
  CHECK(format_timestamp_prompt(three) ==
        "This video contains 3 frames sampled at 1.0, 2.0, 3.0 seconds.");
  const auto one = FeatureSequence::from_frames({{0, {1}}});
  CHECK(format_timestamp_prompt(one) == "This video contains 1 frames sampled at 0.0 seconds.");
  const auto merged = FeatureSequence::from_frames({{2.5f, {1}}});
  CHECK(format_timestamp_prompt(merged) == "This video contains 1 frames sampled at 2.5 seconds.");
  CHECK_THROWS_AS(format_timestamp_prompt(FeatureSequence{}), std::invalid_argument);
}

TEST_CASE("plan_token_budget") {
  const auto b = plan_token_budget(96, 32, 32, 32);
  CHECK(b.window_count == 3);
  CHECK(b.total_tokens == 96);
  const auto single = plan_token_budget(50, 50, 50, 7);
  CHECK(single.window_count == 1);
  CHECK(single.total_tokens == 7);
  CHECK_THROWS_AS(plan_token_budget(100, 32, 32, 32), std::invalid_argument);
  CHECK_THROWS_AS(plan_token_budget(16, 32, 8, 32), std::invalid_argument);
  CHECK_THROWS_AS(plan_token_budget(16, 8, 0, 32), std::invalid_argument);
}
