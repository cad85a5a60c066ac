#include <doctest.h>

#include "kyc/rng.hpp"
#include "kyc/vision_budget.hpp"

using namespace kyc;

TEST_CASE("image plans at the documented resolutions") {
  ImagePlan p = plan_image(448, 448);
  CHECK(p.grid_h == 16);
  CHECK(p.grid_w == 16);
  CHECK(p.tokens == 256);
  CHECK(p.out_width == 448);
  CHECK(p.out_height == 448);

  p = plan_image(28, 28);
  CHECK(p.grid_h == 1);
  CHECK(p.grid_w == 1);
  CHECK(p.tokens == 1);

  // Below one cell still yields one cell.
  p = plan_image(8, 5);
  CHECK(p.tokens == 1);
  CHECK(p.out_width == 28);

  // Over the cap: rescaled by sqrt(cap/tokens) onto exactly the cap.
  p = plan_image(8000, 8000);
  CHECK(p.out_width == 3584);
  CHECK(p.out_height == 3584);
  CHECK(p.grid_h == 128);
  CHECK(p.grid_w == 128);
  CHECK(p.tokens == 16384);
}

TEST_CASE("image plans never exceed the cap and preserve aspect") {
  BudgetConfig cfg;
  SplitMix64 g(51);
  for (int i = 0; i < 20000; ++i) {
    long w = 1 + static_cast<long>(g.next_below(8192));
    long h = 1 + static_cast<long>(g.next_below(8192));
    ImagePlan p = plan_image(w, h, cfg);
    REQUIRE(p.tokens <= cfg.image_cap);
    REQUIRE(p.tokens == p.grid_h * p.grid_w);
    REQUIRE(p.out_width == p.grid_w * cfg.cell());
    REQUIRE(p.out_height == p.grid_h * cfg.cell());

    // Aspect within one grid cell, measured on the smaller axis.
    if (w >= cfg.cell() && h >= cfg.cell()) {
      double ratio = w <= h ? static_cast<double>(w) / h : static_cast<double>(h) / w;
      double smaller = w <= h ? p.grid_w : p.grid_h;
      double larger = w <= h ? p.grid_h : p.grid_w;
      CHECK(std::abs(smaller - ratio * larger) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("video plan: 4 s at 448x448") {
  VideoPlan p = plan_video(4.0, 448, 448);
  CHECK(p.frames() == 8);
  CHECK(p.per_frame_tokens == 256);
  CHECK(p.total_tokens() == 2048);
  CHECK(p.effective_fps == doctest::Approx(2.0));
  CHECK(p.time_indices == std::vector<long>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("video plan: long low-res video thins frames") {
  // 448x224 -> 16x8 grid = exactly the 128-token floor; 1000 s at 2 fps gives
  // 2000 raw frames, so every 11th frame is kept: 182 frames, 23296 tokens.
  VideoPlan p = plan_video(1000.0, 448, 224);
  CHECK(p.per_frame_tokens == 128);
  CHECK(p.frames() == 182);
  CHECK(p.total_tokens() == 23296);
  CHECK(p.total_tokens() <= BudgetConfig{}.video_cap);
  CHECK(p.timestamps[1] == doctest::Approx(5.5));
  CHECK(p.time_indices[0] == 0);
  CHECK(p.time_indices[1] == 11);
}

TEST_CASE("video plan clamps oversized frames to the per-frame maximum") {
  // Native 50x80 grid = 4000 tokens; budgeted to at most 768.
  VideoPlan p = plan_video(2.0, 2240, 1400);
  CHECK(p.per_frame_tokens <= 768);
  CHECK(p.per_frame_tokens >= 128);

  // 3:1 aspect lands exactly on 768 = 16x48.
  p = plan_video(2.0, 2688, 896);
  CHECK(p.per_frame_tokens == 768);
  CHECK(p.grid_h == 16);
  CHECK(p.grid_w == 48);
}

TEST_CASE("video plan rejects bad input") {
  CHECK_THROWS_AS(plan_video(0.0, 448, 448), DataError);
  CHECK_THROWS_AS(plan_video(-1.0, 448, 448), DataError);
  CHECK_THROWS_AS(plan_video(1.0, 0, 448), DataError);

  BudgetConfig bad;
  bad.frame_min = 800;  // > frame_max
  CHECK_THROWS_AS(plan_video(1.0, 448, 448, bad), ConfigError);
}

TEST_CASE("budget invariants over random video specs") {
  BudgetConfig cfg;
  SplitMix64 g(52);
  for (int i = 0; i < 20000; ++i) {
    double duration = 0.1 + g.next_unit() * 2000.0;
    long w = 16 + static_cast<long>(g.next_below(4096));
    long h = 16 + static_cast<long>(g.next_below(4096));
    VideoPlan p = plan_video(duration, w, h, cfg);
    REQUIRE(p.per_frame_tokens >= cfg.frame_min);
    REQUIRE(p.per_frame_tokens <= cfg.frame_max);
    REQUIRE(p.total_tokens() <= cfg.video_cap);
    REQUIRE(p.frames() >= 1);
    for (long f = 0; f < p.frames(); ++f) {
      REQUIRE(p.time_indices[f] ==
              static_cast<long>(std::floor(p.timestamps[f] / cfg.tick + 0.5)));
      if (f > 0) REQUIRE(p.time_indices[f] >= p.time_indices[f - 1]);
    }
  }
}

TEST_CASE("enlarging the video cap never shrinks the plan") {
  SplitMix64 g(53);
  for (int i = 0; i < 2000; ++i) {
    double duration = 0.1 + g.next_unit() * 500.0;
    long w = 16 + static_cast<long>(g.next_below(3000));
    long h = 16 + static_cast<long>(g.next_below(3000));

    BudgetConfig cfg;
    long prev_frames = 0;
    long prev_tokens = 0;
    for (long cap : {768L, 2048L, 8192L, 24576L, 65536L}) {
      cfg.video_cap = cap;
      VideoPlan p = plan_video(duration, w, h, cfg);
      REQUIRE(p.frames() >= prev_frames);
      REQUIRE(p.per_frame_tokens >= prev_tokens);
      prev_frames = p.frames();
      prev_tokens = p.per_frame_tokens;
    }
  }
}

TEST_CASE("temporal positions follow the half-second tick") {
  CHECK(temporal_positions({0.0, 0.5, 1.0}, 0.5) == std::vector<long>{0, 1, 2});
  CHECK(temporal_positions({0.0, 1.0, 2.0}, 0.5) == std::vector<long>{0, 2, 4});
  CHECK(temporal_positions({}, 0.5).empty());
  CHECK(temporal_positions({0.24, 0.25, 0.26}, 0.5) == std::vector<long>{0, 1, 1});  // half-up
  CHECK_THROWS_AS(temporal_positions({1.0, 0.5}, 0.5), DataError);
  CHECK_THROWS_AS(temporal_positions({0.0}, 0.0), ConfigError);
}

TEST_CASE("time alignment under uniform sampling") {
  SplitMix64 g(54);
  for (int i = 0; i < 200; ++i) {
    double duration = 0.5 + g.next_unit() * 300.0;
    VideoPlan p = plan_video(duration, 448, 448);
    for (long f = 1; f < p.frames(); ++f) {
      long expected_gap = static_cast<long>(
          std::floor((p.timestamps[f] - p.timestamps[f - 1]) / 0.5 + 0.5));
      CHECK(p.time_indices[f] - p.time_indices[f - 1] == expected_gap);
    }
  }
}

TEST_CASE("plan JSON shapes") {
  nlohmann::ordered_json ij = to_json(plan_image(448, 448));
  CHECK(ij["out_w"] == 448);
  CHECK(ij["grid"][0] == 16);
  CHECK(ij["tokens"] == 256);

  nlohmann::ordered_json vj = to_json(plan_video(4.0, 448, 448));
  CHECK(vj["per_frame_tokens"] == 256);
  CHECK(vj["time_indices"].size() == 8);
  CHECK(vj["effective_fps"] == doctest::Approx(2.0));
}
