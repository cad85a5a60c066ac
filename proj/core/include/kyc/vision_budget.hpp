#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kyc {

struct BudgetConfig {
  int patch = 14;            // ViT patch edge in pixels
  int merge = 2;             // projector merge factor per axis
  long image_cap = 16384;    // max tokens per image (post-merge)
  long frame_min = 128;      // min tokens per video frame
  long frame_max = 768;      // max tokens per video frame
  long video_cap = 24576;    // max total vision tokens per video
  double tick = 0.5;         // seconds per temporal position step
  double base_fps = 2.0;     // frame sampling rate before budgeting

  int cell() const { return patch * merge; }  // pixels per token cell edge
};

// Throws ConfigError on violated invariants.
void validate(const BudgetConfig& cfg);

struct ImagePlan {
  long out_width = 0;   // multiple of patch*merge
  long out_height = 0;  // multiple of patch*merge
  long grid_h = 0;      // post-merge token grid
  long grid_w = 0;
  long tokens = 0;      // grid_h * grid_w, <= image_cap
};

struct VideoPlan {
  std::vector<double> timestamps;  // seconds per kept frame, ascending
  long per_frame_tokens = 0;       // in [frame_min, frame_max]
  long grid_h = 0;                 // per-frame token grid
  long grid_w = 0;
  long out_width = 0;              // per-frame target pixels
  long out_height = 0;
  double effective_fps = 0.0;      // kept frames / duration
  std::vector<long> time_indices;  // round(timestamp / tick), half-up

  long frames() const { return static_cast<long>(timestamps.size()); }
  long total_tokens() const { return frames() * per_frame_tokens; }
};

// Rounds each dimension to the nearest multiple of patch*merge (at least one
// cell); when the resulting grid exceeds image_cap, rescales both dimensions
// by sqrt(image_cap/tokens) and re-rounds. Never exceeds the cap.
ImagePlan plan_image(long width, long height, const BudgetConfig& cfg = {});

// Samples frames at base_fps from t=0, budgets per-frame tokens into
// [frame_min, frame_max] with plan_image-style grid fitting, shrinks the
// per-frame grid toward frame_min when the video cap is exceeded, and as a
// last resort keeps every k-th frame for the minimal k restoring the cap.
VideoPlan plan_video(double duration, long width, long height, const BudgetConfig& cfg = {});

// index_i = round(timestamp_i / tick), half-up. Throws DataError on
// descending timestamps or non-positive tick.
std::vector<long> temporal_positions(const std::vector<double>& timestamps, double tick);

nlohmann::ordered_json to_json(const ImagePlan& plan);
nlohmann::ordered_json to_json(const VideoPlan& plan);

}  // namespace kyc
