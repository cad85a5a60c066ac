#include "kyc/vision_budget.hpp"

#include <algorithm>
#include <cmath>

#include "kyc/errors.hpp"

namespace kyc {

void validate(const BudgetConfig& cfg) {
  if (cfg.patch < 1 || cfg.merge < 1) throw ConfigError("patch and merge must be >= 1");
  if (cfg.frame_min < 1 || cfg.frame_min > cfg.frame_max || cfg.frame_max > cfg.video_cap) {
    throw ConfigError("frame_min <= frame_max <= video_cap required");
  }
  if (cfg.image_cap < 1) throw ConfigError("image_cap must be >= 1");
  if (!(cfg.tick > 0.0)) throw ConfigError("tick must be positive");
  if (!(cfg.base_fps > 0.0)) throw ConfigError("base_fps must be positive");
}

namespace {

struct Grid {
  long h = 1;
  long w = 1;
  long tokens() const { return h * w; }
};

Grid round_grid(double rh, double rw) {
  Grid g;
  g.h = std::max<long>(1, std::llround(rh));
  g.w = std::max<long>(1, std::llround(rw));
  return g;
}

// Decrement/increment one axis, choosing the candidate whose aspect ratio
// stays closest to the real-valued target (ties prefer adjusting width).
Grid shrink_step(Grid g, double rh, double rw) {
  double target = rw / rh;
  Grid by_w{g.h, g.w - 1};
  Grid by_h{g.h - 1, g.w};
  if (g.w <= 1) return by_h;
  if (g.h <= 1) return by_w;
  double err_w = std::abs(static_cast<double>(by_w.w) / by_w.h - target);
  double err_h = std::abs(static_cast<double>(by_h.w) / by_h.h - target);
  return err_w <= err_h ? by_w : by_h;
}

Grid grow_step(Grid g, double rh, double rw) {
  double target = rw / rh;
  Grid by_w{g.h, g.w + 1};
  Grid by_h{g.h + 1, g.w};
  double err_w = std::abs(static_cast<double>(by_w.w) / by_w.h - target);
  double err_h = std::abs(static_cast<double>(by_h.w) / by_h.h - target);
  return err_w <= err_h ? by_w : by_h;
}

// Nearest-grid fit with a cap (and optionally a floor): round to nearest,
// rescale by sqrt once when over/under, then walk single cells. A step never
// overshoots the [lo, hi] window from outside when the window spans a factor
// of two, which frame_min=128 / frame_max=768 does.
Grid fit_tokens(double rh, double rw, long lo, long hi) {
  Grid g = round_grid(rh, rw);
  if (g.tokens() > hi) {
    double s = std::sqrt(static_cast<double>(hi) / g.tokens());
    g = round_grid(rh * s, rw * s);
    while (g.tokens() > hi && (g.h > 1 || g.w > 1)) g = shrink_step(g, rh, rw);
    while (g.tokens() < lo) g = grow_step(g, rh, rw);
  } else if (g.tokens() < lo) {
    double s = std::sqrt(static_cast<double>(lo) / g.tokens());
    g = round_grid(rh * s, rw * s);
    while (g.tokens() < lo) g = grow_step(g, rh, rw);
    while (g.tokens() > hi && (g.h > 1 || g.w > 1)) g = shrink_step(g, rh, rw);
  }
  return g;
}

}  // namespace

ImagePlan plan_image(long width, long height, const BudgetConfig& cfg) {
  validate(cfg);
  if (width < 1 || height < 1) throw DataError("image dimensions must be >= 1");

  const double cell = cfg.cell();
  Grid g = fit_tokens(height / cell, width / cell, 1, cfg.image_cap);

  ImagePlan plan;
  plan.grid_h = g.h;
  plan.grid_w = g.w;
  plan.tokens = g.tokens();
  plan.out_width = g.w * cfg.cell();
  plan.out_height = g.h * cfg.cell();
  return plan;
}

VideoPlan plan_video(double duration, long width, long height, const BudgetConfig& cfg) {
  validate(cfg);
  if (!(duration > 0.0)) throw DataError("video duration must be positive");
  if (width < 1 || height < 1) throw DataError("frame dimensions must be >= 1");

  // Frame i sits at t = i / base_fps; keep every t < duration.
  long n0 = std::max<long>(1, static_cast<long>(std::ceil(duration * cfg.base_fps - 1e-9)));

  const double cell = cfg.cell();
  Grid g = fit_tokens(height / cell, width / cell, cfg.frame_min, cfg.frame_max);

  if (n0 * g.tokens() > cfg.video_cap) {
    // Shrink the per-frame grid toward frame_min first; frames are dropped
    // only when that cannot restore the cap.
    long target = cfg.video_cap / n0;
    if (target >= cfg.frame_min && target < g.tokens()) {
      g = fit_tokens(height / cell, width / cell, cfg.frame_min,
                     std::min(target, cfg.frame_max));
    }
  }

  long stride = 1;
  if (n0 * g.tokens() > cfg.video_cap) {
    long frames_budget = cfg.video_cap / g.tokens();  // >= 1 since tokens <= frame_max <= cap
    stride = (n0 + frames_budget - 1) / frames_budget;
  }

  VideoPlan plan;
  plan.grid_h = g.h;
  plan.grid_w = g.w;
  plan.per_frame_tokens = g.tokens();
  plan.out_width = g.w * cfg.cell();
  plan.out_height = g.h * cfg.cell();
  for (long i = 0; i < n0; i += stride) {
    plan.timestamps.push_back(static_cast<double>(i) / cfg.base_fps);
  }
  plan.time_indices = temporal_positions(plan.timestamps, cfg.tick);
  plan.effective_fps = static_cast<double>(plan.frames()) / duration;
  return plan;
}

std::vector<long> temporal_positions(const std::vector<double>& timestamps, double tick) {
  if (!(tick > 0.0)) throw ConfigError("tick must be positive");
  std::vector<long> indices;
  indices.reserve(timestamps.size());
  for (size_t i = 0; i < timestamps.size(); ++i) {
    if (i > 0 && timestamps[i] < timestamps[i - 1]) {
      throw DataError("timestamps must be ascending");
    }
    indices.push_back(static_cast<long>(std::floor(timestamps[i] / tick + 0.5)));
  }
  return indices;
}

nlohmann::ordered_json to_json(const ImagePlan& plan) {
  nlohmann::ordered_json j;
  j["out_w"] = plan.out_width;
  j["out_h"] = plan.out_height;
  j["grid"] = {plan.grid_h, plan.grid_w};
  j["tokens"] = plan.tokens;
  return j;
}

nlohmann::ordered_json to_json(const VideoPlan& plan) {
  nlohmann::ordered_json j;
  j["out_w"] = plan.out_width;
  j["out_h"] = plan.out_height;
  j["grid"] = {plan.grid_h, plan.grid_w};
  j["tokens"] = plan.total_tokens();
  j["timestamps"] = plan.timestamps;
  j["time_indices"] = plan.time_indices;
  j["per_frame_tokens"] = plan.per_frame_tokens;
  j["effective_fps"] = plan.effective_fps;
  return j;
}

}  // namespace kyc
