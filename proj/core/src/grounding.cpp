#include "kyc/grounding.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "kyc/errors.hpp"

namespace kyc {

namespace {

constexpr std::array<const char*, 10> kReservedTokens = {
    "<|object_ref_start|>", "<|object_ref_end|>", "<|ocr_text_start|>", "<|ocr_text_end|>",
    "<|point_start|>",      "<|point_end|>",      "<|box_start|>",      "<|box_end|>",
    "<|polygon_start|>",    "<|polygon_end|>",
};

bool in_range(NormCoord c) { return c.x >= 0 && c.x < 1000 && c.y >= 0 && c.y < 1000; }

void append_coord(std::ostringstream& out, NormCoord c) {
  out << '[' << c.x << ", " << c.y << ']';
}

}  // namespace

bool is_clockwise(const PolygonRing& ring) {
  if (ring.size() < 3) throw DataError("polygon ring needs at least 3 vertices");
  long long sum = 0;
  for (size_t i = 0; i < ring.size(); ++i) {
    const NormCoord& a = ring[i];
    const NormCoord& b = ring[(i + 1) % ring.size()];
    sum += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
  }
  return sum > 0;
}

std::optional<std::string> check_annotation(const GroundingAnnotation& ann) {
  if (ann.ref) {
    for (const char* token : kReservedTokens) {
      if (ann.ref->text.find(token) != std::string::npos) {
        return "reference text contains reserved token " + std::string(token);
      }
    }
  }

  size_t populated = (ann.points.empty() ? 0 : 1) + (ann.boxes.empty() ? 0 : 1) +
                     (ann.polygons.empty() ? 0 : 1);
  switch (ann.kind) {
    case GeomKind::points:
      if (ann.points.empty() || populated != 1) return "points payload must be the only one";
      for (NormCoord c : ann.points) {
        if (!in_range(c)) return "point coordinate out of [0,1000)";
      }
      break;
    case GeomKind::boxes:
      if (ann.boxes.empty() || populated != 1) return "boxes payload must be the only one";
      for (const NormBox& b : ann.boxes) {
        if (!in_range(b.top_left) || !in_range(b.bottom_right)) {
          return "box coordinate out of [0,1000)";
        }
        if (b.top_left.x > b.bottom_right.x || b.top_left.y > b.bottom_right.y) {
          return "box corners out of order (x1<=x2, y1<=y2 required)";
        }
      }
      break;
    case GeomKind::polygons:
      if (ann.polygons.empty() || populated != 1) return "polygons payload must be the only one";
      for (const PolygonRing& ring : ann.polygons) {
        if (ring.size() < 3) return "polygon ring needs at least 3 vertices";
        for (NormCoord c : ring) {
          if (!in_range(c)) return "polygon coordinate out of [0,1000)";
        }
        if (!is_clockwise(ring)) return "polygon ring is not clockwise";
      }
      break;
  }
  return std::nullopt;
}

void validate(const GroundingAnnotation& ann) {
  if (auto msg = check_annotation(ann)) throw DataError(*msg);
}

std::string serialize(const GroundingAnnotation& ann) {
  validate(ann);
  std::ostringstream out;
  if (ann.ref) {
    if (ann.ref->kind == RefKind::object) {
      out << "<|object_ref_start|>" << ann.ref->text << "<|object_ref_end|>";
    } else {
      out << "<|ocr_text_start|>" << ann.ref->text << "<|ocr_text_end|>";
    }
  }
  switch (ann.kind) {
    case GeomKind::points: {
      out << "<|point_start|>[";
      for (size_t i = 0; i < ann.points.size(); ++i) {
        if (i) out << ", ";
        append_coord(out, ann.points[i]);
      }
      out << "]<|point_end|>";
      break;
    }
    case GeomKind::boxes: {
      out << "<|box_start|>[";
      for (size_t i = 0; i < ann.boxes.size(); ++i) {
        if (i) out << ", ";
        const NormBox& b = ann.boxes[i];
        out << '[' << b.top_left.x << ", " << b.top_left.y << ", " << b.bottom_right.x << ", "
            << b.bottom_right.y << ']';
      }
      out << "]<|box_end|>";
      break;
    }
    case GeomKind::polygons: {
      out << "<|polygon_start|>[";
      for (size_t i = 0; i < ann.polygons.size(); ++i) {
        if (i) out << ", ";
        out << '[';
        for (size_t v = 0; v < ann.polygons[i].size(); ++v) {
          if (v) out << ", ";
          append_coord(out, ann.polygons[i][v]);
        }
        out << ']';
      }
      out << "]<|polygon_end|>";
      break;
    }
  }
  return out.str();
}

std::string serialize(const std::vector<GroundingAnnotation>& anns) {
  std::string out;
  for (const GroundingAnnotation& ann : anns) out += serialize(ann);
  return out;
}

namespace {

int normalize_coordinate(double v, double extent) {
  if (!std::isfinite(v) || v < 0.0 || v > extent) {
    throw DataError("pixel coordinate " + std::to_string(v) + " outside image extent [0, " +
                    std::to_string(extent) + "]");
  }
  int scaled = static_cast<int>(std::floor(v * 1000.0 / extent));
  return scaled > 999 ? 999 : scaled;
}

}  // namespace

GroundingAnnotation normalize(const PixelGeometry& geom) {
  if (geom.width < 1.0 || geom.height < 1.0) {
    throw DataError("image extent must be at least 1x1 pixels");
  }
  auto norm = [&](PixelCoord c) {
    return NormCoord{normalize_coordinate(c.x, geom.width), normalize_coordinate(c.y, geom.height)};
  };

  GroundingAnnotation ann;
  ann.kind = geom.kind;
  ann.ref = geom.ref;
  switch (geom.kind) {
    case GeomKind::points:
      for (PixelCoord c : geom.points) ann.points.push_back(norm(c));
      break;
    case GeomKind::boxes:
      for (const PixelBox& b : geom.boxes) {
        ann.boxes.push_back({norm(b.top_left), norm(b.bottom_right)});
      }
      break;
    case GeomKind::polygons:
      for (const auto& ring : geom.polygons) {
        PolygonRing out;
        for (PixelCoord c : ring) out.push_back(norm(c));
        ann.polygons.push_back(std::move(out));
      }
      break;
  }
  validate(ann);
  return ann;
}

}  // namespace kyc
