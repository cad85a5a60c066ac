#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kyc {

// Integer coordinate normalized to [0, 1000), y-down image convention.
struct NormCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(NormCoord a, NormCoord b) { return a.x == b.x && a.y == b.y; }
};

enum class RefKind { object, ocr };

struct GroundingRef {
  RefKind kind = RefKind::object;
  std::string text;

  friend bool operator==(const GroundingRef&, const GroundingRef&) = default;
};

enum class GeomKind { points, boxes, polygons };

struct NormBox {
  NormCoord top_left;
  NormCoord bottom_right;  // x1 <= x2, y1 <= y2; degenerate boxes allowed

  friend bool operator==(const NormBox&, const NormBox&) = default;
};

using PolygonRing = std::vector<NormCoord>;  // >= 3 vertices, clockwise

// One geometry block with an optional object/OCR reference. Exactly one of
// the payload vectors is populated, matching `kind`.
struct GroundingAnnotation {
  GeomKind kind = GeomKind::points;
  std::optional<GroundingRef> ref;
  std::vector<NormCoord> points;
  std::vector<NormBox> boxes;
  std::vector<PolygonRing> polygons;

  friend bool operator==(const GroundingAnnotation&, const GroundingAnnotation&) = default;
};

// Shoelace orientation test in y-down coordinates: sum of
// (x_i*y_{i+1} - x_{i+1}*y_i) over the closed ring is > 0 for clockwise
// rings. Throws DataError on fewer than 3 vertices. Collinear rings (sum 0)
// are not clockwise.
bool is_clockwise(const PolygonRing& ring);

// Full invariant check; returns a message for the first violation, or
// nullopt when the annotation is valid.
std::optional<std::string> check_annotation(const GroundingAnnotation& ann);

// Throws DataError when check_annotation reports a violation.
void validate(const GroundingAnnotation& ann);

// Exact token grammar of the label format, e.g.
//   <|object_ref_start|>cat<|object_ref_end|><|point_start|>[[500, 500]]<|point_end|>
// Coordinate lists render as JSON-style integer arrays with ", " separators.
std::string serialize(const GroundingAnnotation& ann);
std::string serialize(const std::vector<GroundingAnnotation>& anns);

enum class GroundingDiag {
  unbalanced_token,
  malformed_nesting,
  bad_number,
  out_of_range,
  box_order,
  not_clockwise,
  degenerate_ring,
  bad_structure,
  reserved_token_in_ref,
  trailing_content,
};

struct GroundingParseError {
  GroundingDiag kind = GroundingDiag::bad_structure;
  size_t offset = 0;  // byte offset into the input
  std::string message;
};

struct GroundingParseResult {
  std::vector<GroundingAnnotation> annotations;
  std::optional<GroundingParseError> error;

  bool ok() const { return !error.has_value(); }
};

// Parses a string of zero or more annotations (whitespace allowed between
// them). Total over arbitrary bytes: either every annotation parses and
// validates, or `error` carries a positioned diagnostic and `annotations` is
// empty.
GroundingParseResult parse_annotations(const std::string& input);

// --- pixel-space input and normalization ---

struct PixelCoord {
  double x = 0.0;
  double y = 0.0;
};

struct PixelBox {
  PixelCoord top_left;
  PixelCoord bottom_right;
};

// Raw geometry in pixel units prior to normalization.
struct PixelGeometry {
  GeomKind kind = GeomKind::points;
  std::optional<GroundingRef> ref;
  double width = 0.0;   // image width in pixels, >= 1
  double height = 0.0;  // image height in pixels, >= 1
  std::vector<PixelCoord> points;
  std::vector<PixelBox> boxes;
  std::vector<std::vector<PixelCoord>> polygons;
};

// Coordinate v over extent e maps to min(floor(v * 1000 / e), 999); the
// half-open [0, 1000) target makes v == e land on 999. Coordinates outside
// [0, extent] throw DataError; the result is re-validated after rounding.
GroundingAnnotation normalize(const PixelGeometry& geom);

}  // namespace kyc
