#include <array>
#include <cctype>
#include <string_view>

#include "kyc/grounding.hpp"

namespace kyc {

namespace {

constexpr std::string_view kObjStart = "<|object_ref_start|>";
constexpr std::string_view kObjEnd = "<|object_ref_end|>";
constexpr std::string_view kOcrStart = "<|ocr_text_start|>";
constexpr std::string_view kOcrEnd = "<|ocr_text_end|>";
constexpr std::string_view kPointStart = "<|point_start|>";
constexpr std::string_view kPointEnd = "<|point_end|>";
constexpr std::string_view kBoxStart = "<|box_start|>";
constexpr std::string_view kBoxEnd = "<|box_end|>";
constexpr std::string_view kPolyStart = "<|polygon_start|>";
constexpr std::string_view kPolyEnd = "<|polygon_end|>";

constexpr std::array<std::string_view, 10> kAllTokens = {
    kObjStart, kObjEnd, kOcrStart, kOcrEnd,  kPointStart,
    kPointEnd, kBoxStart, kBoxEnd, kPolyStart, kPolyEnd,
};

struct Parser {
  std::string_view input;
  size_t pos = 0;
  GroundingParseResult result;

  bool fail(GroundingDiag kind, size_t offset, std::string message) {
    result.annotations.clear();
    result.error = GroundingParseError{kind, offset, std::move(message)};
    return false;
  }

  void skip_ws() {
    while (pos < input.size() && (input[pos] == ' ' || input[pos] == '\t' ||
                                  input[pos] == '\n' || input[pos] == '\r')) {
      ++pos;
    }
  }

  bool eat(std::string_view token) {
    if (input.substr(pos, token.size()) == token) {
      pos += token.size();
      return true;
    }
    return false;
  }

  bool peek(std::string_view token) const { return input.substr(pos, token.size()) == token; }

  // First reserved token at or after `from`; npos when none.
  size_t find_any_token(size_t from, std::string_view* which) const {
    size_t best = std::string_view::npos;
    for (std::string_view t : kAllTokens) {
      size_t at = input.find(t, from);
      if (at < best) {
        best = at;
        *which = t;
      }
    }
    return best;
  }

  bool parse_int(int* out) {
    size_t start = pos;
    if (pos >= input.size() || !std::isdigit(static_cast<unsigned char>(input[pos]))) {
      return fail(GroundingDiag::bad_number, pos, "expected an unsigned integer coordinate");
    }
    long value = 0;
    while (pos < input.size() && std::isdigit(static_cast<unsigned char>(input[pos]))) {
      value = value * 10 + (input[pos] - '0');
      if (value > 1000000) break;  // overflow guard; out of range either way
      ++pos;
    }
    if (pos < input.size() && (input[pos] == '.' || input[pos] == 'e' || input[pos] == 'E')) {
      return fail(GroundingDiag::bad_number, pos, "coordinates must be integers");
    }
    if (value >= 1000) {
      return fail(GroundingDiag::out_of_range, start,
                  "coordinate " + std::to_string(value) + " outside [0, 1000)");
    }
    *out = static_cast<int>(value);
    return true;
  }

  bool expect(char c, GroundingDiag kind, const char* what) {
    skip_ws();
    if (pos < input.size() && input[pos] == c) {
      ++pos;
      return true;
    }
    return fail(kind, pos, std::string("expected '") + c + "' " + what);
  }

  // [x, y]
  bool parse_pair(NormCoord* out) {
    if (!expect('[', GroundingDiag::bad_structure, "to open a coordinate pair")) return false;
    skip_ws();
    if (!parse_int(&out->x)) return false;
    if (!expect(',', GroundingDiag::bad_structure, "between pair coordinates")) return false;
    skip_ws();
    if (!parse_int(&out->y)) return false;
    return expect(']', GroundingDiag::bad_structure, "to close a coordinate pair");
  }

  // [x1, y1, x2, y2]
  bool parse_quad(NormBox* out, size_t* quad_offset) {
    skip_ws();
    *quad_offset = pos;
    if (!expect('[', GroundingDiag::bad_structure, "to open a box")) return false;
    std::array<int, 4> v{};
    for (int i = 0; i < 4; ++i) {
      skip_ws();
      if (!parse_int(&v[i])) return false;
      if (i < 3 && !expect(',', GroundingDiag::bad_structure, "between box coordinates")) {
        return false;
      }
    }
    if (!expect(']', GroundingDiag::bad_structure, "to close a box")) return false;
    out->top_left = {v[0], v[1]};
    out->bottom_right = {v[2], v[3]};
    return true;
  }

  // Comma-separated list of `element` between '[' and ']'.
  template <typename Fn>
  bool parse_list(Fn element, const char* what) {
    if (!expect('[', GroundingDiag::bad_structure, what)) return false;
    while (true) {
      if (!element()) return false;
      skip_ws();
      if (pos < input.size() && input[pos] == ',') {
        ++pos;
        skip_ws();
        continue;
      }
      break;
    }
    return expect(']', GroundingDiag::bad_structure, what);
  }

  bool parse_geometry(GroundingAnnotation* ann) {
    skip_ws();
    if (eat(kPointStart)) {
      ann->kind = GeomKind::points;
      skip_ws();
      bool ok = parse_list(
          [&] {
            NormCoord c;
            skip_ws();
            if (!parse_pair(&c)) return false;
            ann->points.push_back(c);
            return true;
          },
          "in point list");
      if (!ok) return false;
      skip_ws();
      if (!eat(kPointEnd)) {
        return fail(GroundingDiag::unbalanced_token, pos, "missing <|point_end|>");
      }
      return true;
    }
    if (eat(kBoxStart)) {
      ann->kind = GeomKind::boxes;
      skip_ws();
      bool ok = parse_list(
          [&] {
            NormBox b;
            size_t at = 0;
            if (!parse_quad(&b, &at)) return false;
            if (b.top_left.x > b.bottom_right.x || b.top_left.y > b.bottom_right.y) {
              return fail(GroundingDiag::box_order, at,
                          "box corners out of order (x1<=x2, y1<=y2 required)");
            }
            ann->boxes.push_back(b);
            return true;
          },
          "in box list");
      if (!ok) return false;
      skip_ws();
      if (!eat(kBoxEnd)) {
        return fail(GroundingDiag::unbalanced_token, pos, "missing <|box_end|>");
      }
      return true;
    }
    if (eat(kPolyStart)) {
      ann->kind = GeomKind::polygons;
      skip_ws();
      bool ok = parse_list(
          [&] {
            skip_ws();
            size_t ring_at = pos;
            PolygonRing ring;
            bool ring_ok = parse_list(
                [&] {
                  NormCoord c;
                  skip_ws();
                  if (!parse_pair(&c)) return false;
                  ring.push_back(c);
                  return true;
                },
                "in polygon ring");
            if (!ring_ok) return false;
            if (ring.size() < 3) {
              return fail(GroundingDiag::degenerate_ring, ring_at,
                          "polygon ring needs at least 3 vertices");
            }
            if (!is_clockwise(ring)) {
              long long area2 = 0;
              for (size_t i = 0; i < ring.size(); ++i) {
                const NormCoord& a = ring[i];
                const NormCoord& b = ring[(i + 1) % ring.size()];
                area2 += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
              }
              return fail(area2 == 0 ? GroundingDiag::degenerate_ring : GroundingDiag::not_clockwise,
                          ring_at,
                          area2 == 0 ? "polygon ring is degenerate (zero area)"
                                     : "polygon ring is not clockwise");
            }
            ann->polygons.push_back(std::move(ring));
            return true;
          },
          "in polygon list");
      if (!ok) return false;
      skip_ws();
      if (!eat(kPolyEnd)) {
        return fail(GroundingDiag::unbalanced_token, pos, "missing <|polygon_end|>");
      }
      return true;
    }
    return fail(GroundingDiag::bad_structure, pos, "expected a geometry block");
  }

  bool parse_ref(GroundingAnnotation* ann) {
    size_t start_at = pos;
    RefKind kind;
    std::string_view end_token;
    if (eat(kObjStart)) {
      kind = RefKind::object;
      end_token = kObjEnd;
    } else if (eat(kOcrStart)) {
      kind = RefKind::ocr;
      end_token = kOcrEnd;
    } else {
      return true;  // no ref present
    }

    std::string_view next_token;
    size_t at = find_any_token(pos, &next_token);
    if (at == std::string_view::npos) {
      return fail(GroundingDiag::unbalanced_token, start_at,
                  "reference opened here is never closed");
    }
    if (next_token != end_token) {
      return fail(GroundingDiag::malformed_nesting, at,
                  "expected " + std::string(end_token) + " but found " + std::string(next_token));
    }
    ann->ref = GroundingRef{kind, std::string(input.substr(pos, at - pos))};
    pos = at + end_token.size();
    return true;
  }

  bool parse_annotation() {
    GroundingAnnotation ann;
    size_t start_at = pos;
    if (!parse_ref(&ann)) return false;
    if (ann.ref) {
      skip_ws();
      if (!(peek(kPointStart) || peek(kBoxStart) || peek(kPolyStart))) {
        return fail(GroundingDiag::bad_structure, pos,
                    "reference must be followed by a geometry block");
      }
    }
    if (!parse_geometry(&ann)) return false;
    if (auto msg = check_annotation(ann)) {
      return fail(GroundingDiag::bad_structure, start_at, *msg);
    }
    result.annotations.push_back(std::move(ann));
    return true;
  }

  void run() {
    while (true) {
      skip_ws();
      if (pos >= input.size()) return;
      if (input[pos] != '<') {
        fail(GroundingDiag::trailing_content, pos, "unexpected content outside annotations");
        return;
      }
      if (peek(kObjEnd) || peek(kOcrEnd) || peek(kPointEnd) || peek(kBoxEnd) || peek(kPolyEnd)) {
        fail(GroundingDiag::unbalanced_token, pos, "closing token without an opener");
        return;
      }
      if (!(peek(kObjStart) || peek(kOcrStart) || peek(kPointStart) || peek(kBoxStart) ||
            peek(kPolyStart))) {
        fail(GroundingDiag::trailing_content, pos, "unexpected content outside annotations");
        return;
      }
      if (!parse_annotation()) return;
    }
  }
};

}  // namespace

GroundingParseResult parse_annotations(const std::string& input) {
  Parser parser{std::string_view(input)};
  parser.run();
  return std::move(parser.result);
}

}  // namespace kyc
