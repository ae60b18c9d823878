#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace panoproj {

/// 8-bit interleaved RGB raster, row major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // width * height * 3

  Image() = default;
  Image(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, fill) {
    if (w < 1 || h < 1) throw std::invalid_argument("Image: size must be positive");
  }

  std::uint8_t& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
};

/// Integer label raster; 0 is background.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> data;  // width * height

  LabelMap() = default;
  LabelMap(int w, int h, std::int32_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
    if (w < 1 || h < 1) throw std::invalid_argument("LabelMap: size must be positive");
  }

  std::int32_t& at(int x, int y) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::int32_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
};

enum class CubeFace { Front = 0, Back, Left, Right, Top, Bottom };

inline const char* cube_face_name(CubeFace f) {
  switch (f) {
    case CubeFace::Front: return "front";
    case CubeFace::Back: return "back";
    case CubeFace::Left: return "left";
    case CubeFace::Right: return "right";
    case CubeFace::Top: return "top";
    case CubeFace::Bottom: return "bottom";
  }
  return "?";
}

/// Six square 90-degree faces sharing one edge length.
template <typename R>
struct CubeFacesT {
  R front, back, left, right, top, bottom;

  R& face(CubeFace f) {
    switch (f) {
      case CubeFace::Front: return front;
      case CubeFace::Back: return back;
      case CubeFace::Left: return left;
      case CubeFace::Right: return right;
      case CubeFace::Top: return top;
      default: return bottom;
    }
  }
  const R& face(CubeFace f) const {
    return const_cast<CubeFacesT*>(this)->face(f);
  }

  int face_size() const { return front.width; }
};

using CubeFaces = CubeFacesT<Image>;
using LabelCubeFaces = CubeFacesT<LabelMap>;

inline constexpr CubeFace kAllCubeFaces[6] = {CubeFace::Front,  CubeFace::Back,
                                              CubeFace::Left,   CubeFace::Right,
                                              CubeFace::Top,    CubeFace::Bottom};

}  // namespace panoproj
