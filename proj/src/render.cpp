#include "panoproj/render.hpp"

#include <cmath>
#include <string>

namespace panoproj {

namespace {

std::string pixel_context(int col, int row, const std::string& what) {
  return "pixel (" + std::to_string(col) + ", " + std::to_string(row) + "): " + what;
}

// Shared render loop; Backward maps a plane point to a sphere point in the
// viewport frame.
template <typename Backward>
Image render_color(const Image& eri, const ViewportSpec& spec, const PlaneGrid& grid,
                   Backward backward) {
  Image out(spec.width, spec.height);
  for (int row = 0; row < spec.height; ++row) {
    for (int col = 0; col < spec.width; ++col) {
      try {
        const PlanePoint q = grid.to_plane(col + 0.5, row + 0.5);
        const SpherePoint local = backward(q);
        const SpherePoint dir = rotate_to_view(local, spec.view_dir);
        const Rgb rgb = sample_eri(eri, dir, Interp::Bilinear);
        for (int c = 0; c < 3; ++c) out.at(col, row, c) = quantize(rgb[c]);
      } catch (const DomainError& e) {
        throw RenderError(pixel_context(col, row, e.what()));
      }
    }
  }
  return out;
}

template <typename Backward>
LabelMap render_labels(const LabelMap& eri, const ViewportSpec& spec, const PlaneGrid& grid,
                       Backward backward) {
  LabelMap out(spec.width, spec.height);
  for (int row = 0; row < spec.height; ++row) {
    for (int col = 0; col < spec.width; ++col) {
      try {
        const PlanePoint q = grid.to_plane(col + 0.5, row + 0.5);
        const SpherePoint local = backward(q);
        const SpherePoint dir = rotate_to_view(local, spec.view_dir);
        out.at(col, row) = sample_eri(eri, dir, Interp::Nearest);
      } catch (const DomainError& e) {
        throw RenderError(pixel_context(col, row, e.what()));
      }
    }
  }
  return out;
}

PlaneGrid viewport_grid(const ViewportSpec& spec, PanniniParams params) {
  spec.validate();
  params.validate();
  return make_plane_grid(params, spec.hfov, spec.width, spec.height, spec.aspect());
}

}  // namespace

Image render_viewport(const Image& eri, const ViewportSpec& spec, PanniniParams params) {
  const PlaneGrid grid = viewport_grid(spec, params);
  return render_color(eri, spec, grid,
                      [params](PlanePoint q) { return pannini_backward(q, params); });
}

LabelMap render_viewport(const LabelMap& eri, const ViewportSpec& spec, PanniniParams params) {
  const PlaneGrid grid = viewport_grid(spec, params);
  return render_labels(eri, spec, grid,
                       [params](PlanePoint q) { return pannini_backward(q, params); });
}

Image render_viewport_gpp(const Image& eri, const ViewportSpec& spec, GppParams params) {
  const PlaneGrid grid = viewport_grid(spec, PanniniParams{params.d, 0.0});
  return render_color(eri, spec, grid,
                      [params](PlanePoint q) { return gpp_backward(q, params.d); });
}

LabelMap render_viewport_gpp(const LabelMap& eri, const ViewportSpec& spec, GppParams params) {
  const PlaneGrid grid = viewport_grid(spec, PanniniParams{params.d, 0.0});
  return render_labels(eri, spec, grid,
                       [params](PlanePoint q) { return gpp_backward(q, params.d); });
}

SpherePoint cube_face_direction(CubeFace f) {
  switch (f) {
    case CubeFace::Front: return {0.0, 0.0};
    case CubeFace::Back: return {kPi, 0.0};
    case CubeFace::Left: return {-kPi / 2.0, 0.0};
    case CubeFace::Right: return {kPi / 2.0, 0.0};
    case CubeFace::Top: return {0.0, kPi / 2.0};
    default: return {0.0, -kPi / 2.0};
  }
}

namespace {

template <typename R>
CubeFacesT<R> render_cube(const R& eri, int face_px) {
  if (face_px < 2) throw std::invalid_argument("eri_to_cube: face size must be at least 2");
  CubeFacesT<R> faces;
  for (CubeFace f : kAllCubeFaces) {
    ViewportSpec spec;
    spec.view_dir = cube_face_direction(f);
    spec.hfov = kPi / 2.0;
    spec.width = face_px;
    spec.height = face_px;
    faces.face(f) = render_viewport(eri, spec, PanniniParams{0.0, 0.0});
  }
  return faces;
}

// Largest-axis face selection; ties fall to x, then y, then z.
CubeFace select_face(Vec3 v) {
  const double ax = std::abs(v.x);
  const double ay = std::abs(v.y);
  const double az = std::abs(v.z);
  if (ax >= ay && ax >= az) return v.x > 0.0 ? CubeFace::Right : CubeFace::Left;
  if (ay >= az) return v.y > 0.0 ? CubeFace::Top : CubeFace::Bottom;
  return v.z > 0.0 ? CubeFace::Front : CubeFace::Back;
}

// Pixel coordinates of a local (face-frame) direction on a square
// rectilinear face covering [-1, 1] x [-1, 1] in plane units.
Vec2 face_coords(SpherePoint local, int n) {
  const PlanePoint q = rectilinear_forward(local);
  return {n * (q.x / 2.0 + 0.5) - 0.5, n * (0.5 - q.y / 2.0) - 0.5};
}

template <typename R>
void check_faces(const CubeFacesT<R>& faces) {
  const int n = faces.face_size();
  for (CubeFace f : kAllCubeFaces) {
    const R& r = faces.face(f);
    if (r.width != n || r.height != n)
      throw std::invalid_argument("cube_to_eri: faces must be square and equally sized");
  }
}

}  // namespace

CubeFaces eri_to_cube(const Image& eri, int face_px) { return render_cube(eri, face_px); }
LabelCubeFaces eri_to_cube(const LabelMap& eri, int face_px) { return render_cube(eri, face_px); }

Image cube_to_eri(const CubeFaces& faces, int out_w, int out_h) {
  check_faces(faces);
  const int n = faces.face_size();
  Image out(out_w, out_h);
  for (int row = 0; row < out_h; ++row) {
    for (int col = 0; col < out_w; ++col) {
      const SpherePoint dir{((col + 0.5) / out_w - 0.5) * 2.0 * kPi,
                            (0.5 - (row + 0.5) / out_h) * kPi};
      const CubeFace f = select_face(sphere_to_unit(dir));
      const SpherePoint local = rotate_from_view(dir, cube_face_direction(f));
      const Vec2 uv = face_coords(local, n);
      const Rgb rgb = sample_bilinear_clamp(faces.face(f), uv.x, uv.y);
      for (int c = 0; c < 3; ++c) out.at(col, row, c) = quantize(rgb[c]);
    }
  }
  return out;
}

LabelMap cube_to_eri(const LabelCubeFaces& faces, int out_w, int out_h) {
  check_faces(faces);
  const int n = faces.face_size();
  LabelMap out(out_w, out_h);
  for (int row = 0; row < out_h; ++row) {
    for (int col = 0; col < out_w; ++col) {
      const SpherePoint dir{((col + 0.5) / out_w - 0.5) * 2.0 * kPi,
                            (0.5 - (row + 0.5) / out_h) * kPi};
      const CubeFace f = select_face(sphere_to_unit(dir));
      const SpherePoint local = rotate_from_view(dir, cube_face_direction(f));
      const Vec2 uv = face_coords(local, n);
      const int x = std::clamp(static_cast<int>(std::lround(uv.x)), 0, n - 1);
      const int y = std::clamp(static_cast<int>(std::lround(uv.y)), 0, n - 1);
      out.at(col, row) = faces.face(f).at(x, y);
    }
  }
  return out;
}

}  // namespace panoproj
