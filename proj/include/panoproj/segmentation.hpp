#pragma once

#include <string>
#include <vector>

#include "panoproj/raster.hpp"
#include "panoproj/render.hpp"

namespace panoproj {

struct ObjectRegion {
  std::int32_t id = 0;           // consecutive, starting at 1
  std::int32_t class_label = 0;  // original semantic class
  long pixel_count = 0;
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

/// Object-instance map: `labels` holds object ids (0 = background),
/// one ObjectRegion per id.
struct SegmentationMap {
  LabelMap labels;
  std::vector<ObjectRegion> objects;
};

/// Splits a class-label raster into object instances under 4-adjacency;
/// equal classes only, never across classes. With wrap_horizontal the
/// first and last columns are adjacent (equirectangular seam). Components
/// smaller than min_pixels are dropped to background.
SegmentationMap connected_components(const LabelMap& class_labels,
                                     bool wrap_horizontal = true, long min_pixels = 0);

/// Nearest-neighbor rendering of the object-id map through the same
/// viewport geometry as the color path.
LabelMap render_seg_viewport(const SegmentationMap& seg, const ViewportSpec& spec,
                             PanniniParams params);

void write_object_table_csv(const std::string& path, const SegmentationMap& seg);

}  // namespace panoproj
