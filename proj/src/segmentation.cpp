#include "panoproj/segmentation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_map>

namespace panoproj {

namespace {

// Union-find over pixel indices.
struct DisjointSet {
  std::vector<std::int32_t> parent;

  explicit DisjointSet(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::int32_t find(std::int32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }

  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

SegmentationMap connected_components(const LabelMap& class_labels, bool wrap_horizontal,
                                     long min_pixels) {
  const int w = class_labels.width;
  const int h = class_labels.height;

  DisjointSet sets(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t cls = class_labels.at(x, y);
      if (cls == 0) continue;
      const std::int32_t i = y * w + x;
      if (x + 1 < w && class_labels.at(x + 1, y) == cls) sets.unite(i, i + 1);
      if (y + 1 < h && class_labels.at(x, y + 1) == cls) sets.unite(i, i + w);
      if (wrap_horizontal && x == w - 1 && w > 1 && class_labels.at(0, y) == cls)
        sets.unite(i, y * w);
    }
  }

  // Object ids in raster-scan order of each component's first pixel.
  SegmentationMap seg;
  seg.labels = LabelMap(w, h);
  std::unordered_map<std::int32_t, std::int32_t> root_to_id;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (class_labels.at(x, y) == 0) continue;
      const std::int32_t root = sets.find(y * w + x);
      auto [it, inserted] =
          root_to_id.try_emplace(root, static_cast<std::int32_t>(root_to_id.size() + 1));
      const std::int32_t id = it->second;
      seg.labels.at(x, y) = id;
      if (inserted) {
        ObjectRegion region;
        region.id = id;
        region.class_label = class_labels.at(x, y);
        region.min_x = region.max_x = x;
        region.min_y = region.max_y = y;
        seg.objects.push_back(region);
      }
      ObjectRegion& region = seg.objects[id - 1];
      ++region.pixel_count;
      region.min_x = std::min(region.min_x, x);
      region.max_x = std::max(region.max_x, x);
      region.min_y = std::min(region.min_y, y);
      region.max_y = std::max(region.max_y, y);
    }
  }

  if (min_pixels <= 0) return seg;

  // Drop small components and renumber the survivors.
  std::vector<std::int32_t> remap(seg.objects.size() + 1, 0);
  std::vector<ObjectRegion> kept;
  for (const ObjectRegion& region : seg.objects) {
    if (region.pixel_count < min_pixels) continue;
    remap[region.id] = static_cast<std::int32_t>(kept.size() + 1);
    kept.push_back(region);
    kept.back().id = remap[region.id];
  }
  for (auto& v : seg.labels.data) v = remap[v];
  seg.objects = std::move(kept);
  return seg;
}

LabelMap render_seg_viewport(const SegmentationMap& seg, const ViewportSpec& spec,
                             PanniniParams params) {
  return render_viewport(seg.labels, spec, params);
}

void write_object_table_csv(const std::string& path, const SegmentationMap& seg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "id,class,pixel_count,min_x,min_y,max_x,max_y\n";
  for (const ObjectRegion& r : seg.objects) {
    out << r.id << ',' << r.class_label << ',' << r.pixel_count << ',' << r.min_x << ','
        << r.min_y << ',' << r.max_x << ',' << r.max_y << '\n';
  }
}

}  // namespace panoproj
