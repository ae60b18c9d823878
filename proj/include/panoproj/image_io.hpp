#pragma once

#include <string>

#include "panoproj/raster.hpp"

namespace panoproj {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads a PNG as 8-bit RGB (gray and palette images are expanded,
/// alpha is stripped).
Image read_image_png(const std::string& path);

void write_image_png(const std::string& path, const Image& img);

/// Reads a label map from a single-channel PNG (8/16 bit gray) or a PGM
/// (P2/P5); the format is detected from the file's magic bytes.
LabelMap read_label_map(const std::string& path);

/// Writes labels as gray PNG; 16-bit when any label exceeds 255.
/// Labels above 65535 are rejected.
void write_label_png(const std::string& path, const LabelMap& labels);

LabelMap read_label_pgm(const std::string& path);
void write_label_pgm(const std::string& path, const LabelMap& labels);

}  // namespace panoproj
