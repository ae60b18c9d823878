#pragma once

#include <string>
#include <utility>
#include <vector>

#include "panoproj/raster.hpp"

namespace panoproj {

/// Draws text with a built-in 5x7 bitmap font (upper-cased; unknown glyphs
/// become spaces).
void draw_text(Image& img, int x, int y, const std::string& text, int scale = 2);

/// Arranges equally sized tiles into a captioned grid. With columns == 0 a
/// near-square layout is chosen. Returns the composed sheet.
Image compose_sheet(const std::vector<std::pair<std::string, Image>>& tiles, int columns = 0);

}  // namespace panoproj
