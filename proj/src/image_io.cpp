#include "panoproj/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace panoproj {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path + "'");
  return f;
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw IoError("libpng: out of memory");
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;

  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) throw IoError("libpng: out of memory");
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

bool has_png_magic(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), 8);
  return in.gcount() == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

}  // namespace

Image read_image_png(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  PngReader r;
  if (setjmp(png_jmpbuf(r.png))) throw IoError("failed to decode PNG '" + path + "'");
  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);

  png_set_expand(r.png);
  png_set_strip_16(r.png);
  png_set_strip_alpha(r.png);
  png_set_gray_to_rgb(r.png);
  png_read_update_info(r.png, r.info);

  const int w = static_cast<int>(png_get_image_width(r.png, r.info));
  const int h = static_cast<int>(png_get_image_height(r.png, r.info));
  if (png_get_channels(r.png, r.info) != 3)
    throw IoError("unexpected channel count in '" + path + "'");

  Image img(w, h);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y) rows[y] = img.data.data() + static_cast<std::size_t>(y) * w * 3;
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);
  return img;
}

void write_image_png(const std::string& path, const Image& img) {
  FilePtr f = open_file(path, "wb");
  PngWriter w;
  if (setjmp(png_jmpbuf(w.png))) throw IoError("failed to encode PNG '" + path + "'");
  png_init_io(w.png, f.get());
  png_set_IHDR(w.png, w.info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);

  std::vector<png_bytep> rows(img.height);
  for (int y = 0; y < img.height; ++y)
    rows[y] = const_cast<png_bytep>(img.data.data() + static_cast<std::size_t>(y) * img.width * 3);
  png_write_image(w.png, rows.data());
  png_write_end(w.png, nullptr);
}

namespace {

LabelMap read_label_png(const std::string& path) {
  FilePtr f = open_file(path, "rb");
  PngReader r;
  if (setjmp(png_jmpbuf(r.png))) throw IoError("failed to decode PNG '" + path + "'");
  png_init_io(r.png, f.get());
  png_read_info(r.png, r.info);

  const png_byte color = png_get_color_type(r.png, r.info);
  if (color != PNG_COLOR_TYPE_GRAY)
    throw IoError("label map '" + path + "' must be single-channel gray");
  if (png_get_bit_depth(r.png, r.info) < 8) png_set_expand_gray_1_2_4_to_8(r.png);
  png_read_update_info(r.png, r.info);

  const int w = static_cast<int>(png_get_image_width(r.png, r.info));
  const int h = static_cast<int>(png_get_image_height(r.png, r.info));
  const int depth = png_get_bit_depth(r.png, r.info);

  const std::size_t stride = static_cast<std::size_t>(w) * (depth == 16 ? 2 : 1);
  std::vector<std::uint8_t> raw(stride * h);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y) rows[y] = raw.data() + y * stride;
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);

  LabelMap labels(w, h);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = raw.data() + y * stride;
    for (int x = 0; x < w; ++x) {
      // PNG 16-bit samples are big-endian.
      labels.at(x, y) = depth == 16 ? (row[2 * x] << 8) | row[2 * x + 1] : row[x];
    }
  }
  return labels;
}

}  // namespace

LabelMap read_label_map(const std::string& path) {
  if (has_png_magic(path)) return read_label_png(path);
  return read_label_pgm(path);
}

void write_label_png(const std::string& path, const LabelMap& labels) {
  std::int32_t max_label = 0;
  for (std::int32_t v : labels.data) {
    if (v < 0) throw IoError("label map contains negative values");
    max_label = std::max(max_label, v);
  }
  if (max_label > 65535) throw IoError("label map exceeds 16-bit range");
  const int depth = max_label > 255 ? 16 : 8;

  FilePtr f = open_file(path, "wb");
  PngWriter w;
  if (setjmp(png_jmpbuf(w.png))) throw IoError("failed to encode PNG '" + path + "'");
  png_init_io(w.png, f.get());
  png_set_IHDR(w.png, w.info, labels.width, labels.height, depth, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);

  const std::size_t stride = static_cast<std::size_t>(labels.width) * (depth == 16 ? 2 : 1);
  std::vector<std::uint8_t> raw(stride * labels.height);
  for (int y = 0; y < labels.height; ++y) {
    std::uint8_t* row = raw.data() + y * stride;
    for (int x = 0; x < labels.width; ++x) {
      const std::int32_t v = labels.at(x, y);
      if (depth == 16) {
        row[2 * x] = static_cast<std::uint8_t>(v >> 8);
        row[2 * x + 1] = static_cast<std::uint8_t>(v & 0xff);
      } else {
        row[x] = static_cast<std::uint8_t>(v);
      }
    }
  }
  std::vector<png_bytep> rows(labels.height);
  for (int y = 0; y < labels.height; ++y) rows[y] = raw.data() + y * stride;
  png_write_image(w.png, rows.data());
  png_write_end(w.png, nullptr);
}

LabelMap read_label_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");

  std::string magic;
  in >> magic;
  if (magic != "P5" && magic != "P2") throw IoError("'" + path + "' is not a PGM file");

  auto next_token = [&in, &path]() -> long {
    // Skip whitespace and '#' comment lines between header tokens.
    while (true) {
      int c = in.peek();
      if (c == '#') {
        std::string line;
        std::getline(in, line);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    long v = -1;
    in >> v;
    if (!in || v < 0) throw IoError("malformed PGM header in '" + path + "'");
    return v;
  };

  const long w = next_token();
  const long h = next_token();
  const long maxval = next_token();
  if (w < 1 || h < 1 || maxval < 1 || maxval > 65535)
    throw IoError("unsupported PGM geometry in '" + path + "'");

  LabelMap labels(static_cast<int>(w), static_cast<int>(h));
  if (magic == "P2") {
    for (auto& v : labels.data) {
      long s = -1;
      in >> s;
      if (!in || s < 0 || s > maxval) throw IoError("malformed PGM data in '" + path + "'");
      v = static_cast<std::int32_t>(s);
    }
    return labels;
  }

  in.get();  // single whitespace after maxval
  const bool wide = maxval > 255;
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw IoError("truncated PGM data in '" + path + "'");
  for (std::size_t i = 0; i < labels.data.size(); ++i) {
    labels.data[i] = wide ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
  }
  return labels;
}

void write_label_pgm(const std::string& path, const LabelMap& labels) {
  std::int32_t max_label = 1;
  for (std::int32_t v : labels.data) {
    if (v < 0) throw IoError("label map contains negative values");
    max_label = std::max(max_label, v);
  }
  if (max_label > 65535) throw IoError("label map exceeds 16-bit range");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "P5\n" << labels.width << " " << labels.height << "\n" << max_label << "\n";

  const bool wide = max_label > 255;
  std::vector<std::uint8_t> raw;
  raw.reserve(labels.data.size() * (wide ? 2 : 1));
  for (std::int32_t v : labels.data) {
    if (wide) raw.push_back(static_cast<std::uint8_t>(v >> 8));
    raw.push_back(static_cast<std::uint8_t>(v & 0xff));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace panoproj
