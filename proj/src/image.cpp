#include "madl/image.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>

namespace madl {

namespace {

struct PngWriteCtx {
  std::vector<std::uint8_t>* out;
};

void png_vector_write(png_structp png, png_bytep data, png_size_t length) {
  auto* ctx = static_cast<PngWriteCtx*>(png_get_io_ptr(png));
  ctx->out->insert(ctx->out->end(), data, data + length);
}

void png_noop_flush(png_structp) {}

std::vector<std::uint8_t> encode_impl(int width, int height, int color_type,
                                      const std::uint8_t* pixels, int bytes_per_pixel) {
  if (width <= 0 || height <= 0) throw FormatError("encode_png: empty image");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  std::vector<std::uint8_t> out;
  PngWriteCtx ctx{&out};
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng write error");
  }
  png_set_write_fn(png, &ctx, png_vector_write, png_noop_flush);
  // Pinned filter + level keep the byte stream reproducible across runs.
  png_set_filter(png, 0, PNG_FILTER_NONE);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(pixels + static_cast<std::size_t>(y) * width * bytes_per_pixel);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void decode_impl(const std::filesystem::path& path, bool want_rgb, int& width, int& height,
                 std::vector<std::uint8_t>& pixels) {
  std::FILE* fp = std::fopen(path.string().c_str(), "rb");
  if (!fp) throw IoError("cannot open " + path.string());
  png_byte header[8];
  if (std::fread(header, 1, 8, fp) != 8 || png_sig_cmp(header, 0, 8) != 0) {
    std::fclose(fp);
    throw FormatError(path.string() + ": not a PNG file");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    std::fclose(fp);
    throw IoError("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw FormatError(path.string() + ": libpng read error");
  }
  png_init_io(png, fp);
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  png_set_strip_16(png);
  png_set_packing(png);
  png_set_strip_alpha(png);
  const int color_type = png_get_color_type(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_expand_gray_1_2_4_to_8(png);
    if (want_rgb) png_set_gray_to_rgb(png);
  } else if (!want_rgb) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  }
  png_read_update_info(png, info);

  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  const int channels = want_rgb ? 3 : 1;
  pixels.resize(static_cast<std::size_t>(width) * height * channels);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * channels;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
}

void write_bytes(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
  std::FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw IoError("cannot open " + path.string() + " for writing");
  const std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), fp);
  std::fclose(fp);
  if (written != bytes.size()) throw IoError("write failure on " + path.string());
}

}  // namespace

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
  return encode_impl(img.width, img.height, PNG_COLOR_TYPE_GRAY, img.pixels.data(), 1);
}

std::vector<std::uint8_t> encode_png(const RgbImage& img) {
  return encode_impl(img.width, img.height, PNG_COLOR_TYPE_RGB, img.pixels.data(), 3);
}

void write_png(const GrayImage& img, const std::filesystem::path& path) {
  write_bytes(encode_png(img), path);
}

void write_png(const RgbImage& img, const std::filesystem::path& path) {
  write_bytes(encode_png(img), path);
}

GrayImage read_png_gray(const std::filesystem::path& path) {
  GrayImage img;
  decode_impl(path, false, img.width, img.height, img.pixels);
  return img;
}

RgbImage read_png_rgb(const std::filesystem::path& path) {
  RgbImage img;
  decode_impl(path, true, img.width, img.height, img.pixels);
  return img;
}

}  // namespace madl
