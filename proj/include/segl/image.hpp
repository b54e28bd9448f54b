#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace segl {

/// 8-bit single-channel raster, row-major with the top-left pixel first.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);
  /// Constant image.
  GrayImage(int width, int height, std::uint8_t fill);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};

/// Luma conversion with ITU-R 601 weights, rounded to nearest.
std::uint8_t luma(Rgb rgb) noexcept;

GrayImage to_gray(std::span<const Rgb> rgb, int width, int height);

enum class PgmEncoding { Plain, Binary };  // P2 / P5

/// Parses a portable anymap held in memory. Accepts P2 and P5 graymaps and,
/// for convenience, P3/P6 pixmaps which are converted with to_gray(). A
/// maxval below 255 is rescaled to the full 8-bit range.
GrayImage load_pgm(std::string_view bytes);
GrayImage load_pgm_file(const std::filesystem::path& path);

std::string save_pgm(const GrayImage& img, PgmEncoding encoding);
void save_pgm_file(const GrayImage& img, const std::filesystem::path& path,
                   PgmEncoding encoding);

}  // namespace segl
