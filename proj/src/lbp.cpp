#include "segl/lbp.hpp"

#include <algorithm>

#include "segl/error.hpp"

namespace segl {

namespace {

constexpr std::array<Offset, 8> kRowMajorRing = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
}};

}  // namespace

LbpConfig::LbpConfig() : order_(kRowMajorRing) {}

LbpConfig::LbpConfig(const std::array<Offset, 8>& order) : order_(order) {
  for (const Offset& ring : kRowMajorRing) {
    if (std::count(order.begin(), order.end(), ring) != 1) {
      throw Error(ErrorCode::Config,
                  "LBP neighbor order must list each of the 8 ring offsets exactly once");
    }
  }
}

std::uint8_t lbp_code(std::span<const std::uint8_t, 9> neighborhood, const LbpConfig& config) {
  const std::uint8_t center = neighborhood[4];
  unsigned code = 0;
  const auto& order = config.neighbor_order();
  for (unsigned bit = 0; bit < 8; ++bit) {
    const auto [dy, dx] = order[bit];
    const std::uint8_t v = neighborhood[static_cast<std::size_t>((dy + 1) * 3 + (dx + 1))];
    if (v >= center) code |= 1u << bit;
  }
  return static_cast<std::uint8_t>(code);
}

GrayImage lbp_image(const GrayImage& img, const LbpConfig& config) {
  if (img.width() < 3 || img.height() < 3) {
    throw Error(ErrorCode::Dimension, "LBP needs at least a 3x3 image, got " +
                                          std::to_string(img.width()) + "x" +
                                          std::to_string(img.height()));
  }
  const int out_w = img.width() - 2;
  const int out_h = img.height() - 2;
  const auto src = img.pixels();
  const std::ptrdiff_t stride = img.width();

  // Linear offset of every neighbor relative to the center pixel.
  std::array<std::ptrdiff_t, 8> delta{};
  for (std::size_t bit = 0; bit < 8; ++bit) {
    const auto [dy, dx] = config.neighbor_order()[bit];
    delta[bit] = dy * stride + dx;
  }

  std::vector<std::uint8_t> out(static_cast<std::size_t>(out_w) * out_h);
  for (int y = 0; y < out_h; ++y) {
    const std::uint8_t* row = src.data() + (y + 1) * stride + 1;
    std::uint8_t* dst = out.data() + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) {
      const std::uint8_t* c = row + x;
      unsigned code = 0;
      for (unsigned bit = 0; bit < 8; ++bit) {
        code |= static_cast<unsigned>(c[delta[bit]] >= *c) << bit;
      }
      dst[x] = static_cast<std::uint8_t>(code);
    }
  }
  return GrayImage(out_w, out_h, std::move(out));
}

}  // namespace segl
