#include "segl/glcm.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "segl/error.hpp"

namespace segl {

int angle_of(Direction dir) noexcept { return static_cast<int>(dir) * 45; }

Direction direction_from_angle(int degrees) {
  if (degrees < 0 || degrees > 315 || degrees % 45 != 0) {
    throw Error(ErrorCode::Config, "direction must be one of 0,45,...,315 degrees, got " +
                                       std::to_string(degrees));
  }
  return static_cast<Direction>(degrees / 45);
}

Direction opposite(Direction dir) noexcept {
  return static_cast<Direction>((static_cast<int>(dir) + 4) % 8);
}

PixelStep step_of(Direction dir) noexcept {
  switch (dir) {
    case Direction::Deg0: return {1, 0};
    case Direction::Deg45: return {1, -1};
    case Direction::Deg90: return {0, -1};
    case Direction::Deg135: return {-1, -1};
    case Direction::Deg180: return {-1, 0};
    case Direction::Deg225: return {-1, 1};
    case Direction::Deg270: return {0, 1};
    case Direction::Deg315: return {1, 1};
  }
  return {1, 0};
}

CooccurrenceMatrix::CooccurrenceMatrix(int levels, std::optional<Direction> direction,
                                       int distance)
    : levels_(levels), direction_(direction), distance_(distance) {
  if (levels < 2 || levels > 256) {
    throw Error(ErrorCode::Config,
                "gray-level count must be in [2, 256], got " + std::to_string(levels));
  }
  if (distance < 1) {
    throw Error(ErrorCode::Config,
                "co-occurrence distance must be >= 1, got " + std::to_string(distance));
  }
  counts_.assign(static_cast<std::size_t>(levels) * levels, 0);
}

std::uint64_t CooccurrenceMatrix::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

CooccurrenceMatrix CooccurrenceMatrix::transposed() const {
  std::optional<Direction> dir;
  if (direction_) dir = opposite(*direction_);
  CooccurrenceMatrix out(levels_, dir, distance_);
  for (int a = 0; a < levels_; ++a) {
    for (int b = 0; b < levels_; ++b) out(b, a) = (*this)(a, b);
  }
  return out;
}

CooccurrenceMatrix& CooccurrenceMatrix::operator+=(const CooccurrenceMatrix& other) {
  if (other.levels_ != levels_) {
    throw Error(ErrorCode::Dimension, "cannot add co-occurrence matrices of different sizes");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  if (direction_ != other.direction_) direction_.reset();
  return *this;
}

ScalarField CooccurrenceMatrix::to_field() const {
  std::vector<double> values(counts_.begin(), counts_.end());
  return ScalarField(levels_, levels_, std::move(values));
}

int quantize(std::uint8_t value, int levels) noexcept {
  if (levels >= 256) return value;
  return (static_cast<int>(value) * levels) / 256;
}

CooccurrenceMatrix glcm(const GrayImage& img, Direction dir, int distance, int levels) {
  CooccurrenceMatrix m(levels, dir, distance);
  if (img.empty()) throw Error(ErrorCode::Dimension, "co-occurrence of an empty image");

  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) lut[v] = static_cast<std::uint8_t>(quantize(v, levels));

  const auto [sx, sy] = step_of(dir);
  const int dx = sx * distance;
  const int dy = sy * distance;
  const int w = img.width();
  const int h = img.height();
  // Range of first pixels whose displaced partner stays inside the image.
  const int x0 = std::max(0, -dx), x1 = std::min(w, w - dx);
  const int y0 = std::max(0, -dy), y1 = std::min(h, h - dy);
  const auto px = img.pixels();
  for (int y = y0; y < y1; ++y) {
    const std::uint8_t* first = px.data() + static_cast<std::size_t>(y) * w;
    const std::uint8_t* second = px.data() + static_cast<std::size_t>(y + dy) * w + dx;
    for (int x = x0; x < x1; ++x) ++m(lut[first[x]], lut[second[x]]);
  }
  return m;
}

CooccurrenceMatrix isotropic_glcm(const GrayImage& img, int distance, int levels) {
  CooccurrenceMatrix sum(levels, std::nullopt, distance);
  for (Direction dir : kAllDirections) sum += glcm(img, dir, distance, levels);
  return sum;
}

}  // namespace segl
