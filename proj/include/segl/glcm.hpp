#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "segl/field.hpp"
#include "segl/image.hpp"

namespace segl {

/// The eight neighbor directions, counter-clockwise from "right". Offsets are
/// in raster coordinates (y grows downward), so 90 degrees points up.
enum class Direction : std::uint8_t {
  Deg0, Deg45, Deg90, Deg135, Deg180, Deg225, Deg270, Deg315
};

inline constexpr std::array<Direction, 8> kAllDirections = {
    Direction::Deg0,   Direction::Deg45,  Direction::Deg90,  Direction::Deg135,
    Direction::Deg180, Direction::Deg225, Direction::Deg270, Direction::Deg315};

int angle_of(Direction dir) noexcept;
/// Throws Error(Config) unless `degrees` is a multiple of 45 in [0, 315].
Direction direction_from_angle(int degrees);
Direction opposite(Direction dir) noexcept;

struct PixelStep {
  int dx = 0;
  int dy = 0;
};
PixelStep step_of(Direction dir) noexcept;

/// q x q pair counts. counts(a, b) is the number of pixel pairs whose first
/// pixel has level a and whose displaced pixel has level b.
class CooccurrenceMatrix {
 public:
  CooccurrenceMatrix(int levels, std::optional<Direction> direction, int distance);

  int levels() const noexcept { return levels_; }
  /// Empty for the isotropic sum.
  std::optional<Direction> direction() const noexcept { return direction_; }
  bool isotropic() const noexcept { return !direction_.has_value(); }
  int distance() const noexcept { return distance_; }

  std::uint64_t operator()(int first, int second) const {
    return counts_[static_cast<std::size_t>(first) * levels_ + second];
  }
  std::uint64_t& operator()(int first, int second) {
    return counts_[static_cast<std::size_t>(first) * levels_ + second];
  }

  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept;

  CooccurrenceMatrix transposed() const;
  CooccurrenceMatrix& operator+=(const CooccurrenceMatrix& other);

  /// Row = first level, column = second level.
  ScalarField to_field() const;

  bool same_counts(const CooccurrenceMatrix& other) const noexcept {
    return levels_ == other.levels_ && counts_ == other.counts_;
  }

 private:
  int levels_;
  std::optional<Direction> direction_;
  int distance_;
  std::vector<std::uint64_t> counts_;
};

/// Uniform binning v -> floor(v * q / 256); identity at q = 256.
int quantize(std::uint8_t value, int levels) noexcept;

CooccurrenceMatrix glcm(const GrayImage& img, Direction dir, int distance = 1,
                        int levels = 256);

/// Element-wise sum of the eight directional matrices.
CooccurrenceMatrix isotropic_glcm(const GrayImage& img, int distance = 1,
                                  int levels = 256);

}  // namespace segl
