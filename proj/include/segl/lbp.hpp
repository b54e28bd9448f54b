#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "segl/image.hpp"

namespace segl {

struct Offset {
  int dy = 0;
  int dx = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

/// Assignment of the eight ring neighbors to bit positions. Neighbor i
/// (0-based here) contributes weight 2^i.
class LbpConfig {
 public:
  /// Row-major over the ring: (-1,-1) (-1,0) (-1,+1) (0,-1) (0,+1)
  /// (+1,-1) (+1,0) (+1,+1).
  LbpConfig();
  /// Throws Error(Config) unless `order` lists each ring offset exactly once.
  explicit LbpConfig(const std::array<Offset, 8>& order);

  const std::array<Offset, 8>& neighbor_order() const noexcept { return order_; }

 private:
  std::array<Offset, 8> order_;
};

/// LBP code of a 3x3 block given row-major with the center at index 4.
/// A neighbor equal to the center sets its bit.
std::uint8_t lbp_code(std::span<const std::uint8_t, 9> neighborhood,
                      const LbpConfig& config = {});

/// LBP image of the interior; output is (width-2) x (height-2).
GrayImage lbp_image(const GrayImage& img, const LbpConfig& config = {});

}  // namespace segl
