#include "segl/field.hpp"

#include <string>

#include "segl/error.hpp"

namespace segl {

ScalarField::ScalarField(int width, int height, double fill)
    : ScalarField(width, height,
                  std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                          static_cast<std::size_t>(std::max(height, 0)),
                                      fill)) {}

ScalarField::ScalarField(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width < 1 || height < 1 ||
      values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::Dimension, "field of " + std::to_string(values_.size()) +
                                          " values cannot be " + std::to_string(width) + "x" +
                                          std::to_string(height));
  }
}

ScalarField ScalarField::transposed() const {
  ScalarField out(height_, width_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out.at(y, x) = at(x, y);
  }
  return out;
}

}  // namespace segl
