#pragma once

#include "segl/field.hpp"

namespace segl {

struct Gradients {
  ScalarField gx;
  ScalarField gy;
};

// 3x3 Sobel masks applied by correlation with replicate padding; outputs keep
// the input size.
//   gx: [-1 0 1; -2 0 2; -1 0 1]    gy: [-1 -2 -1; 0 0 0; 1 2 1]
Gradients sobel_gradients(const ScalarField& field);

/// sqrt(gx^2 + gy^2) per cell.
ScalarField sobel_magnitude(const ScalarField& field);

/// Otsu threshold over a 256-bin histogram spanning [0, max]. Returns 0 for
/// an all-zero field.
double otsu_threshold(const ScalarField& field);

/// 1 where the value falls above the Otsu threshold bin, 0 elsewhere.
ScalarField binarize_otsu(const ScalarField& field);

}  // namespace segl
