#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "segl/field.hpp"
#include "segl/glcm.hpp"
#include "segl/image.hpp"
#include "segl/lbp.hpp"

namespace segl {

/// The seven texture statistics, in their canonical column order.
struct TextureStats {
  double entropy = 0.0;
  double energy = 0.0;
  double contrast = 0.0;
  double homogeneity = 0.0;
  double correlation = 0.0;
  double mean = 0.0;
  double variance = 0.0;

  std::array<double, 7> as_array() const noexcept {
    return {entropy, energy, contrast, homogeneity, correlation, mean, variance};
  }
};

inline constexpr std::array<std::string_view, 7> kStatNames = {
    "entropy", "energy", "contrast", "homogeneity", "correlation", "mean", "variance"};

/// Divides by the total. An all-zero field becomes the uniform distribution.
/// Throws Error(Domain) on a negative cell.
ScalarField normalize(const ScalarField& field);

/// Statistics of an N x N probability matrix P (row index i, column index j):
///   entropy     -sum P ln P          (0 ln 0 taken as 0)
///   energy      sum P^2
///   contrast    sum P (i-j)^2
///   homogeneity sum P / (1 + (i-j)^2)
///   correlation sum P (i-mu)(j-mu) / sigma^2   (0 when sigma^2 == 0)
///   mean        mu = sum i P
///   variance    sigma^2 = sum P (i-mu)^2
/// mu and sigma^2 are the row-marginal moments and serve both factors of the
/// correlation term. Throws Error(Domain) if P is not square, has negative
/// cells, or does not sum to 1 within 1e-9.
TextureStats compute_features(const ScalarField& p);

enum class EdgeOutput { Magnitude, Binary };

enum class Approach {
  Segl,      // LBP -> GLCM -> Sobel -> statistics
  LbpOnly,   // LBP -> GLCM -> statistics
  GlcmOnly,  // GLCM of the raw image -> statistics
};

const char* to_string(Approach approach) noexcept;
/// Accepts "segl", "lbp", "lbp-only", "glcm", "glcm-only".
Approach approach_from_string(std::string_view name);

struct PipelineConfig {
  int levels = 256;
  int distance = 1;
  EdgeOutput edge_output = EdgeOutput::Magnitude;
  LbpConfig lbp{};
};

/// Named feature values, one block of seven per direction.
struct FeatureVector {
  std::vector<Direction> directions;
  std::vector<std::string> names;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

/// "<stat>_d<angle>" with the angle zero-padded to three digits.
std::string feature_name(std::string_view stat, Direction dir);
std::vector<std::string> feature_names(std::span<const Direction> directions);

/// Inverse of feature_names(): recovers the direction list from a column
/// schema. Throws Error(Schema) if the names are not a complete, ordered
/// feature layout.
std::vector<Direction> directions_from_names(std::span<const std::string> names);

/// Full pipeline. Directions must be nonempty; the image at least 3x3.
FeatureVector segl_features(const GrayImage& img, std::span<const Direction> directions,
                            const PipelineConfig& cfg = {});

/// Pipeline truncated for the comparison approaches. Approach::Segl forwards
/// to segl_features().
FeatureVector baseline_features(const GrayImage& img, Approach approach,
                                std::span<const Direction> directions,
                                const PipelineConfig& cfg = {});

/// Distribution whose statistics are reported for one direction, i.e. the
/// last field of the chosen pipeline before compute_features().
ScalarField pipeline_distribution(const GrayImage& img, Approach approach, Direction dir,
                                  const PipelineConfig& cfg = {});

}  // namespace segl
