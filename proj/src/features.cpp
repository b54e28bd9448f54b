#include "segl/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "segl/edge.hpp"
#include "segl/error.hpp"

namespace segl {

ScalarField normalize(const ScalarField& field) {
  const auto src = field.values();
  double total = 0.0;
  for (double v : src) {
    if (v < 0.0 || std::isnan(v)) {
      throw Error(ErrorCode::Domain, "cannot normalize a field with negative or NaN cells");
    }
    total += v;
  }
  ScalarField out(field.width(), field.height());
  auto dst = out.values();
  if (total == 0.0) {
    std::fill(dst.begin(), dst.end(), 1.0 / static_cast<double>(dst.size()));
    return out;
  }
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] / total;
  return out;
}

TextureStats compute_features(const ScalarField& p) {
  const int n = p.width();
  if (p.height() != n) {
    throw Error(ErrorCode::Domain, "probability matrix must be square, got " +
                                       std::to_string(p.width()) + "x" +
                                       std::to_string(p.height()));
  }
  double total = 0.0;
  for (double v : p.values()) {
    if (v < 0.0 || std::isnan(v)) {
      throw Error(ErrorCode::Domain, "probability matrix has a negative or NaN cell");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::Domain, "probability matrix sums to " + std::to_string(total) +
                                       ", expected 1");
  }

  TextureStats s;
  // First pass: moments of the row index, which needs only the row sums.
  std::vector<double> row_mass(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    for (int j = 0; j < n; ++j) r += p.at(j, i);
    row_mass[static_cast<std::size_t>(i)] = r;
    s.mean += i * r;
  }
  for (int i = 0; i < n; ++i) {
    const double d = i - s.mean;
    s.variance += row_mass[static_cast<std::size_t>(i)] * d * d;
  }

  double cross = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = p.at(j, i);
      if (v == 0.0) continue;
      const double diff2 = static_cast<double>(i - j) * (i - j);
      s.entropy -= v * std::log(v);
      s.energy += v * v;
      s.contrast += v * diff2;
      s.homogeneity += v / (1.0 + diff2);
      cross += v * (i - s.mean) * (j - s.mean);
    }
  }
  s.correlation = s.variance > 0.0 ? cross / s.variance : 0.0;
  return s;
}

const char* to_string(Approach approach) noexcept {
  switch (approach) {
    case Approach::Segl: return "segl";
    case Approach::LbpOnly: return "lbp";
    case Approach::GlcmOnly: return "glcm";
  }
  return "segl";
}

Approach approach_from_string(std::string_view name) {
  if (name == "segl") return Approach::Segl;
  if (name == "lbp" || name == "lbp-only") return Approach::LbpOnly;
  if (name == "glcm" || name == "glcm-only") return Approach::GlcmOnly;
  throw Error(ErrorCode::Config, "unknown approach '" + std::string(name) +
                                     "' (expected segl, lbp or glcm)");
}

std::string feature_name(std::string_view stat, Direction dir) {
  char suffix[8];
  std::snprintf(suffix, sizeof suffix, "_d%03d", angle_of(dir));
  return std::string(stat) + suffix;
}

std::vector<std::string> feature_names(std::span<const Direction> directions) {
  std::vector<std::string> names;
  names.reserve(directions.size() * kStatNames.size());
  for (Direction dir : directions) {
    for (std::string_view stat : kStatNames) names.push_back(feature_name(stat, dir));
  }
  return names;
}

std::vector<Direction> directions_from_names(std::span<const std::string> names) {
  if (names.empty() || names.size() % kStatNames.size() != 0) {
    throw Error(ErrorCode::Schema, "feature count " + std::to_string(names.size()) +
                                       " is not a multiple of 7");
  }
  std::vector<Direction> dirs;
  for (std::size_t b = 0; b < names.size(); b += kStatNames.size()) {
    const std::string& first = names[b];
    const auto sep = first.rfind("_d");
    int angle = -1;
    if (sep != std::string::npos && first.size() - sep == 5) {
      const std::string digits = first.substr(sep + 2);
      if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        angle = std::stoi(digits);
      }
    }
    if (angle < 0 || angle % 45 != 0 || angle > 315) {
      throw Error(ErrorCode::Schema, "cannot read a direction from feature name '" + first + "'");
    }
    dirs.push_back(direction_from_angle(angle));
  }
  const auto expected = feature_names(dirs);
  if (!std::equal(names.begin(), names.end(), expected.begin(), expected.end()) ||
      !std::is_sorted(dirs.begin(), dirs.end()) ||
      std::adjacent_find(dirs.begin(), dirs.end()) != dirs.end()) {
    throw Error(ErrorCode::Schema, "feature columns are not in <stat>_d<angle> order");
  }
  return dirs;
}

namespace {

std::vector<Direction> canonical(std::span<const Direction> directions) {
  if (directions.empty()) throw Error(ErrorCode::Config, "at least one direction is required");
  std::vector<Direction> out(directions.begin(), directions.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ScalarField distribution_from(const GrayImage& source, Approach approach, Direction dir,
                              const PipelineConfig& cfg) {
  const ScalarField counts = glcm(source, dir, cfg.distance, cfg.levels).to_field();
  if (approach != Approach::Segl) return normalize(counts);
  ScalarField edges = sobel_magnitude(counts);
  if (cfg.edge_output == EdgeOutput::Binary) edges = binarize_otsu(edges);
  return normalize(edges);
}

}  // namespace

ScalarField pipeline_distribution(const GrayImage& img, Approach approach, Direction dir,
                                  const PipelineConfig& cfg) {
  if (approach == Approach::GlcmOnly) return distribution_from(img, approach, dir, cfg);
  return distribution_from(lbp_image(img, cfg.lbp), approach, dir, cfg);
}

FeatureVector baseline_features(const GrayImage& img, Approach approach,
                                std::span<const Direction> directions,
                                const PipelineConfig& cfg) {
  if (img.width() < 3 || img.height() < 3) {
    throw Error(ErrorCode::Dimension, "feature extraction needs at least a 3x3 image, got " +
                                          std::to_string(img.width()) + "x" +
                                          std::to_string(img.height()));
  }
  FeatureVector fv;
  fv.directions = canonical(directions);
  fv.names = feature_names(fv.directions);
  fv.values.reserve(fv.names.size());

  const GrayImage source = approach == Approach::GlcmOnly ? img : lbp_image(img, cfg.lbp);
  for (Direction dir : fv.directions) {
    const auto stats = compute_features(distribution_from(source, approach, dir, cfg));
    const auto block = stats.as_array();
    fv.values.insert(fv.values.end(), block.begin(), block.end());
  }
  return fv;
}

FeatureVector segl_features(const GrayImage& img, std::span<const Direction> directions,
                            const PipelineConfig& cfg) {
  return baseline_features(img, Approach::Segl, directions, cfg);
}

}  // namespace segl
