#include "segl/edge.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace segl {

Gradients sobel_gradients(const ScalarField& field) {
  const int w = field.width();
  const int h = field.height();
  Gradients g{ScalarField(w, h), ScalarField(w, h)};

  auto clamp_x = [w](int x) { return std::clamp(x, 0, w - 1); };
  auto clamp_y = [h](int y) { return std::clamp(y, 0, h - 1); };

  for (int y = 0; y < h; ++y) {
    const int ym = clamp_y(y - 1), yp = clamp_y(y + 1);
    for (int x = 0; x < w; ++x) {
      const int xm = clamp_x(x - 1), xp = clamp_x(x + 1);
      const double tl = field.at(xm, ym), tc = field.at(x, ym), tr = field.at(xp, ym);
      const double ml = field.at(xm, y), mr = field.at(xp, y);
      const double bl = field.at(xm, yp), bc = field.at(x, yp), br = field.at(xp, yp);
      g.gx.at(x, y) = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
      g.gy.at(x, y) = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
    }
  }
  return g;
}

ScalarField sobel_magnitude(const ScalarField& field) {
  const Gradients g = sobel_gradients(field);
  ScalarField out(field.width(), field.height());
  const auto gx = g.gx.values();
  const auto gy = g.gy.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
  return out;
}

namespace {

constexpr int kBins = 256;

int bin_of(double v, double top) {
  return std::min(kBins - 1, static_cast<int>(std::max(v, 0.0) / top * kBins));
}

// Last histogram bin of the background class; -1 for an all-zero field.
int otsu_bin(const ScalarField& field) {
  const auto values = field.values();
  const double top = *std::max_element(values.begin(), values.end());
  if (!(top > 0.0)) return -1;

  std::array<double, kBins> hist{};
  for (double v : values) hist[bin_of(v, top)] += 1.0;
  const double n = static_cast<double>(values.size());
  double total_moment = 0.0;
  for (int i = 0; i < kBins; ++i) total_moment += i * hist[i];

  double best_between = -1.0;
  int best_bin = 0;
  double w0 = 0.0, moment0 = 0.0;
  for (int t = 0; t < kBins - 1; ++t) {
    w0 += hist[t];
    moment0 += t * hist[t];
    const double w1 = n - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double mu0 = moment0 / w0;
    const double mu1 = (total_moment - moment0) / w1;
    const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (between > best_between) {
      best_between = between;
      best_bin = t;
    }
  }
  return best_bin;
}

}  // namespace

double otsu_threshold(const ScalarField& field) {
  const int bin = otsu_bin(field);
  if (bin < 0) return 0.0;
  const auto values = field.values();
  const double top = *std::max_element(values.begin(), values.end());
  return (bin + 1) * top / kBins;
}

ScalarField binarize_otsu(const ScalarField& field) {
  ScalarField out(field.width(), field.height());
  const int threshold_bin = otsu_bin(field);
  if (threshold_bin < 0) return out;
  const auto src = field.values();
  const double top = *std::max_element(src.begin(), src.end());
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = bin_of(src[i], top) > threshold_bin ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace segl
