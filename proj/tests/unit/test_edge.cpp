#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "segl/edge.hpp"
#include "synthetic.hpp"

using namespace segl;

namespace {

ScalarField random_field(testing::Rng& rng, int w, int h) {
  ScalarField f(w, h);
  for (double& v : f.values()) v = rng.uniform(0.0, 100.0);
  return f;
}

}  // namespace

TEST_CASE("constant fields have no gradient") {
  for (int size : {1, 2, 5}) {
    const auto g = sobel_gradients(ScalarField(size, size + 1, 42.0));
    for (double v : g.gx.values()) CHECK(v == 0.0);
    for (double v : g.gy.values()) CHECK(v == 0.0);
    const auto mag = sobel_magnitude(ScalarField(size, size, 3.5));
    for (double v : mag.values()) CHECK(v == 0.0);
  }
}

TEST_CASE("step edge at the center") {
  const ScalarField f(3, 3, std::vector<double>{0, 0, 255, 0, 0, 255, 0, 0, 255});
  const auto g = sobel_gradients(f);
  CHECK(g.gx.at(1, 1) == 1020.0);
  CHECK(g.gy.at(1, 1) == 0.0);
}

TEST_CASE("linear fields give the 3-4-5 magnitude") {
  // f = 3x/8 + 4y/8, so the interior gradients are exactly 3 and 4.
  ScalarField f(3, 3);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) f.at(x, y) = 0.375 * x + 0.5 * y;
  const auto g = sobel_gradients(f);
  CHECK(g.gx.at(1, 1) == 3.0);
  CHECK(g.gy.at(1, 1) == 4.0);
  CHECK(sobel_magnitude(f).at(1, 1) == 5.0);
}

TEST_CASE("horizontal ramp has interior magnitude 8") {
  ScalarField ramp(10, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 10; ++x) ramp.at(x, y) = x;
  const auto g = sobel_gradients(ramp);
  const auto mag = sobel_magnitude(ramp);
  for (int y = 0; y < 6; ++y) {
    for (int x = 1; x < 9; ++x) {
      CHECK(g.gx.at(x, y) == 8.0);
      CHECK(g.gy.at(x, y) == 0.0);
      CHECK(mag.at(x, y) == 8.0);
    }
  }
  // Replicate padding halves the difference at the borders.
  CHECK(g.gx.at(0, 0) == 4.0);
  CHECK(g.gx.at(9, 0) == 4.0);
}

TEST_CASE("sobel matches the padded-correlation oracle") {
  testing::Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int w = rng.integer(1, 9), h = rng.integer(1, 9);
    const auto f = random_field(rng, w, h);
    oracle::Grid grid(h, std::vector<double>(w));
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) grid[y][x] = f.at(x, y);
    oracle::Grid gx, gy;
    oracle::sobel(grid, gx, gy);
    const auto g = sobel_gradients(f);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        REQUIRE(g.gx.at(x, y) == doctest::Approx(gx[y][x]).epsilon(1e-12));
        REQUIRE(g.gy.at(x, y) == doctest::Approx(gy[y][x]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("transposing the input swaps the gradients") {
  testing::Rng rng(32);
  const auto f = random_field(rng, 7, 4);
  const auto g = sobel_gradients(f);
  const auto gt = sobel_gradients(f.transposed());
  CHECK(gt.gx == g.gy.transposed());
  CHECK(gt.gy == g.gx.transposed());
}

TEST_CASE("magnitude ignores offsets and scales linearly") {
  testing::Rng rng(33);
  const auto f = random_field(rng, 8, 8);
  const auto base = sobel_magnitude(f);

  ScalarField shifted = f;
  for (double& v : shifted.values()) v += 17.0;
  const auto mag_shift = sobel_magnitude(shifted);
  for (std::size_t i = 0; i < base.values().size(); ++i) {
    CHECK(mag_shift.values()[i] == doctest::Approx(base.values()[i]).epsilon(1e-12));
  }

  for (double c : {0.0, 0.5, 2.0, 10.0}) {
    ScalarField scaled = f;
    for (double& v : scaled.values()) v *= c;
    const auto m = sobel_magnitude(scaled);
    for (std::size_t i = 0; i < m.values().size(); ++i) {
      CHECK(std::abs(m.values()[i] - c * base.values()[i]) <= 1e-12 * std::max(1.0, c * base.values()[i]));
    }
  }
  CHECK(base.width() == 8);
  CHECK(base.height() == 8);
}

TEST_CASE("otsu splits a bimodal field") {
  ScalarField f(4, 2, std::vector<double>{1, 2, 1, 2, 90, 100, 95, 100});
  const auto b = binarize_otsu(f);
  CHECK(b == ScalarField(4, 2, std::vector<double>{0, 0, 0, 0, 1, 1, 1, 1}));
  const double t = otsu_threshold(f);
  CHECK(t > 2.0);
  CHECK(t < 90.0);
  CHECK(binarize_otsu(ScalarField(3, 3, 0.0)) == ScalarField(3, 3, 0.0));
}
