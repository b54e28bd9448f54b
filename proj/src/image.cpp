#include "segl/image.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "segl/error.hpp"

namespace segl {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Dimension: return "dimension error";
    case ErrorCode::Config: return "config error";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Schema: return "schema error";
    case ErrorCode::Fit: return "fit error";
    case ErrorCode::Io: return "io error";
  }
  return "error";
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::Dimension, "image dimensions must be positive, got " +
                                          std::to_string(width) + "x" + std::to_string(height));
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::Dimension, "pixel count " + std::to_string(pixels_.size()) +
                                          " does not match " + std::to_string(width) + "x" +
                                          std::to_string(height));
  }
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(
                    static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), fill)) {}

std::uint8_t luma(Rgb rgb) noexcept {
  const double y = 0.299 * rgb.r + 0.587 * rgb.g + 0.114 * rgb.b;
  const double r = std::round(y);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

GrayImage to_gray(std::span<const Rgb> rgb, int width, int height) {
  if (width < 1 || height < 1 ||
      rgb.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::Dimension, "rgb triplet count " + std::to_string(rgb.size()) +
                                          " does not match " + std::to_string(width) + "x" +
                                          std::to_string(height));
  }
  std::vector<std::uint8_t> out(rgb.size());
  std::transform(rgb.begin(), rgb.end(), out.begin(), luma);
  return GrayImage(width, height, std::move(out));
}

namespace {

// Tokenizer over a netpbm header. Tracks the byte offset for error messages.
class PnmReader {
 public:
  explicit PnmReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, msg + " at byte offset " + std::to_string(pos_));
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = static_cast<unsigned char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_uint(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) fail(std::string("unexpected end of data reading ") + what);
    unsigned long value = 0;
    const char* first = bytes_.data() + pos_;
    const char* last = bytes_.data() + bytes_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail(std::string("expected integer for ") + what);
    if (ptr != last && !std::isspace(static_cast<unsigned char>(*ptr)) && *ptr != '#') {
      fail(std::string("invalid character in ") + what);
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  // Exactly one whitespace byte separates maxval from a binary raster.
  void consume_raster_separator() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      fail("missing whitespace before binary raster");
    }
    ++pos_;
  }

  std::string_view take(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      fail("truncated binary raster: need " + std::to_string(n) + " bytes, have " +
           std::to_string(bytes_.size() - pos_));
    }
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t rescale(unsigned long v, unsigned long maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

}  // namespace

GrayImage load_pgm(std::string_view bytes) {
  PnmReader in(bytes);
  if (bytes.size() < 2 || bytes[0] != 'P') in.fail("missing netpbm magic number");
  const char kind = bytes[1];
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    in.fail(std::string("unsupported netpbm variant P") + kind);
  }
  in.take(2);
  const bool color = kind == '3' || kind == '6';
  const bool binary = kind == '5' || kind == '6';

  const auto width = in.read_uint("width");
  const auto height = in.read_uint("height");
  if (width == 0 || height == 0) in.fail("zero image dimension");
  if (width > 1'000'000 || height > 1'000'000) in.fail("image dimension too large");
  const auto maxval = in.read_uint("maxval");
  if (maxval == 0 || maxval > 255) {
    in.fail("maxval " + std::to_string(maxval) + " outside [1, 255]");
  }

  const std::size_t count = width * height;
  const std::size_t channels = color ? 3 : 1;
  std::vector<std::uint8_t> samples(count * channels);

  if (binary) {
    in.consume_raster_separator();
    const auto raster = in.take(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto v = static_cast<unsigned char>(raster[i]);
      if (v > maxval) in.fail("sample " + std::to_string(v) + " exceeds maxval");
      samples[i] = rescale(v, maxval);
    }
  } else {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      in.skip_space_and_comments();
      if (in.offset() >= bytes.size()) {
        in.fail("truncated plain raster: got " + std::to_string(i) + " of " +
                std::to_string(samples.size()) + " samples");
      }
      const auto v = in.read_uint("sample");
      if (v > maxval) in.fail("sample " + std::to_string(v) + " exceeds maxval");
      samples[i] = rescale(v, maxval);
    }
  }

  const int w = static_cast<int>(width);
  const int h = static_cast<int>(height);
  if (!color) return GrayImage(w, h, std::move(samples));

  std::vector<Rgb> rgb(count);
  for (std::size_t i = 0; i < count; ++i) {
    rgb[i] = {samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
  }
  return to_gray(rgb, w, h);
}

GrayImage load_pgm_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  try {
    return load_pgm(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string save_pgm(const GrayImage& img, PgmEncoding encoding) {
  std::ostringstream out;
  out << (encoding == PgmEncoding::Plain ? "P2" : "P5") << '\n'
      << img.width() << ' ' << img.height() << "\n255\n";
  if (encoding == PgmEncoding::Binary) {
    const auto px = img.pixels();
    out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
    return out.str();
  }
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (x) out << ' ';
      out << static_cast<int>(img.at(x, y));
    }
    out << '\n';
  }
  return out.str();
}

void save_pgm_file(const GrayImage& img, const std::filesystem::path& path,
                   PgmEncoding encoding) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot write " + path.string());
  file << save_pgm(img, encoding);
  if (!file) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace segl
