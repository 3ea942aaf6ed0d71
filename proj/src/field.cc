#include "beaver/field.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beaver::viz {

Rgb color_of(std::uint32_t t, std::uint32_t max_time) {
  if (t == 0) return kWhite;
  if (t > max_time) throw std::out_of_range("time beyond the spectrum maximum");
  if (t == max_time) return kRed;
  const double span = std::max<std::int64_t>(static_cast<std::int64_t>(max_time) - 2, 1);
  const auto g = static_cast<std::uint8_t>(230 - std::lround(200.0 * (t - 1) / span));
  return {g, g, g};
}

Point curve_point(int order, std::uint64_t d) {
  if (order < 0 || order > 31) throw std::out_of_range("curve order out of range");
  const std::uint64_t side = std::uint64_t{1} << order;
  if (d >= side * side) throw std::out_of_range("curve index out of range");
  std::uint64_t x = 0, y = 0, t = d;
  for (std::uint64_t s = 1; s < side; s *= 2) {
    const std::uint64_t rx = 1 & (t / 2);
    const std::uint64_t ry = 1 & (t ^ rx);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
    x += s * rx;
    y += s * ry;
    t /= 4;
  }
  return {static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)};
}

Rgb FieldImage::at(std::uint32_t x, std::uint32_t y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  return {pixels.at(i), pixels.at(i + 1), pixels.at(i + 2)};
}

void FieldImage::set(std::uint32_t x, std::uint32_t y, Rgb c) {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  std::copy(c.begin(), c.end(), pixels.begin() + static_cast<long>(i));
}

std::uint64_t FieldImage::count(Rgb c) const {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i + 2 < pixels.size(); i += 3) {
    if (pixels[i] == c[0] && pixels[i + 1] == c[1] && pixels[i + 2] == c[2]) ++n;
  }
  return n;
}

std::string FieldImage::to_ppm() const {
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(pixels.begin(), pixels.end());
  return out;
}

FieldImage FieldImage::from_ppm(const std::string& bytes) {
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return bytes.substr(start, pos - start);
  };
  if (token() != "P6") throw std::invalid_argument("not a binary PPM");
  FieldImage img;
  img.width = static_cast<std::uint32_t>(std::stoul(token()));
  img.height = static_cast<std::uint32_t>(std::stoul(token()));
  if (token() != "255") throw std::invalid_argument("unsupported PPM maxval");
  ++pos;  // single whitespace byte before the raster
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height * 3;
  if (bytes.size() < pos + n) throw std::invalid_argument("truncated PPM raster");
  img.pixels.assign(bytes.begin() + static_cast<long>(pos),
                    bytes.begin() + static_cast<long>(pos + n));
  return img;
}

FieldImage FieldImage::crop(std::uint32_t x, std::uint32_t y, std::uint32_t w,
                            std::uint32_t h) const {
  if (w == 0 || h == 0 || x + w > width || y + h > height) {
    throw std::out_of_range("crop rectangle outside the image");
  }
  FieldImage out{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h * 3)};
  for (std::uint32_t r = 0; r < h; ++r) {
    for (std::uint32_t c = 0; c < w; ++c) out.set(c, r, at(x + c, y + r));
  }
  return out;
}

int order_for(std::uint64_t count) {
  int order = 0;
  while ((std::uint64_t{1} << (2 * order)) < count) ++order;
  return order;
}

FieldImage render_field(std::span<const std::uint32_t> runtimes, std::uint32_t max_time,
                        int order) {
  if (order < 0 || order > 15) throw std::invalid_argument("curve order out of range");
  const std::uint32_t side = 1u << order;
  const std::uint64_t cells = std::uint64_t{side} * side;
  if (runtimes.size() > cells) {
    throw std::invalid_argument("grid of order " + std::to_string(order) + " holds " +
                                std::to_string(cells) + " cells, need " +
                                std::to_string(runtimes.size()));
  }
  FieldImage img{side, side, std::vector<std::uint8_t>(cells * 3)};
  for (std::uint64_t d = 0; d < cells; ++d) {
    Point p = curve_point(order, d);
    img.set(p.x, p.y, d < runtimes.size() ? color_of(runtimes[d], max_time) : kBackground);
  }
  return img;
}

FieldImage render_matrix(std::span<const std::uint32_t> runtimes, std::uint32_t width,
                         std::uint32_t max_time) {
  if (width == 0) throw std::invalid_argument("matrix width must be positive");
  const auto height = static_cast<std::uint32_t>((runtimes.size() + width - 1) / width);
  FieldImage img{width, height,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height * 3)};
  for (std::size_t i = 0; i < static_cast<std::size_t>(width) * height; ++i) {
    img.set(static_cast<std::uint32_t>(i % width), static_cast<std::uint32_t>(i / width),
            i < runtimes.size() ? color_of(runtimes[i], max_time) : kBackground);
  }
  return img;
}

FieldImage render_spectrum_legend(std::uint32_t max_time) {
  if (max_time < 2) throw std::invalid_argument("legend needs S >= 2");
  FieldImage img{max_time + 1, 1, std::vector<std::uint8_t>((max_time + 1) * 3)};
  for (std::uint32_t t = 1; t <= max_time; ++t) img.set(t - 1, 0, color_of(t, max_time));
  img.set(max_time, 0, kWhite);
  return img;
}

}  // namespace beaver::viz
