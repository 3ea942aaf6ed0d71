#pragma once

// Runtime fields: a greyscale-plus-red spectrum over halting (or decision)
// times, Hilbert-curve packing of an index space into a square grid, and
// binary PPM output.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace beaver::viz {

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kRed{255, 0, 0};
inline constexpr Rgb kBackground{245, 245, 245};

// Runtime 0 stands for "did not halt / undecided".
// t == max_time is red; otherwise grey 230 - round(200 (t-1) / max(S-2, 1)).
// Throws std::out_of_range for t > max_time.
Rgb color_of(std::uint32_t t, std::uint32_t max_time);

struct Point {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Hilbert curve on a 2^order square; order 1 visits (0,0),(0,1),(1,1),(1,0).
Point curve_point(int order, std::uint64_t d);

struct FieldImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  Rgb at(std::uint32_t x, std::uint32_t y) const;
  void set(std::uint32_t x, std::uint32_t y, Rgb c);

  // Counts of pixels exactly equal to `c`.
  std::uint64_t count(Rgb c) const;

  std::string to_ppm() const;  // P6, maxval 255
  static FieldImage from_ppm(const std::string& bytes);

  FieldImage crop(std::uint32_t x, std::uint32_t y, std::uint32_t w, std::uint32_t h) const;

  friend bool operator==(const FieldImage&, const FieldImage&) = default;
};

// Index i is drawn at curve_point(order, i); cells past the end of
// `runtimes` are background. Throws std::invalid_argument if 4^order is too
// small.
FieldImage render_field(std::span<const std::uint32_t> runtimes, std::uint32_t max_time,
                        int order);

// Direct layout: one row per `width` entries.
FieldImage render_matrix(std::span<const std::uint32_t> runtimes, std::uint32_t width,
                         std::uint32_t max_time);

// Smallest order whose grid holds `count` cells.
int order_for(std::uint64_t count);

// 1 x (S+1) strip: t = 1..S, then the non-halting colour.
FieldImage render_spectrum_legend(std::uint32_t max_time);

}  // namespace beaver::viz
