#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "newton_atlas/dynamics.hpp"
#include "newton_atlas/error.hpp"

namespace newton_atlas {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kInfinityBasinColor{0, 0, 0};
inline constexpr Rgb kUnresolvedColor{64, 64, 64};

// Finite attractors in order: green, red, amber, then a fixed list of further hues.
inline constexpr std::array<Rgb, 8> kFiniteBasinColors{{{0, 200, 0},
                                                        {220, 0, 0},
                                                        {255, 191, 0},
                                                        {0, 90, 255},
                                                        {170, 0, 200},
                                                        {0, 200, 200},
                                                        {255, 110, 180},
                                                        {140, 90, 40}}};

// Color per attractor. Infinity is always black; finite attractors take the palette in order.
inline std::vector<Rgb> basin_palette(const std::vector<ExtendedPoint>& attractors) {
  std::vector<Rgb> out;
  std::size_t next = 0;
  for (const auto& a : attractors) {
    if (a.is_infinity()) {
      out.push_back(kInfinityBasinColor);
    } else {
      out.push_back(kFiniteBasinColors[next % kFiniteBasinColors.size()]);
      ++next;
    }
  }
  return out;
}

// Binary PPM (P6, maxval 255), rows top to bottom.
inline std::string encode_ppm(const BasinImage& img, const std::vector<Rgb>& palette) {
  const auto& vp = img.viewport;
  std::string out = "P6\n" + std::to_string(vp.px_w) + " " + std::to_string(vp.px_h) + "\n255\n";
  out.reserve(out.size() + img.pixels.size() * 3);
  for (const BasinPixel& p : img.pixels) {
    const Rgb c = p.attractor_index ? palette.at(*p.attractor_index) : kUnresolvedColor;
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(ErrorKind::Io, "failed writing " + path);
}

}  // namespace newton_atlas
