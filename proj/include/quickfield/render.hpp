#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "quickfield/fields.hpp"
#include "quickfield/geometry.hpp"

namespace quickfield {

/// One pixel per cell times an integer scale; grayscale (1 channel) or RGB
/// (3 channels), row-major from the top-left.
struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;
};

enum class RenderMode { Gray, Rgb };

/// Finite field values min-max normalized to 0..255, larger value brighter.
/// Walls and unreachable cells render mid-gray; a degenerate min == max maps
/// finite cells to 0. In RGB mode destination cells render green.
RasterImage render_field(const PotentialField& field, const Grid& grid,
                         RenderMode mode = RenderMode::Gray, int scale = 1);

/// Crowd snapshot: free space black, walls gray, destinations green,
/// occupied cells white.
RasterImage render_snapshot(const Grid& grid, const OccupancyMap& occupancy,
                            int scale = 1);

/// Manhattan, Chebyshev, minimum-norm, and combined fields of a grid with a
/// single destination cell, each rendered grayscale.
std::array<RasterImage, 4> render_metric_comparison(const Grid& grid,
                                                    int scale = 1);

/// Binary PGM (P5), maxval 255. Image must be grayscale.
std::string encode_pgm(const RasterImage& image);

/// Binary PPM (P6), maxval 255. Image must be RGB.
std::string encode_ppm(const RasterImage& image);

/// 16-bit binary PGM (P5, maxval 65535, big-endian) of a field, min-max
/// normalized; walls and unreachable cells hold the midpoint value.
std::string encode_field_pgm16(const PotentialField& field, const Grid& grid);

void write_bytes(const std::filesystem::path& path, const std::string& bytes);

}  // namespace quickfield
