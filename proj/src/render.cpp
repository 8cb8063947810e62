#include "quickfield/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace quickfield {

namespace {

constexpr std::uint8_t kWallGray = 128;

struct Range {
  double min = 0.0;
  double max = 0.0;
  bool any = false;
};

Range finite_range(const PotentialField& field, const Grid& grid) {
  Range r;
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      if (grid.is_wall(x, y) || !field.finite_at(x, y)) continue;
      const double v = field.at(x, y);
      if (!r.any) {
        r.min = r.max = v;
        r.any = true;
      } else {
        r.min = std::min(r.min, v);
        r.max = std::max(r.max, v);
      }
    }
  }
  return r;
}

// 0 when the range is degenerate, else min-max scaled to [0, limit].
template <typename T>
T normalize(double v, const Range& r, T limit) {
  if (r.max <= r.min) return 0;
  return static_cast<T>(
      std::llround((v - r.min) * static_cast<double>(limit) / (r.max - r.min)));
}

RasterImage make_image(const Grid& grid, int channels, int scale) {
  if (scale < 1) throw ContractError("render: scale must be >= 1");
  RasterImage img;
  img.width = grid.width() * scale;
  img.height = grid.height() * scale;
  img.channels = channels;
  img.pixels.assign(
      static_cast<std::size_t>(img.width) * img.height * channels, 0);
  return img;
}

template <typename Paint>
void paint_cells(RasterImage& img, const Grid& grid, int scale, Paint&& paint) {
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      std::uint8_t rgb[3];
      paint(x, y, rgb);
      for (int sy = 0; sy < scale; ++sy) {
        for (int sx = 0; sx < scale; ++sx) {
          const std::size_t p =
              (static_cast<std::size_t>(y * scale + sy) * img.width +
               (x * scale + sx)) *
              img.channels;
          for (int c = 0; c < img.channels; ++c) img.pixels[p + c] = rgb[c];
        }
      }
    }
  }
}

}  // namespace

RasterImage render_field(const PotentialField& field, const Grid& grid,
                         RenderMode mode, int scale) {
  if (field.width() != grid.width() || field.height() != grid.height())
    throw ContractError("render_field: dimensions do not match");
  const Range range = finite_range(field, grid);
  const int channels = mode == RenderMode::Rgb ? 3 : 1;
  RasterImage img = make_image(grid, channels, scale);
  paint_cells(img, grid, scale, [&](int x, int y, std::uint8_t* rgb) {
    if (grid.is_wall(x, y) || !field.finite_at(x, y)) {
      rgb[0] = rgb[1] = rgb[2] = kWallGray;
      return;
    }
    if (mode == RenderMode::Rgb && grid.is_destination(x, y)) {
      rgb[0] = 0;
      rgb[1] = 255;
      rgb[2] = 0;
      return;
    }
    const std::uint8_t v =
        normalize<std::uint8_t>(field.at(x, y), range, 255);
    rgb[0] = rgb[1] = rgb[2] = v;
  });
  return img;
}

RasterImage render_snapshot(const Grid& grid, const OccupancyMap& occupancy,
                            int scale) {
  if (occupancy.width() != grid.width() ||
      occupancy.height() != grid.height())
    throw ContractError("render_snapshot: dimensions do not match");
  RasterImage img = make_image(grid, 3, scale);
  paint_cells(img, grid, scale, [&](int x, int y, std::uint8_t* rgb) {
    if (occupancy.at(x, y)) {
      rgb[0] = rgb[1] = rgb[2] = 255;
    } else if (grid.is_wall(x, y)) {
      rgb[0] = rgb[1] = rgb[2] = kWallGray;
    } else if (grid.is_destination(x, y)) {
      rgb[0] = 0;
      rgb[1] = 255;
      rgb[2] = 0;
    } else {
      rgb[0] = rgb[1] = rgb[2] = 0;
    }
  });
  return img;
}

std::array<RasterImage, 4> render_metric_comparison(const Grid& grid,
                                                    int scale) {
  if (grid.destination_cells().size() != 1)
    throw ContractError(
        "render_metric_comparison: grid must have exactly one destination");
  const OccupancyMap empty(grid.width(), grid.height());
  const PotentialField manhattan =
      flood_fill(grid, empty, NeighborhoodKind::VonNeumann, 1.0);
  const PotentialField chebyshev =
      flood_fill(grid, empty, NeighborhoodKind::Moore, 1.0);

  PotentialField minimum(grid.width(), grid.height());
  for (int y = 0; y < grid.height(); ++y)
    for (int x = 0; x < grid.width(); ++x)
      if (manhattan.finite_at(x, y))
        minimum.set(x, y, manhattan.at(x, y) - chebyshev.at(x, y));

  return {render_field(manhattan, grid, RenderMode::Gray, scale),
          render_field(chebyshev, grid, RenderMode::Gray, scale),
          render_field(minimum, grid, RenderMode::Gray, scale),
          render_field(combine_v1(manhattan, chebyshev), grid,
                       RenderMode::Gray, scale)};
}

std::string encode_pgm(const RasterImage& image) {
  if (image.channels != 1)
    throw ContractError("encode_pgm: image must be grayscale");
  std::string out = "P5\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.pixels.data()),
             image.pixels.size());
  return out;
}

std::string encode_ppm(const RasterImage& image) {
  if (image.channels != 3)
    throw ContractError("encode_ppm: image must be RGB");
  std::string out = "P6\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.pixels.data()),
             image.pixels.size());
  return out;
}

std::string encode_field_pgm16(const PotentialField& field, const Grid& grid) {
  if (field.width() != grid.width() || field.height() != grid.height())
    throw ContractError("encode_field_pgm16: dimensions do not match");
  const Range range = finite_range(field, grid);
  std::string out = "P5\n" + std::to_string(field.width()) + " " +
                    std::to_string(field.height()) + "\n65535\n";
  out.reserve(out.size() +
              static_cast<std::size_t>(field.width()) * field.height() * 2);
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      std::uint16_t v = 32768;  // walls and unreachable cells
      if (!grid.is_wall(x, y) && field.finite_at(x, y))
        v = normalize<std::uint16_t>(field.at(x, y), range, 65535);
      out.push_back(static_cast<char>(v >> 8));  // big-endian per PGM
      out.push_back(static_cast<char>(v & 0xff));
    }
  }
  return out;
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace quickfield
