#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quickfield/errors.hpp"

namespace quickfield {

enum class CellKind : std::uint8_t { Free, Wall, Destination };

enum class NeighborhoodKind { VonNeumann, Moore };

enum class ExitLabel { Left, Right };

/// The three ways an exit's destination area can be modelled: a notch one
/// cell beyond the doorway, destination cells in the doorway opening itself,
/// or a destination at the end of a short exit corridor.
enum class ExitVariant { V1_Recessed = 1, V2_Flush = 2, V3_Corridor = 3 };

struct Coord {
  int x = 0;
  int y = 0;
  auto operator<=>(const Coord&) const = default;
};

/// Rectangular lattice of cells, 40 cm pitch, row-major storage.
class Grid {
 public:
  static constexpr double kCellSizeMeters = 0.4;

  Grid() : Grid(1, 1) {}
  Grid(int width, int height, CellKind fill = CellKind::Free);

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  bool in_bounds(Coord c) const { return in_bounds(c.x, c.y); }

  CellKind at(int x, int y) const { return cells_[index(x, y)]; }
  CellKind at(Coord c) const { return at(c.x, c.y); }
  void set(int x, int y, CellKind kind) { cells_[index(x, y)] = kind; }
  void set(Coord c, CellKind kind) { set(c.x, c.y, kind); }

  bool is_wall(int x, int y) const { return at(x, y) == CellKind::Wall; }
  bool is_destination(int x, int y) const {
    return at(x, y) == CellKind::Destination;
  }

  /// Destination cells in row-major order.
  std::vector<Coord> destination_cells() const;

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  bool operator==(const Grid&) const = default;

 private:
  int width_;
  int height_;
  std::vector<CellKind> cells_;
};

/// In-bounds non-Wall cells adjacent to `cell`, row-major order. Moore
/// adjacency adds the four diagonals, except where both cells orthogonally
/// between the endpoints are walls: a step cannot pass through a wall corner.
std::vector<Coord> neighbors(const Grid& grid, Coord cell, NeighborhoodKind nb);

/// Visitor form of neighbors() for hot loops; same cells, same order.
template <typename F>
inline void visit_neighbors(const Grid& grid, Coord cell, NeighborhoodKind nb,
                            F&& visit) {
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const bool diagonal = dx != 0 && dy != 0;
      if (diagonal && nb == NeighborhoodKind::VonNeumann) continue;
      const int nx = cell.x + dx;
      const int ny = cell.y + dy;
      if (!grid.in_bounds(nx, ny) || grid.is_wall(nx, ny)) continue;
      if (diagonal && grid.is_wall(nx, cell.y) && grid.is_wall(cell.x, ny))
        continue;
      visit(Coord{nx, ny});
    }
  }
}

struct Scenario {
  Grid grid;
  std::vector<Coord> start_region;  // row-major order
  int agent_count = 0;
  std::map<Coord, ExitLabel> exit_labels;
  std::optional<ExitVariant> variant;  // set by the builder, kept in files

  /// Throws ValidationError on any invariant violation.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

struct Rimea11Params {
  int room_width = 44;       // interior cells; 17.6 m
  int room_height = 60;      // interior cells; 24 m
  int exit_width = 2;        // cells; 80 cm
  int extra_path_cells = 13; // far-exit walking-distance surplus; ~5 m
  int agent_count = 1000;
};

/// Room with one exit on each of the left and right walls. The start block
/// is placed so that the right exit lies `extra_path_cells` farther from the
/// block centroid than the left exit. The destination area at each door is
/// shaped per `variant`.
Scenario build_rimea11(ExitVariant variant, const Rimea11Params& params = {});

/// Map glyphs: '#' wall, '.' free, 'L'/'R' labelled destination,
/// 'S' free cell in the start region.
Scenario parse_scenario(const std::string& map_text,
                        const std::string& config_text);

/// Full scenario file: `key = value` header lines, a blank line, the map.
Scenario load_scenario(const std::string& file_text);
Scenario load_scenario_file(const std::filesystem::path& path);

std::string serialize(const Scenario& scenario);

}  // namespace quickfield
