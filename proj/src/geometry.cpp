#include "quickfield/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace quickfield {

Grid::Grid(int width, int height, CellKind fill)
    : width_(width), height_(height),
      cells_(static_cast<std::size_t>(width) * height, fill) {
  if (width < 1 || height < 1)
    throw ValidationError("grid dimensions must be at least 1x1");
}

std::vector<Coord> Grid::destination_cells() const {
  std::vector<Coord> cells;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (is_destination(x, y)) cells.push_back({x, y});
  return cells;
}

std::vector<Coord> neighbors(const Grid& grid, Coord cell,
                             NeighborhoodKind nb) {
  if (!grid.in_bounds(cell)) throw ContractError("neighbors: cell out of bounds");
  std::vector<Coord> out;
  out.reserve(8);
  visit_neighbors(grid, cell, nb, [&](Coord n) { out.push_back(n); });
  return out;
}

void Scenario::validate() const {
  if (agent_count < 0) throw ValidationError("agent_count must be >= 0");
  if (agent_count > static_cast<int>(start_region.size()))
    throw ValidationError("agent_count exceeds start region size (" +
                          std::to_string(agent_count) + " > " +
                          std::to_string(start_region.size()) + ")");
  bool any_destination = false;
  for (int y = 0; y < grid.height(); ++y)
    for (int x = 0; x < grid.width(); ++x)
      if (grid.is_destination(x, y)) {
        any_destination = true;
        if (!exit_labels.contains({x, y}))
          throw ValidationError("destination cell without exit label at (" +
                                std::to_string(x) + "," + std::to_string(y) +
                                ")");
      }
  if (!any_destination) throw ValidationError("scenario has no destination cell");
  for (const auto& [cell, label] : exit_labels) {
    (void)label;
    if (!grid.in_bounds(cell) || !grid.is_destination(cell.x, cell.y))
      throw ValidationError("exit label on a non-destination cell");
  }
  for (Coord c : start_region) {
    if (!grid.in_bounds(c) || grid.at(c) != CellKind::Free)
      throw ValidationError("start region cell is not free at (" +
                            std::to_string(c.x) + "," + std::to_string(c.y) +
                            ")");
  }
  std::vector<Coord> sorted = start_region;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("duplicate start region cell");
}

namespace {

// Carves one exit into the left or right wall of the built room.
// wall_x is the wall column, door rows are y0 .. y0+width-1; outward is -1
// for the left wall, +1 for the right wall.
void carve_exit(Grid& grid, ExitVariant variant, int wall_x, int y0,
                int door_width, int outward,
                std::map<Coord, ExitLabel>& labels, ExitLabel label) {
  for (int i = 0; i < door_width; ++i) {
    const int y = y0 + i;
    switch (variant) {
      case ExitVariant::V2_Flush:
        grid.set(wall_x, y, CellKind::Destination);
        labels[{wall_x, y}] = label;
        break;
      case ExitVariant::V1_Recessed: {
        grid.set(wall_x, y, CellKind::Free);
        const int dx = wall_x + outward;
        grid.set(dx, y, CellKind::Destination);
        labels[{dx, y}] = label;
        break;
      }
      case ExitVariant::V3_Corridor: {
        grid.set(wall_x, y, CellKind::Free);
        for (int k = 1; k <= 3; ++k)
          grid.set(wall_x + k * outward, y, CellKind::Free);
        const int dx = wall_x + 4 * outward;
        grid.set(dx, y, CellKind::Destination);
        labels[{dx, y}] = label;
        break;
      }
    }
  }
}

}  // namespace

Scenario build_rimea11(ExitVariant variant, const Rimea11Params& params) {
  const int W = params.room_width;
  const int H = params.room_height;
  if (W < 4 || H < params.exit_width + 2)
    throw ValidationError("room too small");
  if (params.exit_width < 1) throw ValidationError("exit width must be >= 1");
  if (params.agent_count < 0) throw ValidationError("agent_count must be >= 0");
  if (params.extra_path_cells < 0)
    throw ValidationError("extra path length must be >= 0");

  // Outermost margin holds the exit annexes (notch or corridor); variant 3
  // reaches farthest, 4 cells beyond the wall.
  constexpr int kMargin = 5;
  const int left_wall_x = kMargin;
  const int right_wall_x = kMargin + W + 1;
  const int total_width = W + 2 * kMargin + 2;
  const int total_height = H + 2;

  Grid grid(total_width, total_height, CellKind::Wall);
  for (int y = 1; y <= H; ++y)
    for (int x = left_wall_x + 1; x < right_wall_x; ++x)
      grid.set(x, y, CellKind::Free);

  const int door_y0 = 1 + (H - params.exit_width) / 2;
  std::map<Coord, ExitLabel> labels;
  carve_exit(grid, variant, left_wall_x, door_y0, params.exit_width, -1,
             labels, ExitLabel::Left);
  carve_exit(grid, variant, right_wall_x, door_y0, params.exit_width, +1,
             labels, ExitLabel::Right);

  // Start block: spans the room height, width from the agent count; placed
  // so the centroid sits extra_path closer to the left door than the right.
  const int block_width =
      params.agent_count == 0 ? 1 : (params.agent_count + H - 1) / H;
  const double centroid_x =
      (left_wall_x + right_wall_x - params.extra_path_cells) / 2.0;
  const int block_x0 =
      static_cast<int>(std::llround(centroid_x - (block_width - 1) / 2.0));
  if (block_x0 < left_wall_x + 1 || block_x0 + block_width - 1 >= right_wall_x)
    throw ValidationError(
        "room too small for the start region and extra path length");

  Scenario scenario;
  scenario.grid = std::move(grid);
  scenario.agent_count = params.agent_count;
  scenario.exit_labels = std::move(labels);
  scenario.variant = variant;
  for (int y = 1; y <= H; ++y)
    for (int x = block_x0; x < block_x0 + block_width; ++x)
      scenario.start_region.push_back({x, y});
  scenario.validate();
  return scenario;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

Scenario parse_scenario(const std::string& map_text,
                        const std::string& config_text) {
  const auto rows = split_lines(map_text);
  std::vector<std::string> map_rows;
  for (const auto& row : rows)
    if (!trim(row).empty()) map_rows.push_back(row);
  if (map_rows.empty()) throw ParseError("empty map");

  const int height = static_cast<int>(map_rows.size());
  const int width = static_cast<int>(map_rows[0].size());
  for (int y = 0; y < height; ++y)
    if (static_cast<int>(map_rows[y].size()) != width)
      throw ParseError("ragged map row " + std::to_string(y));

  Scenario scenario;
  scenario.grid = Grid(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      switch (map_rows[y][x]) {
        case '#': scenario.grid.set(x, y, CellKind::Wall); break;
        case '.': break;
        case 'S':
          scenario.start_region.push_back({x, y});
          break;
        case 'L':
          scenario.grid.set(x, y, CellKind::Destination);
          scenario.exit_labels[{x, y}] = ExitLabel::Left;
          break;
        case 'R':
          scenario.grid.set(x, y, CellKind::Destination);
          scenario.exit_labels[{x, y}] = ExitLabel::Right;
          break;
        default:
          throw ParseError(std::string("unknown map character '") +
                           map_rows[y][x] + "' at (" + std::to_string(y) +
                           "," + std::to_string(x) + ")");
      }
    }
  }
  scenario.agent_count = static_cast<int>(scenario.start_region.size());

  for (const auto& raw : split_lines(config_text)) {
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "agent_count") {
      try {
        scenario.agent_count = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError("bad agent_count value: " + value);
      }
    } else if (key == "variant") {
      if (value == "1") scenario.variant = ExitVariant::V1_Recessed;
      else if (value == "2") scenario.variant = ExitVariant::V2_Flush;
      else if (value == "3") scenario.variant = ExitVariant::V3_Corridor;
      else throw ParseError("bad variant value: " + value);
    } else {
      throw ParseError("unknown config key: " + key);
    }
  }

  scenario.validate();
  return scenario;
}

Scenario load_scenario(const std::string& file_text) {
  const auto lines = split_lines(file_text);
  std::string config;
  std::string map;
  bool in_map = false;
  for (const auto& line : lines) {
    if (!in_map) {
      if (trim(line).empty()) {
        in_map = !config.empty();
        continue;
      }
      // a headerless file starts with the map itself
      if (line.find('=') == std::string::npos) in_map = true;
    }
    (in_map ? map : config) += line + "\n";
  }
  return parse_scenario(map, config);
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string serialize(const Scenario& scenario) {
  std::ostringstream out;
  out << "agent_count = " << scenario.agent_count << "\n";
  if (scenario.variant)
    out << "variant = " << static_cast<int>(*scenario.variant) << "\n";
  out << "\n";

  std::vector<std::string> rows(scenario.grid.height(),
                                std::string(scenario.grid.width(), '.'));
  for (int y = 0; y < scenario.grid.height(); ++y)
    for (int x = 0; x < scenario.grid.width(); ++x)
      if (scenario.grid.is_wall(x, y)) rows[y][x] = '#';
  for (Coord c : scenario.start_region) rows[c.y][c.x] = 'S';
  for (const auto& [cell, label] : scenario.exit_labels)
    rows[cell.y][cell.x] = label == ExitLabel::Left ? 'L' : 'R';
  for (const auto& row : rows) out << row << "\n";
  return out.str();
}

}  // namespace quickfield
