#include "quickfield/fields.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace quickfield {

PotentialField::PotentialField(int width, int height, double fill)
    : width_(width), height_(height),
      values_(static_cast<std::size_t>(width) * height, fill) {}

void FieldParams::validate() const {
  if (!(s_add >= 1.0)) throw ValidationError("s_add must be >= 1");
}

PotentialField flood_fill(const Grid& grid, const OccupancyMap& occupancy,
                          NeighborhoodKind nb, double s_add) {
  if (occupancy.width() != grid.width() || occupancy.height() != grid.height())
    throw ContractError("flood_fill: occupancy dimensions do not match grid");

  PotentialField field(grid.width(), grid.height());
  using Item = std::pair<double, std::size_t>;  // (cost, cell index)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;

  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      if (grid.is_destination(x, y)) {
        field.set(x, y, 0.0);
        open.push({0.0, field.index(x, y)});
      }
    }
  }

  while (!open.empty()) {
    const auto [cost, idx] = open.top();
    open.pop();
    const int x = static_cast<int>(idx % grid.width());
    const int y = static_cast<int>(idx / grid.width());
    if (cost > field.at(x, y)) continue;  // stale entry
    visit_neighbors(grid, {x, y}, nb, [&](Coord n) {
      const double entry = occupancy.at(n) ? s_add : 1.0;
      const double candidate = cost + entry;
      if (candidate < field.at(n)) {
        field.set(n, candidate);
        open.push({candidate, field.index(n.x, n.y)});
      }
    });
  }
  return field;
}

PotentialField combine_v1(const PotentialField& manhattan,
                          const PotentialField& chebyshev) {
  if (manhattan.width() != chebyshev.width() ||
      manhattan.height() != chebyshev.height())
    throw ContractError("combine_v1: dimension mismatch");

  PotentialField out(manhattan.width(), manhattan.height());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const double m = manhattan.at(x, y);
      const double c = chebyshev.at(x, y);
      const bool m_inf = m == PotentialField::kInfinite;
      const bool c_inf = c == PotentialField::kInfinite;
      if (m_inf != c_inf)
        throw ContractError("combine_v1: reachability mismatch between fills");
      if (m_inf) continue;  // stays infinite
      // equal-cost paths can round differently between the two fills when
      // s_add is not exactly representable; only a real gap is a violation
      if (m < c && c - m > 1e-9 * std::max(1.0, c))
        throw ContractError("combine_v1: manhattan < chebyshev at a cell");
      const double dm = std::max(0.0, m - c);
      out.set(x, y, std::sqrt(c * c + dm * dm));
    }
  }
  return out;
}

PotentialField compute_static(const Grid& grid) {
  const OccupancyMap empty(grid.width(), grid.height());
  return combine_v1(flood_fill(grid, empty, NeighborhoodKind::VonNeumann, 1.0),
                    flood_fill(grid, empty, NeighborhoodKind::Moore, 1.0));
}

PotentialField compute_s_dyn(const Grid& grid, const OccupancyMap& occupancy,
                             const PotentialField& static_field,
                             double s_add) {
  const PotentialField weighted = combine_v1(
      flood_fill(grid, occupancy, NeighborhoodKind::VonNeumann, s_add),
      flood_fill(grid, occupancy, NeighborhoodKind::Moore, s_add));

  PotentialField out(grid.width(), grid.height());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const double w = weighted.at(x, y);
      const double s = static_field.at(x, y);
      const bool w_inf = w == PotentialField::kInfinite;
      const bool s_inf = s == PotentialField::kInfinite;
      if (w_inf != s_inf)
        throw ContractError(
            "compute_s_dyn: static field does not match the grid");
      if (w_inf) continue;
      // occupancy weights >= 1 never shorten a path; max() only absorbs
      // floating-point dust from the two sqrt routes
      out.set(x, y, std::max(0.0, w - s));
    }
  }
  return out;
}

std::string field_to_text(const PotentialField& field) {
  std::ostringstream out;
  char buffer[40];
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      if (x > 0) out << ' ';
      const double v = field.at(x, y);
      if (v == PotentialField::kInfinite) {
        out << "inf";
      } else {
        std::snprintf(buffer, sizeof buffer, "%.10g", v);
        out << buffer;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace quickfield
