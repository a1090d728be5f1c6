#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "qla/params.hpp"

namespace qla {

enum class CellKind { data_ion, cooling_ion, electrode, channel_empty, island };
enum class CodeKind { steane_7_1_3, bitflip_3_1 };

inline const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::data_ion: return "data_ion";
    case CellKind::cooling_ion: return "cooling_ion";
    case CellKind::electrode: return "electrode";
    case CellKind::channel_empty: return "channel_empty";
    case CellKind::island: return "island";
  }
  return "electrode";
}

struct LogicalQubitTile {
  int level = 2;
  int width_cells = 36;
  int height_cells = 147;
  CodeKind code = CodeKind::steane_7_1_3;
  int avg_hop_cells = 12;
};

// Level-1 Steane block: data, ancilla and verifier columns of 7 ions each.
inline constexpr int kBlockWidth = 12;
inline constexpr int kBlockHeight = 21;

inline LogicalQubitTile steane_tile(int level) {
  if (level == 1) return {1, kBlockWidth, kBlockHeight, CodeKind::steane_7_1_3, 12};
  if (level == 2) return {2, 3 * kBlockWidth, 7 * kBlockHeight, CodeKind::steane_7_1_3, 12};
  throw ValidationError("steane tile level must be 1 or 2");
}

inline LogicalQubitTile bitflip_tile() { return {1, 6, 3, CodeKind::bitflip_3_1, 2}; }

struct TileCoord {
  int row = 0;
  int col = 0;
  bool operator==(const TileCoord&) const = default;
  auto operator<=>(const TileCoord&) const = default;
};

struct CellCoord {
  int x = 0;
  int y = 0;
  bool operator==(const CellCoord&) const = default;
};

struct TileLayout {
  int rows = 1;
  int cols = 1;
  LogicalQubitTile tile;
  int channel_width_x = 11;
  int channel_width_y = 12;
  int island_spacing_x = 100;
  std::vector<CellCoord> islands;

  int pitch_x() const { return tile.width_cells + channel_width_x; }
  int pitch_y() const { return tile.height_cells + channel_width_y; }
  int width_cells() const { return cols * pitch_x(); }
  int height_cells() const { return rows * pitch_y(); }
  int island_columns() const { return (width_cells() + island_spacing_x - 1) / island_spacing_x; }
  bool contains(TileCoord t) const { return t.row >= 0 && t.row < rows && t.col >= 0 && t.col < cols; }

  // Horizontal channel row below tile row r.
  int island_y(int r) const { return r * pitch_y() + tile.height_cells + channel_width_y / 2; }
  int island_x(int k) const { return k * island_spacing_x + island_spacing_x / 2; }

  CellKind cell_at(CellCoord c) const;
};

inline TileLayout build_layout(int rows, int cols, const LogicalQubitTile& tile, int spacing_x,
                               int channel_x = 11, int channel_y = 12) {
  if (rows < 1 || cols < 1) throw ValidationError("layout needs rows, cols >= 1");
  if (tile.width_cells < 1 || tile.height_cells < 1) throw ValidationError("empty tile");
  if (channel_x < 0 || channel_y < 0) throw ValidationError("negative channel width");
  TileLayout l;
  l.rows = rows;
  l.cols = cols;
  l.tile = tile;
  l.channel_width_x = channel_x;
  l.channel_width_y = channel_y;
  if (spacing_x < l.pitch_x()) throw ValidationError("island spacing smaller than tile pitch");
  l.island_spacing_x = spacing_x;
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < l.island_columns(); ++k) l.islands.push_back({l.island_x(k), l.island_y(r)});
  return l;
}

inline CellKind TileLayout::cell_at(CellCoord c) const {
  if (c.x < 0 || c.y < 0 || c.x >= width_cells() || c.y >= height_cells())
    throw ValidationError("cell coordinate out of bounds");
  for (const auto& i : islands)
    if (i == c) return CellKind::island;
  const int lx = c.x % pitch_x();
  const int ly = c.y % pitch_y();
  if (lx >= tile.width_cells || ly >= tile.height_cells) return CellKind::channel_empty;
  // Block template: three ion columns at 1, 5, 9 with cooling ions beside them,
  // empty transport lanes between.
  const int bx = lx % kBlockWidth;
  const int by = ly % kBlockHeight;
  if (bx == 3 || bx == 7 || bx == 11) return CellKind::channel_empty;
  if (by % 3 == 1) {
    if (bx == 1 || bx == 5 || bx == 9) return CellKind::data_ion;
    if (bx == 2 || bx == 6 || bx == 10) return CellKind::cooling_ion;
  }
  return CellKind::electrode;
}

inline int manhattan_distance(TileCoord a, TileCoord b, const TileLayout& l) {
  if (!l.contains(a) || !l.contains(b)) throw ValidationError("tile coordinate out of bounds");
  return std::abs(a.col - b.col) * l.pitch_x() + std::abs(a.row - b.row) * l.pitch_y();
}

inline double tile_area_m2(const LogicalQubitTile& tile, const TechnologyParams& t) {
  const double pitch_m = t.cell_pitch_um * 1e-6;
  return tile.width_cells * tile.height_cells * pitch_m * pitch_m;
}

inline double chip_area_m2(std::int64_t qubit_count, const LogicalQubitTile& tile,
                           const TechnologyParams& t, int channel_x = 11, int channel_y = 12) {
  if (qubit_count < 1) throw ValidationError("qubit_count must be >= 1");
  const double pitch_m = t.cell_pitch_um * 1e-6;
  return static_cast<double>(qubit_count) * (tile.width_cells + channel_x) *
         (tile.height_cells + channel_y) * pitch_m * pitch_m;
}

}  // namespace qla
