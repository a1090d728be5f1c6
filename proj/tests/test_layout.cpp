#include <gtest/gtest.h>

#include "qla/layout.hpp"

using namespace qla;

TEST(Layout, SteaneTileDimensions) {
  const auto t2 = steane_tile(2);
  EXPECT_EQ(t2.width_cells, 36);
  EXPECT_EQ(t2.height_cells, 147);
  EXPECT_EQ(t2.avg_hop_cells, 12);
  EXPECT_THROW(steane_tile(3), ValidationError);
}

TEST(Layout, PitchAndIslands) {
  const auto l = build_layout(2, 8, steane_tile(2), 100);
  EXPECT_EQ(l.pitch_x(), 47);
  EXPECT_EQ(l.pitch_y(), 159);
  EXPECT_EQ(l.width_cells(), 376);
  EXPECT_EQ(l.island_columns(), 4);
  ASSERT_EQ(l.islands.size(), 8u);
  EXPECT_EQ(l.islands[0].x, 50);
  EXPECT_EQ(l.islands[3].x, 350);
  EXPECT_EQ(l.islands[0].y, 147 + 6);
  EXPECT_EQ(l.islands[4].y, 159 + 147 + 6);
}

TEST(Layout, CellKinds) {
  const auto l = build_layout(1, 2, steane_tile(2), 100);
  EXPECT_EQ(l.cell_at({1, 1}), CellKind::data_ion);
  EXPECT_EQ(l.cell_at({2, 1}), CellKind::cooling_ion);
  EXPECT_EQ(l.cell_at({3, 1}), CellKind::channel_empty);
  EXPECT_EQ(l.cell_at({0, 0}), CellKind::electrode);
  EXPECT_EQ(l.cell_at({36, 10}), CellKind::channel_empty);
  EXPECT_EQ(l.cell_at({47 + 5, 21 + 4}), CellKind::data_ion);
  EXPECT_EQ(l.cell_at({l.islands[0].x, l.islands[0].y}), CellKind::island);
  EXPECT_THROW(l.cell_at({-1, 0}), ValidationError);
}

TEST(Layout, ManhattanMetric) {
  const auto l = build_layout(4, 4, steane_tile(2), 100);
  const TileCoord a{0, 0}, b{3, 2}, c{1, 3};
  EXPECT_EQ(manhattan_distance(a, a, l), 0);
  EXPECT_EQ(manhattan_distance(a, b, l), manhattan_distance(b, a, l));
  EXPECT_EQ(manhattan_distance(a, b, l), 3 * 159 + 2 * 47);
  EXPECT_LE(manhattan_distance(a, c, l), manhattan_distance(a, b, l) + manhattan_distance(b, c, l));
}

TEST(Layout, AreaScalesWithQubits) {
  const TechnologyParams t;
  const auto tile = steane_tile(2);
  EXPECT_NEAR(chip_area_m2(1, tile, t), 47 * 159 * 400e-12, 1e-15);
  EXPECT_NEAR(chip_area_m2(1000, tile, t), 1000 * chip_area_m2(1, tile, t), 1e-12);
  EXPECT_THROW(chip_area_m2(0, tile, t), ValidationError);
}

TEST(Layout, Rejects) {
  EXPECT_THROW(build_layout(0, 1, steane_tile(2), 100), ValidationError);
  EXPECT_THROW(build_layout(1, 1, steane_tile(2), 20), ValidationError);
}
