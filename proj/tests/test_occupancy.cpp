// Copyright (c) 2026 Socrates Project Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch.hpp>

#include "socrates/annotated_map.hpp"
#include "socrates/occupancy.hpp"

using namespace socrates;

TEST_CASE("astar finds the straight corridor path", "[core]") {
    OccupancyGrid g(10, 3, 1.0);
    const auto path = astar(g, CellIndex{0, 1}, CellIndex{9, 1});
    REQUIRE(path.has_value());
    CHECK(path->length == Approx(9.0));
    CHECK(path->cells.front() == CellIndex{0, 1});
    CHECK(path->cells.back() == CellIndex{9, 1});
}

TEST_CASE("astar routes around a wall gap", "[core]") {
    OccupancyGrid g(11, 11, 1.0);
    for (int y = 0; y < 11; ++y) {
        if (y == 5) continue;  // gap
        g.set(CellIndex{5, y}, Cell::Occupied);
    }
    const auto path = astar(g, CellIndex{0, 0}, CellIndex{10, 0});
    REQUIRE(path.has_value());
    bool through_gap = false;
    for (const auto& c : path->cells) {
        if (c.x == 5) {
            CHECK(c.y == 5);
            through_gap = true;
        }
    }
    CHECK(through_gap);
}

TEST_CASE("astar returns nothing when walled off", "[core]") {
    OccupancyGrid g(9, 9, 0.5);
    for (int y = 0; y < 9; ++y) g.set(CellIndex{4, y}, Cell::Occupied);
    CHECK_FALSE(astar(g, CellIndex{0, 0}, CellIndex{8, 8}).has_value());
}

TEST_CASE("bresenham endpoints and monotonicity", "[core]") {
    const auto line = OccupancyGrid::bresenham(CellIndex{0, 0}, CellIndex{5, 2});
    CHECK(line.front() == CellIndex{0, 0});
    CHECK(line.back() == CellIndex{5, 2});
    for (std::size_t i = 1; i < line.size(); ++i) {
        CHECK(std::abs(line[i].x - line[i - 1].x) <= 1);
        CHECK(std::abs(line[i].y - line[i - 1].y) <= 1);
    }
}

TEST_CASE("line_of_sight blocked by an occupied cell", "[core]") {
    OccupancyGrid g(10, 10, 1.0);
    CHECK(g.line_of_sight(CellIndex{0, 0}, CellIndex{9, 9}));
    g.set(CellIndex{5, 5}, Cell::Occupied);
    CHECK_FALSE(g.line_of_sight(CellIndex{0, 0}, CellIndex{9, 9}));
    // Endpoints themselves are not tested.
    CHECK(g.line_of_sight(CellIndex{5, 5}, CellIndex{6, 5}));
}

TEST_CASE("point_in_polygon on a square", "[core]") {
    const std::vector<Point2D> sq = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    CHECK(point_in_polygon(sq, 2, 2));
    CHECK_FALSE(point_in_polygon(sq, 5, 2));
    CHECK_FALSE(point_in_polygon(sq, -1, -1));
}

TEST_CASE("annotated map JSON round-trip", "[core]") {
    OccupancyGrid g(6, 4, 0.5);
    g.set(CellIndex{2, 1}, Cell::Occupied);
    g.set(CellIndex{3, 2}, Cell::Unknown);
    AnnotatedMap map({g}, {Area{"sofa", 0, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}}});
    const auto j = map.to_json();
    const AnnotatedMap back = AnnotatedMap::from_json(j);
    CHECK(back.floor_count() == 1);
    CHECK(back.floor(0).at(CellIndex{2, 1}) == Cell::Occupied);
    CHECK(back.floor(0).at(CellIndex{3, 2}) == Cell::Unknown);
    CHECK(back.areas().size() == 1);
    CHECK(back.areas()[0].label == "sofa");
}

TEST_CASE("annotated map reads base64 grids", "[core]") {
    // 3x2 grid, row-major bytes 0,1,2,0,0,1 -> base64 "AAECAAAB".
    nlohmann::json j;
    j["resolution"] = 0.5;
    j["floors"] = 1;
    j["grids"] = nlohmann::json::array(
        {nlohmann::json{{"width", 3}, {"height", 2}, {"base64", "AAECAAAB"}}});
    j["areas"] = nlohmann::json::array(
        {nlohmann::json{{"label", "a"},
                        {"floor", 0},
                        {"polygon", nlohmann::json::array({nlohmann::json::array({0.0, 0.0}),
                                                           nlohmann::json::array({1.0, 0.0}),
                                                           nlohmann::json::array({1.0, 1.0})})}}});
    const auto map = AnnotatedMap::from_json(j);
    CHECK(map.floor(0).at(CellIndex{0, 0}) == Cell::Free);
    CHECK(map.floor(0).at(CellIndex{1, 0}) == Cell::Occupied);
    CHECK(map.floor(0).at(CellIndex{2, 0}) == Cell::Unknown);
    CHECK(map.floor(0).at(CellIndex{2, 1}) == Cell::Occupied);
}

TEST_CASE("annotated map rejects self-intersecting polygons", "[core]") {
    OccupancyGrid g(4, 4, 1.0);
    // Bowtie.
    CHECK_THROWS_AS(
        AnnotatedMap({g}, {Area{"bad", 0, {{0, 0}, {2, 2}, {2, 0}, {0, 2}}}}),
        std::runtime_error);
}

TEST_CASE("annotated map rejects empty labels", "[core]") {
    OccupancyGrid g(4, 4, 1.0);
    CHECK_THROWS_AS(AnnotatedMap({g}, {Area{"", 0, {{0, 0}, {1, 0}, {1, 1}}}}),
                    std::runtime_error);
}
