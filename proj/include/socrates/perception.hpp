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

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "socrates/geometry.hpp"
#include "socrates/occupancy.hpp"
#include "socrates/rng.hpp"

namespace socrates::perception {

enum class DetectionKind { GeneralPerson, TextMatch };

struct Detection {
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;  // bbox, x1<=x2, y1<=y2
    DetectionKind kind = DetectionKind::GeneralPerson;
    std::optional<int> person_id;
    double score = 1.0;
};

/// Activation values over a 2D field plus the detection threshold.
struct ActivationMap {
    std::vector<std::vector<double>> values;  // values[y][x]
    double threshold = 0.5;                   // t_c

    static ActivationMap load_csv(const std::string& path, double threshold = 0.5) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open activation map: " + path);
        ActivationMap m;
        m.threshold = threshold;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::vector<double> row;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
            m.values.push_back(std::move(row));
        }
        return m;
    }
};

/// Axis-aligned bounding box of every cell whose activation exceeds the
/// threshold; nullopt when no cell does. Coordinates are (x, y) = (col, row).
inline std::optional<Detection> bbox_from_activation(const ActivationMap& map) {
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    bool any = false;
    for (std::size_t y = 0; y < map.values.size(); ++y) {
        const auto& row = map.values[y];
        for (std::size_t x = 0; x < row.size(); ++x) {
            if (!std::isfinite(row[x])) {
                throw std::invalid_argument("activation map contains non-finite values");
            }
            if (row[x] > map.threshold) {
                if (!any) {
                    min_x = max_x = static_cast<int>(x);
                    min_y = max_y = static_cast<int>(y);
                    any = true;
                } else {
                    min_x = std::min(min_x, static_cast<int>(x));
                    max_x = std::max(max_x, static_cast<int>(x));
                    min_y = std::min(min_y, static_cast<int>(y));
                    max_y = std::max(max_y, static_cast<int>(y));
                }
            }
        }
    }
    if (!any) return std::nullopt;
    Detection d;
    d.x1 = min_x;
    d.y1 = min_y;
    d.x2 = max_x;
    d.y2 = max_y;
    d.kind = DetectionKind::TextMatch;
    return d;
}

inline constexpr double kGazeThresholdRad = 40.0 * kPi / 180.0;

/// 1 iff the person's heading is within 40 degrees (strict) of the bearing
/// from the person to the robot.
inline int gaze_flag(double person_heading, double person_x, double person_y,
                     double robot_x, double robot_y) {
    if (person_x == robot_x && person_y == robot_y) {
        throw std::invalid_argument("gaze_flag: coincident positions");
    }
    const double to_robot = bearing(person_x, person_y, robot_x, robot_y);
    return angular_distance(person_heading, to_robot) < kGazeThresholdRad ? 1 : 0;
}

/// Simulated detector noise and geometry limits.
struct SensorModel {
    double fov = 2.0 * kPi / 3.0;  // radians
    double range = 8.0;            // meters
    double p_false_positive = 0.0;  // per non-matching visible person per text query
    double p_false_negative = 0.0;  // per matching person per text query
};

struct SimPerson {
    int id = 0;
    Pose2D pose;
    std::string appearance;
    int floor = 0;
};

/// True when the person is inside the sensor wedge and not occluded.
inline bool person_visible(const OccupancyGrid& grid, const Pose2D& robot,
                           const Pose2D& person, const SensorModel& sensor) {
    const double d = distance(robot, person);
    if (d > sensor.range || d == 0.0) return false;
    const double rel = angular_distance(bearing(robot.x, robot.y, person.x, person.y),
                                        robot.theta);
    if (rel > sensor.fov / 2.0) return false;
    return grid.line_of_sight(grid.cell_of(robot.x, robot.y),
                              grid.cell_of(person.x, person.y));
}

/// One sensing pass. Every visible person yields a GeneralPerson detection.
/// When `query_target_id` is set, a text query runs against each visible
/// person: the ground-truth match fires with probability 1 - p_fn, every
/// other visible person with probability p_fp. Deterministic under a fixed
/// rng state; persons are scanned in input order.
inline std::vector<Detection> observe(const OccupancyGrid& grid,
                                      const std::vector<SimPerson>& persons,
                                      int robot_floor, const Pose2D& robot,
                                      std::optional<int> query_target_id,
                                      const SensorModel& sensor, Rng& rng) {
    std::vector<Detection> out;
    for (const auto& person : persons) {
        if (person.floor != robot_floor) continue;
        if (!person_visible(grid, robot, person.pose, sensor)) continue;
        const double d = distance(robot, person.pose);
        const CellIndex cell = grid.cell_of(person.pose.x, person.pose.y);

        Detection gp;
        gp.kind = DetectionKind::GeneralPerson;
        gp.person_id = person.id;
        gp.score = 1.0 - d / sensor.range;
        gp.x1 = gp.x2 = cell.x;
        gp.y1 = gp.y2 = cell.y;
        out.push_back(gp);

        if (query_target_id.has_value()) {
            const bool is_match = person.id == *query_target_id;
            const double p_fire =
                is_match ? 1.0 - sensor.p_false_negative : sensor.p_false_positive;
            if (rng.bernoulli(p_fire)) {
                Detection tm = gp;
                tm.kind = DetectionKind::TextMatch;
                out.push_back(tm);
            }
        }
    }
    return out;
}

}  // namespace socrates::perception
