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

#include <cmath>
#include <stdexcept>

namespace socrates {

inline constexpr double kPi = 3.14159265358979323846;

/// Wraps an angle to the half-open interval (-pi, pi].
inline double normalize_angle(double theta) {
    double a = std::fmod(theta, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

/// Smallest absolute difference between two angles, in [0, pi].
inline double angular_distance(double a, double b) {
    return std::abs(normalize_angle(a - b));
}

/// Planar pose. theta is kept normalized to (-pi, pi] by every operation
/// that produces a Pose2D.
struct Pose2D {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    static Pose2D make(double x, double y, double theta) {
        return Pose2D{x, y, normalize_angle(theta)};
    }
};

inline double distance(const Pose2D& a, const Pose2D& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Navigation goal: a planar pose plus a 0-based floor level.
struct Waypoint {
    double x = 0.0;
    double y = 0.0;
    int z = 0;  // floor index, >= 0
    double theta = 0.0;

    Pose2D pose() const { return Pose2D{x, y, theta}; }

    static Waypoint from_pose(const Pose2D& p, int floor = 0) {
        return Waypoint{p.x, p.y, floor, p.theta};
    }
};

/// Expresses `robot` in the frame where `human` sits at the origin facing +x.
/// Round-trips with from_human_frame to within 1e-9.
inline Pose2D to_human_frame(const Pose2D& robot, const Pose2D& human) {
    if (!std::isfinite(robot.x) || !std::isfinite(robot.y) || !std::isfinite(robot.theta) ||
        !std::isfinite(human.x) || !std::isfinite(human.y) || !std::isfinite(human.theta)) {
        throw std::invalid_argument("to_human_frame: non-finite pose");
    }
    const double dx = robot.x - human.x;
    const double dy = robot.y - human.y;
    const double c = std::cos(human.theta);
    const double s = std::sin(human.theta);
    return Pose2D{c * dx + s * dy, -s * dx + c * dy,
                  normalize_angle(robot.theta - human.theta)};
}

/// Inverse of to_human_frame: maps a human-frame pose back to the world frame.
inline Pose2D from_human_frame(const Pose2D& relative, const Pose2D& human) {
    const double c = std::cos(human.theta);
    const double s = std::sin(human.theta);
    return Pose2D{human.x + c * relative.x - s * relative.y,
                  human.y + s * relative.x + c * relative.y,
                  normalize_angle(relative.theta + human.theta)};
}

/// Bearing of the segment from `from` to `to`, in world frame.
inline double bearing(double from_x, double from_y, double to_x, double to_y) {
    return std::atan2(to_y - from_y, to_x - from_x);
}

}  // namespace socrates
