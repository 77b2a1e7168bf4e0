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
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "socrates/geometry.hpp"
#include "socrates/occupancy.hpp"
#include "socrates/reward_field.hpp"
#include "socrates/rng.hpp"
#include "socrates/trajectory.hpp"

// Reward-aware approach planning: the two reward fields are blended and
// rescaled into [0, 1], converted to a cost 1 - R_T, and fed to a batch
// sampling planner (FMT*-style lazy dynamic programming over SE(2)).

namespace socrates::planner {

struct PlannerParams {
    double w_r = 0.2;               // blend weight on the demonstration reward
    double w_p = 1.0;               // position weight in the distance term
    double w_o = 0.5;               // orientation weight
    double zeta = 1.5;              // cost shaping
    int samples = 2000;             // batch size
    double connection_radius = 0.0; // 0 = auto (FMT* radius rule)
    double radius_tuning = 1.1;
    double min_radius = 0.5;        // meters
    double goal_radius = 0.6;       // meters to the person

    void validate() const {
        if (w_r < 0.0 || w_r > 1.0) throw std::invalid_argument("planner: w_r in [0,1]");
        if (w_p < 0.0 || w_o < 0.0 || zeta < 0.0) {
            throw std::invalid_argument("planner: weights must be >= 0");
        }
        if (samples < 10) throw std::invalid_argument("planner: samples must be >= 10");
    }
};

/// Weighted sum of the two reward fields, affinely rescaled per grid so that
/// min = 0 and max = 1; constant fields map to all zeros.
inline RewardField blend(const RewardField& lfd, const RewardField& kd, double w_r) {
    if (!lfd.same_grid(kd)) throw std::invalid_argument("blend: reward fields on different grids");
    RewardField out(lfd.grid());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.values().size(); ++i) {
        const double v = w_r * lfd.at(i) + (1.0 - w_r) * kd.at(i);
        out.at(i) = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo <= 0.0) {
        for (double& v : out.values()) v = 0.0;
        return out;
    }
    const double span = hi - lo;
    for (double& v : out.values()) v = (v - lo) / span;  // endpoints land exactly on 0 and 1
    return out;
}

struct PlanRequest {
    Pose2D start;              // world frame, collision-free
    Pose2D human;              // world frame
    int gaze = 0;
    const OccupancyGrid* grid = nullptr;
    const RewardField* reward = nullptr;  // blended R_T
};

/// Reward at a world configuration: the configuration is expressed in the
/// human frame, discretized, and read at the best speed bin (the speed the
/// velocity assignment will pick).
inline double reward_lookup(const RewardField& field, const Pose2D& world_pose,
                            const Pose2D& human, int gaze, int* best_iv = nullptr) {
    const Pose2D rel = to_human_frame(world_pose, human);
    ApproachState state{rel.x, rel.y, rel.theta, gaze, field.grid().v_bins().front()};
    StateIndex idx = field.grid().discretize(state);
    return field.max_over_v(idx, best_iv);
}

/// Movement cost between two configurations: zeta * (1 - R_T(arrival)) *
/// (w_p ||q2 - q1|| + w_o |dtheta|), the angle difference wrapped to [0, pi].
inline double edge_cost(const Pose2D& from, const Pose2D& to, double reward_at_to,
                        const PlannerParams& params) {
    const double dist = params.w_p * distance(from, to) +
                        params.w_o * angular_distance(to.theta, from.theta);
    return params.zeta * (1.0 - reward_at_to) * dist;
}

inline bool segment_collision_free(const OccupancyGrid& grid, const Pose2D& a,
                                   const Pose2D& b) {
    const double step = grid.resolution() * 0.5;
    const double d = distance(a, b);
    const int n = std::max(1, static_cast<int>(std::ceil(d / step)));
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        if (!grid.point_free(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))) return false;
    }
    return true;
}

struct PlanStats {
    int samples_used = 0;
    int expansions = 0;
    double connection_radius = 0.0;
    double cost = 0.0;
};

namespace detail {

// Uniform grid hash over sample positions for radius queries.
class NeighborIndex {
public:
    NeighborIndex(const std::vector<Pose2D>& nodes, double radius, double min_x, double min_y)
        : radius_(radius), min_x_(min_x), min_y_(min_y) {
        cell_ = std::max(radius, 1e-3);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            buckets_[key(nodes[i].x, nodes[i].y)].push_back(i);
        }
    }

    template <typename Fn>
    void for_each_in_radius(const std::vector<Pose2D>& nodes, const Pose2D& center,
                            Fn&& fn) const {
        const int cx = static_cast<int>(std::floor((center.x - min_x_) / cell_));
        const int cy = static_cast<int>(std::floor((center.y - min_y_) / cell_));
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const auto it = buckets_.find(pack(cx + dx, cy + dy));
                if (it == buckets_.end()) continue;
                for (const std::size_t i : it->second) {
                    if (distance(nodes[i], center) <= radius_) fn(i);
                }
            }
        }
    }

private:
    std::int64_t key(double x, double y) const {
        return pack(static_cast<int>(std::floor((x - min_x_) / cell_)),
                    static_cast<int>(std::floor((y - min_y_) / cell_)));
    }
    static std::int64_t pack(int x, int y) {
        return (static_cast<std::int64_t>(x) << 32) ^ (static_cast<std::uint32_t>(y));
    }

    double radius_;
    double cell_;
    double min_x_;
    double min_y_;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace detail

/// FMT*-style batch planner over (x, y, theta). Samples collision-free
/// configurations, then lazily expands the lowest-cost frontier node,
/// connecting each unvisited neighbor through its cheapest open parent.
/// Deterministic for a fixed seed; returns the pose sequence from start into
/// the goal region (within goal_radius of the human).
inline std::vector<Pose2D> plan_path(const PlanRequest& request, const PlannerParams& params,
                                     Rng& rng, PlanStats* stats = nullptr) {
    params.validate();
    if (!request.grid || !request.reward) {
        throw std::invalid_argument("plan: request needs a grid and a reward field");
    }
    const OccupancyGrid& grid = *request.grid;
    if (!grid.point_free(request.start.x, request.start.y)) {
        throw std::invalid_argument("plan: start pose is not collision-free");
    }
    if (!grid.world_in_bounds(request.human.x, request.human.y)) {
        throw std::invalid_argument("plan: human pose outside the map");
    }

    const double lo_x = grid.origin_x();
    const double lo_y = grid.origin_y();
    const double hi_x = grid.origin_x() + grid.width() * grid.resolution();
    const double hi_y = grid.origin_y() + grid.height() * grid.resolution();

    // Batch: start, deterministic seeds along the start-to-goal ray (goal
    // biasing; skipped where colliding), then the uniform random samples.
    std::vector<Pose2D> nodes;
    nodes.push_back(request.start);
    {
        const double d = distance(request.start, request.human);
        const double ray_theta =
            bearing(request.start.x, request.start.y, request.human.x, request.human.y);
        // The last seed sits a hair inside the goal disc so the membership
        // test cannot lose it to rounding.
        const double reach = d - params.goal_radius + 1e-9;
        if (reach > 1e-6) {
            const double spacing = 0.4;
            const int steps = std::max(1, static_cast<int>(std::ceil(reach / spacing)));
            for (int i = 1; i <= steps; ++i) {
                const double along = std::min(reach, i * spacing);
                const Pose2D seed{request.start.x + along * std::cos(ray_theta),
                                  request.start.y + along * std::sin(ray_theta), ray_theta};
                if (grid.point_free(seed.x, seed.y)) nodes.push_back(seed);
            }
        }
    }
    int attempts = 0;
    const int max_attempts = params.samples * 50;
    const std::size_t target = nodes.size() + static_cast<std::size_t>(params.samples);
    while (nodes.size() < target && attempts < max_attempts) {
        ++attempts;
        const Pose2D cand{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y),
                          normalize_angle(rng.uniform(-kPi, kPi))};
        if (!grid.point_free(cand.x, cand.y)) continue;
        nodes.push_back(cand);
    }

    // FMT* planar connection radius r = tuning * sqrt(2 A_free / pi) *
    // sqrt(log n / n), floored so the ray seeds stay connected.
    double radius = params.connection_radius;
    if (radius <= 0.0) {
        std::size_t free_cells = 0;
        for (const Cell c : grid.cells()) {
            if (c == Cell::Free) ++free_cells;
        }
        const double free_area =
            static_cast<double>(free_cells) * grid.resolution() * grid.resolution();
        const double n = static_cast<double>(nodes.size());
        const double gamma = std::sqrt(2.0 * free_area / kPi);
        radius = std::max(params.min_radius,
                          params.radius_tuning * gamma * std::sqrt(std::log(n) / n));
    }

    // Cached reward of arriving at each node.
    std::vector<double> node_reward(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        node_reward[i] =
            reward_lookup(*request.reward, nodes[i], request.human, request.gaze);
    }

    auto in_goal = [&](const Pose2D& p) {
        return distance(p, request.human) <= params.goal_radius;
    };

    const detail::NeighborIndex index(nodes, radius, lo_x, lo_y);

    constexpr std::uint8_t kUnvisited = 0, kOpen = 1, kClosed = 2;
    std::vector<std::uint8_t> state(nodes.size(), kUnvisited);
    std::vector<double> cost(nodes.size(), std::numeric_limits<double>::infinity());
    std::vector<std::int64_t> parent(nodes.size(), -1);
    state[0] = kOpen;
    cost[0] = 0.0;

    // Lazy dynamic programming over the r-disc graph: expand the cheapest
    // open node, relaxing its neighborhood with collision checks deferred to
    // the moment an edge would improve a node. The first expanded node inside
    // the goal region carries the graph-optimal arrival cost.
    int expansions = 0;
    std::optional<std::size_t> goal_node;
    for (;;) {
        std::optional<std::size_t> z;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (state[i] != kOpen) continue;
            if (!z || cost[i] < cost[*z]) z = i;
        }
        if (!z) break;
        if (in_goal(nodes[*z])) {
            goal_node = z;
            break;
        }
        ++expansions;

        index.for_each_in_radius(nodes, nodes[*z], [&](std::size_t x) {
            if (x == *z || state[x] == kClosed) return;
            const double tentative =
                cost[*z] + edge_cost(nodes[*z], nodes[x], node_reward[x], params);
            if (tentative >= cost[x]) return;
            if (!segment_collision_free(grid, nodes[*z], nodes[x])) return;
            cost[x] = tentative;
            parent[x] = static_cast<std::int64_t>(*z);
            state[x] = kOpen;
        });

        state[*z] = kClosed;
    }

    if (!goal_node) {
        throw std::runtime_error(
            "plan: no path into the goal region found; try a larger --samples budget");
    }

    std::vector<Pose2D> path;
    std::int64_t cur = static_cast<std::int64_t>(*goal_node);
    while (cur >= 0) {
        path.push_back(nodes[static_cast<std::size_t>(cur)]);
        cur = parent[static_cast<std::size_t>(cur)];
    }
    std::reverse(path.begin(), path.end());

    if (stats) {
        stats->samples_used = static_cast<int>(nodes.size());
        stats->expansions = expansions;
        stats->connection_radius = radius;
        stats->cost = cost[*goal_node];
    }
    return path;
}

/// Accumulated movement cost of an arbitrary pose sequence under a reward.
inline double path_cost(const std::vector<Pose2D>& path, const RewardField& reward,
                        const Pose2D& human, int gaze, const PlannerParams& params) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        total += edge_cost(path[i - 1], path[i],
                           reward_lookup(reward, path[i], human, gaze), params);
    }
    return total;
}

/// Per-waypoint speeds: the speed bin maximizing R_T at the waypoint's
/// human-frame state, slowest bin on ties; timestamps integrate segment
/// length over the departing waypoint's speed.
inline Trajectory assign_velocities(const std::vector<Pose2D>& path, const RewardField& field,
                                    const Pose2D& human, int gaze) {
    if (path.empty()) throw std::invalid_argument("assign_velocities: empty path");
    const auto& v_bins = field.grid().v_bins();
    std::vector<double> speeds(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        const Pose2D rel = to_human_frame(path[i], human);
        StateIndex idx = field.grid().discretize(
            ApproachState{rel.x, rel.y, rel.theta, gaze, v_bins.front()});
        // Scan slow-to-fast keeping strict improvements: ties go slowest.
        int best_iv = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (int iv = 0; iv < static_cast<int>(v_bins.size()); ++iv) {
            idx.iv = iv;
            if (field.at(idx) > best) {
                best = field.at(idx);
                best_iv = iv;
            }
        }
        speeds[i] = v_bins[static_cast<std::size_t>(best_iv)];
    }
    Trajectory traj;
    traj.frame = TrajectoryFrame::World;
    double t = 0.0;
    traj.append(t, path[0], speeds[0]);
    for (std::size_t i = 1; i < path.size(); ++i) {
        t += distance(path[i - 1], path[i]) / speeds[i - 1];
        traj.append(t, path[i], speeds[i]);
    }
    return traj;
}

/// Full approach plan: FMT* path plus post-hoc velocity assignment.
inline Trajectory plan(const PlanRequest& request, const PlannerParams& params, Rng& rng,
                       PlanStats* stats = nullptr) {
    const auto path = plan_path(request, params, rng, stats);
    return assign_velocities(path, *request.reward, request.human, request.gaze);
}

}  // namespace socrates::planner
