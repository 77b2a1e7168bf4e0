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
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socrates/annotated_map.hpp"
#include "socrates/geometry.hpp"
#include "socrates/occupancy.hpp"
#include "socrates/perception.hpp"
#include "socrates/prior.hpp"

// Waypoint generation: global label selection by prior-weighted cost, local
// indirect search around detections, frontier exploration of the not yet
// observed space, and the visited-waypoint filter.

namespace socrates::search {

struct SearchConfig {
    double prior_weight = 30.0;    // w_e
    double visit_threshold = 2.0;  // t_g, meters
    double standoff = 5.0;         // meters
    double max_path = 30.0;        // meters
    int max_false_detections = 5;
    int sentences_per_clue = 20;   // M
    double floor_change_cost = 5.0;
    double success_radius = 5.0;   // success requires ending within this range
    bool use_prior = true;         // false: distance-only label costs
    bool indirect = true;          // false: text detector drives approaches directly

    static SearchConfig real_world() { return SearchConfig{}; }

    static SearchConfig simulation() {
        SearchConfig c;
        c.max_path = 15.0;
        c.max_false_detections = 3;
        return c;
    }
};

/// Append-only record of positions the robot has committed to visit.
class VisitHistory {
public:
    void record(const Waypoint& wp) { waypoints_.push_back(wp); }
    const std::vector<Waypoint>& waypoints() const { return waypoints_; }

private:
    std::vector<Waypoint> waypoints_;
};

/// True iff the candidate is farther than t_g from every past waypoint
/// (strict); an empty history always passes.
inline bool should_visit(const Waypoint& candidate, const VisitHistory& history, double t_g) {
    for (const auto& past : history.waypoints()) {
        const double d = std::hypot(candidate.x - past.x, candidate.y - past.y);
        if (!(d > t_g)) return false;
    }
    return true;
}

/// Lowest-cost unvisited label; ties break lexicographically. Empty when
/// every label is visited or infinite (exploration exhausted).
inline std::optional<std::string> select_next_label(
    const std::map<std::string, double>& costs, const std::set<std::string>& visited) {
    std::optional<std::string> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& [label, cost] : costs) {  // std::map iterates in label order
        if (visited.count(label)) continue;
        if (!std::isfinite(cost)) continue;
        if (cost < best_cost) {
            best_cost = cost;
            best = label;
        }
    }
    return best;
}

/// Frontier-based exploration over a tri-state view of the world (Free =
/// observed free, Unknown = not yet observed). Frontier cells are observed
/// free cells 4-adjacent to an unknown cell; they are clustered with
/// 8-connectivity, clusters under 3 cells are dropped, and cluster centroids
/// come back ordered by distance from the robot.
inline std::vector<Waypoint> frontier_waypoints(const OccupancyGrid& view,
                                                const Pose2D& robot, int robot_floor = 0,
                                                int min_cluster_cells = 3) {
    std::vector<std::size_t> frontier_flat;
    std::vector<bool> is_frontier(static_cast<std::size_t>(view.width()) * view.height(), false);
    static const std::array<std::pair<int, int>, 4> four = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    for (int y = 0; y < view.height(); ++y) {
        for (int x = 0; x < view.width(); ++x) {
            const CellIndex c{x, y};
            if (view.at(c) != Cell::Free) continue;
            for (const auto& [dx, dy] : four) {
                const CellIndex nb{x + dx, y + dy};
                if (view.in_bounds(nb) && view.at(nb) == Cell::Unknown) {
                    is_frontier[view.flat(c)] = true;
                    frontier_flat.push_back(view.flat(c));
                    break;
                }
            }
        }
    }

    // 8-connected clustering by flood fill over frontier cells.
    std::vector<bool> seen(is_frontier.size(), false);
    struct Cluster {
        double cx = 0.0, cy = 0.0;
        int size = 0;
    };
    std::vector<Cluster> clusters;
    for (const std::size_t start : frontier_flat) {
        if (seen[start]) continue;
        Cluster cluster;
        std::vector<std::size_t> stack = {start};
        seen[start] = true;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            const CellIndex c{static_cast<int>(cur % view.width()),
                              static_cast<int>(cur / view.width())};
            cluster.cx += view.center_x(c);
            cluster.cy += view.center_y(c);
            cluster.size += 1;
            for (const auto& [dx, dy] : detail::neighbors8()) {
                const CellIndex nb{c.x + dx, c.y + dy};
                if (!view.in_bounds(nb)) continue;
                const std::size_t ni = view.flat(nb);
                if (is_frontier[ni] && !seen[ni]) {
                    seen[ni] = true;
                    stack.push_back(ni);
                }
            }
        }
        if (cluster.size >= min_cluster_cells) {
            cluster.cx /= cluster.size;
            cluster.cy /= cluster.size;
            clusters.push_back(cluster);
        }
    }

    std::sort(clusters.begin(), clusters.end(), [&](const Cluster& a, const Cluster& b) {
        const double da = std::hypot(a.cx - robot.x, a.cy - robot.y);
        const double db = std::hypot(b.cx - robot.x, b.cy - robot.y);
        if (da != db) return da < db;
        if (a.cx != b.cx) return a.cx < b.cx;
        return a.cy < b.cy;
    });

    std::vector<Waypoint> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) {
        out.push_back(Waypoint{c.cx, c.cy, robot_floor,
                               normalize_angle(bearing(robot.x, robot.y, c.cx, c.cy))});
    }
    return out;
}

/// Waypoint on the robot-person ray exactly `standoff` meters from the
/// person, facing the person. The robot moves forward or backward along the
/// ray as needed.
inline Waypoint standoff_waypoint(double person_x, double person_y, const Pose2D& robot,
                                  double standoff, int floor = 0) {
    const double d = std::hypot(robot.x - person_x, robot.y - person_y);
    if (d == 0.0) throw std::invalid_argument("standoff_waypoint: coincident positions");
    const double ux = (robot.x - person_x) / d;
    const double uy = (robot.y - person_y) / d;
    const double wx = person_x + standoff * ux;
    const double wy = person_y + standoff * uy;
    return Waypoint{wx, wy, floor, normalize_angle(bearing(wx, wy, person_x, person_y))};
}

/// Grid-executable variant: snaps the ray waypoint to a free cell no farther
/// than `standoff - margin` from the person. The margin absorbs the cell
/// quantization of both the waypoint and the detected person position, so a
/// range or success check at the nominal radius cannot be lost to rounding.
inline std::optional<Waypoint> snapped_standoff(const OccupancyGrid& grid, double person_x,
                                                double person_y, const Pose2D& robot,
                                                double standoff, int floor = 0,
                                                double margin = 0.0) {
    const Waypoint ray = standoff_waypoint(person_x, person_y, robot, standoff, floor);
    const double limit = standoff - margin;
    std::optional<CellIndex> best;
    double best_err = std::numeric_limits<double>::infinity();
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            const CellIndex c{x, y};
            if (grid.at(c) != Cell::Free) continue;
            const double cx = grid.center_x(c);
            const double cy = grid.center_y(c);
            if (std::hypot(cx - person_x, cy - person_y) > limit) continue;
            const double err = std::hypot(cx - ray.x, cy - ray.y);
            if (err < best_err) {
                best_err = err;
                best = c;
            }
        }
    }
    if (!best) return std::nullopt;
    const double cx = grid.center_x(*best);
    const double cy = grid.center_y(*best);
    return Waypoint{cx, cy, floor, normalize_angle(bearing(cx, cy, person_x, person_y))};
}

/// Executable standoff used by the policy: among reachable free cells no
/// farther than `standoff - margin` from the person, minimize travel (BFS
/// route) plus a penalty for stopping short of the standoff distance; ties
/// go to the exact ray point. Balances "keep the distance" against walls and
/// map edges that make the exact ray point a bad trip.
inline std::optional<Waypoint> route_aware_standoff(const OccupancyGrid& grid,
                                                    double person_x, double person_y,
                                                    const Pose2D& robot, double standoff,
                                                    int floor = 0, double margin = 0.0,
                                                    double shortfall_weight = 1.0) {
    const Waypoint ray = standoff_waypoint(person_x, person_y, robot, standoff, floor);
    CellIndex start = grid.cell_of(robot.x, robot.y);
    if (!grid.is_free(start)) {
        const auto s = nearest_free_cell(grid, robot.x, robot.y);
        if (!s) return std::nullopt;
        start = *s;
    }
    const auto reach = bfs_reach(grid, start);
    const double limit = standoff - margin;
    const CellIndex person_cell = grid.cell_of(person_x, person_y);

    std::optional<CellIndex> best;
    double best_score = std::numeric_limits<double>::infinity();
    double best_err = std::numeric_limits<double>::infinity();
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            const CellIndex c{x, y};
            if (grid.at(c) != Cell::Free) continue;
            const int steps = reach[grid.flat(c)];
            if (steps < 0) continue;
            const double cx = grid.center_x(c);
            const double cy = grid.center_y(c);
            const double to_person = std::hypot(cx - person_x, cy - person_y);
            if (to_person > limit) continue;
            // The viewpoint must actually see the person.
            if (!grid.line_of_sight(c, person_cell)) continue;
            const double travel = steps * grid.resolution();
            const double score = travel + shortfall_weight * (limit - to_person);
            const double err = std::hypot(cx - ray.x, cy - ray.y);
            if (score < best_score || (score == best_score && err < best_err)) {
                best = c;
                best_score = score;
                best_err = err;
            }
        }
    }
    if (!best) return std::nullopt;
    const double cx = grid.center_x(*best);
    const double cy = grid.center_y(*best);
    return Waypoint{cx, cy, floor, normalize_angle(bearing(cx, cy, person_x, person_y))};
}

enum class WaypointPurpose { AreaEntry, Frontier, Standoff, Approach };
enum class EventKind { MoveTo, AskFeedback, DeclareSuccess, DeclareFailure };
enum class FailureReason { None, PathBudget, FalseDetectionBudget, Exhausted };

struct SearchEvent {
    EventKind kind = EventKind::MoveTo;
    Waypoint target;
    WaypointPurpose purpose = WaypointPurpose::Frontier;
    int person_id = -1;
    FailureReason reason = FailureReason::None;
    std::string label;  // area label for AreaEntry moves
};

/// What the runner hands the policy each step: the detections at the current
/// pose and, after an AskFeedback, the user's answer.
struct Observation {
    std::vector<perception::Detection> detections;
    std::optional<std::pair<int, bool>> feedback;  // (person id, is the target)
};

/// The indirect-search state machine. One instance drives one episode; the
/// runner executes each emitted event (moving the robot, collecting the next
/// observation, answering feedback) before calling step() again.
class SearchFsm {
public:
    SearchFsm(const AnnotatedMap& map, std::map<std::string, double> label_priors,
              SearchConfig config)
        : map_(&map), label_priors_(std::move(label_priors)), config_(config) {}

    const VisitHistory& history() const { return history_; }
    const std::set<std::string>& visited_labels() const { return visited_labels_; }
    int false_detections() const { return false_detections_; }
    const std::optional<std::string>& current_label() const { return current_label_; }

    /// Runner callback for a MoveTo whose target proved unreachable on the
    /// grid: a detection-driven target writes the person off, exploration
    /// targets are simply dropped (history already holds them).
    void notify_unreachable(const SearchEvent& ev) {
        if (ev.person_id >= 0 && (ev.purpose == WaypointPurpose::Standoff ||
                                  ev.purpose == WaypointPurpose::Approach)) {
            examined_.insert(ev.person_id);
            pending_standoff_.reset();
        }
    }

    SearchEvent step(const Observation& obs, const OccupancyGrid& explored_view,
                     const Pose2D& robot, int robot_floor, double path_length) {
        // Budgets bind before anything else in the step.
        if (auto breach = budget_breach(path_length)) return *breach;

        // Pending user feedback resolves first.
        if (obs.feedback) {
            const auto [person, positive] = *obs.feedback;
            pending_ask_.reset();
            if (positive) {
                SearchEvent ev;
                ev.kind = EventKind::DeclareSuccess;
                ev.person_id = person;
                return ev;
            }
            ++false_detections_;
            examined_.insert(person);
            if (auto breach = budget_breach(path_length)) return *breach;
        }

        if (config_.indirect) {
            // Arrival at a standoff: consult the text detector for exactly the
            // person the standoff was taken for.
            if (pending_standoff_) {
                const int person = *pending_standoff_;
                pending_standoff_.reset();
                if (!examined_.count(person) && has_text_match(obs, person)) {
                    return make_ask(person);
                }
                examined_.insert(person);  // inspected from a proper viewpoint
            }
            // Any unexamined general detection triggers a standoff maneuver.
            if (const auto det = nearest_unexamined(obs, robot, robot_floor,
                                                    perception::DetectionKind::GeneralPerson)) {
                const auto wp = route_aware_standoff(map_->floor(robot_floor), det->wx,
                                                     det->wy, robot, config_.standoff,
                                                     robot_floor,
                                                     quantization_margin(robot_floor));
                if (wp) {
                    pending_standoff_ = det->person_id;
                    SearchEvent ev;
                    ev.kind = EventKind::MoveTo;
                    ev.target = *wp;
                    ev.purpose = WaypointPurpose::Standoff;
                    ev.person_id = det->person_id;
                    history_.record(*wp);
                    return ev;
                }
                examined_.insert(det->person_id);  // nowhere to stand; skip
            }
        } else {
            // Direct mode: the text detector runs on every observation.
            if (const auto det = nearest_unexamined(obs, robot, robot_floor,
                                                    perception::DetectionKind::TextMatch)) {
                const double d = std::hypot(det->wx - robot.x, det->wy - robot.y);
                if (d <= config_.success_radius - quantization_margin(robot_floor)) {
                    return make_ask(det->person_id);
                }
                // Close the range first, then ask on re-detection.
                const auto wp =
                    route_aware_standoff(map_->floor(robot_floor), det->wx, det->wy, robot,
                                         config_.success_radius * 0.9, robot_floor,
                                         quantization_margin(robot_floor));
                if (wp) {
                    SearchEvent ev;
                    ev.kind = EventKind::MoveTo;
                    ev.target = *wp;
                    ev.purpose = WaypointPurpose::Approach;
                    ev.person_id = det->person_id;
                    history_.record(*wp);
                    return ev;
                }
                examined_.insert(det->person_id);
            }
        }

        // Local search: frontier exploration inside the chosen area. The
        // global phase below must have picked a label first.
        if (current_label_) {
            for (const auto& frontier : frontier_waypoints(explored_view, robot, robot_floor)) {
                if (!inside_current_area(frontier)) continue;
                const auto snapped = snap_reachable(frontier, robot, robot_floor);
                if (!snapped) continue;
                if (!should_visit(*snapped, history_, config_.visit_threshold)) continue;
                SearchEvent ev;
                ev.kind = EventKind::MoveTo;
                ev.target = *snapped;
                ev.purpose = WaypointPurpose::Frontier;
                history_.record(*snapped);
                return ev;
            }
        }

        // Frontiers exhausted: recompute label costs and move to the next
        // cheapest unvisited label. The move target is the closest in-area
        // cell that still passes the visited filter; the cost ranking itself
        // keeps using the unconditional nearest cell.
        while (true) {
            const auto costs = label_costs(robot, robot_floor);
            const auto label = select_next_label(costs, visited_labels_);
            if (!label) {
                SearchEvent ev;
                ev.kind = EventKind::DeclareFailure;
                ev.reason = FailureReason::Exhausted;
                return ev;
            }
            visited_labels_.insert(*label);
            current_label_ = *label;
            const auto entry =
                area_entry(robot, robot_floor, *map_->find_area(*label));
            if (!entry) continue;  // unreachable or fully visited already
            SearchEvent ev;
            ev.kind = EventKind::MoveTo;
            ev.target = *entry;
            ev.purpose = WaypointPurpose::AreaEntry;
            ev.label = *label;
            history_.record(*entry);
            return ev;
        }
    }

    /// Distance-plus-prior cost for every label from the current pose.
    std::map<std::string, double> label_costs(const Pose2D& robot, int robot_floor) const {
        std::map<std::string, double> out;
        for (const auto& area : map_->areas()) {
            const auto lc = prior::label_cost(robot, robot_floor, area, *map_,
                                              prior_of(area.label), cost_options());
            out[area.label] = lc.cost;
        }
        return out;
    }

private:
    struct Candidate {
        int person_id;
        double wx, wy;
    };

    /// Detected person positions and waypoints are cell centers; this margin
    /// covers the worst-case rounding of both.
    double quantization_margin(int robot_floor) const {
        return 1.5 * map_->floor(robot_floor).resolution();
    }

    prior::LabelCostOptions cost_options() const {
        prior::LabelCostOptions opts;
        opts.prior_weight = config_.prior_weight;
        opts.floor_change_cost = config_.floor_change_cost;
        opts.use_prior = config_.use_prior;
        return opts;
    }

    double prior_of(const std::string& label) const {
        const auto it = label_priors_.find(label);
        return it == label_priors_.end() ? 0.0 : it->second;
    }

    std::optional<SearchEvent> budget_breach(double path_length) const {
        SearchEvent ev;
        ev.kind = EventKind::DeclareFailure;
        if (path_length > config_.max_path) {
            ev.reason = FailureReason::PathBudget;
            return ev;
        }
        if (false_detections_ >= config_.max_false_detections) {
            ev.reason = FailureReason::FalseDetectionBudget;
            return ev;
        }
        return std::nullopt;
    }

    SearchEvent make_ask(int person) {
        pending_ask_ = person;
        SearchEvent ev;
        ev.kind = EventKind::AskFeedback;
        ev.person_id = person;
        return ev;
    }

    static bool has_text_match(const Observation& obs, int person) {
        for (const auto& d : obs.detections) {
            if (d.kind == perception::DetectionKind::TextMatch && d.person_id == person) {
                return true;
            }
        }
        return false;
    }

    /// Nearest detection of the given kind whose person has not been examined
    /// yet. Detection bboxes are in map cells; centers convert to world.
    std::optional<Candidate> nearest_unexamined(const Observation& obs, const Pose2D& robot,
                                                int robot_floor,
                                                perception::DetectionKind kind) const {
        std::optional<Candidate> best;
        double best_d = std::numeric_limits<double>::infinity();
        const OccupancyGrid& grid = map_->floor(robot_floor);
        for (const auto& det : obs.detections) {
            if (det.kind != kind || !det.person_id) continue;
            if (examined_.count(*det.person_id)) continue;
            const CellIndex cell{static_cast<int>((det.x1 + det.x2) / 2.0),
                                 static_cast<int>((det.y1 + det.y2) / 2.0)};
            const double wx = grid.center_x(cell);
            const double wy = grid.center_y(cell);
            const double d = std::hypot(wx - robot.x, wy - robot.y);
            if (d < best_d) {
                best_d = d;
                best = Candidate{*det.person_id, wx, wy};
            }
        }
        return best;
    }

    /// Nearest reachable free cell inside the area that passes the visited
    /// filter; nullopt when none is left.
    std::optional<Waypoint> area_entry(const Pose2D& robot, int robot_floor,
                                       const Area& area) const {
        const OccupancyGrid& grid = map_->floor(area.floor);
        CellIndex start = grid.cell_of(robot.x, robot.y);
        if (!grid.is_free(start)) {
            const auto s = nearest_free_cell(grid, robot.x, robot.y);
            if (!s) return std::nullopt;
            start = *s;
        }
        const auto reach = bfs_reach(grid, start);
        std::optional<Waypoint> best;
        double best_d = std::numeric_limits<double>::infinity();
        for (int y = 0; y < grid.height(); ++y) {
            for (int x = 0; x < grid.width(); ++x) {
                const CellIndex c{x, y};
                if (grid.at(c) != Cell::Free || reach[grid.flat(c)] < 0) continue;
                const double cx = grid.center_x(c);
                const double cy = grid.center_y(c);
                if (!area.contains(cx, cy)) continue;
                const double d = std::hypot(cx - robot.x, cy - robot.y);
                if (d >= best_d) continue;
                const Waypoint wp{cx, cy, area.floor,
                                  normalize_angle(bearing(robot.x, robot.y, cx, cy))};
                if (!should_visit(wp, history_, config_.visit_threshold)) continue;
                best_d = d;
                best = wp;
            }
        }
        return best;
    }

    bool inside_current_area(const Waypoint& wp) const {
        if (!current_label_) return true;  // no area chosen yet: explore freely
        const Area* area = map_->find_area(*current_label_);
        return area && area->contains(wp.x, wp.y);
    }

    /// Moves a waypoint onto the nearest statically free cell reachable from
    /// the robot.
    std::optional<Waypoint> snap_reachable(const Waypoint& wp, const Pose2D& robot,
                                           int robot_floor) const {
        const OccupancyGrid& grid = map_->floor(robot_floor);
        CellIndex start = grid.cell_of(robot.x, robot.y);
        if (!grid.is_free(start)) {
            const auto s = nearest_free_cell(grid, robot.x, robot.y);
            if (!s) return std::nullopt;
            start = *s;
        }
        const auto reach = bfs_reach(grid, start);
        std::optional<CellIndex> best;
        double best_d = std::numeric_limits<double>::infinity();
        for (int y = 0; y < grid.height(); ++y) {
            for (int x = 0; x < grid.width(); ++x) {
                const CellIndex c{x, y};
                if (grid.at(c) != Cell::Free || reach[grid.flat(c)] < 0) continue;
                const double d = std::hypot(grid.center_x(c) - wp.x, grid.center_y(c) - wp.y);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
        }
        if (!best || best_d > 1.5) return std::nullopt;  // frontier not actually enterable
        return Waypoint{grid.center_x(*best), grid.center_y(*best), robot_floor, wp.theta};
    }

    const AnnotatedMap* map_;
    std::map<std::string, double> label_priors_;
    SearchConfig config_;
    VisitHistory history_;
    std::set<std::string> visited_labels_;
    std::set<int> examined_;
    std::optional<std::string> current_label_;
    std::optional<int> pending_standoff_;
    std::optional<int> pending_ask_;
    int false_detections_ = 0;
};

}  // namespace socrates::search
