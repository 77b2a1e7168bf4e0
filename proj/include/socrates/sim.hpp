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

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "socrates/annotated_map.hpp"
#include "socrates/geometry.hpp"
#include "socrates/perception.hpp"
#include "socrates/planner.hpp"
#include "socrates/prior.hpp"
#include "socrates/search.hpp"
#include "socrates/trajectory.hpp"

// Deterministic 2D episodes: the world file fixes the map, the people and
// the target; the runner drives the search policy (or the approach planner),
// moves the robot along grid shortest paths, answers feedback by ground
// truth identity, and records everything needed for metrics and plots.

namespace socrates::sim {

struct WorldPerson {
    int id = 0;
    Pose2D pose;
    int floor = 0;
    std::string appearance;
    std::string location_clue;
};

struct World {
    std::string name;
    AnnotatedMap map;
    std::vector<WorldPerson> persons;
    Pose2D robot_start;
    int robot_floor = 0;
    int target_id = 0;
    std::string sentences_path;  // replay fixture for the target's clue

    const WorldPerson& target() const {
        for (const auto& p : persons) {
            if (p.id == target_id) return p;
        }
        throw std::runtime_error("world: target_id not found among persons");
    }

    static World load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open world file: " + path);
        nlohmann::json j;
        in >> j;
        const auto base = std::filesystem::path(path).parent_path();

        World w;
        w.name = j.value("name", std::filesystem::path(path).stem().string());
        const std::string map_ref = j.at("map").get<std::string>();
        w.map = AnnotatedMap::load((base / map_ref).string());
        const auto& r = j.at("robot");
        w.robot_start = Pose2D::make(r.at("x"), r.at("y"), r.value("theta", 0.0));
        w.robot_floor = r.value("floor", 0);
        w.target_id = j.at("target_id").get<int>();
        for (const auto& pj : j.at("persons")) {
            WorldPerson p;
            p.id = pj.at("id").get<int>();
            p.pose = Pose2D::make(pj.at("x"), pj.at("y"), pj.value("theta", 0.0));
            p.floor = pj.value("floor", 0);
            p.appearance = pj.value("appearance", "");
            p.location_clue = pj.value("location_clue", "");
            w.persons.push_back(std::move(p));
        }
        if (j.contains("sentences")) {
            w.sentences_path = (base / j.at("sentences").get<std::string>()).string();
        }
        w.target();  // validates target_id
        return w;
    }
};

struct EpisodeEvent {
    double t = 0.0;
    std::string kind;
    Pose2D pose;
    nlohmann::ordered_json payload;
};

struct EpisodeResult {
    bool success = false;
    double path_length = 0.0;
    double shortest_path = 0.0;
    int false_detections = 0;
    int feedback_count = 0;
    std::string failure_reason;
    std::vector<EpisodeEvent> events;
    std::vector<Pose2D> polyline;  // executed motion, for plots
    double final_distance = 0.0;
    double duration = 0.0;
};

inline void write_event_log(const std::vector<EpisodeEvent>& events, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write episode log: " + path);
    for (const auto& e : events) {
        nlohmann::ordered_json j;
        j["t"] = e.t;
        j["kind"] = e.kind;
        j["pose"] = {{"x", e.pose.x}, {"y", e.pose.y}, {"theta", e.pose.theta}};
        j["payload"] = e.payload;
        out << j.dump() << "\n";
    }
}

enum class SearchMethod { Proposed, KnowledgePrior, CowIndirect, Cow };

inline const char* to_string(SearchMethod m) {
    switch (m) {
        case SearchMethod::Proposed: return "proposed";
        case SearchMethod::KnowledgePrior: return "knowledge-prior";
        case SearchMethod::CowIndirect: return "cow-indirect";
        case SearchMethod::Cow: return "cow";
    }
    return "?";
}

inline std::optional<SearchMethod> search_method_from_string(const std::string& s) {
    if (s == "proposed") return SearchMethod::Proposed;
    if (s == "knowledge-prior") return SearchMethod::KnowledgePrior;
    if (s == "cow-indirect") return SearchMethod::CowIndirect;
    if (s == "cow") return SearchMethod::Cow;
    return std::nullopt;
}

/// Method switch: prior on/off and indirect on/off.
inline search::SearchConfig configure_method(search::SearchConfig base, SearchMethod method) {
    switch (method) {
        case SearchMethod::Proposed:
            base.use_prior = true;
            base.indirect = true;
            break;
        case SearchMethod::KnowledgePrior:
            base.use_prior = true;
            base.indirect = false;
            break;
        case SearchMethod::CowIndirect:
            base.use_prior = false;
            base.indirect = true;
            break;
        case SearchMethod::Cow:
            base.use_prior = false;
            base.indirect = false;
            break;
    }
    return base;
}

/// Grid shortest-path length from the start to the closest free cell within
/// `radius` of the target (the SPL denominator's oracle l_i).
inline double shortest_path_to_target(const World& world, double radius) {
    const OccupancyGrid& grid = world.map.floor(world.robot_floor);
    CellIndex start = grid.cell_of(world.robot_start.x, world.robot_start.y);
    if (!grid.is_free(start)) {
        const auto s = nearest_free_cell(grid, world.robot_start.x, world.robot_start.y);
        if (!s) return 0.0;
        start = *s;
    }
    // Dijkstra over free cells (uniform step costs).
    const double res = grid.resolution();
    const double diag = res * std::sqrt(2.0);
    const std::size_t n = static_cast<std::size_t>(grid.width()) * grid.height();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    dist[grid.flat(start)] = 0.0;
    open.push({0.0, grid.flat(start)});
    const Pose2D target = world.target().pose;
    double best = std::numeric_limits<double>::infinity();
    while (!open.empty()) {
        const auto [d, idx] = open.top();
        open.pop();
        if (d > dist[idx]) continue;
        const CellIndex c{static_cast<int>(idx % grid.width()),
                          static_cast<int>(idx / grid.width())};
        const double to_target = std::hypot(grid.center_x(c) - target.x,
                                            grid.center_y(c) - target.y);
        if (to_target <= radius) best = std::min(best, d);
        for (const auto& [dx, dy] : detail::neighbors8()) {
            const CellIndex nb{c.x + dx, c.y + dy};
            if (!grid.is_free(nb)) continue;
            if (dx != 0 && dy != 0 &&
                (!grid.is_free(CellIndex{c.x + dx, c.y}) ||
                 !grid.is_free(CellIndex{c.x, c.y + dy}))) {
                continue;
            }
            const double cand = d + ((dx != 0 && dy != 0) ? diag : res);
            if (cand < dist[grid.flat(nb)]) {
                dist[grid.flat(nb)] = cand;
                open.push({cand, grid.flat(nb)});
            }
        }
    }
    return std::isfinite(best) ? best : 0.0;
}

struct SearchEpisodeOptions {
    search::SearchConfig config = search::SearchConfig::simulation();
    perception::SensorModel sensor;
    double robot_speed = 0.65;  // m/s, search phase
    prior::EmbeddingTable const* embeddings = nullptr;  // required for prior methods
    // Overrides the world's replay fixture (e.g. a live endpoint or the
    // template source); must be safe for concurrent generate() calls.
    prior::SentenceSource* sentence_source = nullptr;
    int scan_headings = 3;  // turn-in-place scan at every stop
};

namespace detail_sim {

/// Marks cells seen from the pose (range + fov + line of sight) into the
/// coverage mask.
inline void update_coverage(std::vector<bool>& seen, const OccupancyGrid& grid,
                            const Pose2D& robot, const perception::SensorModel& sensor,
                            int headings) {
    const CellIndex rc = grid.cell_of(robot.x, robot.y);
    if (!grid.in_bounds(rc)) return;
    const int r_cells = static_cast<int>(std::ceil(sensor.range / grid.resolution()));
    for (int y = std::max(0, rc.y - r_cells); y <= std::min(grid.height() - 1, rc.y + r_cells);
         ++y) {
        for (int x = std::max(0, rc.x - r_cells);
             x <= std::min(grid.width() - 1, rc.x + r_cells); ++x) {
            const CellIndex c{x, y};
            if (seen[grid.flat(c)]) continue;
            const double cx = grid.center_x(c);
            const double cy = grid.center_y(c);
            const double d = std::hypot(cx - robot.x, cy - robot.y);
            if (d > sensor.range) continue;
            bool in_fov = d < 1e-9;
            for (int h = 0; h < headings && !in_fov; ++h) {
                const double heading =
                    normalize_angle(robot.theta + h * 2.0 * kPi / headings);
                if (angular_distance(bearing(robot.x, robot.y, cx, cy), heading) <=
                    sensor.fov / 2.0) {
                    in_fov = true;
                }
            }
            if (!in_fov) continue;
            if (!grid.line_of_sight(rc, c)) continue;
            seen[grid.flat(c)] = true;
        }
    }
}

/// Tri-state view for the frontier machinery: unseen = Unknown, otherwise
/// the static cell value.
inline OccupancyGrid explored_view(const std::vector<bool>& seen, const OccupancyGrid& grid) {
    OccupancyGrid view = grid;
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            const CellIndex c{x, y};
            if (!seen[grid.flat(c)]) view.set(c, Cell::Unknown);
        }
    }
    return view;
}

/// Turn-in-place scan: detections unioned over evenly spaced headings,
/// deduplicated per person per kind (first hit wins).
inline std::vector<perception::Detection> scan(const OccupancyGrid& grid,
                                               const std::vector<perception::SimPerson>& persons,
                                               int floor, const Pose2D& robot,
                                               std::optional<int> query,
                                               const perception::SensorModel& sensor, Rng& rng,
                                               int headings) {
    std::vector<perception::Detection> all;
    for (int h = 0; h < headings; ++h) {
        const Pose2D view_pose{robot.x, robot.y,
                               normalize_angle(robot.theta + h * 2.0 * kPi / headings)};
        for (const auto& det :
             perception::observe(grid, persons, floor, view_pose, query, sensor, rng)) {
            bool duplicate = false;
            for (const auto& have : all) {
                if (have.person_id == det.person_id && have.kind == det.kind) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) all.push_back(det);
        }
    }
    return all;
}

}  // namespace detail_sim

/// One search trial: wires prior + policy + simulated perception for the
/// chosen method, executes emitted waypoints along grid shortest paths, and
/// answers feedback by identity. Pure function of (world, options, seed).
inline EpisodeResult run_search_episode(const World& world, SearchEpisodeOptions options,
                                        SearchMethod method, std::uint64_t seed) {
    options.config = configure_method(options.config, method);
    const OccupancyGrid& grid = world.map.floor(world.robot_floor);

    // Search prior from generated sentences for the target's clue (the
    // world's replay fixture unless a source override is given).
    std::map<std::string, double> priors;
    if (options.config.use_prior) {
        if (!options.embeddings) {
            throw std::invalid_argument("search episode: prior methods need embeddings");
        }
        prior::SentenceBatch batch;
        const auto clue = prior::LocationClue::make(world.target().location_clue);
        if (options.sentence_source) {
            batch = options.sentence_source->generate(clue, world.map.labels(),
                                                      options.config.sentences_per_clue);
        } else {
            if (world.sentences_path.empty()) {
                throw std::invalid_argument("search episode: world has no sentences fixture");
            }
            prior::ReplaySentenceSource source(world.sentences_path);
            batch = source.generate(clue, world.map.labels(),
                                    options.config.sentences_per_clue);
        }
        for (const auto& p :
             prior::score_labels(world.map.labels(), batch, *options.embeddings)) {
            priors[p.label] = p.clamped();
        }
    }

    std::vector<perception::SimPerson> persons;
    for (const auto& p : world.persons) {
        persons.push_back(perception::SimPerson{p.id, p.pose, p.appearance, p.floor});
    }

    Rng rng = Rng::split(seed, 0xA11CE);
    search::SearchFsm fsm(world.map, priors, options.config);

    EpisodeResult result;
    result.shortest_path = shortest_path_to_target(world, options.config.success_radius);
    Pose2D robot = world.robot_start;
    double path = 0.0;
    double t = 0.0;
    std::vector<bool> seen(static_cast<std::size_t>(grid.width()) * grid.height(), false);
    result.polyline.push_back(robot);

    auto log = [&](const std::string& kind, nlohmann::ordered_json payload) {
        result.events.push_back(EpisodeEvent{t, kind, robot, std::move(payload)});
    };

    detail_sim::update_coverage(seen, grid, robot, options.sensor, options.scan_headings);
    search::Observation obs;
    obs.detections = detail_sim::scan(grid, persons, world.robot_floor, robot,
                                      std::optional<int>(world.target_id), options.sensor,
                                      rng, options.scan_headings);

    const int max_steps = 500;  // hard stop against pathological loops
    for (int step = 0; step < max_steps; ++step) {
        const auto view = detail_sim::explored_view(seen, grid);
        const auto ev = fsm.step(obs, view, robot, world.robot_floor, path);
        obs.feedback.reset();

        if (ev.kind == search::EventKind::DeclareSuccess) {
            result.success = true;
            result.final_distance = distance(robot, world.target().pose);
            log("success", {{"person", ev.person_id}});
            break;
        }
        if (ev.kind == search::EventKind::DeclareFailure) {
            result.success = false;
            switch (ev.reason) {
                case search::FailureReason::PathBudget:
                    result.failure_reason = "path-budget";
                    break;
                case search::FailureReason::FalseDetectionBudget:
                    result.failure_reason = "false-detection-budget";
                    break;
                default: result.failure_reason = "exhausted";
            }
            result.final_distance = distance(robot, world.target().pose);
            log("failure", {{"reason", result.failure_reason}});
            break;
        }
        if (ev.kind == search::EventKind::AskFeedback) {
            const bool positive = ev.person_id == world.target_id;
            ++result.feedback_count;
            Pose2D asked_pose;
            for (const auto& p : world.persons) {
                if (p.id == ev.person_id) asked_pose = p.pose;
            }
            log("ask_feedback", {{"person", ev.person_id},
                                 {"answer", positive},
                                 {"px", asked_pose.x},
                                 {"py", asked_pose.y}});
            obs.feedback = std::make_pair(ev.person_id, positive);
            // The robot holds still; previous detections stay valid.
            continue;
        }

        // MoveTo: follow the grid shortest path to the (already snapped)
        // waypoint.
        const CellIndex from = grid.cell_of(robot.x, robot.y);
        const CellIndex to = grid.cell_of(ev.target.x, ev.target.y);
        const auto route = astar(grid, from, to);
        if (!route) {
            fsm.notify_unreachable(ev);
            log("unreachable", {{"x", ev.target.x}, {"y", ev.target.y}});
            obs.detections = detail_sim::scan(grid, persons, world.robot_floor, robot,
                                              std::optional<int>(world.target_id),
                                              options.sensor, rng, options.scan_headings);
            continue;
        }
        for (std::size_t i = 1; i < route->cells.size(); ++i) {
            result.polyline.push_back(Pose2D{grid.center_x(route->cells[i]),
                                             grid.center_y(route->cells[i]), 0.0});
        }
        path += route->length;
        t += route->length / options.robot_speed;
        robot = Pose2D{ev.target.x, ev.target.y, ev.target.theta};
        result.polyline.back().theta = robot.theta;
        log("move_to", {{"x", ev.target.x},
                        {"y", ev.target.y},
                        {"purpose", static_cast<int>(ev.purpose)},
                        {"label", ev.label},
                        {"length", route->length}});

        detail_sim::update_coverage(seen, grid, robot, options.sensor, options.scan_headings);
        obs.detections = detail_sim::scan(grid, persons, world.robot_floor, robot,
                                          std::optional<int>(world.target_id), options.sensor,
                                          rng, options.scan_headings);
        for (const auto& det : obs.detections) {
            if (det.kind == perception::DetectionKind::TextMatch) {
                log("text_match",
                    {{"person", *det.person_id}, {"true_target", *det.person_id == world.target_id}});
            }
        }
    }

    result.path_length = path;
    result.false_detections = fsm.false_detections();
    result.duration = t;
    return result;
}

enum class ApproachMethod { Hybrid, LfD, KD, Baseline };

inline const char* to_string(ApproachMethod m) {
    switch (m) {
        case ApproachMethod::Hybrid: return "hybrid";
        case ApproachMethod::LfD: return "lfd";
        case ApproachMethod::KD: return "kd";
        case ApproachMethod::Baseline: return "baseline";
    }
    return "?";
}

inline std::optional<ApproachMethod> approach_method_from_string(const std::string& s) {
    if (s == "hybrid") return ApproachMethod::Hybrid;
    if (s == "lfd") return ApproachMethod::LfD;
    if (s == "kd") return ApproachMethod::KD;
    if (s == "baseline") return ApproachMethod::Baseline;
    return std::nullopt;
}

struct ApproachOutcome {
    EpisodeResult result;
    Trajectory trajectory;
    int gaze = 0;
};

/// One approach trial from the world's robot start to its target person.
/// Hybrid blends both fields, LfD and KD use one field alone (rescaled), and
/// Baseline drives the straight line to the 0.6 m standoff.
inline ApproachOutcome run_approach_episode(const World& world, ApproachMethod method,
                                            const RewardField& lfd_field,
                                            const RewardField& kd_field,
                                            const planner::PlannerParams& params,
                                            std::uint64_t seed) {
    const OccupancyGrid& grid = world.map.floor(world.robot_floor);
    const WorldPerson& person = world.target();
    const Pose2D start = world.robot_start;
    const double start_dist = distance(start, person.pose);
    if (start_dist < 5.0) {
        throw std::invalid_argument("approach episode: robot must start at least 5 m away");
    }

    ApproachOutcome out;
    out.gaze = perception::gaze_flag(person.pose.theta, person.pose.x, person.pose.y, start.x,
                                     start.y);
    out.result.shortest_path = std::max(0.0, start_dist - params.goal_radius);

    if (method == ApproachMethod::Baseline) {
        // Straight drive, stopping at the goal radius.
        const double theta = bearing(start.x, start.y, person.pose.x, person.pose.y);
        const double reach = start_dist - params.goal_radius;
        const double step = grid.resolution();
        Trajectory traj;
        double t = 0.0;
        bool collided = false;
        traj.append(0.0, Pose2D::make(start.x, start.y, theta), 0.65);
        const int n = std::max(1, static_cast<int>(std::ceil(reach / step)));
        for (int i = 1; i <= n; ++i) {
            const double along = std::min(reach, i * step);
            const Pose2D p{start.x + along * std::cos(theta),
                           start.y + along * std::sin(theta), theta};
            if (!grid.point_free(p.x, p.y)) {
                collided = true;
                break;
            }
            t += (along - std::min(reach, (i - 1) * step)) / 0.65;
            traj.append(t, p, 0.65);
        }
        out.trajectory = traj;
        out.result.path_length = traj.path_length();
        out.result.final_distance = distance(traj.samples.back().pose, person.pose);
        out.result.success =
            !collided && out.result.final_distance <= params.goal_radius + 1e-9;
        if (!out.result.success) out.result.failure_reason = collided ? "collision" : "short";
        out.result.duration = traj.samples.back().t;
        for (const auto& s : traj.samples) out.result.polyline.push_back(s.pose);
        return out;
    }

    RewardField field(lfd_field.grid());
    switch (method) {
        case ApproachMethod::Hybrid: field = planner::blend(lfd_field, kd_field, params.w_r); break;
        case ApproachMethod::LfD: field = planner::blend(lfd_field, lfd_field, params.w_r); break;
        case ApproachMethod::KD: field = planner::blend(kd_field, kd_field, params.w_r); break;
        default: break;
    }

    planner::PlanRequest request;
    request.start = Pose2D::make(start.x, start.y,
                                 bearing(start.x, start.y, person.pose.x, person.pose.y));
    request.human = person.pose;
    request.gaze = out.gaze;
    request.grid = &grid;
    request.reward = &field;

    Rng rng = Rng::split(seed, 0xF17);
    out.trajectory = planner::plan(request, params, rng);
    out.result.path_length = out.trajectory.path_length();
    out.result.final_distance = distance(out.trajectory.samples.back().pose, person.pose);
    out.result.success = out.result.final_distance <= params.goal_radius + 1e-9;
    out.result.duration = out.trajectory.samples.back().t;
    for (const auto& s : out.trajectory.samples) out.result.polyline.push_back(s.pose);
    return out;
}

struct Metrics {
    double sr = 0.0;
    double spl = 0.0;
    double spf = 0.0;
    double mean_fd = 0.0;
    int episodes = 0;
};

/// SR, SPL (success weighted by shortest/taken path), SPF (success
/// discounted by feedback count; an artifact definition, the source tables
/// leave it unnamed) and the mean number of false detections.
inline Metrics compute_metrics(const std::vector<EpisodeResult>& results) {
    if (results.empty()) throw std::invalid_argument("compute_metrics: no episodes");
    Metrics m;
    m.episodes = static_cast<int>(results.size());
    for (const auto& r : results) {
        const double s = r.success ? 1.0 : 0.0;
        m.sr += s;
        const double denom = std::max(r.path_length, r.shortest_path);
        m.spl += denom > 0.0 ? s * r.shortest_path / denom : s;
        m.spf += s / (1.0 + r.false_detections);
        m.mean_fd += r.false_detections;
    }
    m.sr /= m.episodes;
    m.spl /= m.episodes;
    m.spf /= m.episodes;
    m.mean_fd /= m.episodes;
    return m;
}

}  // namespace socrates::sim
