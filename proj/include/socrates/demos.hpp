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

#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "socrates/geometry.hpp"
#include "socrates/kdmrl.hpp"
#include "socrates/perception.hpp"
#include "socrates/rng.hpp"

namespace socrates::kdmrl {

// Demonstration JSONL: one state per line. Human-frame lines carry
// {demo_id, t, x, y, theta, g, v}; world-frame lines carry
// {demo_id, t, robot:{x,y,theta}, human:{x,y,theta}, v} and are converted on
// load (gaze from the 40-degree rule).

struct DemoParseError : std::runtime_error {
    DemoParseError(const std::string& msg, int line)
        : std::runtime_error("demos line " + std::to_string(line) + ": " + msg),
          line_number(line) {}
    int line_number;
};

inline std::vector<Demonstration> load_demonstrations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open demonstrations file: " + path);
    std::map<std::string, Demonstration> by_id;  // ordered by demo id
    std::vector<std::string> id_order;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            throw DemoParseError(e.what(), line_no);
        }
        try {
            const std::string id = j.at("demo_id").is_string()
                                       ? j.at("demo_id").get<std::string>()
                                       : std::to_string(j.at("demo_id").get<long>());
            ApproachState state;
            if (j.contains("robot")) {
                const auto& r = j.at("robot");
                const auto& h = j.at("human");
                const Pose2D robot = Pose2D::make(r.at("x"), r.at("y"), r.at("theta"));
                const Pose2D human = Pose2D::make(h.at("x"), h.at("y"), h.at("theta"));
                const Pose2D rel = to_human_frame(robot, human);
                state.x = rel.x;
                state.y = rel.y;
                state.theta = rel.theta;
                state.g = perception::gaze_flag(human.theta, human.x, human.y, robot.x,
                                                robot.y);
            } else {
                state.x = j.at("x").get<double>();
                state.y = j.at("y").get<double>();
                state.theta = normalize_angle(j.at("theta").get<double>());
                state.g = j.at("g").get<int>() != 0 ? 1 : 0;
            }
            state.v = j.at("v").get<double>();
            if (!by_id.count(id)) id_order.push_back(id);
            by_id[id].states.push_back(state);
        } catch (const DemoParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw DemoParseError(e.what(), line_no);
        }
    }
    if (by_id.empty()) throw std::runtime_error("demonstrations file is empty: " + path);
    std::vector<Demonstration> out;
    out.reserve(id_order.size());
    for (const auto& id : id_order) out.push_back(std::move(by_id[id]));
    return out;
}

inline void save_demonstrations(const std::vector<Demonstration>& demos,
                                const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write demonstrations file: " + path);
    for (std::size_t d = 0; d < demos.size(); ++d) {
        for (std::size_t t = 0; t < demos[d].states.size(); ++t) {
            const auto& s = demos[d].states[t];
            nlohmann::ordered_json j;
            j["demo_id"] = d;
            j["t"] = t;
            j["x"] = s.x;
            j["y"] = s.y;
            j["theta"] = s.theta;
            j["g"] = s.g;
            j["v"] = s.v;
            out << j.dump() << "\n";
        }
    }
}

struct SyntheticDemoParams {
    int count = 18;
    int gaze = 1;
    double min_start_range = 4.5;
    double max_start_range = 5.8;
    int min_length = 12;
    int max_length = 18;
    double heading_jitter = 0.35;  // radians
    double lateral_drift = 0.5;    // sideways wander amplitude, meters
};

/// Scripted expert approaches in the human frame: varied entry directions,
/// gentle arcs, speed tapering toward the person. Gaze 1 enters from the
/// front half-plane, gaze 0 from behind or the sides.
inline std::vector<Demonstration> make_synthetic_demos(const SyntheticDemoParams& params,
                                                       std::uint64_t seed) {
    std::vector<Demonstration> demos;
    Rng rng(seed);
    for (int d = 0; d < params.count; ++d) {
        Demonstration demo;
        const double range = rng.uniform(params.min_start_range, params.max_start_range);
        // Entry bearing seen from the person: front is 0.
        const double entry = params.gaze != 0
                                 ? rng.uniform(-kPi / 3.0, kPi / 3.0)
                                 : normalize_angle(kPi + rng.uniform(-2.0, 2.0));
        const int steps =
            params.min_length + static_cast<int>(rng.uniform_index(
                                    static_cast<std::uint64_t>(params.max_length -
                                                               params.min_length + 1)));
        const double bend = rng.uniform(-params.lateral_drift, params.lateral_drift);
        for (int t = 0; t < steps; ++t) {
            const double progress = static_cast<double>(t) / (steps - 1);
            const double r = range * (1.0 - progress) + 0.55 * progress;
            const double swing = bend * std::sin(kPi * progress);
            const double angle = entry + swing / std::max(r, 0.5);
            ApproachState s;
            s.x = r * std::cos(angle);
            s.y = r * std::sin(angle);
            // Face roughly toward the person with jitter.
            s.theta = normalize_angle(std::atan2(-s.y, -s.x) +
                                      rng.uniform(-params.heading_jitter,
                                                  params.heading_jitter));
            s.g = params.gaze != 0 ? 1 : 0;
            s.v = 0.65 - 0.5 * progress + rng.uniform(-0.05, 0.05);
            s.v = std::clamp(s.v, 0.15, 0.65);
            demo.states.push_back(s);
        }
        demos.push_back(std::move(demo));
    }
    return demos;
}

}  // namespace socrates::kdmrl
