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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "socrates/geometry.hpp"

namespace socrates {

enum class TrajectoryFrame { World, Human };

struct TrajectorySample {
    double t = 0.0;  // seconds
    Pose2D pose;
    double v = 0.0;  // m/s
};

/// Timed pose sequence. Timestamps are strictly increasing and the sequence
/// is non-empty once constructed through append().
struct Trajectory {
    std::vector<TrajectorySample> samples;
    TrajectoryFrame frame = TrajectoryFrame::World;

    void append(double t, const Pose2D& pose, double v) {
        if (!samples.empty() && !(t > samples.back().t)) {
            throw std::invalid_argument("Trajectory: timestamps must be strictly increasing");
        }
        samples.push_back(TrajectorySample{t, pose, v});
    }

    double path_length() const {
        double len = 0.0;
        for (std::size_t i = 1; i < samples.size(); ++i) {
            len += distance(samples[i - 1].pose, samples[i].pose);
        }
        return len;
    }

    /// Sum of absolute wrapped heading changes along the sequence.
    double heading_variation() const {
        double tv = 0.0;
        for (std::size_t i = 1; i < samples.size(); ++i) {
            tv += angular_distance(samples[i].pose.theta, samples[i - 1].pose.theta);
        }
        return tv;
    }

    void write_jsonl(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write trajectory: " + path);
        for (const auto& s : samples) {
            nlohmann::ordered_json j;
            j["t"] = s.t;
            j["x"] = s.pose.x;
            j["y"] = s.pose.y;
            j["theta"] = s.pose.theta;
            j["v"] = s.v;
            out << j.dump() << "\n";
        }
    }

    static Trajectory read_jsonl(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read trajectory: " + path);
        Trajectory tr;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto j = nlohmann::json::parse(line);
            tr.append(j.at("t").get<double>(),
                      Pose2D::make(j.at("x").get<double>(), j.at("y").get<double>(),
                                   j.at("theta").get<double>()),
                      j.at("v").get<double>());
        }
        return tr;
    }
};

}  // namespace socrates
