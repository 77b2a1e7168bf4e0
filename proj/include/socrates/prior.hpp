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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socrates/annotated_map.hpp"
#include "socrates/embeddings.hpp"
#include "socrates/geometry.hpp"
#include "socrates/occupancy.hpp"
#include "socrates/sentences.hpp"

namespace socrates::prior {

/// Likelihood score that the target occupies a map label. Raw cosine averages
/// live in [-1, 1]; clamped() maps into [0, 1] for cost use.
struct LabelPrior {
    std::string label;
    double score = 0.0;
    bool out_of_vocabulary = false;

    double clamped() const { return std::clamp(score, 0.0, 1.0); }
};

struct OccurrenceOptions {
    bool clamp_to_unit = true;  // clamp scores into [0, 1] before use in costs
};

/// Average over sentences of the maximum cosine similarity between the label
/// phrase vector and any in-vocabulary sentence token. Sentences with no
/// in-vocabulary token contribute zero; a fully out-of-vocabulary label
/// scores zero with the warning flag set.
inline LabelPrior occurrence_score(const std::string& label, const SentenceBatch& batch,
                                   const EmbeddingTable& table) {
    LabelPrior result;
    result.label = label;
    const auto label_vec = table.phrase_vector(label);
    if (!label_vec) {
        result.out_of_vocabulary = true;
        result.score = 0.0;
        return result;
    }
    if (batch.sentences.empty()) {
        result.score = 0.0;
        return result;
    }
    double total = 0.0;
    for (const auto& sentence : batch.sentences) {
        double best = 0.0;
        bool any = false;
        for (const auto& token : tokenize(sentence)) {
            const auto* vec = table.lookup(token);
            if (!vec) continue;
            const double sim = cosine_similarity(*label_vec, *vec);
            if (!any || sim > best) best = sim;
            any = true;
        }
        total += any ? best : 0.0;
    }
    result.score = total / static_cast<double>(batch.sentences.size());
    return result;
}

/// Scores every map label against one sentence batch.
inline std::vector<LabelPrior> score_labels(const std::vector<std::string>& labels,
                                            const SentenceBatch& batch,
                                            const EmbeddingTable& table) {
    std::vector<LabelPrior> out;
    out.reserve(labels.size());
    for (const auto& label : labels) out.push_back(occurrence_score(label, batch, table));
    return out;
}

/// Cost term of visiting a label plus the entry waypoint it was computed for.
struct LabelCost {
    double cost = std::numeric_limits<double>::infinity();
    std::optional<Waypoint> entry;  // nearest reachable free cell in the area
    double distance = 0.0;          // Euclidean robot-to-entry distance, meters
};

struct LabelCostOptions {
    double prior_weight = 30.0;       // w_e
    double floor_change_cost = 5.0;   // meters-equivalent per floor level
    bool use_prior = true;            // false reduces the cost to the distance term
    bool clamp_prior = true;
};

/// Distance-plus-prior cost of sending the robot into an annotated area.
/// The candidate entry point is the free cell inside the area polygon that is
/// reachable from the robot on the area's floor and closest (Euclidean) to
/// the robot. Unreachable areas cost infinity.
inline LabelCost label_cost(const Pose2D& robot_pose, int robot_floor, const Area& area,
                            const AnnotatedMap& map, double prior_score,
                            const LabelCostOptions& opts = {}) {
    LabelCost out;
    const OccupancyGrid& grid = map.floor(area.floor);

    CellIndex start = grid.cell_of(robot_pose.x, robot_pose.y);
    if (!grid.is_free(start)) {
        const auto snapped = nearest_free_cell(grid, robot_pose.x, robot_pose.y);
        if (!snapped) return out;
        start = *snapped;
    }
    const std::vector<int> reach = bfs_reach(grid, start);

    double best_d = std::numeric_limits<double>::infinity();
    std::optional<CellIndex> best;
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            const CellIndex c{x, y};
            if (grid.at(c) != Cell::Free) continue;
            if (reach[grid.flat(c)] < 0) continue;
            const double cx = grid.center_x(c);
            const double cy = grid.center_y(c);
            if (!area.contains(cx, cy)) continue;
            const double d = std::hypot(cx - robot_pose.x, cy - robot_pose.y);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
    }
    if (!best) return out;  // no reachable free cell: label skipped

    const double cx = grid.center_x(*best);
    const double cy = grid.center_y(*best);
    out.entry = Waypoint{cx, cy, area.floor,
                         normalize_angle(bearing(robot_pose.x, robot_pose.y, cx, cy))};
    out.distance = best_d + opts.floor_change_cost * std::abs(area.floor - robot_floor);
    const double p = opts.clamp_prior ? std::clamp(prior_score, 0.0, 1.0) : prior_score;
    out.cost = out.distance + (opts.use_prior ? opts.prior_weight * (1.0 - p) : 0.0);
    return out;
}

}  // namespace socrates::prior
