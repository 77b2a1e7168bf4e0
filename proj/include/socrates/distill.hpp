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

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "socrates/embeddings.hpp"
#include "socrates/reward_field.hpp"
#include "socrates/state_space.hpp"

// Text-to-reward distillation: trajectory descriptions from a language
// source are reduced to a controlled keyword vocabulary, expanded into
// short path segments in the human frame, and accumulated into a reward
// field that is then smoothed with an RBF kernel.

namespace socrates::distill {

/// Fills the approach-prompt template for one caption and gaze condition.
/// g = 0 inserts "not".
inline std::string build_prompt(const std::string& caption, int g) {
    return caption + " and the robot is " + (g != 0 ? "" : "not ") +
           "looking at a person. What is the trajectory for the robots to gently approach "
           "a person?";
}

inline const std::vector<std::string>& position_vocabulary() {
    static const std::vector<std::string> words = {"straight", "45",    "side", "behind",
                                                   "curve",    "curved", "front"};
    return words;
}

struct KeywordSeq {
    std::vector<std::string> words;  // position keywords, in order of appearance
    bool slow = false;               // sentence mentioned "slow"/"slowly"
};

/// Left-to-right scan over lowercase tokens. "not" drops the next position
/// keyword; "slow"/"slowly" set the velocity flag.
inline KeywordSeq extract_keywords(const std::string& sentence) {
    KeywordSeq seq;
    bool negate_next = false;
    for (const auto& token : prior::tokenize(sentence)) {
        if (token == "not") {
            negate_next = true;
            continue;
        }
        if (token == "slow" || token == "slowly") {
            seq.slow = true;
            continue;
        }
        for (const auto& word : position_vocabulary()) {
            if (token == word) {
                if (negate_next) {
                    negate_next = false;
                } else {
                    seq.words.push_back(word);
                }
                break;
            }
        }
    }
    return seq;
}

/// Where the trajectory writer currently stands in the human frame.
struct Cursor {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // bearing of the last written segment

    int sign_x() const { return x < 0.0 ? -1 : 1; }
};

/// One candidate partial path: offsets from the cursor, in order.
using Segment = std::vector<std::array<double, 2>>;

struct SegmentSet {
    std::vector<Segment> candidates;
};

/// Expands one position keyword at the cursor into candidate segments of
/// step length `ell`. Mirror-pair candidates are ordered by the sign of the
/// cursor's x coordinate.
inline SegmentSet word_to_segments(const std::string& word, const Cursor& cursor, double ell) {
    SegmentSet set;
    const double s = static_cast<double>(cursor.sign_x());
    const double toward = -s;  // unit x step toward the person

    if (word == "straight") {
        set.candidates.push_back(
            {{ell * std::cos(cursor.theta), ell * std::sin(cursor.theta)}});
    } else if (word == "45") {
        const double c = ell * std::cos(kPi / 4.0);
        const double d = ell * std::sin(kPi / 4.0);
        set.candidates.push_back({{c * toward, d * s}});
        set.candidates.push_back({{c * toward, -d * s}});
    } else if (word == "side") {
        set.candidates.push_back({{0.0, ell}});
        set.candidates.push_back({{0.0, -ell}});
    } else if (word == "curve" || word == "curved") {
        // Two mirror semicircular arcs of radius ell, sampled every pi/8,
        // starting toward the person and bending sideways.
        for (const double mirror : {s, -s}) {
            Segment arc;
            for (int j = 1; j <= 8; ++j) {
                const double phi = kPi * j / 8.0;
                arc.push_back({ell * std::sin(phi) * toward,
                               (ell - ell * std::cos(phi)) * mirror});
            }
            set.candidates.push_back(std::move(arc));
        }
    } else if (word == "front") {
        set.candidates.push_back({{ell * toward, 0.0}});
    } else if (word == "behind") {
        set.candidates.push_back({{ell * s, 0.0}});
    } else {
        throw std::invalid_argument("word_to_segments: unknown word '" + word + "'");
    }
    return set;
}

struct DistillParams {
    double step = 0.2;        // ell
    double slow_speed = 0.15;
    double fast_speed = 0.6;  // snaps to the nearest grid speed bin
    double sigma_r = 1.0;     // smoothing kernel width
    // Sequential mode advances one cursor through every candidate in turn.
    // Branching mode forks an independent cursor per candidate instead.
    bool branching = false;
    int max_branches = 64;
};

namespace detail {

inline void write_segment(RewardField& field, const StateGrid& grid, const Cursor& cursor,
                          const Segment& segment, int g, double v) {
    const auto& last = segment.back();
    const double theta = std::atan2(last[1], last[0]);
    for (const auto& offset : segment) {
        ApproachState state;
        state.x = cursor.x + offset[0];
        state.y = cursor.y + offset[1];
        state.theta = theta;
        state.g = g;
        state.v = v;
        field.at(grid.discretize(state)) += 1.0;
    }
}

inline Cursor advanced(const Cursor& cursor, const Segment& segment) {
    const auto& last = segment.back();
    return Cursor{cursor.x + last[0], cursor.y + last[1], std::atan2(last[1], last[0])};
}

}  // namespace detail

/// Accumulates keyword trajectories into the g-slice of a reward field.
/// Per sentence: keywords run in reverse order from a cursor at the origin;
/// every candidate segment writes one count per point at the discretized
/// (position, segment bearing, g, speed) bin and then advances the cursor by
/// its last offset. The field is normalized by the sentence count.
inline RewardField estimate_kd_reward(const std::vector<std::string>& sentences, int g,
                                      const StateGrid& grid,
                                      const DistillParams& params = {}) {
    RewardField field(grid);
    if (sentences.empty()) return field;

    for (const auto& sentence : sentences) {
        const KeywordSeq seq = extract_keywords(sentence);
        const double v = seq.slow ? params.slow_speed : params.fast_speed;
        std::vector<Cursor> cursors = {Cursor{}};  // origin: the person
        for (auto it = seq.words.rbegin(); it != seq.words.rend(); ++it) {
            if (params.branching) {
                std::vector<Cursor> next;
                for (const Cursor& cursor : cursors) {
                    const SegmentSet segments = word_to_segments(*it, cursor, params.step);
                    for (const Segment& segment : segments.candidates) {
                        detail::write_segment(field, grid, cursor, segment, g, v);
                        if (static_cast<int>(next.size()) < params.max_branches) {
                            next.push_back(detail::advanced(cursor, segment));
                        }
                    }
                }
                cursors = std::move(next);
            } else {
                Cursor& cursor = cursors.front();
                const SegmentSet segments = word_to_segments(*it, cursor, params.step);
                for (const Segment& segment : segments.candidates) {
                    detail::write_segment(field, grid, cursor, segment, g, v);
                    cursor = detail::advanced(cursor, segment);
                }
            }
        }
    }
    for (double& v : field.values()) v /= static_cast<double>(sentences.size());
    return field;
}

/// Dense RBF smoothing over the grid: R'(x) = sum_y k_r(x, y) R(y). The
/// kernel factorizes across dimensions, so the convolution runs as one pass
/// per axis; gaze slices never mix.
inline RewardField smooth_reward(const RewardField& input, double sigma_r) {
    if (!(sigma_r > 0.0)) throw std::invalid_argument("smooth_reward: sigma_r must be > 0");
    const StateGrid& grid = input.grid();
    const auto scale = grid.metric_scale();

    auto axis_kernel = [&](const std::vector<double>& bins, double unit, bool circular) {
        const std::size_t n = bins.size();
        std::vector<std::vector<double>> k(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double d = circular ? angular_distance(bins[i], bins[j]) / unit
                                          : (bins[i] - bins[j]) / unit;
                k[i][j] = std::exp(-d * d / (2.0 * sigma_r * sigma_r));
            }
        }
        return k;
    };

    const auto kx = axis_kernel(grid.x_bins(), scale.x, false);
    const auto ky = axis_kernel(grid.y_bins(), scale.y, false);
    const auto kt = axis_kernel(grid.theta_bins(), scale.theta, true);
    const auto kv = axis_kernel(grid.v_bins(), scale.v, false);

    RewardField out = input;
    auto convolve_axis = [&](auto bin_count, auto index_of, auto with_index,
                             const std::vector<std::vector<double>>& k) {
        std::vector<double> next(out.values().size(), 0.0);
        const std::size_t n = out.values().size();
        for (std::size_t flat = 0; flat < n; ++flat) {
            StateIndex idx = grid.unflatten(flat);
            const int mine = index_of(idx);
            double sum = 0.0;
            for (int other = 0; other < bin_count; ++other) {
                sum += k[static_cast<std::size_t>(mine)][static_cast<std::size_t>(other)] *
                       out.at(with_index(idx, other));
            }
            next[flat] = sum;
        }
        out.values() = std::move(next);
    };

    convolve_axis(
        static_cast<int>(grid.x_bins().size()), [](const StateIndex& s) { return s.ix; },
        [&](StateIndex s, int i) {
            s.ix = i;
            return grid.flatten(s);
        },
        kx);
    convolve_axis(
        static_cast<int>(grid.y_bins().size()), [](const StateIndex& s) { return s.iy; },
        [&](StateIndex s, int i) {
            s.iy = i;
            return grid.flatten(s);
        },
        ky);
    convolve_axis(
        static_cast<int>(grid.theta_bins().size()),
        [](const StateIndex& s) { return s.itheta; },
        [&](StateIndex s, int i) {
            s.itheta = i;
            return grid.flatten(s);
        },
        kt);
    convolve_axis(
        static_cast<int>(grid.v_bins().size()), [](const StateIndex& s) { return s.iv; },
        [&](StateIndex s, int i) {
            s.iv = i;
            return grid.flatten(s);
        },
        kv);
    return out;
}

/// Reads a sentence fixture (one sentence per line, blank lines skipped).
inline std::vector<std::string> read_sentence_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sentence file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace socrates::distill
