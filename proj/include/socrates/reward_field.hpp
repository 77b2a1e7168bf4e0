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

#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "socrates/state_space.hpp"

namespace socrates {

/// Dense scalar reward over every state of a StateGrid, ordered by flat index.
class RewardField {
public:
    RewardField() = default;

    explicit RewardField(const StateGrid& grid)
        : grid_(grid), values_(grid.size(), 0.0) {}

    RewardField(const StateGrid& grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size()) {
            throw std::invalid_argument("RewardField: value count does not match grid");
        }
    }

    const StateGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double at(std::size_t flat) const { return values_[flat]; }
    double& at(std::size_t flat) { return values_[flat]; }
    double at(const StateIndex& s) const { return values_[grid_.flatten(s)]; }
    double& at(const StateIndex& s) { return values_[grid_.flatten(s)]; }

    /// Value at the nearest grid state to a continuous state.
    double sample(const ApproachState& s) const { return at(grid_.discretize(s)); }

    /// Best value over the speed bins at a fixed (x, y, theta, g); returns the
    /// maximizing bin through `best_iv` when non-null. Ties go to the slowest
    /// bin.
    double max_over_v(StateIndex s, int* best_iv = nullptr) const {
        double best = -std::numeric_limits<double>::infinity();
        int arg = 0;
        for (int iv = 0; iv < static_cast<int>(grid_.v_bins().size()); ++iv) {
            s.iv = iv;
            const double val = at(s);
            if (val > best) {
                best = val;
                arg = iv;
            }
        }
        if (best_iv) *best_iv = arg;
        return best;
    }

    bool same_grid(const RewardField& other) const {
        return grid_.x_bins() == other.grid_.x_bins() &&
               grid_.y_bins() == other.grid_.y_bins() &&
               grid_.theta_bins() == other.grid_.theta_bins() &&
               grid_.v_bins() == other.grid_.v_bins();
    }

    nlohmann::json to_json() const {
        nlohmann::ordered_json j;
        j["grid"] = {{"x_bins", grid_.x_bins()},
                     {"y_bins", grid_.y_bins()},
                     {"theta_bins", grid_.theta_bins()},
                     {"v_bins", grid_.v_bins()},
                     {"g_bins", {0, 1}}};
        j["values"] = values_;
        return j;
    }

    static RewardField from_json(const nlohmann::json& j) {
        const auto& gj = j.at("grid");
        StateGrid grid(gj.at("x_bins").get<std::vector<double>>(),
                       gj.at("y_bins").get<std::vector<double>>(),
                       gj.at("theta_bins").get<std::vector<double>>(),
                       gj.at("v_bins").get<std::vector<double>>());
        return RewardField(grid, j.at("values").get<std::vector<double>>());
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write reward field: " + path);
        out << to_json().dump(2) << "\n";
    }

    static RewardField load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read reward field: " + path);
        nlohmann::json j;
        in >> j;
        return from_json(j);
    }

    /// Writes one x-y slice (fixed theta, v, g) as CSV, rows ordered by y bin.
    void write_csv_slice(const std::string& path, int itheta, int iv, int ig) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write slice: " + path);
        out << "y\\x";
        char buf[64];
        for (const double x : grid_.x_bins()) {
            std::snprintf(buf, sizeof(buf), ",%.3f", x);
            out << buf;
        }
        out << "\n";
        for (int iy = 0; iy < static_cast<int>(grid_.y_bins().size()); ++iy) {
            std::snprintf(buf, sizeof(buf), "%.3f", grid_.y_bins()[static_cast<std::size_t>(iy)]);
            out << buf;
            for (int ix = 0; ix < static_cast<int>(grid_.x_bins().size()); ++ix) {
                std::snprintf(buf, sizeof(buf), ",%.9g",
                              at(StateIndex{ix, iy, itheta, iv, ig}));
                out << buf;
            }
            out << "\n";
        }
    }

private:
    StateGrid grid_ = StateGrid::standard();
    std::vector<double> values_;
};

}  // namespace socrates
