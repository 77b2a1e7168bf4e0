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
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "socrates/geometry.hpp"

namespace socrates {

/// Robot state relative to the human frame: planar pose, gaze flag, speed.
struct ApproachState {
    double x = 0.0;      // meters, robot x in human frame
    double y = 0.0;      // meters
    double theta = 0.0;  // radians
    int g = 0;           // 1 iff the person is looking at the robot
    double v = 0.0;      // m/s
};

/// Per-dimension bin index into a StateGrid.
struct StateIndex {
    int ix = 0;
    int iy = 0;
    int itheta = 0;
    int iv = 0;
    int ig = 0;

    bool operator==(const StateIndex&) const = default;
};

/// Fixed discretization of the approach state space.
///
/// Defaults: x in {-6, -5.5, ..., 6}, y in {-3, -2.5, ..., 3},
/// theta in {-pi, -3pi/4, ..., 3pi/4}, v in {0.15, 0.4, 0.65}, g in {0, 1}.
/// Inducing points are the even flat indices with x varying fastest — a
/// stride-2 subsample along the x axis that covers exactly half the grid.
class StateGrid {
public:
    StateGrid(std::vector<double> x_bins, std::vector<double> y_bins,
              std::vector<double> theta_bins, std::vector<double> v_bins)
        : x_bins_(std::move(x_bins)),
          y_bins_(std::move(y_bins)),
          theta_bins_(std::move(theta_bins)),
          v_bins_(std::move(v_bins)) {
        require_increasing(x_bins_, "x_bins");
        require_increasing(y_bins_, "y_bins");
        require_increasing(theta_bins_, "theta_bins");
        require_increasing(v_bins_, "v_bins");
    }

    static StateGrid standard() {
        return StateGrid(linspace(-6.0, 6.0, 25), linspace(-3.0, 3.0, 13),
                         linspace(-kPi, 3.0 * kPi / 4.0, 8),
                         {0.15, 0.4, 0.65});
    }

    const std::vector<double>& x_bins() const { return x_bins_; }
    const std::vector<double>& y_bins() const { return y_bins_; }
    const std::vector<double>& theta_bins() const { return theta_bins_; }
    const std::vector<double>& v_bins() const { return v_bins_; }
    static constexpr int g_count() { return 2; }

    std::size_t size() const {
        return x_bins_.size() * y_bins_.size() * theta_bins_.size() *
               v_bins_.size() * static_cast<std::size_t>(g_count());
    }

    std::size_t inducing_count() const { return (size() + 1) / 2; }

    /// Flat index with x varying fastest.
    std::size_t flatten(const StateIndex& s) const {
        return static_cast<std::size_t>(s.ix) +
               x_bins_.size() *
                   (static_cast<std::size_t>(s.iy) +
                    y_bins_.size() *
                        (static_cast<std::size_t>(s.itheta) +
                         theta_bins_.size() *
                             (static_cast<std::size_t>(s.iv) +
                              v_bins_.size() * static_cast<std::size_t>(s.ig))));
    }

    StateIndex unflatten(std::size_t flat) const {
        StateIndex s;
        s.ix = static_cast<int>(flat % x_bins_.size());
        flat /= x_bins_.size();
        s.iy = static_cast<int>(flat % y_bins_.size());
        flat /= y_bins_.size();
        s.itheta = static_cast<int>(flat % theta_bins_.size());
        flat /= theta_bins_.size();
        s.iv = static_cast<int>(flat % v_bins_.size());
        flat /= v_bins_.size();
        s.ig = static_cast<int>(flat);
        return s;
    }

    bool is_inducing(std::size_t flat) const { return flat % 2 == 0; }

    ApproachState state_at(const StateIndex& s) const {
        return ApproachState{x_bins_[s.ix], y_bins_[s.iy], theta_bins_[s.itheta],
                             s.ig, v_bins_[s.iv]};
    }

    ApproachState state_at(std::size_t flat) const { return state_at(unflatten(flat)); }

    /// Nearest-bin discretization. Values outside the bin range clamp to the
    /// extreme bins; theta snaps by angular distance on the circle.
    StateIndex discretize(const ApproachState& s) const {
        StateIndex out;
        out.ix = nearest_linear(x_bins_, s.x);
        out.iy = nearest_linear(y_bins_, s.y);
        out.itheta = nearest_circular(theta_bins_, s.theta);
        out.iv = nearest_linear(v_bins_, s.v);
        out.ig = s.g != 0 ? 1 : 0;
        return out;
    }

    /// Scale used to make kernel distances dimensionless: one unit equals one
    /// bin spacing per dimension.
    struct MetricScale {
        double x = 0.5;
        double y = 0.5;
        double theta = kPi / 4.0;
        double v = 0.25;
    };

    MetricScale metric_scale() const {
        MetricScale m;
        if (x_bins_.size() > 1) m.x = x_bins_[1] - x_bins_[0];
        if (y_bins_.size() > 1) m.y = y_bins_[1] - y_bins_[0];
        if (theta_bins_.size() > 1) m.theta = theta_bins_[1] - theta_bins_[0];
        if (v_bins_.size() > 1) m.v = v_bins_[1] - v_bins_[0];
        return m;
    }

    /// Squared scaled distance between two states; infinite across gaze values
    /// (callers treat kernels as zero there).
    double scaled_sq_distance(const ApproachState& a, const ApproachState& b) const {
        const MetricScale m = metric_scale();
        const double dx = (a.x - b.x) / m.x;
        const double dy = (a.y - b.y) / m.y;
        const double dt = angular_distance(a.theta, b.theta) / m.theta;
        const double dv = (a.v - b.v) / m.v;
        return dx * dx + dy * dy + dt * dt + dv * dv;
    }

    static std::vector<double> linspace(double lo, double hi, int n) {
        std::vector<double> out(static_cast<std::size_t>(n));
        const double step = n > 1 ? (hi - lo) / (n - 1) : 0.0;
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
        return out;
    }

private:
    static void require_increasing(const std::vector<double>& bins, const char* name) {
        if (bins.empty()) throw std::invalid_argument(std::string(name) + ": empty bin list");
        for (std::size_t i = 1; i < bins.size(); ++i) {
            if (!(bins[i] > bins[i - 1])) {
                throw std::invalid_argument(std::string(name) + ": bins not strictly increasing");
            }
        }
    }

    static int nearest_linear(const std::vector<double>& bins, double value) {
        int best = 0;
        double best_d = std::abs(value - bins[0]);
        for (std::size_t i = 1; i < bins.size(); ++i) {
            const double d = std::abs(value - bins[i]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        return best;
    }

    static int nearest_circular(const std::vector<double>& bins, double value) {
        int best = 0;
        double best_d = angular_distance(value, bins[0]);
        for (std::size_t i = 1; i < bins.size(); ++i) {
            const double d = angular_distance(value, bins[i]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        return best;
    }

    std::vector<double> x_bins_;
    std::vector<double> y_bins_;
    std::vector<double> theta_bins_;
    std::vector<double> v_bins_;
};

}  // namespace socrates
