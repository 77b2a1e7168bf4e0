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
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "socrates/reward_field.hpp"
#include "socrates/state_space.hpp"

// Density-matching reward learning over the discretized approach state
// space. A demonstration's state density is estimated with a leveraged
// kernel density estimate; the reward is a kernel expansion on inducing
// points whose coefficients maximize the regularized density/reward inner
// product in closed form.

namespace socrates::kdmrl {

struct KdmrlParams {
    double lambda = 0.01;   // smoothness (Hilbert-norm weight)
    double beta = 0.2;      // coefficient ridge
    double delta = 0.8;     // leverage decay, in [0, 1]
    double z = 200.0;       // density normalization constant
    double sigma_k = 1.0;   // reward kernel width
    double sigma_mu = 0.5;  // density kernel width

    void validate() const {
        if (!(lambda > 0.0)) throw std::invalid_argument("kdmrl: lambda must be > 0");
        if (beta < 0.0) throw std::invalid_argument("kdmrl: beta must be >= 0");
        if (!(z > 0.0)) throw std::invalid_argument("kdmrl: Z must be > 0");
        if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("kdmrl: delta in [0,1]");
    }
};

/// One expert trajectory in the human frame.
struct Demonstration {
    std::vector<ApproachState> states;

    int length() const { return static_cast<int>(states.size()); }
};

/// Leverage values gamma_t = delta^(T-t) for t = 1..T; the last state always
/// gets weight one.
inline std::vector<double> leverage(int T, double delta) {
    if (T < 1) throw std::invalid_argument("leverage: T must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t) {
        out[static_cast<std::size_t>(t - 1)] = std::pow(delta, T - t);
    }
    return out;
}

inline double leverage_weight(double gamma) {
    return std::cos(0.5 * kPi * (1.0 - gamma));
}

/// All demonstration states concatenated, each with its trajectory's
/// cos(pi/2 (1 - gamma)) weight.
struct TrainingSet {
    std::vector<ApproachState> states;
    std::vector<double> weights;
};

inline TrainingSet flatten_demonstrations(const std::vector<Demonstration>& demos,
                                          double delta) {
    TrainingSet set;
    for (const auto& demo : demos) {
        if (demo.states.empty()) {
            throw std::invalid_argument("kdmrl: demonstration with no states");
        }
        const auto gammas = leverage(demo.length(), delta);
        for (std::size_t t = 0; t < demo.states.size(); ++t) {
            set.states.push_back(demo.states[t]);
            set.weights.push_back(leverage_weight(gammas[t]));
        }
    }
    return set;
}

/// RBF kernel on the grid-scaled metric. Gaze acts as a hard factor: states
/// with different g never interact.
inline double kernel(const StateGrid& grid, const ApproachState& a, const ApproachState& b,
                     double sigma) {
    if (a.g != b.g) return 0.0;
    return std::exp(-grid.scaled_sq_distance(a, b) / (2.0 * sigma * sigma));
}

/// Per-data-point normalizers making the density kernel sum to one over the
/// grid states ("a kernel function whose integral is one", discretized).
inline std::vector<double> density_kernel_normalizers(const StateGrid& grid,
                                                      const std::vector<ApproachState>& data,
                                                      double sigma_mu) {
    std::vector<double> norms(data.size(), 0.0);
    const std::size_t n = grid.size();
    for (std::size_t j = 0; j < data.size(); ++j) {
        double sum = 0.0;
        for (std::size_t flat = 0; flat < n; ++flat) {
            sum += kernel(grid, grid.state_at(flat), data[j], sigma_mu);
        }
        if (!(sum > 0.0)) {
            throw std::runtime_error("kdmrl: density kernel normalizer vanished for data point " +
                                     std::to_string(j));
        }
        norms[j] = sum;
    }
    return norms;
}

/// Weighted kernel density estimate evaluated at every grid state, in flat
/// index order.
inline std::vector<double> estimate_density_weighted(const std::vector<ApproachState>& data,
                                                     const std::vector<double>& weights,
                                                     const KdmrlParams& params,
                                                     const StateGrid& grid) {
    params.validate();
    if (data.size() != weights.size()) {
        throw std::invalid_argument("kdmrl: data/weight size mismatch");
    }
    if (data.empty()) throw std::invalid_argument("kdmrl: no data states");
    const auto norms = density_kernel_normalizers(grid, data, params.sigma_mu);
    std::vector<double> mu(grid.size(), 0.0);
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const ApproachState x = grid.state_at(flat);
        double sum = 0.0;
        for (std::size_t j = 0; j < data.size(); ++j) {
            sum += weights[j] * kernel(grid, x, data[j], params.sigma_mu) / norms[j];
        }
        mu[flat] = sum / params.z;
    }
    return mu;
}

/// Leveraged kernel density estimate from whole demonstrations.
inline std::vector<double> estimate_density(const std::vector<Demonstration>& demos,
                                            const KdmrlParams& params, const StateGrid& grid) {
    const TrainingSet set = flatten_demonstrations(demos, params.delta);
    return estimate_density_weighted(set.states, set.weights, params, grid);
}

/// The inducing subset of the grid, ordered by flat index.
struct InducingSet {
    std::vector<ApproachState> states;
    std::vector<std::size_t> flat_indices;
};

inline InducingSet inducing_points(const StateGrid& grid) {
    InducingSet set;
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        if (!grid.is_inducing(flat)) continue;
        set.states.push_back(grid.state_at(flat));
        set.flat_indices.push_back(flat);
    }
    return set;
}

namespace detail {

// The gaze dimension splits every kernel matrix into two independent
// blocks, so the linear algebra runs per block. Indices are kept in input
// order within each block.
struct GazeBlocks {
    std::vector<std::size_t> idx[2];

    static GazeBlocks of(const std::vector<ApproachState>& states) {
        GazeBlocks b;
        for (std::size_t i = 0; i < states.size(); ++i) {
            b.idx[states[i].g != 0 ? 1 : 0].push_back(i);
        }
        return b;
    }
};

inline void check_finite(double v, const char* matrix, std::size_t i, std::size_t j) {
    if (!std::isfinite(v)) {
        throw std::runtime_error(std::string("kdmrl: non-finite kernel entry ") + matrix + "(" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

}  // namespace detail

/// Closed-form coefficients maximizing the regularized objective
///   V(alpha) = (1/Z) alpha' K_U K_D g - (lambda/2) alpha' K_U alpha
///              - (beta/2) alpha' alpha,
/// i.e. alpha = (1/Z) (lambda K_U + beta I)^{-1} K_U K_D g, solved with a
/// Cholesky factorization (generic LDLT fallback).
inline Eigen::VectorXd solve_alpha(const std::vector<ApproachState>& inducing,
                                   const std::vector<ApproachState>& data,
                                   const std::vector<double>& data_weights,
                                   const KdmrlParams& params, const StateGrid& grid) {
    params.validate();
    if (data.size() != data_weights.size()) {
        throw std::invalid_argument("kdmrl: data/weight size mismatch");
    }
    const auto norms = density_kernel_normalizers(grid, data, params.sigma_mu);
    const auto ublocks = detail::GazeBlocks::of(inducing);
    const auto dblocks = detail::GazeBlocks::of(data);

    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(inducing.size()));
    for (int gbit = 0; gbit < 2; ++gbit) {
        const auto& ui = ublocks.idx[gbit];
        const auto& di = dblocks.idx[gbit];
        if (ui.empty()) continue;
        const Eigen::Index nu = static_cast<Eigen::Index>(ui.size());

        Eigen::MatrixXd ku(nu, nu);
        for (Eigen::Index i = 0; i < nu; ++i) {
            for (Eigen::Index j = i; j < nu; ++j) {
                const double v = kernel(grid, inducing[ui[static_cast<std::size_t>(i)]],
                                        inducing[ui[static_cast<std::size_t>(j)]],
                                        params.sigma_k);
                detail::check_finite(v, "K_U", ui[static_cast<std::size_t>(i)],
                                     ui[static_cast<std::size_t>(j)]);
                ku(i, j) = v;
                ku(j, i) = v;
            }
        }

        // kd_g = K_D * g restricted to this block.
        Eigen::VectorXd kd_g = Eigen::VectorXd::Zero(nu);
        for (Eigen::Index i = 0; i < nu; ++i) {
            double sum = 0.0;
            for (const std::size_t j : di) {
                const double v = kernel(grid, inducing[ui[static_cast<std::size_t>(i)]],
                                        data[j], params.sigma_mu) /
                                 norms[j];
                detail::check_finite(v, "K_D", ui[static_cast<std::size_t>(i)], j);
                sum += v * data_weights[j];
            }
            kd_g(i) = sum;
        }

        const Eigen::VectorXd rhs = ku * kd_g / params.z;
        Eigen::MatrixXd system = params.lambda * ku;
        system.diagonal().array() += params.beta;

        Eigen::LLT<Eigen::MatrixXd> llt(system);
        Eigen::VectorXd block_alpha;
        if (llt.info() == Eigen::Success) {
            block_alpha = llt.solve(rhs);
        } else {
            block_alpha = system.ldlt().solve(rhs);
        }
        if (!block_alpha.allFinite()) {
            throw std::runtime_error("kdmrl: linear solve produced non-finite coefficients");
        }
        for (Eigen::Index i = 0; i < nu; ++i) {
            alpha(static_cast<Eigen::Index>(ui[static_cast<std::size_t>(i)])) = block_alpha(i);
        }
    }
    return alpha;
}

/// Evaluates the regularized objective at arbitrary coefficients.
inline double objective(const Eigen::VectorXd& alpha,
                        const std::vector<ApproachState>& inducing,
                        const std::vector<ApproachState>& data,
                        const std::vector<double>& data_weights, const KdmrlParams& params,
                        const StateGrid& grid) {
    params.validate();
    const auto norms = density_kernel_normalizers(grid, data, params.sigma_mu);
    const std::size_t nu = inducing.size();

    // kdg = K_D * g, one pass over the data per inducing point.
    std::vector<double> kdg(nu, 0.0);
    for (std::size_t j = 0; j < nu; ++j) {
        double sum = 0.0;
        for (std::size_t d = 0; d < data.size(); ++d) {
            sum += kernel(grid, inducing[j], data[d], params.sigma_mu) / norms[d] *
                   data_weights[d];
        }
        kdg[j] = sum;
    }

    double linear = 0.0;
    double hilbert = 0.0;
    for (std::size_t i = 0; i < nu; ++i) {
        double k_row_dot = 0.0;  // (K_U kdg)_i
        double ku_alpha = 0.0;   // (K_U alpha)_i
        for (std::size_t j = 0; j < nu; ++j) {
            const double kuij = kernel(grid, inducing[i], inducing[j], params.sigma_k);
            ku_alpha += kuij * alpha(static_cast<Eigen::Index>(j));
            k_row_dot += kuij * kdg[j];
        }
        linear += alpha(static_cast<Eigen::Index>(i)) * k_row_dot;
        hilbert += alpha(static_cast<Eigen::Index>(i)) * ku_alpha;
    }
    return linear / params.z - 0.5 * params.lambda * hilbert -
           0.5 * params.beta * alpha.squaredNorm();
}

/// Kernel expansion value at one state; summation runs in inducing-point
/// order so results are reproducible bit for bit.
inline double reward_at(const ApproachState& x, const Eigen::VectorXd& alpha,
                        const std::vector<ApproachState>& inducing, double sigma_k,
                        const StateGrid& grid) {
    double sum = 0.0;
    for (std::size_t i = 0; i < inducing.size(); ++i) {
        sum += alpha(static_cast<Eigen::Index>(i)) * kernel(grid, x, inducing[i], sigma_k);
    }
    return sum;
}

/// Dense reward field over the whole grid from learned coefficients.
inline RewardField materialize_reward(const Eigen::VectorXd& alpha,
                                      const std::vector<ApproachState>& inducing,
                                      double sigma_k, const StateGrid& grid) {
    RewardField field(grid);
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        field.at(flat) = reward_at(grid.state_at(flat), alpha, inducing, sigma_k, grid);
    }
    return field;
}

struct TrainResult {
    RewardField field;
    Eigen::VectorXd alpha;
    double objective_value = 0.0;
};

/// End-to-end learning-from-demonstration: leverage-weighted data, closed
/// form coefficients on the grid's inducing points, dense field.
inline TrainResult train_reward(const std::vector<Demonstration>& demos,
                                const KdmrlParams& params, const StateGrid& grid,
                                bool compute_objective = false) {
    if (demos.empty()) throw std::invalid_argument("kdmrl: no demonstrations");
    const TrainingSet set = flatten_demonstrations(demos, params.delta);
    const InducingSet inducing = inducing_points(grid);
    TrainResult result;
    result.alpha = solve_alpha(inducing.states, set.states, set.weights, params, grid);
    result.field = materialize_reward(result.alpha, inducing.states, params.sigma_k, grid);
    if (compute_objective) {
        result.objective_value =
            objective(result.alpha, inducing.states, set.states, set.weights, params, grid);
    }
    return result;
}

/// Cauchy-Schwarz maximizer of <mu, R> subject to ||R||_2 <= 1: mu / ||mu||.
/// Oracle for the theoretical bound checks.
inline std::vector<double> exact_unit_norm_reward(const std::vector<double>& mu) {
    double norm_sq = 0.0;
    for (const double v : mu) norm_sq += v * v;
    if (!(norm_sq > 0.0)) {
        throw std::invalid_argument("exact_unit_norm_reward: mu must be nonzero");
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    std::vector<double> out(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) out[i] = mu[i] * inv;
    return out;
}

}  // namespace socrates::kdmrl
