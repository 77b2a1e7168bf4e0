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
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "socrates/kdmrl.hpp"
#include "socrates/rng.hpp"

// Numeric validation of the density-matching value-gap bounds: the reward
// estimated from a perturbed density cannot lose more value than three times
// the reward range times the variational distance between the densities.

namespace socrates::theory {

/// d_var(p, q) = (1/2) sum |p - q|.
inline double variational_distance(const std::vector<double>& p,
                                   const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("variational_distance: support mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
    return 0.5 * sum;
}

/// One-sided form over {x : p(x) > q(x)}; equals variational_distance for
/// proper distributions.
inline double variational_distance_one_sided(const std::vector<double>& p,
                                             const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("variational_distance: support mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > q[i]) sum += p[i] - q[i];
    }
    return sum;
}

/// Hellinger distance: d_H^2 = (1/2) sum (sqrt p - sqrt q)^2.
inline double hellinger_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("hellinger_distance: support mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) {
            throw std::invalid_argument("hellinger_distance: negative entries");
        }
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        sum += d * d;
    }
    return std::sqrt(0.5 * sum);
}

/// Uniformly random probability vector (normalized exponentials would bias
/// less, but plain normalization is fine for the probes).
inline std::vector<double> random_distribution(int n, Rng& rng) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& v : p) {
        v = rng.uniform() + 1e-12;
        sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
}

/// Mixture perturbation of a distribution: (1 - eps) p + eps q.
inline std::vector<double> perturb_distribution(const std::vector<double>& p, double eps,
                                                Rng& rng) {
    const auto q = random_distribution(static_cast<int>(p.size()), rng);
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = (1.0 - eps) * p[i] + eps * q[i];
    return out;
}

struct TheoremTrial {
    int n_states = 0;
    double r_min = 0.0;
    double r_max = 1.0;
    double gap = 0.0;
    double bound = 0.0;
    bool violated = false;
};

/// One value-gap trial: rewards are the exact unit-norm maximizers for the
/// true and perturbed densities, mapped by a common affine transform into
/// [r_min, r_max]; the gap must stay under 3 (r_max - r_min) d_var.
inline TheoremTrial run_theorem_trial(int n_states, Rng& rng) {
    TheoremTrial trial;
    trial.n_states = n_states;
    trial.r_min = rng.uniform(-1.0, 0.5);
    trial.r_max = trial.r_min + rng.uniform(0.1, 2.0);

    const auto mu_true = random_distribution(n_states, rng);
    const auto mu_est = perturb_distribution(mu_true, rng.uniform(0.0, 1.0), rng);

    const auto r_true = kdmrl::exact_unit_norm_reward(mu_true);
    const auto r_est = kdmrl::exact_unit_norm_reward(mu_est);

    const double span = trial.r_max - trial.r_min;
    double v_true = 0.0, v_est = 0.0;
    for (int i = 0; i < n_states; ++i) {
        const auto k = static_cast<std::size_t>(i);
        v_true += mu_true[k] * (trial.r_min + span * r_true[k]);
        v_est += mu_true[k] * (trial.r_min + span * r_est[k]);
    }
    trial.gap = std::abs(v_est - v_true);
    trial.bound = 3.0 * span * variational_distance(mu_true, mu_est);
    trial.violated = trial.gap > trial.bound + 1e-12;
    return trial;
}

struct TheoremReport {
    int trials = 0;
    int violations = 0;
    double max_ratio = 0.0;  // max observed gap / bound

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["trials"] = trials;
        j["violations"] = violations;
        j["max_ratio"] = max_ratio;
        return j;
    }
};

/// Batch of value-gap trials over random state counts up to `max_states`.
inline TheoremReport run_theorem_trials(int n_trials, int max_states, std::uint64_t seed) {
    if (max_states > 256) {
        throw std::invalid_argument("run_theorem_trials: keep max_states <= 256");
    }
    TheoremReport report;
    Rng rng(seed);
    for (int t = 0; t < n_trials; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform_index(
                              static_cast<std::uint64_t>(max_states - 1)));
        const auto trial = run_theorem_trial(n, rng);
        ++report.trials;
        if (trial.violated) ++report.violations;
        if (trial.bound > 0.0) {
            report.max_ratio = std::max(report.max_ratio, trial.gap / trial.bound);
        }
    }
    return report;
}

/// Sample-complexity trend fixture: a fixed two-bump density over `n_states`
/// discrete states.
inline std::vector<double> two_bump_density(int n_states) {
    std::vector<double> mu(static_cast<std::size_t>(n_states));
    double sum = 0.0;
    for (int i = 0; i < n_states; ++i) {
        const double x = static_cast<double>(i);
        const double a = (x - 0.25 * n_states) / (0.06 * n_states);
        const double b = (x - 0.7 * n_states) / (0.1 * n_states);
        mu[static_cast<std::size_t>(i)] = std::exp(-0.5 * a * a) + 0.6 * std::exp(-0.5 * b * b);
        sum += mu[static_cast<std::size_t>(i)];
    }
    for (double& v : mu) v /= sum;
    return mu;
}

/// Value gap after estimating the density from n samples with a discrete
/// Gaussian kernel density estimate (bandwidth shrinks as n^(-1/5)).
inline double sample_complexity_gap(const std::vector<double>& mu_true, int n_samples,
                                    Rng& rng) {
    const int n_states = static_cast<int>(mu_true.size());
    // Sample state indices from mu_true.
    std::vector<double> cdf(mu_true.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < mu_true.size(); ++i) {
        acc += mu_true[i];
        cdf[i] = acc;
    }
    std::vector<double> mu_est(mu_true.size(), 0.0);
    const double bandwidth = 2.5 * std::pow(static_cast<double>(n_samples), -0.2) *
                             (0.05 * n_states);
    for (int s = 0; s < n_samples; ++s) {
        const double u = rng.uniform();
        int idx = 0;
        while (idx + 1 < n_states && cdf[static_cast<std::size_t>(idx)] < u) ++idx;
        // Normalized discrete Gaussian kernel centered at the sampled state.
        double norm = 0.0;
        for (int i = 0; i < n_states; ++i) {
            const double d = (i - idx) / bandwidth;
            norm += std::exp(-0.5 * d * d);
        }
        for (int i = 0; i < n_states; ++i) {
            const double d = (i - idx) / bandwidth;
            mu_est[static_cast<std::size_t>(i)] += std::exp(-0.5 * d * d) / norm;
        }
    }
    for (double& v : mu_est) v /= n_samples;

    const auto r_true = kdmrl::exact_unit_norm_reward(mu_true);
    const auto r_est = kdmrl::exact_unit_norm_reward(mu_est);
    double v_true = 0.0, v_est = 0.0;
    for (std::size_t i = 0; i < mu_true.size(); ++i) {
        v_true += mu_true[i] * r_true[i];
        v_est += mu_true[i] * r_est[i];
    }
    return std::abs(v_true - v_est);
}

/// Median value gap per sample count over a batch of seeds.
inline std::vector<double> sample_complexity_trend(const std::vector<int>& sample_counts,
                                                   int n_seeds, int n_states,
                                                   std::uint64_t seed) {
    const auto mu = two_bump_density(n_states);
    std::vector<double> medians;
    for (const int n : sample_counts) {
        std::vector<double> gaps;
        for (int s = 0; s < n_seeds; ++s) {
            Rng rng = Rng::split(seed, static_cast<std::uint64_t>(n) * 1000 +
                                           static_cast<std::uint64_t>(s));
            gaps.push_back(sample_complexity_gap(mu, n, rng));
        }
        std::sort(gaps.begin(), gaps.end());
        const std::size_t mid = gaps.size() / 2;
        medians.push_back(gaps.size() % 2 == 1
                              ? gaps[mid]
                              : 0.5 * (gaps[mid - 1] + gaps[mid]));
    }
    return medians;
}

}  // namespace socrates::theory
