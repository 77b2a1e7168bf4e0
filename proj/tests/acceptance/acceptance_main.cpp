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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line with its measured numbers; the binary exits nonzero if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../support/kdmrl_oracle.hpp"
#include "socrates/demos.hpp"
#include "socrates/distill.hpp"
#include "socrates/kdmrl.hpp"
#include "socrates/perception.hpp"
#include "socrates/planner.hpp"
#include "socrates/prior.hpp"
#include "socrates/rng.hpp"
#include "socrates/search.hpp"
#include "socrates/sim.hpp"
#include "socrates/theory.hpp"

namespace fs = std::filesystem;
using namespace socrates;

namespace {

const std::string kData = SOCRATES_DATA_DIR;
const std::string kCli = SOCRATES_CLI_PATH;

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Closed-form reward coefficients match an independent gradient-ascent
//    maximizer to 1e-6 on a 50-state toy grid; under 5 s.
void criterion_1() {
    Timer timer;
    const StateGrid grid(StateGrid::linspace(-2.0, 2.0, 5), StateGrid::linspace(-2.0, 2.0, 5),
                         {0.0}, {0.4});
    std::vector<kdmrl::Demonstration> demos(3);
    for (int d = 0; d < 3; ++d) {
        for (int t = 0; t < 4; ++t) {
            const double s = 2.0 - 0.5 * t;
            ApproachState st;
            st.g = 1;
            st.v = 0.4;
            if (d == 0) st.x = s, st.y = 0.3;
            if (d == 1) st.x = -s, st.y = -0.2;
            if (d == 2) st.x = 0.2, st.y = s;
            demos[static_cast<std::size_t>(d)].states.push_back(st);
        }
    }
    kdmrl::KdmrlParams params;
    const auto set = kdmrl::flatten_demonstrations(demos, params.delta);
    const auto inducing = kdmrl::inducing_points(grid);
    const auto closed =
        kdmrl::solve_alpha(inducing.states, set.states, set.weights, params, grid);
    const auto oracle = kdmrl::testing::gradient_ascent_alpha(inducing.states, set.states,
                                                              set.weights, params, grid);
    const double gap = (closed - oracle.alpha).lpNorm<Eigen::Infinity>();
    const double elapsed = timer.seconds();
    report(1, "closed-form reward vs gradient-ascent oracle",
           gap < 1e-6 && elapsed < 5.0,
           "inf-norm gap " + fmt(gap) + ", " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 2. Value-gap bound: 10,000 random density pairs on up to 64 states without
//    a single violation; under 10 s.
void criterion_2() {
    Timer timer;
    const auto reportt = theory::run_theorem_trials(10000, 64, 1);
    const double elapsed = timer.seconds();
    report(2, "value-gap bound over 10k random trials",
           reportt.violations == 0 && reportt.trials == 10000 && elapsed < 10.0,
           "violations " + std::to_string(reportt.violations) + ", max ratio " +
               fmt(reportt.max_ratio) + ", " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 3. Median value gap over 50 seeds non-increasing as samples double across
//    {32..1024} (one non-strict step allowed); under 60 s.
void criterion_3() {
    Timer timer;
    const auto medians =
        theory::sample_complexity_trend({32, 64, 128, 256, 512, 1024}, 50, 64, 1);
    int non_strict = 0;
    for (std::size_t i = 1; i < medians.size(); ++i) {
        if (!(medians[i] < medians[i - 1])) ++non_strict;
    }
    std::string series;
    for (const double m : medians) series += fmt(m) + " ";
    const double elapsed = timer.seconds();
    report(3, "sample-complexity trend of the value gap",
           non_strict <= 1 && elapsed < 60.0,
           "medians " + series + "non-strict steps " + std::to_string(non_strict) + ", " +
               fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 4. Keyword-reward hand trace: one sentence, one exactly-known incremented
//    bin before smoothing.
void criterion_4() {
    const StateGrid grid = StateGrid::standard();
    const auto field = distill::estimate_kd_reward({"approach straight slowly"}, 1, grid);
    const StateIndex expected{12, 6, 4, 0, 1};  // x 0.0, y 0.0, theta 0, v 0.15, g 1
    bool exact = true;
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const double want = flat == grid.flatten(expected) ? 1.0 : 0.0;
        if (field.at(flat) != want) exact = false;
    }
    report(4, "keyword accumulation hand trace", exact,
           exact ? "single bin (12,6,4,0,1) = 1.0" : "bin mismatch");
}

// ---------------------------------------------------------------------------
// 5. Search trend: on the shipped 24-episode suite with sensor noise
//    p_fp=0.15 / p_fn=0.1, averaged over 10 suite seeds, prior-guided
//    indirect search wins SPL over no-prior direct search and indirect
//    methods ask for less feedback than direct ones; under 2 min.
void criterion_5() {
    Timer timer;
    const auto table = prior::EmbeddingTable::load(kData + "/embeddings/mini.txt");
    std::vector<std::string> world_files;
    for (const auto& e : fs::directory_iterator(kData + "/worlds")) {
        if (e.path().extension() == ".json") world_files.push_back(e.path().string());
    }
    std::sort(world_files.begin(), world_files.end());

    std::vector<sim::World> worlds;
    for (const auto& f : world_files) worlds.push_back(sim::World::load(f));

    double spl_proposed = 0.0, spl_cow = 0.0, fd_indirect = 0.0, fd_direct = 0.0;
    for (int suite_seed = 0; suite_seed < 10; ++suite_seed) {
        std::map<sim::SearchMethod, sim::Metrics> metrics;
        for (const auto method :
             {sim::SearchMethod::Proposed, sim::SearchMethod::KnowledgePrior,
              sim::SearchMethod::CowIndirect, sim::SearchMethod::Cow}) {
            std::vector<sim::EpisodeResult> results;
            for (std::size_t i = 0; i < worlds.size(); ++i) {
                sim::SearchEpisodeOptions options;
                options.embeddings = &table;
                options.sensor.range = 6.0;
                options.sensor.p_false_positive = 0.15;
                options.sensor.p_false_negative = 0.10;
                results.push_back(sim::run_search_episode(
                    worlds[i], options, method,
                    1000 + static_cast<std::uint64_t>(suite_seed) * 1000 + i));
            }
            metrics[method] = sim::compute_metrics(results);
        }
        spl_proposed += metrics[sim::SearchMethod::Proposed].spl;
        spl_cow += metrics[sim::SearchMethod::Cow].spl;
        fd_indirect += 0.5 * (metrics[sim::SearchMethod::Proposed].mean_fd +
                              metrics[sim::SearchMethod::CowIndirect].mean_fd);
        fd_direct += 0.5 * (metrics[sim::SearchMethod::KnowledgePrior].mean_fd +
                            metrics[sim::SearchMethod::Cow].mean_fd);
    }
    const double spl_margin = (spl_proposed - spl_cow) / 10.0;
    const double fd_margin = (fd_direct - fd_indirect) / 10.0;
    const double elapsed = timer.seconds();
    report(5, "search trend reproduction on the shipped suite",
           spl_margin > 0.0 && fd_margin > 0.0 && elapsed < 120.0,
           "SPL margin " + fmt(spl_margin) + ", FD margin " + fmt(fd_margin) + ", " +
               fmt(elapsed) + " s over 24x4x10 episodes");
}

// ---------------------------------------------------------------------------
// 6. Planner feasibility and optimality floor: 50 random obstacle-free
//    instances end within 0.6 m, stay collision-free, and cost at most 10%
//    over the straight-line optimum under a uniform reward; under 1 min.
void criterion_6() {
    Timer timer;
    const OccupancyGrid grid(64, 40, 0.25);
    const RewardField uniform{StateGrid::standard()};
    planner::PlannerParams params;
    Rng master(2024);
    int instances = 0;
    bool ok = true;
    double worst_ratio = 0.0;
    while (instances < 50) {
        const Pose2D human{master.uniform(9.0, 14.0), master.uniform(2.0, 8.0), 0.0};
        const Pose2D start{master.uniform(1.0, 4.5), master.uniform(1.5, 8.5), 0.0};
        const double d = distance(start, human);
        if (d < params.goal_radius + 2.0) continue;
        planner::PlanRequest request;
        request.start = Pose2D::make(start.x, start.y,
                                     bearing(start.x, start.y, human.x, human.y));
        request.human = human;
        request.gaze = 1;
        request.grid = &grid;
        request.reward = &uniform;
        Rng rng(3000 + static_cast<std::uint64_t>(instances));
        planner::PlanStats stats;
        const auto path = planner::plan_path(request, params, rng, &stats);
        const double oracle = params.zeta * params.w_p * (d - params.goal_radius);
        const double ratio = stats.cost / oracle;
        worst_ratio = std::max(worst_ratio, ratio);
        if (path.empty() || distance(path.back(), human) > params.goal_radius + 1e-9) ok = false;
        for (const auto& p : path) {
            if (!grid.point_free(p.x, p.y)) ok = false;
        }
        for (std::size_t i = 1; i < path.size(); ++i) {
            if (!planner::segment_collision_free(grid, path[i - 1], path[i])) ok = false;
        }
        if (ratio > 1.10) ok = false;
        ++instances;
    }
    const double elapsed = timer.seconds();
    report(6, "planner feasibility and optimality floor", ok && elapsed < 60.0,
           "50 instances, worst cost ratio " + fmt(worst_ratio) + ", " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 7. Blended-reward paths have no more heading variation than paths on the
//    demonstration reward alone (mean over 20 seeds per fixture case).
void criterion_7() {
    Timer timer;
    auto demos = kdmrl::make_synthetic_demos({18, 1}, 7);
    const auto demos0 = kdmrl::make_synthetic_demos({18, 0}, 8);
    demos.insert(demos.end(), demos0.begin(), demos0.end());
    const StateGrid grid = StateGrid::standard();
    kdmrl::KdmrlParams kp;
    const auto lfd = kdmrl::train_reward(demos, kp, grid).field;

    auto kd_raw = distill::estimate_kd_reward(
        distill::read_sentence_lines(kData + "/sentences/approach_gaze1.txt"), 1, grid);
    const auto kd0 = distill::estimate_kd_reward(
        distill::read_sentence_lines(kData + "/sentences/approach_gaze0.txt"), 0, grid);
    for (std::size_t i = 0; i < kd_raw.values().size(); ++i) kd_raw.at(i) += kd0.at(i);
    const auto kd = distill::smooth_reward(kd_raw, 1.0);

    sim::World world;
    world.map = AnnotatedMap(
        {OccupancyGrid(64, 40, 0.25)},
        {Area{"room", 0, {{0.0, 0.0}, {16.0, 0.0}, {16.0, 10.0}, {0.0, 10.0}}}});
    world.target_id = 1;
    planner::PlannerParams params;

    double tv_hybrid = 0.0, tv_lfd = 0.0;
    int n = 0;
    bool all_planned = true;
    for (const double start_y : {3.0, 5.0, 7.0}) {
        for (int gaze_case = 0; gaze_case < 2; ++gaze_case) {
            world.robot_start = Pose2D{2.0, start_y, 0.0};
            world.persons = {sim::WorldPerson{
                1, Pose2D{11.0, 5.0, gaze_case ? kPi : kPi / 2.0}, 0, "t", "c"}};
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const auto h = sim::run_approach_episode(world, sim::ApproachMethod::Hybrid,
                                                         lfd, kd, params, seed);
                const auto l = sim::run_approach_episode(world, sim::ApproachMethod::LfD,
                                                         lfd, kd, params, seed);
                if (!h.result.success || !l.result.success) {
                    all_planned = false;
                    continue;
                }
                tv_hybrid += h.trajectory.heading_variation();
                tv_lfd += l.trajectory.heading_variation();
                ++n;
            }
        }
    }
    const double mean_h = tv_hybrid / n;
    const double mean_l = tv_lfd / n;
    const double elapsed = timer.seconds();
    report(7, "blending smooths demonstration-reward paths",
           all_planned && mean_h <= mean_l,
           "mean heading variation hybrid " + fmt(mean_h) + " vs lfd " + fmt(mean_l) +
               " over " + std::to_string(n) + " plans, " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 8. CLI determinism: every command rerun with identical flags and seed
//    produces byte-identical artifacts.
int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string* detail) {
    for (const auto& entry : fs::directory_iterator(a)) {
        const auto name = entry.path().filename();
        if (!fs::exists(b / name) || read_file(entry.path()) != read_file(b / name)) {
            *detail = "differs: " + name.string();
            return false;
        }
    }
    return true;
}

void criterion_8() {
    Timer timer;
    const auto root = fs::temp_directory_path() / "socrates_acceptance_cli";
    fs::remove_all(root);
    fs::create_directories(root);
    bool ok = true;
    std::string detail = "all artifacts byte-identical";

    auto demos = (root / "demos.jsonl").string();
    auto lfd = (root / "lfd.json").string();
    auto kd = (root / "kd.json").string();

    // gen-demos
    for (int r = 0; r < 2; ++r) {
        run_cli("gen-demos --count 6 --gaze 1 --seed 3 --out " +
                (root / ("demos" + std::to_string(r) + ".jsonl")).string());
    }
    if (read_file(root / "demos0.jsonl") != read_file(root / "demos1.jsonl")) {
        ok = false;
        detail = "gen-demos differs";
    }
    fs::copy_file(root / "demos0.jsonl", demos);

    // train-reward
    for (int r = 0; r < 2; ++r) {
        run_cli("train-reward --demos " + demos + " --grid coarse --out " +
                (root / ("lfd" + std::to_string(r) + ".json")).string());
    }
    if (read_file(root / "lfd0.json") != read_file(root / "lfd1.json")) {
        ok = false;
        detail = "train-reward differs";
    }
    fs::copy_file(root / "lfd0.json", lfd);

    // distill
    for (int r = 0; r < 2; ++r) {
        run_cli("distill --sentences-gaze1 " + kData +
                "/sentences/approach_gaze1.txt --sentences-gaze0 " + kData +
                "/sentences/approach_gaze0.txt --grid coarse --out " +
                (root / ("kd" + std::to_string(r) + ".json")).string());
    }
    if (read_file(root / "kd0.json") != read_file(root / "kd1.json")) {
        ok = false;
        detail = "distill differs";
    }
    fs::copy_file(root / "kd0.json", kd);

    // plan (hybrid and baseline)
    for (const std::string method : {"hybrid", "baseline"}) {
        for (int r = 0; r < 2; ++r) {
            run_cli("plan --world " + kData + "/worlds/lab_w1.json --field-lfd " + lfd +
                    " --field-kd " + kd + " --method " + method +
                    " --seed 4 --samples 600 --out " +
                    (root / (method + std::to_string(r) + ".jsonl")).string() + " --svg " +
                    (root / (method + std::to_string(r) + ".svg")).string());
        }
        if (read_file(root / (method + "0.jsonl")) != read_file(root / (method + "1.jsonl")) ||
            read_file(root / (method + "0.svg")) != read_file(root / (method + "1.svg"))) {
            ok = false;
            detail = "plan " + method + " differs";
        }
    }

    // search (all methods, with noise) + eval + plot
    for (int r = 0; r < 2; ++r) {
        run_cli("search --world " + kData + "/worlds/lab_w5.json --world " + kData +
                "/worlds/office_w5.json --embeddings " + kData +
                "/embeddings/mini.txt --methods all --seed 9 --range 6 --p-fp 0.15 "
                "--p-fn 0.1 --jobs 2 --out " +
                (root / ("search" + std::to_string(r))).string());
    }
    if (!dirs_identical(root / "search0", root / "search1", &detail)) ok = false;

    for (int r = 0; r < 2; ++r) {
        run_cli("eval --results " + (root / "search0" / "results.csv").string() + " --out " +
                (root / ("metrics" + std::to_string(r) + ".json")).string());
        run_cli("eval --theory --trials 2000 --seed 5 --out " +
                (root / ("theory" + std::to_string(r) + ".json")).string());
        run_cli("plot --log " + (root / "search0" / "lab_w5_proposed.events.jsonl").string() +
                " --map " + kData + "/maps/lab.json --out " +
                (root / ("plot" + std::to_string(r) + ".svg")).string());
    }
    if (read_file(root / "metrics0.json") != read_file(root / "metrics1.json")) {
        ok = false;
        detail = "eval differs";
    }
    if (read_file(root / "theory0.json") != read_file(root / "theory1.json")) {
        ok = false;
        detail = "eval --theory differs";
    }
    if (read_file(root / "plot0.svg") != read_file(root / "plot1.svg")) {
        ok = false;
        detail = "plot differs";
    }

    const double elapsed = timer.seconds();
    report(8, "CLI reruns are byte-identical", ok, detail + ", " + fmt(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// 9. Invariant property suites.
void criterion_9() {
    Timer timer;
    bool ok = true;
    std::string detail = "all property suites held";
    const auto table = prior::EmbeddingTable::load(kData + "/embeddings/mini.txt");
    Rng rng(314);

    // occurrence_score bounds and order invariance.
    {
        const std::vector<std::string> words = {"office", "sofa",    "kitchen", "robots",
                                                "desk",   "meeting", "printer", "bedroom",
                                                "the",    "w0042",   "find",    "lounge"};
        for (int trial = 0; trial < 200 && ok; ++trial) {
            prior::SentenceBatch batch;
            const int m = 1 + static_cast<int>(rng.uniform_index(6));
            for (int i = 0; i < m; ++i) {
                std::string s;
                for (std::size_t k = 0; k <= rng.uniform_index(6); ++k) {
                    s += words[rng.uniform_index(words.size())] + " ";
                }
                batch.sentences.push_back(s);
            }
            const std::string& label = words[rng.uniform_index(8)];
            const auto p = prior::occurrence_score(label, batch, table);
            if (p.score < -1.0 - 1e-12 || p.score > 1.0 + 1e-12) {
                ok = false;
                detail = "occurrence_score out of [-1,1]";
            }
            prior::SentenceBatch shuffled = batch;
            for (std::size_t i = shuffled.sentences.size(); i > 1; --i) {
                std::swap(shuffled.sentences[i - 1],
                          shuffled.sentences[rng.uniform_index(i)]);
            }
            const auto q = prior::occurrence_score(label, shuffled, table);
            if (std::abs(p.score - q.score) > 1e-12) {
                ok = false;
                detail = "occurrence_score order-dependent";
            }
        }
    }

    // label_cost monotonicity in prior and distance.
    {
        OccupancyGrid g(20, 10, 0.5);
        AnnotatedMap map({g}, {Area{"far", 0, {{5.6, 0}, {10, 0}, {10, 5}, {5.6, 5}}}});
        const auto* area = map.find_area("far");
        double prev = std::numeric_limits<double>::infinity();
        for (double p = 0.0; p <= 1.0001; p += 0.05) {
            const double c =
                prior::label_cost(Pose2D{0.25, 0.25, 0}, 0, *area, map, p).cost;
            if (c > prev + 1e-12) {
                ok = false;
                detail = "label_cost not monotone in prior";
            }
            prev = c;
        }
        double prev_d = -1.0;
        for (double x = 5.0; x > 0.3; x -= 0.5) {
            const double c =
                prior::label_cost(Pose2D{x, 2.5, 0}, 0, *area, map, 0.5).cost;
            if (prev_d >= 0.0 && c < prev_d - 1e-12) {
                ok = false;
                detail = "label_cost not monotone in distance";
            }
            prev_d = c;
        }
    }

    // should_visit boundary.
    {
        search::VisitHistory history;
        history.record(Waypoint{2.0, 0, 0, 0});
        if (search::should_visit(Waypoint{0, 0, 0, 0}, history, 2.0)) {
            ok = false;
            detail = "should_visit not strict at t_g";
        }
        history = search::VisitHistory{};
        history.record(Waypoint{2.0001, 0, 0, 0});
        if (!search::should_visit(Waypoint{0, 0, 0, 0}, history, 2.0)) {
            ok = false;
            detail = "should_visit rejects beyond t_g";
        }
    }

    // bbox brute-force equivalence on random 16x16 maps.
    for (int trial = 0; trial < 300 && ok; ++trial) {
        perception::ActivationMap m;
        m.threshold = 0.5;
        m.values.assign(16, std::vector<double>(16, 0.0));
        for (auto& row : m.values) {
            for (auto& v : row) v = rng.uniform();
        }
        int min_x = 1000, min_y = 1000, max_x = -1, max_y = -1;
        for (int y = 0; y < 16; ++y) {
            for (int x = 0; x < 16; ++x) {
                if (m.values[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] > 0.5) {
                    min_x = std::min(min_x, x);
                    max_x = std::max(max_x, x);
                    min_y = std::min(min_y, y);
                    max_y = std::max(max_y, y);
                }
            }
        }
        const auto got = perception::bbox_from_activation(m);
        const bool want_some = max_x >= 0;
        if (want_some != got.has_value() ||
            (got && (got->x1 != min_x || got->x2 != max_x || got->y1 != min_y ||
                     got->y2 != max_y))) {
            ok = false;
            detail = "bbox brute-force mismatch";
        }
    }

    // discretize idempotence.
    {
        const StateGrid grid = StateGrid::standard();
        for (int trial = 0; trial < 2000 && ok; ++trial) {
            const std::size_t flat = rng.uniform_index(grid.size());
            const auto idx = grid.unflatten(flat);
            if (!(grid.discretize(grid.state_at(idx)) == idx)) {
                ok = false;
                detail = "discretize not idempotent";
            }
        }
    }

    // blend range with exact endpoints.
    {
        const StateGrid grid(StateGrid::linspace(-2, 2, 5), StateGrid::linspace(-2, 2, 5),
                             {0.0}, {0.4});
        for (int trial = 0; trial < 50 && ok; ++trial) {
            RewardField a(grid), b(grid);
            for (double& v : a.values()) v = rng.uniform(-5.0, 5.0);
            for (double& v : b.values()) v = rng.uniform(-5.0, 5.0);
            const auto blended = planner::blend(a, b, 0.2);
            double lo = 1e9, hi = -1e9;
            for (const double v : blended.values()) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (lo != 0.0 || hi != 1.0) {
                ok = false;
                detail = "blend endpoints not exact";
            }
        }
    }

    // SPL <= SR (and SPF <= SR).
    for (int trial = 0; trial < 300 && ok; ++trial) {
        std::vector<sim::EpisodeResult> results;
        const int n = 1 + static_cast<int>(rng.uniform_index(12));
        for (int i = 0; i < n; ++i) {
            sim::EpisodeResult r;
            r.success = rng.bernoulli(0.5);
            r.shortest_path = rng.uniform(1.0, 10.0);
            r.path_length = r.shortest_path + rng.uniform(0.0, 8.0);
            r.false_detections = static_cast<int>(rng.uniform_index(5));
            results.push_back(r);
        }
        const auto m = sim::compute_metrics(results);
        if (m.spl > m.sr + 1e-12 || m.spf > m.sr + 1e-12) {
            ok = false;
            detail = "SPL/SPF exceeded SR";
        }
    }

    const double elapsed = timer.seconds();
    report(9, "invariant property suites", ok, detail + ", " + fmt(elapsed) + " s");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
