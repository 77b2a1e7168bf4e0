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

// Command-line surface: run search episode suites, train rewards from
// demonstrations, distill rewards from text, plan approaches, evaluate
// result files, and plot logs. Every command is deterministic given --seed;
// per-episode seeds derive as seed + episode index.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "socrates/demos.hpp"
#include "socrates/distill.hpp"
#include "socrates/http_sentences.hpp"
#include "socrates/kdmrl.hpp"
#include "socrates/planner.hpp"
#include "socrates/prior.hpp"
#include "socrates/sim.hpp"
#include "socrates/svg.hpp"
#include "socrates/theory.hpp"

namespace fs = std::filesystem;
using namespace socrates;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEpisodeFailures = 1;
constexpr int kExitConfigError = 2;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

StateGrid grid_by_name(const std::string& name) {
    if (name == "standard") return StateGrid::standard();
    if (name == "coarse") {
        return StateGrid(StateGrid::linspace(-6.0, 6.0, 13),
                         StateGrid::linspace(-3.0, 3.0, 7),
                         StateGrid::linspace(-kPi, 3.0 * kPi / 4.0, 8), {0.15, 0.4, 0.65});
    }
    throw CLI::ValidationError("--grid", "unknown grid preset: " + name);
}

std::vector<std::string> collect_world_files(const std::vector<std::string>& args) {
    std::vector<std::string> files;
    for (const auto& arg : args) {
        if (fs::is_directory(arg)) {
            std::vector<std::string> dir_files;
            for (const auto& e : fs::directory_iterator(arg)) {
                if (e.path().extension() == ".json") dir_files.push_back(e.path().string());
            }
            std::sort(dir_files.begin(), dir_files.end());
            files.insert(files.end(), dir_files.begin(), dir_files.end());
        } else {
            files.push_back(arg);
        }
    }
    if (files.empty()) throw std::runtime_error("no world files given");
    for (const auto& f : files) {
        if (!fs::exists(f)) throw std::runtime_error("world file not found: " + f);
    }
    return files;
}

void plot_search_episode(const sim::World& world, const sim::EpisodeResult& result,
                         const std::string& out_path) {
    const OccupancyGrid& grid = world.map.floor(world.robot_floor);
    const double w = grid.width() * grid.resolution();
    const double h = grid.height() * grid.resolution();
    SvgWriter svg(w, h);
    svg.draw_grid(grid);

    // The polyline list in the result is the concatenated grid route; replay
    // move_to events to split it into one polyline per waypoint segment.
    std::size_t cursor = 0;
    std::vector<std::pair<double, double>> points;
    points.emplace_back(result.polyline.front().x, result.polyline.front().y);
    for (const auto& ev : result.events) {
        if (ev.kind != "move_to") continue;
        const double tx = ev.payload.at("x").get<double>();
        const double ty = ev.payload.at("y").get<double>();
        std::vector<std::pair<double, double>> segment;
        segment.emplace_back(points.back().first, points.back().second);
        while (cursor + 1 < result.polyline.size()) {
            ++cursor;
            segment.emplace_back(result.polyline[cursor].x, result.polyline[cursor].y);
            if (std::abs(result.polyline[cursor].x - tx) < 1e-9 &&
                std::abs(result.polyline[cursor].y - ty) < 1e-9) {
                break;
            }
        }
        svg.polyline(segment, "#1f77b4");
        points.emplace_back(tx, ty);
    }
    for (const auto& ev : result.events) {
        if (ev.kind == "ask_feedback") {
            const bool positive = ev.payload.at("answer").get<bool>();
            svg.line(ev.pose.x, ev.pose.y, ev.payload.at("px").get<double>(),
                     ev.payload.at("py").get<double>(), positive ? "blue" : "red", 2.0);
        }
    }
    for (const auto& p : world.persons) {
        svg.circle(p.pose.x, p.pose.y, 0.22, p.id == world.target_id ? "#2ca02c" : "#ff7f0e");
    }
    svg.circle(world.robot_start.x, world.robot_start.y, 0.18, "#9467bd");
    svg.save(out_path);
}

void plot_trajectory(const sim::World& world, const Trajectory& traj,
                     const std::string& out_path) {
    const OccupancyGrid& grid = world.map.floor(world.robot_floor);
    SvgWriter svg(grid.width() * grid.resolution(), grid.height() * grid.resolution());
    svg.draw_grid(grid);
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : traj.samples) pts.emplace_back(s.pose.x, s.pose.y);
    svg.polyline(pts, "#1f77b4");
    const auto& person = world.target();
    svg.circle(person.pose.x, person.pose.y, 0.22, "#2ca02c");
    svg.circle(person.pose.x, person.pose.y, 0.6, "none", "#2ca02c");
    svg.save(out_path);
}

struct SearchArgs {
    std::vector<std::string> worlds;
    std::string embeddings_path;
    std::string sentences_override;
    std::string source = "replay";
    std::string llm_url;
    std::vector<std::string> methods = {"proposed"};
    std::string preset = "sim";
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out_dir = "out";
    std::string format = "csv";
    double p_fp = 0.0;
    double p_fn = 0.0;
    double range = 8.0;
    double fov_deg = 120.0;
    double max_path = -1.0;
    int max_fd = -1;
    double prior_weight = 30.0;
    double standoff = 5.0;
    double visit_threshold = 2.0;
    bool no_svg = false;
};

int cmd_search(const SearchArgs& args) {
    const auto world_files = collect_world_files(args.worlds);
    const auto table = prior::EmbeddingTable::load(args.embeddings_path);

    // Sentence source: per-world replay fixtures by default, or a shared
    // live endpoint / template generator.
    std::unique_ptr<prior::SentenceSource> source;
    if (args.source == "http") {
        source = std::make_unique<prior::HttpSentenceSource>(
            args.llm_url.empty() ? prior::HttpSentenceSource::from_env()
                                 : prior::HttpSentenceSource(args.llm_url));
    } else if (args.source == "template") {
        source = std::make_unique<prior::TemplateSentenceSource>(table);
    } else if (args.source != "replay") {
        throw std::runtime_error("unknown sentence source: " + args.source);
    }

    std::vector<sim::SearchMethod> methods;
    for (const auto& m : args.methods) {
        if (m == "all") {
            methods = {sim::SearchMethod::Proposed, sim::SearchMethod::KnowledgePrior,
                       sim::SearchMethod::CowIndirect, sim::SearchMethod::Cow};
            break;
        }
        const auto parsed = sim::search_method_from_string(m);
        if (!parsed) throw std::runtime_error("unknown method: " + m);
        methods.push_back(*parsed);
    }

    sim::SearchEpisodeOptions options;
    options.embeddings = &table;
    options.config = args.preset == "real" ? search::SearchConfig::real_world()
                                           : search::SearchConfig::simulation();
    if (args.preset != "real" && args.preset != "sim") {
        throw std::runtime_error("unknown preset: " + args.preset);
    }
    if (args.max_path > 0) options.config.max_path = args.max_path;
    if (args.max_fd > 0) options.config.max_false_detections = args.max_fd;
    options.config.prior_weight = args.prior_weight;
    options.config.standoff = args.standoff;
    options.config.visit_threshold = args.visit_threshold;
    options.sensor.p_false_positive = args.p_fp;
    options.sensor.p_false_negative = args.p_fn;
    options.sensor.range = args.range;
    options.sensor.fov = args.fov_deg * kPi / 180.0;
    options.sentence_source = source.get();

    struct Job {
        std::string world_file;
        sim::SearchMethod method;
        std::uint64_t seed;
    };
    std::vector<Job> jobs_list;
    for (std::size_t i = 0; i < world_files.size(); ++i) {
        for (const auto m : methods) {
            jobs_list.push_back(Job{world_files[i], m, args.seed + i});
        }
    }

    std::vector<sim::EpisodeResult> results(jobs_list.size());
    std::vector<std::string> world_names(jobs_list.size());
    std::vector<sim::World> worlds_for_plot;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs_list.size()) return;
            sim::World world = sim::World::load(jobs_list[k].world_file);
            if (!args.sentences_override.empty()) {
                world.sentences_path = args.sentences_override;
            }
            results[k] = sim::run_search_episode(world, options, jobs_list[k].method,
                                                 jobs_list[k].seed);
            world_names[k] = world.name;
        }
    };
    const int n_threads = std::max(1, args.jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    fs::create_directories(args.out_dir);

    // results table
    if (args.format == "csv") {
        std::ofstream csv(fs::path(args.out_dir) / "results.csv");
        csv << "world,method,seed,success,path_length,shortest_path,false_detections,"
               "feedbacks,failure_reason\n";
        for (std::size_t k = 0; k < jobs_list.size(); ++k) {
            const auto& r = results[k];
            csv << world_names[k] << "," << sim::to_string(jobs_list[k].method) << ","
                << jobs_list[k].seed << "," << (r.success ? 1 : 0) << ","
                << format_double(r.path_length) << "," << format_double(r.shortest_path)
                << "," << r.false_detections << "," << r.feedback_count << ","
                << r.failure_reason << "\n";
        }
    } else if (args.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < jobs_list.size(); ++k) {
            const auto& r = results[k];
            nlohmann::ordered_json j;
            j["world"] = world_names[k];
            j["method"] = sim::to_string(jobs_list[k].method);
            j["seed"] = jobs_list[k].seed;
            j["success"] = r.success;
            j["path_length"] = r.path_length;
            j["shortest_path"] = r.shortest_path;
            j["false_detections"] = r.false_detections;
            j["feedbacks"] = r.feedback_count;
            j["failure_reason"] = r.failure_reason;
            arr.push_back(std::move(j));
        }
        std::ofstream out(fs::path(args.out_dir) / "results.json");
        out << arr.dump(2) << "\n";
    } else {
        throw std::runtime_error("unknown format: " + args.format);
    }

    // per-method metrics summary
    nlohmann::ordered_json summary;
    for (const auto m : methods) {
        std::vector<sim::EpisodeResult> rs;
        for (std::size_t k = 0; k < jobs_list.size(); ++k) {
            if (jobs_list[k].method == m) rs.push_back(results[k]);
        }
        const auto metrics = sim::compute_metrics(rs);
        nlohmann::ordered_json j;
        j["episodes"] = metrics.episodes;
        j["SR"] = metrics.sr;
        j["SPL"] = metrics.spl;
        j["SPF"] = metrics.spf;
        j["mean_FD"] = metrics.mean_fd;
        summary[sim::to_string(m)] = std::move(j);
    }
    {
        std::ofstream out(fs::path(args.out_dir) / "summary.json");
        out << summary.dump(2) << "\n";
    }

    // per-episode logs and plots
    bool any_failure = false;
    for (std::size_t k = 0; k < jobs_list.size(); ++k) {
        const auto& r = results[k];
        if (!r.success) any_failure = true;
        const std::string stem =
            world_names[k] + "_" + sim::to_string(jobs_list[k].method);
        sim::write_event_log(r.events, (fs::path(args.out_dir) / (stem + ".events.jsonl")).string());
        if (!args.no_svg) {
            const auto world = sim::World::load(jobs_list[k].world_file);
            plot_search_episode(world, r, (fs::path(args.out_dir) / (stem + ".svg")).string());
        }
    }

    std::cout << summary.dump(2) << "\n";
    return any_failure ? kExitEpisodeFailures : kExitOk;
}

struct TrainArgs {
    std::string demos_path;
    std::string out_path = "reward_lfd.json";
    std::string grid = "standard";
    std::string slices_dir;
    double lambda = 0.01;
    double beta = 0.2;
    double delta = 0.8;
    double z = 200.0;
    double sigma_k = 1.0;
    double sigma_mu = 0.5;
};

int cmd_train_reward(const TrainArgs& args) {
    const auto demos = kdmrl::load_demonstrations(args.demos_path);
    kdmrl::KdmrlParams params;
    params.lambda = args.lambda;
    params.beta = args.beta;
    params.delta = args.delta;
    params.z = args.z;
    params.sigma_k = args.sigma_k;
    params.sigma_mu = args.sigma_mu;
    const auto grid = grid_by_name(args.grid);

    const auto result = kdmrl::train_reward(demos, params, grid, true);
    result.field.save(args.out_path);
    if (!args.slices_dir.empty()) {
        fs::create_directories(args.slices_dir);
        for (int ig = 0; ig < 2; ++ig) {
            for (int iv = 0; iv < static_cast<int>(grid.v_bins().size()); ++iv) {
                char name[64];
                std::snprintf(name, sizeof(name), "slice_g%d_v%d_theta0.csv", ig, iv);
                result.field.write_csv_slice((fs::path(args.slices_dir) / name).string(),
                                             static_cast<int>(grid.theta_bins().size()) / 2,
                                             iv, ig);
            }
        }
    }
    std::cout << "objective " << format_double(result.objective_value) << "\n";
    std::cout << "alpha_norm " << format_double(result.alpha.norm()) << "\n";
    std::cout << "wrote " << args.out_path << "\n";
    return kExitOk;
}

struct DistillArgs {
    std::string sentences_gaze1;
    std::string sentences_gaze0;
    std::string out_path = "reward_kd.json";
    std::string grid = "standard";
    double step = 0.2;
    double sigma_r = 1.0;
    bool skip_smoothing = false;
    bool branching = false;
};

int cmd_distill(const DistillArgs& args) {
    if (args.sentences_gaze1.empty() && args.sentences_gaze0.empty()) {
        throw std::runtime_error("need --sentences-gaze1 and/or --sentences-gaze0");
    }
    const auto grid = grid_by_name(args.grid);
    distill::DistillParams params;
    params.step = args.step;
    params.sigma_r = args.sigma_r;
    params.branching = args.branching;

    RewardField field(grid);
    for (int g = 0; g < 2; ++g) {
        const std::string& path = g == 1 ? args.sentences_gaze1 : args.sentences_gaze0;
        if (path.empty()) continue;
        const auto sentences = distill::read_sentence_lines(path);
        const auto slice = distill::estimate_kd_reward(sentences, g, grid, params);
        for (std::size_t i = 0; i < field.values().size(); ++i) {
            field.at(i) += slice.at(i);  // slices are disjoint across g
        }
    }
    if (!args.skip_smoothing) field = distill::smooth_reward(field, args.sigma_r);
    field.save(args.out_path);
    std::cout << "wrote " << args.out_path << "\n";
    return kExitOk;
}

struct PlanArgs {
    std::string world_path;
    std::string field_lfd;
    std::string field_kd;
    std::string method = "hybrid";
    std::string out_path = "trajectory.jsonl";
    std::string svg_path;
    std::uint64_t seed = 1;
    int samples = 2000;
    double w_r = 0.2;
    double w_p = 1.0;
    double w_o = 0.5;
    double zeta = 1.5;
    double goal_radius = 0.6;
};

int cmd_plan(const PlanArgs& args) {
    const auto world = sim::World::load(args.world_path);
    const auto method = sim::approach_method_from_string(args.method);
    if (!method) throw std::runtime_error("unknown approach method: " + args.method);

    planner::PlannerParams params;
    params.samples = args.samples;
    params.w_r = args.w_r;
    params.w_p = args.w_p;
    params.w_o = args.w_o;
    params.zeta = args.zeta;
    params.goal_radius = args.goal_radius;

    RewardField lfd, kd;
    if (*method == sim::ApproachMethod::Baseline) {
        lfd = RewardField(grid_by_name("coarse"));
        kd = lfd;
    } else {
        if (args.field_lfd.empty() && args.field_kd.empty()) {
            throw std::runtime_error("plan needs --field-lfd/--field-kd for planned methods");
        }
        if (!args.field_lfd.empty()) lfd = RewardField::load(args.field_lfd);
        if (!args.field_kd.empty()) kd = RewardField::load(args.field_kd);
        if (args.field_lfd.empty()) lfd = kd;
        if (args.field_kd.empty()) kd = lfd;
    }

    const auto out = sim::run_approach_episode(world, *method, lfd, kd, params, args.seed);
    out.trajectory.write_jsonl(args.out_path);
    if (!args.svg_path.empty()) plot_trajectory(world, out.trajectory, args.svg_path);

    nlohmann::ordered_json j;
    j["method"] = args.method;
    j["success"] = out.result.success;
    j["gaze"] = out.gaze;
    j["path_length"] = out.result.path_length;
    j["final_distance"] = out.result.final_distance;
    j["heading_variation"] = out.trajectory.heading_variation();
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

struct EvalArgs {
    std::string results_path;
    std::string out_path = "metrics.json";
    bool theory = false;
    int trials = 10000;
    int max_states = 64;
    std::uint64_t seed = 1;
};

int cmd_eval(const EvalArgs& args) {
    if (args.theory) {
        const auto report = theory::run_theorem_trials(args.trials, args.max_states, args.seed);
        std::ofstream out(args.out_path);
        out << report.to_json().dump(2) << "\n";
        std::cout << report.to_json().dump(2) << "\n";
        return kExitOk;
    }
    std::ifstream in(args.results_path);
    if (!in) throw std::runtime_error("cannot open results file: " + args.results_path);
    std::string header;
    std::getline(in, header);
    auto columns = [&] {
        std::vector<std::string> cols;
        std::stringstream ss(header);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
        return cols;
    }();
    auto col_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) return static_cast<int>(i);
        }
        throw std::runtime_error("results file misses column: " + name);
    };
    const int c_method = col_of("method");
    const int c_success = col_of("success");
    const int c_path = col_of("path_length");
    const int c_shortest = col_of("shortest_path");
    const int c_fd = col_of("false_detections");

    std::map<std::string, std::vector<sim::EpisodeResult>> by_method;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        sim::EpisodeResult r;
        r.success = cells.at(static_cast<std::size_t>(c_success)) == "1";
        r.path_length = std::stod(cells.at(static_cast<std::size_t>(c_path)));
        r.shortest_path = std::stod(cells.at(static_cast<std::size_t>(c_shortest)));
        r.false_detections = std::stoi(cells.at(static_cast<std::size_t>(c_fd)));
        by_method[cells.at(static_cast<std::size_t>(c_method))].push_back(std::move(r));
    }
    if (by_method.empty()) throw std::runtime_error("results file has no rows");

    nlohmann::ordered_json out_json;
    for (const auto& [method, rs] : by_method) {
        const auto m = sim::compute_metrics(rs);
        nlohmann::ordered_json j;
        j["episodes"] = m.episodes;
        j["SR"] = m.sr;
        j["SPL"] = m.spl;
        j["SPF"] = m.spf;
        j["mean_FD"] = m.mean_fd;
        out_json[method] = std::move(j);
    }
    std::ofstream out(args.out_path);
    out << out_json.dump(2) << "\n";
    std::cout << out_json.dump(2) << "\n";
    return kExitOk;
}

struct PlotArgs {
    std::string log_path;
    std::string map_path;
    std::string out_path = "plot.svg";
};

int cmd_plot(const PlotArgs& args) {
    const auto map = AnnotatedMap::load(args.map_path);
    const OccupancyGrid& grid = map.floor(0);
    SvgWriter svg(grid.width() * grid.resolution(), grid.height() * grid.resolution());
    svg.draw_grid(grid);

    std::ifstream in(args.log_path);
    if (!in) throw std::runtime_error("cannot open log file: " + args.log_path);
    std::string line;
    std::optional<std::pair<double, double>> prev;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const auto& pose = j.at("pose");
        const double x = pose.at("x").get<double>();
        const double y = pose.at("y").get<double>();
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "move_to") {
            const double tx = j.at("payload").at("x").get<double>();
            const double ty = j.at("payload").at("y").get<double>();
            // One polyline per waypoint segment.
            svg.polyline({{x, y}, {tx, ty}}, "#1f77b4");
            prev = {tx, ty};
        } else if (kind == "ask_feedback") {
            const bool positive = j.at("payload").at("answer").get<bool>();
            if (j.at("payload").contains("px")) {
                svg.line(x, y, j.at("payload").at("px").get<double>(),
                         j.at("payload").at("py").get<double>(), positive ? "blue" : "red",
                         2.0);
            }
        }
    }
    svg.save(args.out_path);
    std::cout << "wrote " << args.out_path << "\n";
    return kExitOk;
}

struct GenDemosArgs {
    std::string out_path = "demos.jsonl";
    int count = 18;
    int gaze = 1;
    std::uint64_t seed = 1;
};

int cmd_gen_demos(const GenDemosArgs& args) {
    kdmrl::SyntheticDemoParams params;
    params.count = args.count;
    params.gaze = args.gaze;
    const auto demos = kdmrl::make_synthetic_demos(params, args.seed);
    kdmrl::save_demonstrations(demos, args.out_path);
    std::cout << "wrote " << args.out_path << " (" << demos.size() << " demonstrations)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"socrates: prior-guided human search and reward-aware approach planning"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_config("--config");
    bool dump_config = false;
    app.add_flag("--dump-config", dump_config, "print the effective configuration and exit")
        ->configurable(false);

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("search", "run search episode suites");
    search_cmd->add_option("--world", search_args.worlds,
                           "world JSON file or directory (repeatable)")
        ->required();
    search_cmd->add_option("--embeddings", search_args.embeddings_path,
                           "word2vec text embeddings")
        ->required();
    search_cmd->add_option("--sentences", search_args.sentences_override,
                           "sentence replay file overriding the worlds' fixtures");
    search_cmd->add_option("--source", search_args.source,
                           "sentence source: replay, http, or template");
    search_cmd->add_option("--llm-url", search_args.llm_url,
                           "text endpoint URL (overrides SOCRATES_LLM_URL)");
    search_cmd->add_option("--method,--methods", search_args.methods,
                           "proposed|knowledge-prior|cow-indirect|cow|all");
    search_cmd->add_option("--preset", search_args.preset, "sim (15 m, 3 FD) or real (30 m, 5 FD)");
    search_cmd->add_option("--seed", search_args.seed, "base seed; episode i uses seed + i");
    search_cmd->add_option("--jobs", search_args.jobs, "parallel episode workers");
    search_cmd->add_option("--out", search_args.out_dir, "output directory");
    search_cmd->add_option("--format", search_args.format, "csv or json results table");
    search_cmd->add_option("--p-fp", search_args.p_fp, "text false-positive probability");
    search_cmd->add_option("--p-fn", search_args.p_fn, "text false-negative probability");
    search_cmd->add_option("--range", search_args.range, "sensor range, meters");
    search_cmd->add_option("--fov", search_args.fov_deg, "sensor field of view, degrees");
    search_cmd->add_option("--max-path", search_args.max_path, "path budget override, meters");
    search_cmd->add_option("--max-fd", search_args.max_fd, "false-detection budget override");
    search_cmd->add_option("--prior-weight", search_args.prior_weight, "w_e");
    search_cmd->add_option("--standoff", search_args.standoff, "indirect standoff distance");
    search_cmd->add_option("--visit-threshold", search_args.visit_threshold, "t_g");
    search_cmd->add_flag("--no-svg", search_args.no_svg, "skip SVG plots");

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train-reward", "learn a reward from demonstrations");
    train_cmd->add_option("--demos", train_args.demos_path, "demonstrations JSONL")->required();
    train_cmd->add_option("--out", train_args.out_path, "reward field JSON output");
    train_cmd->add_option("--grid", train_args.grid, "standard or coarse state grid");
    train_cmd->add_option("--csv-slices", train_args.slices_dir, "directory for CSV slice dumps");
    train_cmd->add_option("--lambda", train_args.lambda, "smoothness");
    train_cmd->add_option("--beta", train_args.beta, "coefficient ridge");
    train_cmd->add_option("--delta", train_args.delta, "leverage decay");
    train_cmd->add_option("--z", train_args.z, "density normalization");
    train_cmd->add_option("--sigma-k", train_args.sigma_k, "reward kernel width");
    train_cmd->add_option("--sigma-mu", train_args.sigma_mu, "density kernel width");

    DistillArgs distill_args;
    auto* distill_cmd = app.add_subcommand("distill", "build a reward from trajectory sentences");
    distill_cmd->add_option("--sentences-gaze1", distill_args.sentences_gaze1,
                            "sentence file for the gazing condition");
    distill_cmd->add_option("--sentences-gaze0", distill_args.sentences_gaze0,
                            "sentence file for the non-gazing condition");
    distill_cmd->add_option("--out", distill_args.out_path, "reward field JSON output");
    distill_cmd->add_option("--grid", distill_args.grid, "standard or coarse state grid");
    distill_cmd->add_option("--step", distill_args.step, "segment step length, meters");
    distill_cmd->add_option("--sigma-r", distill_args.sigma_r, "smoothing kernel width");
    distill_cmd->add_flag("--skip-smoothing", distill_args.skip_smoothing,
                          "write the raw accumulated field");
    distill_cmd->add_flag("--branching", distill_args.branching,
                          "fork cursors per candidate segment instead of the sequential walk");

    PlanArgs plan_args;
    auto* plan_cmd = app.add_subcommand("plan", "plan one approach trajectory");
    plan_cmd->add_option("--world", plan_args.world_path, "world JSON file")->required();
    plan_cmd->add_option("--field-lfd", plan_args.field_lfd, "demonstration reward JSON");
    plan_cmd->add_option("--field-kd", plan_args.field_kd, "distilled reward JSON");
    plan_cmd->add_option("--method", plan_args.method, "hybrid|lfd|kd|baseline");
    plan_cmd->add_option("--out", plan_args.out_path, "trajectory JSONL output");
    plan_cmd->add_option("--svg", plan_args.svg_path, "optional SVG plot");
    plan_cmd->add_option("--seed", plan_args.seed, "sampling seed");
    plan_cmd->add_option("--samples", plan_args.samples, "planner batch size");
    plan_cmd->add_option("--w-r", plan_args.w_r, "blend weight");
    plan_cmd->add_option("--w-p", plan_args.w_p, "position weight");
    plan_cmd->add_option("--w-o", plan_args.w_o, "orientation weight");
    plan_cmd->add_option("--zeta", plan_args.zeta, "cost shaping");
    plan_cmd->add_option("--goal-radius", plan_args.goal_radius, "goal radius, meters");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "metrics from results, or theory checks");
    eval_cmd->add_option("--results", eval_args.results_path, "results.csv from search");
    eval_cmd->add_option("--out", eval_args.out_path, "metrics JSON output");
    eval_cmd->add_flag("--theory", eval_args.theory, "run the value-gap bound trials instead");
    eval_cmd->add_option("--trials", eval_args.trials, "number of theory trials");
    eval_cmd->add_option("--max-states", eval_args.max_states, "max states per trial");
    eval_cmd->add_option("--seed", eval_args.seed, "theory trial seed");

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand("plot", "render an episode log over its map");
    plot_cmd->add_option("--log", plot_args.log_path, "events JSONL")->required();
    plot_cmd->add_option("--map", plot_args.map_path, "map JSON")->required();
    plot_cmd->add_option("--out", plot_args.out_path, "SVG output");

    GenDemosArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen-demos", "write synthetic expert demonstrations");
    gen_cmd->add_option("--out", gen_args.out_path, "demonstrations JSONL output");
    gen_cmd->add_option("--count", gen_args.count, "number of demonstrations");
    gen_cmd->add_option("--gaze", gen_args.gaze, "gaze condition (0 or 1)");
    gen_cmd->add_option("--seed", gen_args.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // --help and --version exit 0; anything else is a usage error.
        return code == 0 ? kExitOk : kExitConfigError;
    }

    if (dump_config) {
        std::cout << app.config_to_str(true, true);
        return kExitOk;
    }

    try {
        if (app.got_subcommand(search_cmd)) return cmd_search(search_args);
        if (app.got_subcommand(train_cmd)) return cmd_train_reward(train_args);
        if (app.got_subcommand(distill_cmd)) return cmd_distill(distill_args);
        if (app.got_subcommand(plan_cmd)) return cmd_plan(plan_args);
        if (app.got_subcommand(eval_cmd)) return cmd_eval(eval_args);
        if (app.got_subcommand(plot_cmd)) return cmd_plot(plot_args);
        if (app.got_subcommand(gen_cmd)) return cmd_gen_demos(gen_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}
