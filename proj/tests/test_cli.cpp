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

#define CATCH_CONFIG_MAIN
#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "socrates/demos.hpp"
#include "socrates/kdmrl.hpp"
#include "socrates/reward_field.hpp"
#include "socrates/trajectory.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SOCRATES_CLI_PATH;
const std::string kData = SOCRATES_DATA_DIR;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("socrates_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (const char c : text) {
        if (c == '\n') ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("help exits zero", "[cli]") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("search --help").exit_code == 0);
}

TEST_CASE("usage errors exit 2", "[cli]") {
    CHECK(run("").exit_code == 2);                      // missing subcommand
    CHECK(run("search").exit_code == 2);                // missing required options
    CHECK(run("frobnicate").exit_code == 2);            // unknown subcommand
}

TEST_CASE("search produces one results row per episode and method", "[cli]") {
    const auto out = fresh_dir("search_rows");
    const auto r = run("search --world " + kData + "/worlds/lab_w1.json --embeddings " +
                       kData + "/embeddings/mini.txt --method proposed --seed 1 --range 6 "
                       "--no-svg --out " + out.string());
    CHECK(r.exit_code == 0);  // noise-free proposed run succeeds
    const auto csv = read_file(out / "results.csv");
    CHECK(count_lines(csv) == 2);  // header + one row

    const auto out_all = fresh_dir("search_all");
    const auto r_all = run("search --world " + kData + "/worlds/lab_w1.json --embeddings " +
                           kData + "/embeddings/mini.txt --methods all --seed 1 --range 6 "
                           "--no-svg --out " + out_all.string());
    CHECK((r_all.exit_code == 0 || r_all.exit_code == 1));
    CHECK(count_lines(read_file(out_all / "results.csv")) == 5);  // header + 4 methods
}

TEST_CASE("unknown method and missing files exit 2 with the cause named", "[cli]") {
    const auto bad_method = run("search --world " + kData + "/worlds/lab_w1.json "
                                "--embeddings " + kData + "/embeddings/mini.txt "
                                "--method teleport --out /tmp/never");
    CHECK(bad_method.exit_code == 2);
    CHECK(bad_method.output.find("teleport") != std::string::npos);

    const auto missing = run("search --world /nonexistent/w.json --embeddings " + kData +
                             "/embeddings/mini.txt --out /tmp/never");
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("/nonexistent/w.json") != std::string::npos);
}

TEST_CASE("search artifacts are byte-identical across reruns and job counts", "[cli]") {
    const auto base_args = std::string("search --world ") + kData +
                           "/worlds/office_w5.json --world " + kData +
                           "/worlds/lab_w5.json --embeddings " + kData +
                           "/embeddings/mini.txt --methods all --seed 9 --range 6 "
                           "--p-fp 0.15 --p-fn 0.1 ";
    const auto a = fresh_dir("det_a");
    const auto b = fresh_dir("det_b");
    const auto c = fresh_dir("det_c");
    CHECK(run(base_args + "--jobs 1 --out " + a.string()).exit_code ==
          run(base_args + "--jobs 1 --out " + b.string()).exit_code);
    run(base_args + "--jobs 3 --out " + c.string());

    for (const auto& entry : fs::directory_iterator(a)) {
        const auto name = entry.path().filename();
        CAPTURE(name.string());
        CHECK(read_file(entry.path()) == read_file(b / name));
        CHECK(read_file(entry.path()) == read_file(c / name));
    }
}

TEST_CASE("train-reward rejects empty demo files and reports the bad line", "[cli]") {
    const auto dir = fresh_dir("train_bad");
    const auto empty = dir / "empty.jsonl";
    std::ofstream(empty).close();
    const auto r = run("train-reward --demos " + empty.string() + " --grid coarse --out " +
                       (dir / "f.json").string());
    CHECK(r.exit_code == 2);

    const auto malformed = dir / "bad.jsonl";
    {
        std::ofstream out(malformed);
        out << R"({"demo_id":0,"t":0,"x":0,"y":0,"theta":0,"g":1,"v":0.4})" << "\n";
        out << "oops\n";
    }
    const auto r2 = run("train-reward --demos " + malformed.string() + " --grid coarse --out " +
                        (dir / "f.json").string());
    CHECK(r2.exit_code == 2);
    CHECK(r2.output.find("line 2") != std::string::npos);
}

TEST_CASE("train-reward argmax matches the densest demonstrated state", "[cli]") {
    using namespace socrates;
    const auto dir = fresh_dir("train_argmax");
    const auto demos_path = dir / "demos.jsonl";
    {
        // All demonstration mass at one exact grid state.
        std::ofstream out(demos_path);
        for (int d = 0; d < 3; ++d) {
            for (int t = 0; t < 5; ++t) {
                out << R"({"demo_id":)" << d << R"(,"t":)" << t
                    << R"(,"x":2.0,"y":1.0,"theta":0.0,"g":1,"v":0.15})" << "\n";
            }
        }
    }
    const auto field_path = dir / "field.json";
    const auto r = run("train-reward --demos " + demos_path.string() +
                       " --grid coarse --out " + field_path.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("objective") != std::string::npos);
    CHECK(r.output.find("alpha_norm") != std::string::npos);

    const auto field = RewardField::load(field_path.string());
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < field.values().size(); ++i) {
        if (field.at(i) > field.at(argmax)) argmax = i;
    }
    const auto idx = field.grid().unflatten(argmax);
    // KDE argmax oracle: the density concentrates at the demonstrated bin.
    CHECK(field.grid().x_bins()[static_cast<std::size_t>(idx.ix)] == Approx(2.0));
    CHECK(field.grid().y_bins()[static_cast<std::size_t>(idx.iy)] == Approx(1.0));
    CHECK(idx.ig == 1);
    CHECK(field.grid().v_bins()[static_cast<std::size_t>(idx.iv)] == Approx(0.15));

    // Byte-identical rerun.
    const auto field2_path = dir / "field2.json";
    run("train-reward --demos " + demos_path.string() + " --grid coarse --out " +
        field2_path.string());
    CHECK(read_file(field_path) == read_file(field2_path));
}

TEST_CASE("distill output is deterministic and gaze-sliced", "[cli]") {
    const auto dir = fresh_dir("distill");
    const auto out1 = dir / "kd1.json";
    const auto out2 = dir / "kd2.json";
    const std::string args = "distill --sentences-gaze1 " + kData +
                             "/sentences/approach_gaze1.txt --sentences-gaze0 " + kData +
                             "/sentences/approach_gaze0.txt --grid coarse --out ";
    REQUIRE(run(args + out1.string()).exit_code == 0);
    REQUIRE(run(args + out2.string()).exit_code == 0);
    CHECK(read_file(out1) == read_file(out2));

    const auto missing = run("distill --grid coarse --out " + (dir / "x.json").string());
    CHECK(missing.exit_code == 2);
}

TEST_CASE("baseline plan writes a straight trajectory", "[cli]") {
    const auto dir = fresh_dir("plan_base");
    const auto traj_path = dir / "traj.jsonl";
    const auto r = run("plan --world " + kData + "/worlds/lab_w1.json --method baseline "
                       "--seed 1 --out " + traj_path.string());
    REQUIRE(r.exit_code == 0);
    const auto traj = socrates::Trajectory::read_jsonl(traj_path.string());
    REQUIRE(traj.samples.size() >= 2);
    // Collinearity: every sample lies on the segment start-to-end.
    const auto& s0 = traj.samples.front().pose;
    const auto& s1 = traj.samples.back().pose;
    for (const auto& s : traj.samples) {
        const double cross = (s1.x - s0.x) * (s.pose.y - s0.y) -
                             (s1.y - s0.y) * (s.pose.x - s0.x);
        CHECK(std::abs(cross) < 1e-6);
    }
}

TEST_CASE("planned trajectories rerun byte-identically", "[cli]") {
    const auto dir = fresh_dir("plan_det");
    const auto lfd = dir / "lfd.json";
    const auto kd = dir / "kd.json";
    run("gen-demos --out " + (dir / "demos.jsonl").string() + " --count 6 --gaze 0 --seed 2");
    REQUIRE(run("train-reward --demos " + (dir / "demos.jsonl").string() +
                " --grid coarse --out " + lfd.string())
                .exit_code == 0);
    REQUIRE(run("distill --sentences-gaze0 " + kData +
                "/sentences/approach_gaze0.txt --grid coarse --out " + kd.string())
                .exit_code == 0);
    const std::string plan_args = "plan --world " + kData +
                                  "/worlds/lab_w1.json --field-lfd " + lfd.string() +
                                  " --field-kd " + kd.string() +
                                  " --method hybrid --seed 4 --samples 800 --out ";
    const auto t1 = dir / "t1.jsonl";
    const auto t2 = dir / "t2.jsonl";
    REQUIRE(run(plan_args + t1.string()).exit_code == 0);
    REQUIRE(run(plan_args + t2.string()).exit_code == 0);
    CHECK(read_file(t1) == read_file(t2));
}

TEST_CASE("eval on an all-failure results file yields zero metrics", "[cli]") {
    const auto dir = fresh_dir("eval_zero");
    const auto csv = dir / "results.csv";
    {
        std::ofstream out(csv);
        out << "world,method,seed,success,path_length,shortest_path,false_detections,"
               "feedbacks,failure_reason\n";
        out << "w1,proposed,1,0,12.0,5.0,2,2,path-budget\n";
        out << "w2,proposed,2,0,15.0,4.0,3,3,false-detection-budget\n";
    }
    const auto metrics_path = dir / "metrics.json";
    const auto r = run("eval --results " + csv.string() + " --out " + metrics_path.string());
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(read_file(metrics_path));
    CHECK(j.at("proposed").at("SR").get<double>() == 0.0);
    CHECK(j.at("proposed").at("SPL").get<double>() == 0.0);
    CHECK(j.at("proposed").at("SPF").get<double>() == 0.0);
    CHECK(j.at("proposed").at("mean_FD").get<double>() == Approx(2.5));

    CHECK(run("eval --results /nope.csv").exit_code == 2);
}

TEST_CASE("eval --theory reports trials and violations", "[cli]") {
    const auto dir = fresh_dir("eval_theory");
    const auto out = dir / "theory.json";
    const auto r = run("eval --theory --trials 500 --seed 3 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(read_file(out));
    CHECK(j.at("trials").get<int>() == 500);
    CHECK(j.at("violations").get<int>() == 0);
    CHECK(j.at("max_ratio").get<double>() <= 1.0);
}

TEST_CASE("plot draws one polyline per waypoint segment", "[cli]") {
    const auto dir = fresh_dir("plot");
    const auto search_out = dir / "search";
    run("search --world " + kData + "/worlds/lab_w5.json --embeddings " + kData +
        "/embeddings/mini.txt --method proposed --seed 1 --range 6 --no-svg --out " +
        search_out.string());
    const auto log = search_out / "lab_w5_proposed.events.jsonl";
    REQUIRE(fs::exists(log));

    const auto svg_path = dir / "plot.svg";
    const auto r = run("plot --log " + log.string() + " --map " + kData +
                       "/maps/lab.json --out " + svg_path.string());
    REQUIRE(r.exit_code == 0);

    std::size_t moves = 0;
    std::ifstream in(log);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("\"move_to\"") != std::string::npos) ++moves;
    }
    const auto svg = read_file(svg_path);
    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == moves);
}

TEST_CASE("dump-config reaches a fixed point and configs drive runs", "[cli]") {
    const auto dir = fresh_dir("config");
    const auto base = "search --world " + kData + "/worlds/lab_w1.json --embeddings " +
                      kData + "/embeddings/mini.txt --seed 5 --range 6";
    const auto cfg1 = run("--dump-config " + base);
    REQUIRE(cfg1.exit_code == 0);
    std::ofstream(dir / "cfg1.ini") << cfg1.output;

    const auto cfg2 = run("--config " + (dir / "cfg1.ini").string() + " --dump-config search");
    REQUIRE(cfg2.exit_code == 0);
    std::ofstream(dir / "cfg2.ini") << cfg2.output;

    const auto cfg3 = run("--config " + (dir / "cfg2.ini").string() + " --dump-config search");
    REQUIRE(cfg3.exit_code == 0);
    CHECK(cfg2.output == cfg3.output);

    // Flag > config precedence: the seed from the config, the out dir fresh.
    const auto out_dir = dir / "run";
    const auto r = run("--config " + (dir / "cfg2.ini").string() + " search --no-svg --out " +
                       out_dir.string());
    CHECK(r.exit_code == 0);
    const auto csv = read_file(out_dir / "results.csv");
    CHECK(csv.find(",5,") != std::string::npos);  // seed came from the config
}

TEST_CASE("gen-demos is deterministic per seed", "[cli]") {
    const auto dir = fresh_dir("gen_demos");
    const auto a = dir / "a.jsonl";
    const auto b = dir / "b.jsonl";
    REQUIRE(run("gen-demos --out " + a.string() + " --count 5 --gaze 1 --seed 11").exit_code == 0);
    REQUIRE(run("gen-demos --out " + b.string() + " --count 5 --gaze 1 --seed 11").exit_code == 0);
    CHECK(read_file(a) == read_file(b));
    const auto demos = socrates::kdmrl::load_demonstrations(a.string());
    CHECK(demos.size() == 5);
}
