#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct outcome {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in{p, std::ios::binary};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const fs::path scratch = fs::temp_directory_path() / "snnrc_cli_test";

outcome run_cli(const std::string& args)
{
    const std::string cmd = std::string{"'"} + SNNRC_CLI + "' " + args + " >'" + (scratch / "stdout").string()
                            + "' 2>'" + (scratch / "stderr").string() + "'";
    const int status = std::system(cmd.c_str());
    outcome o;
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.out = slurp(scratch / "stdout");
    o.err = slurp(scratch / "stderr");
    return o;
}

fs::path fresh_dir(const std::string& name)
{
    const fs::path p = scratch / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write_config(const std::string& name, const json& j)
{
    const fs::path p = scratch / name;
    std::ofstream{p} << j.dump(2);
    return p;
}

json small_henon()
{
    return json::parse(R"({
      "task": "henon", "seed": 2,
      "series": {"length": 300},
      "network": {"family": "input_ring", "m_in": 12, "k": 2, "p": 0.05},
      "simulation": {"model": "continuous", "steps_per_window": 100},
      "split": {"train_fraction": 0.8, "washout": 10},
      "anneal": {"n_steps": 6, "checkpoint_every": 2}
    })");
}

std::string quoted(const fs::path& p)
{
    return "'" + p.string() + "'";
}

struct scratch_setup {
    scratch_setup()
    {
        fs::remove_all(scratch);
        fs::create_directories(scratch);
    }
} const setup;

}  // namespace

TEST_CASE("gen-series on the henon preset")
{
    const auto out = fresh_dir("gen");
    const auto o = run_cli("--config " + quoted(fs::path{SNNRC_CONFIG_DIR} / "henon-handpicked.json") + " --out "
                           + quoted(out) + " gen-series");
    REQUIRE(o.code == 0);
    std::istringstream in{slurp(out / "series.csv")};
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,value");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 1000);
    CHECK(json::parse(slurp(out / "config.json")).at("seed") == 1);
}

TEST_CASE("mackey-glass series starts at the initial history value")
{
    auto j = small_henon();
    j["task"] = "mackey_glass";
    j["series"] = {{"length", 25}};
    const auto cfg = write_config("mg.json", j);
    const auto out = fresh_dir("gen_mg");
    REQUIRE(run_cli("--config " + quoted(cfg) + " --out " + quoted(out) + " gen-series").code == 0);
    std::istringstream in{slurp(out / "series.csv")};
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line == "0,1.2");
}

TEST_CASE("missing output directory exits nonzero with a message")
{
    const auto cfg = write_config("small.json", small_henon());
    const auto o = run_cli("--config " + quoted(cfg) + " --out " + quoted(scratch / "absent") + " gen-series");
    CHECK(o.code == 1);
    CHECK(o.err.find("output directory") != std::string::npos);
}

TEST_CASE("usage and config errors exit with 1")
{
    const auto cfg = write_config("small.json", small_henon());
    CHECK(run_cli("run").code == 1);
    CHECK(run_cli("--config " + quoted(cfg)).code == 1);
    CHECK(run_cli("--config " + quoted(scratch / "nope.json") + " run").code == 1);
    CHECK(run_cli("--config " + quoted(cfg) + " --nrmse-norm max run").code == 1);

    auto bad = small_henon();
    bad["network"]["colour"] = "blue";
    const auto bad_cfg = write_config("bad.json", bad);
    const auto out = fresh_dir("bad");
    const auto o = run_cli("--config " + quoted(bad_cfg) + " --out " + quoted(out) + " run");
    CHECK(o.code == 1);
    CHECK(o.err.find("colour") != std::string::npos);

    CHECK(run_cli("--config " + quoted(cfg) + " --out " + quoted(out) + " sweep --n-seeds 0").code == 1);

    auto unseeded = small_henon();
    unseeded.erase("seed");
    const auto unseeded_cfg = write_config("unseeded.json", unseeded);
    CHECK(run_cli("--config " + quoted(unseeded_cfg) + " --out " + quoted(out) + " run").code == 1);
    CHECK(run_cli("--config " + quoted(unseeded_cfg) + " --seed 4 --out " + quoted(out) + " run").code == 0);
}

TEST_CASE("pipeline failures name the stage and exit with 2")
{
    auto diverging = small_henon();
    diverging["series"]["henon"] = {{"a", 3.0}};
    const auto cfg = write_config("diverge.json", diverging);
    const auto out = fresh_dir("diverge");
    const auto o = run_cli("--config " + quoted(cfg) + " --out " + quoted(out) + " run");
    CHECK(o.code == 2);
    CHECK(o.err.find("stage gen-series") != std::string::npos);
}

TEST_CASE("run writes a complete bundle and is reproducible")
{
    const auto cfg = write_config("small.json", small_henon());
    const auto a = fresh_dir("run_a");
    const auto b = fresh_dir("run_b");
    const auto oa = run_cli("--config " + quoted(cfg) + " --out " + quoted(a) + " run --dump-traces");
    const auto ob = run_cli("--config " + quoted(cfg) + " --out " + quoted(b) + " run --dump-traces");
    REQUIRE(oa.code == 0);
    REQUIRE(ob.code == 0);
    CHECK(oa.out == ob.out);
    CHECK(oa.out.find("nrmse_std=") != std::string::npos);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator{a}) {
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
        ++files;
    }
    CHECK(files == 9);
    const auto score = json::parse(slurp(a / "score.json"));
    CHECK(score.contains("nrmse_std"));
    CHECK(score.contains("nrmse_range"));

    const auto r = fresh_dir("run_range");
    REQUIRE(run_cli("--config " + quoted(cfg) + " --nrmse-norm range --out " + quoted(r) + " run").code == 0);
    const auto ranged = json::parse(slurp(r / "score.json"));
    CHECK(ranged.at("normalization") == "range");
    CHECK(ranged.at("nrmse") == ranged.at("nrmse_range"));
}

TEST_CASE("build-net round trips through the file family")
{
    const auto cfg = write_config("small.json", small_henon());
    const auto out = fresh_dir("build");
    REQUIRE(run_cli("--config " + quoted(cfg) + " --out " + quoted(out) + " build-net").code == 0);
    auto from_file = small_henon();
    from_file["network"] = {{"family", "file"}, {"path", (out / "network.json").string()}};
    const auto file_cfg = write_config("from_file.json", from_file);
    const auto a = fresh_dir("build_a");
    const auto b = fresh_dir("build_b");
    REQUIRE(run_cli("--config " + quoted(cfg) + " --out " + quoted(a) + " run").code == 0);
    REQUIRE(run_cli("--config " + quoted(file_cfg) + " --out " + quoted(b) + " run").code == 0);
    CHECK(slurp(a / "score.json") == slurp(b / "score.json"));
}

TEST_CASE("metalearn pause and resume through the CLI")
{
    const auto cfg = write_config("small.json", small_henon());
    const auto whole = fresh_dir("ml_whole");
    const auto parts = fresh_dir("ml_parts");
    REQUIRE(run_cli("--config " + quoted(cfg) + " --out " + quoted(whole) + " metalearn").code == 0);
    REQUIRE(run_cli("--config " + quoted(cfg) + " --out " + quoted(parts) + " metalearn --stop-after 3").code == 0);
    CHECK_FALSE(fs::exists(parts / "score.json"));
    REQUIRE(run_cli("--config " + quoted(cfg) + " --out " + quoted(parts) + " metalearn --resume").code == 0);
    for (const char* f : {"trace.csv", "score.json", "best_network.json", "final_network.json"}) {
        CHECK(slurp(whole / f) == slurp(parts / f));
    }
    CHECK(run_cli("--config " + quoted(cfg) + " --seed 9 --out " + quoted(parts) + " metalearn --resume").code == 1);
}

TEST_CASE("sweep writes per-seed rows and a summary")
{
    const auto cfg = write_config("small.json", small_henon());
    const auto out = fresh_dir("sweep");
    REQUIRE(run_cli("--config " + quoted(cfg) + " --out " + quoted(out) + " sweep --n-seeds 2").code == 0);
    std::istringstream in{slurp(out / "sweep.csv")};
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "seed,nrmse_std,nrmse_range,status");
    CHECK(lines[1].rfind("2,", 0) == 0);
    CHECK(lines[2].rfind("3,", 0) == 0);
    CHECK(lines[3].rfind("mean,", 0) == 0);
    CHECK(lines[4].rfind("std,", 0) == 0);
}
