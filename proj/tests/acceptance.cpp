// Acceptance checks for criteria 1-8. Prints one PASS/FAIL line per
// criterion and exits non-zero when any of them fails.
//
// Where a tolerance is stated on NRMSE, a criterion passes when all of its
// conditions hold under one normalization (std or range) used consistently
// within that criterion. Both values are always printed.

#include "oracles.hpp"
#include "snnrc/commands.hpp"
#include "snnrc/error.hpp"
#include "snnrc/lif.hpp"
#include "snnrc/readout.hpp"
#include "snnrc/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace snnrc;

namespace {

const fs::path config_dir{SNNRC_CONFIG_DIR};
const fs::path work = fs::temp_directory_path() / "snnrc_acceptance";

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(double x, const char* spec = "%.4f")
{
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

struct verdict {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const verdict& v)
{
    std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
    if (!v.pass) ++failures;
}

void guarded(int id, const std::function<verdict()>& body)
{
    try {
        report(id, body());
    } catch (const std::exception& ex) {
        report(id, {false, std::string{"error: "} + ex.what()});
    }
}

fs::path fresh(const std::string& name)
{
    const fs::path p = work / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct scored {
    double by_std = 0.0;
    double by_range = 0.0;
    double get(nrmse_norm n) const { return n == nrmse_norm::range ? by_range : by_std; }
};

scored run_preset(const std::string& name, std::uint64_t seed)
{
    experiment_config c = load_experiment(config_dir / name);
    c.seed = seed;
    const auto r = run_task(make_network(c, seed), make_pipeline(c, make_series(c)));
    return {r.std_score.nrmse, r.range_score.nrmse};
}

double median3(std::vector<double> v)
{
    std::ranges::sort(v);
    return v[1];
}

// Tries std first, then range; returns the first normalization under which
// `holds` is true.
std::optional<nrmse_norm> passing_norm(const std::function<bool(nrmse_norm)>& holds)
{
    for (nrmse_norm n : {nrmse_norm::std_dev, nrmse_norm::range}) {
        if (holds(n)) return n;
    }
    return std::nullopt;
}

std::string norm_note(const std::optional<nrmse_norm>& n)
{
    return n ? std::string{" [holds under "} + std::string{to_string(*n)} + "]" : std::string{" [fails under std and range]"};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in{p, std::ios::binary};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool same_bundle(const fs::path& a, const fs::path& b, std::string& why)
{
    std::vector<fs::path> names;
    for (const auto& e : fs::directory_iterator{a}) names.push_back(e.path().filename());
    std::size_t count_b = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator{b}) ++count_b;
    if (names.size() != count_b) {
        why = "file count differs";
        return false;
    }
    for (const auto& n : names) {
        if (slurp(a / n) != slurp(b / n)) {
            why = n.string() + " differs";
            return false;
        }
    }
    return true;
}

const std::vector<std::uint64_t> seeds{1, 2, 3};
std::vector<scored> handpicked_scores;
std::vector<double> handpicked_times;
fs::path metalearn_dir;
fs::path sweep_dir;

verdict criterion_1()
{
    for (std::uint64_t s : seeds) {
        const auto t0 = clock_type::now();
        handpicked_scores.push_back(run_preset("henon-handpicked.json", s));
        handpicked_times.push_back(seconds_since(t0));
    }
    auto median = [](nrmse_norm n) {
        std::vector<double> v;
        for (const auto& s : handpicked_scores) v.push_back(s.get(n));
        return median3(v);
    };
    const double slowest = *std::ranges::max_element(handpicked_times);
    const auto norm = passing_norm([&](nrmse_norm n) { return median(n) <= 0.08; });
    return {norm && slowest < 120.0,
            "hand-picked Henon median NRMSE std=" + fmt(median(nrmse_norm::std_dev))
              + " range=" + fmt(median(nrmse_norm::range)) + " (<= 0.08), slowest run " + fmt(slowest) + " s (< 120)"
              + norm_note(norm)};
}

verdict criterion_2()
{
    const auto t0 = clock_type::now();
    std::vector<scored> er, sw;
    for (std::uint64_t s : seeds) {
        er.push_back(run_preset("henon-er.json", s));
        sw.push_back(run_preset("henon-smallworld.json", s));
    }
    double elapsed = seconds_since(t0);
    for (double t : handpicked_times) elapsed += t;
    const auto norm = passing_norm([&](nrmse_norm n) {
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const double h = handpicked_scores.at(i).get(n);
            if (!(h < er[i].get(n) && h < sw[i].get(n))) return false;
            if (er[i].get(n) < 0.12 || sw[i].get(n) < 0.12) return false;
        }
        return true;
    });
    std::string detail = "per seed (hand-picked / ER / small-world), std:";
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        detail += " " + fmt(handpicked_scores[i].by_std) + "/" + fmt(er[i].by_std) + "/" + fmt(sw[i].by_std);
    }
    detail += "; range:";
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        detail += " " + fmt(handpicked_scores[i].by_range) + "/" + fmt(er[i].by_range) + "/" + fmt(sw[i].by_range);
    }
    detail += "; random families >= 0.12; " + fmt(elapsed) + " s (< 600)" + norm_note(norm);
    return {norm && elapsed < 600.0, detail};
}

verdict criterion_3()
{
    const experiment_config c = load_experiment(config_dir / "henon-metalearn.json");
    metalearn_dir = fresh("c3_full");
    auto t0 = clock_type::now();
    const anneal_state full = cmd_metalearn(c, metalearn_dir);
    const double full_time = seconds_since(t0);
    const std::size_t initial_edges = make_network(c, c.require_seed()).count(edge_class::internal);
    const std::size_t final_edges = full.current.count(edge_class::internal);

    experiment_config smoke_cfg = c;
    smoke_cfg.anneal.n_steps = 200;
    t0 = clock_type::now();
    const anneal_state smoke = cmd_metalearn(smoke_cfg, fresh("c3_smoke"));
    const double smoke_time = seconds_since(t0);
    const double improvement = (smoke.initial_nrmse - smoke.best_nrmse) / smoke.initial_nrmse;

    const bool ok = full.iteration == 1000 && full.current_nrmse <= full.initial_nrmse && final_edges < initial_edges
                    && full.current_nrmse <= 0.07 && improvement >= 0.20 && full_time < 3600.0 && smoke_time < 600.0;
    return {ok, "1000 iterations: initial " + fmt(full.initial_nrmse) + " -> final " + fmt(full.current_nrmse)
                  + " (<= 0.07, std), internal edges " + std::to_string(initial_edges) + " -> "
                  + std::to_string(final_edges) + ", " + fmt(full_time) + " s (< 3600); 200-iteration smoke best "
                  + fmt(smoke.best_nrmse) + " = " + fmt(100.0 * improvement) + "% below initial (>= 20%), "
                  + fmt(smoke_time) + " s (< 600)"};
}

verdict criterion_4()
{
    const auto t0 = clock_type::now();
    const experiment_config chains = load_experiment(config_dir / "mg-clusterchains.json");
    const auto run = cmd_run(chains, fresh("c4_chains"));
    const experiment_config er = load_experiment(config_dir / "mg-er.json");
    sweep_dir = fresh("c4_sweep");
    const auto sweep = cmd_sweep(er, sweep_dir, 6);
    const double elapsed = seconds_since(t0);

    std::size_t ok_rows = 0;
    double mean_std = 0.0, mean_range = 0.0;
    for (const auto& r : sweep.rows) {
        if (r.status != "ok") continue;
        ++ok_rows;
        mean_std += r.nrmse_std;
        mean_range += r.nrmse_range;
    }
    if (ok_rows > 0) {
        mean_std /= static_cast<double>(ok_rows);
        mean_range /= static_cast<double>(ok_rows);
    }
    const scored cc{run.std_score.nrmse, run.range_score.nrmse};
    const scored er_mean{mean_std, mean_range};
    const auto norm = passing_norm([&](nrmse_norm n) { return cc.get(n) <= 0.13 && er_mean.get(n) > cc.get(n); });
    return {norm && ok_rows == 6 && elapsed < 900.0,
            "cluster chains NRMSE std=" + fmt(cc.by_std) + " range=" + fmt(cc.by_range)
              + " (<= 0.13); 6-seed ER mean std=" + fmt(er_mean.by_std) + " range=" + fmt(er_mean.by_range) + " ("
              + std::to_string(ok_rows) + "/6 ok, must be worse); " + fmt(elapsed) + " s (< 900)" + norm_note(norm)};
}

verdict criterion_5()
{
    const auto t0 = clock_type::now();
    const experiment_config c = load_experiment(config_dir / "mg-loihi-chains.json");
    const auto& f = c.simulation.fixed;
    const bool exact_params = c.simulation.model == neuron_model::fixed_point && f.input.du == 4095 && f.input.dv == 0
                              && f.input.vth_mant == 1 && f.reservoir.du == 80 && f.reservoir.dv == 40
                              && f.reservoir.vth_mant == 82 && f.reservoir.bias_mant == 0 && f.output.du == 4095
                              && f.output.dv == 0 && f.output.vth_mant == 1000 && f.input_payload == 8
                              && f.output_payload == 8 && c.network.payload == 8.0;
    const auto r = cmd_run(c, fresh("c5"));
    const double elapsed = seconds_since(t0);
    const scored s{r.std_score.nrmse, r.range_score.nrmse};
    const auto norm = passing_norm([&](nrmse_norm n) { return s.get(n) <= 0.07; });
    return {norm && exact_params && elapsed < 600.0,
            "fixed-point chains-of-10 NRMSE std=" + fmt(s.by_std) + " range=" + fmt(s.by_range) + " (<= 0.07), "
              + (exact_params ? "layer parameters exact" : "layer parameters differ") + ", " + fmt(elapsed)
              + " s (< 600)" + norm_note(norm)};
}

verdict criterion_6()
{
    rng gen{20240601};
    std::size_t steps = 0, mismatches = 0, spikes = 0, overflow_agree = 0;
    while (steps < 10000) {
        fixed_point_lif_params p{static_cast<std::int32_t>(gen.below(4096)), static_cast<std::int32_t>(gen.below(4096)),
                                 static_cast<std::int32_t>(gen.below(100)),
                                 static_cast<std::int32_t>(gen.below(9)) - 4};
        if (gen.bernoulli(0.1)) p.du = 4095;
        if (gen.bernoulli(0.1)) p.dv = gen.bernoulli(0.5) ? 0 : 4095;
        fixed_point_state lib{};
        oracle::lif_state ref{};
        for (int k = 0; k < 50 && steps < 10000; ++k, ++steps) {
            std::int64_t a_in = (static_cast<std::int64_t>(gen.below(33)) - 8) * fixed_point_unit;
            if (gen.bernoulli(0.002)) a_in = std::int64_t{1} << 31;
            const auto expected = oracle::lif_step(ref, p.du, p.dv, p.vth_mant, p.bias_mant, a_in);
            bool got = false;
            bool threw = false;
            try {
                got = step_fixed_point(lib, p, a_in);
            } catch (const pipeline_error&) {
                threw = true;
            }
            if (!expected) {
                if (threw) ++overflow_agree;
                else ++mismatches;
                break;
            }
            if (threw || got != *expected || lib.u != ref.u || lib.v != ref.v) ++mismatches;
            spikes += got ? 1 : 0;
        }
    }
    return {mismatches == 0, std::to_string(steps) + " random steps, " + std::to_string(mismatches)
                               + " mismatches against the straight-line reference (" + std::to_string(spikes)
                               + " spikes, " + std::to_string(overflow_agree) + " overflows flagged by both)"};
}

verdict criterion_7()
{
    rng gen{777};
    auto random_matrix = [&](Eigen::Index r, Eigen::Index c) {
        Eigen::MatrixXd m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i) m(i, j) = 2.0 * gen.uniform() - 1.0;
        return m;
    };
    double worst_gap = 0.0;
    std::size_t beaten = 0;
    for (int sys = 0; sys < 100; ++sys) {
        const auto rows = static_cast<Eigen::Index>(1 + gen.below(8));
        const auto cols = static_cast<Eigen::Index>(1 + gen.below(16));
        const auto outs = static_cast<Eigen::Index>(1 + gen.below(2));
        Eigen::MatrixXd x = random_matrix(rows, cols);
        if (rows > 2 && gen.bernoulli(0.3)) x.row(rows - 1) = x.row(0);
        const Eigen::MatrixXd y = random_matrix(outs, cols);
        const auto model = train(x, y);
        const double res = oracle::residual(model.w_out, x, y);
        worst_gap = std::max(worst_gap, std::abs(res - oracle::residual(oracle::ridge_readout(x, y), x, y)));
        for (int k = 0; k < 1000; ++k) {
            Eigen::MatrixXd delta = random_matrix(outs, rows);
            delta *= 1e-3 / delta.norm();
            // Directions in the null space of X leave the residual unchanged
            // up to rounding.
            if (oracle::residual(model.w_out + delta, x, y) < res - 1e-12) ++beaten;
        }
    }
    return {worst_gap <= 1e-6 && beaten == 0,
            "100 systems: max |residual - ridge oracle| = " + fmt(worst_gap, "%.2e") + " (<= 1e-6), "
              + std::to_string(beaten) + " of 100000 perturbations at radius 1e-3 lowered the residual"};
}

verdict criterion_8()
{
    std::vector<std::string> presets;
    for (const auto& e : fs::directory_iterator{config_dir}) presets.push_back(e.path().filename().string());
    std::ranges::sort(presets);
    std::string detail;
    bool ok = !presets.empty();
    for (const auto& name : presets) {
        const experiment_config c = load_experiment(config_dir / name);
        const auto a = fresh("c8_" + name + "_a");
        const auto b = fresh("c8_" + name + "_b");
        cmd_run(c, a, {true});
        cmd_run(c, b, {true});
        std::string why;
        const bool same = same_bundle(a, b, why);
        ok = ok && same;
        detail += name + (same ? " run ok; " : " run " + why + "; ");
    }
    if (!metalearn_dir.empty()) {
        const auto again = fresh("c8_metalearn");
        cmd_metalearn(load_experiment(config_dir / "henon-metalearn.json"), again);
        std::string why;
        const bool same = same_bundle(metalearn_dir, again, why);
        ok = ok && same;
        detail += std::string{"henon-metalearn.json metalearn "} + (same ? "ok; " : why + "; ");
    } else {
        ok = false;
        detail += "metalearn bundle missing; ";
    }
    if (!sweep_dir.empty()) {
        const auto again = fresh("c8_sweep");
        cmd_sweep(load_experiment(config_dir / "mg-er.json"), again, 6);
        std::string why;
        const bool same = same_bundle(sweep_dir, again, why);
        ok = ok && same;
        detail += std::string{"mg-er.json sweep "} + (same ? "ok" : why);
    } else {
        ok = false;
        detail += "sweep bundle missing";
    }
    return {ok, std::to_string(presets.size()) + " presets re-run with the same seed: " + detail};
}

}  // namespace

int main()
{
    fs::remove_all(work);
    fs::create_directories(work);
    guarded(1, criterion_1);
    guarded(2, criterion_2);
    guarded(3, criterion_3);
    guarded(4, criterion_4);
    guarded(5, criterion_5);
    guarded(6, criterion_6);
    guarded(7, criterion_7);
    guarded(8, criterion_8);
    std::cout << "criterion 9: EXCLUDED  energy, power and throughput figures need physical neuromorphic hardware"
              << std::endl;
    fs::remove_all(work);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
