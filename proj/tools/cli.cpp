// SPDX-License-Identifier: Apache-2.0
//
// ambientsim - mmWave ambient perception and channel reconstruction simulator
// Copyright (C) 2026 The ambientsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include "ambient/errors.hpp"
#include "ambient/experiment.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

namespace ambientsim
{
namespace
{

namespace fs = std::filesystem;
using namespace ambient;

struct Options
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::optional<int> trials;
    std::optional<int> threads;
    std::string scene_file;
};

enum class Stage
{
    Sense,
    Perceive,
    Reconstruct
};

ExperimentConfig load(const Options& opt)
{
    ExperimentConfig cfg = opt.config.empty() ? ExperimentConfig{} : load_config(opt.config);
    if (opt.seed)
        cfg.seed = *opt.seed;
    if (opt.trials)
        cfg.trials = *opt.trials;
    if (opt.threads)
        cfg.threads = *opt.threads;
    cfg.validate();
    return cfg;
}

std::ofstream open_out(const fs::path& dir, const std::string& name)
{
    fs::create_directories(dir);
    std::ofstream file(dir / name);
    if (!file)
        throw ConfigError("cannot write " + (dir / name).string());
    return file;
}

// Single-scene pipeline on the first N_T and K of the sweep lists.
void run_pipeline(const ExperimentConfig& cfg, const TrialDraw& draw, Stage stage, const fs::path& dir,
                  std::ostream& out)
{
    const int n_t = cfg.antennas.front();
    const int k = cfg.beams.front();
    const UcaSpec array = UcaSpec::standard(n_t, cfg.wavelength());
    BeamwidthCache cache;
    const auto truth_list = true_front_surfaces(draw.scene);

    {
        auto file = open_out(dir, "scene.txt");
        write_scene(file, draw.scene);
    }
    const SensingSetup setup{array, k, cfg.eta, cfg.wavelength()};
    const auto targets = sense_room(truth_list, setup, cache);
    {
        auto file = open_out(dir, "targets.csv");
        write_targets_csv(file, targets);
    }
    const auto valid = std::count_if(targets.begin(), targets.end(), [](const Target& t) { return t.valid; });
    out << "objects=" << draw.scene.objects.size() << " N_T=" << n_t << " K=" << k << " valid_targets=" << valid
        << '\n';
    if (stage == Stage::Sense)
        return;

    const PerceptionParams params{cfg.eta, cfg.zeta, array.radius, cfg.orthogonality_eps, cfg.least_squares};
    const PerceptionResult perception = perceive(targets, cache.probe_widths(array, k), cfg.scene.materials, params);
    {
        auto file = open_out(dir, "perception.txt");
        write_perception(file, perception);
    }
    out << "clusters=" << perception.clusters.size() << " visible=" << perception.visible.size()
        << " supplementary=" << perception.supplementary.size() << '\n';
    if (stage == Stage::Perceive)
        return;

    const SurfaceSet true_set(truth_list);
    const SurfaceSet perceived(perception.all_surfaces());
    const ChannelContext ctx{array, &cache.table(array), cfg.eta};
    const double sigma_e_sq = cfg.sigma_e_sq.front();
    auto summary = open_out(dir, "summary.csv");
    summary << "ue,x_m,y_m,scheme,nmse\n" << std::setprecision(12);
    for (std::size_t m = 0; m < draw.ues.size(); ++m)
    {
        const UeTruth& ue = draw.ues[m];
        const UlaSpec ula{ue.n_antennas, cfg.wavelength(), ue.orientation};
        const TruthChannel truth = ground_truth_channel(true_set, ue, ctx);
        {
            auto file = open_out(dir, "ue" + std::to_string(m) + "_truth_paths.csv");
            write_paths_csv(file, truth.paths);
        }
        std::mt19937_64 rng(draw.error_seeds[m]);
        const UeEstimate est = inject_position_error(ue, sigma_e_sq, rng);
        for (Scheme scheme : cfg.schemes)
        {
            std::vector<Path> paths = enumerate_paths(scheme == Scheme::ICr ? true_set : perceived, est, ctx);
            compute_feedback(paths, truth.paths, ula);
            {
                auto file = open_out(dir, "ue" + std::to_string(m) + "_" + scheme_name(scheme) + "_paths.csv");
                write_paths_csv(file, paths);
            }
            const FlagMode mode = scheme == Scheme::ApCrf ? FlagMode::Feedback : FlagMode::Indicator;
            const ComplexMatrix h = reconstruct_channel(paths, ula, array, mode);
            summary << m << ',' << ue.position.x << ',' << ue.position.y << ',' << scheme_name(scheme) << ',';
            if (truth.is_zero())
                summary << "nan\n";
            else
                summary << (h - truth.h).squaredNorm() / truth.h.squaredNorm() << '\n';
        }
    }
    out << "wrote " << draw.ues.size() << " UEs to " << (dir / "summary.csv").string() << '\n';
}

void write_sweep_files(const fs::path& dir, const std::string& stem, const ExperimentConfig& cfg,
                       const auto& records, auto writer)
{
    auto csv = open_out(dir, stem + ".csv");
    writer(csv, records);
    auto meta = open_out(dir, stem + ".meta.txt");
    write_metadata(meta, cfg);
}

int dispatch(const std::string& command, const Options& opt, std::ostream& out)
{
    const ExperimentConfig cfg = load(opt);
    const fs::path dir(opt.out);
    if (command == "sense" || command == "perceive" || command == "reconstruct")
    {
        const Stage stage = command == "sense" ? Stage::Sense
                            : command == "perceive" ? Stage::Perceive
                                                    : Stage::Reconstruct;
        run_pipeline(cfg, draw_trial(cfg, 0), stage, dir, out);
    }
    else if (command == "replay")
    {
        std::ifstream file(opt.scene_file);
        if (!file)
            throw ConfigError("cannot open scene file " + opt.scene_file);
        run_pipeline(cfg, draw_ues(cfg, read_scene(file, cfg.scene.materials)), Stage::Reconstruct, dir, out);
    }
    else if (command == "nmse-sweep")
    {
        const auto records = run_nmse_sweep(cfg, resolve_threads(cfg.threads));
        write_sweep_files(dir, "nmse", cfg, records, write_nmse_csv);
        out << "wrote " << records.size() << " records to " << (dir / "nmse.csv").string() << '\n';
    }
    else
    {
        const auto records = run_rate_sweep(cfg, resolve_threads(cfg.threads));
        write_sweep_files(dir, "rate", cfg, records, write_rate_csv);
        out << "wrote " << records.size() << " records to " << (dir / "rate.csv").string() << '\n';
    }
    return kExitOk;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Ambient-perception channel reconstruction simulator", "ambientsim"};
    Options opt;
    app.add_option("--config", opt.config, "key=value configuration file");
    app.add_option("--seed", opt.seed, "master seed");
    app.add_option("--out", opt.out, "output directory")->capture_default_str();
    app.add_option("--trials", opt.trials, "Monte Carlo trials per cell")->check(CLI::PositiveNumber);
    app.add_option("--threads", opt.threads, "worker threads (AMBIENTSIM_THREADS overrides)")
        ->check(CLI::NonNegativeNumber);
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands{
        {"sense", "generate a scene and probe it; writes scene.txt and targets.csv"},
        {"perceive", "sense, then cluster targets into surfaces; adds perception.txt"},
        {"reconstruct", "perceive, then reconstruct every UE channel; adds per-UE path files"},
        {"nmse-sweep", "Monte Carlo NMSE sweep; writes nmse.csv and nmse.meta.txt"},
        {"rate-sweep", "Monte Carlo downlink rate sweep; writes rate.csv and rate.meta.txt"},
        {"replay", "rerun the reconstruct pipeline on a saved scene file"},
    };
    for (const auto& [name, help] : commands)
    {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        if (name == "replay")
            sub->add_option("scene", opt.scene_file, "scene file written by sense")->required();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try
    {
        return dispatch(app.get_subcommands().front()->get_name(), opt, out);
    }
    catch (const ConfigError& e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const SimulationError& e)
    {
        err << "simulation error: " << e.what() << '\n';
        return kExitSimulation;
    }
    catch (const fs::filesystem_error& e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace ambientsim
