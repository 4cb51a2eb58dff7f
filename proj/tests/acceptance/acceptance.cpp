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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is 1 when a
// criterion fails that was not named with --allow-fail.

#include "ambient/experiment.hpp"
#include "oracles.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

using namespace ambient;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

ExperimentConfig base_config()
{
    ExperimentConfig cfg;
    cfg.threads = 1;
    return cfg;
}

std::vector<ReflectiveSurface> perceived_list(const ExperimentConfig& cfg, const std::vector<ReflectiveSurface>& truth,
                                              const UcaSpec& array, int k, BeamwidthCache& cache)
{
    const auto targets = sense_room(truth, SensingSetup{array, k, cfg.eta, cfg.wavelength()}, cache);
    const PerceptionParams params{cfg.eta, cfg.zeta, array.radius, cfg.orthogonality_eps, cfg.least_squares};
    return perceive(targets, cache.probe_widths(array, k), cfg.scene.materials, params).all_surfaces();
}

// 1. Benchmark channel against an independently built one, zero position error.
Outcome oracle_equivalence()
{
    const auto start = Clock::now();
    ExperimentConfig cfg = base_config();
    BeamwidthCache cache;
    double worst = 0.0;
    int channels = 0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const TrialDraw draw = draw_trial(cfg, trial);
        const auto truth_list = true_front_surfaces(draw.scene);
        const SurfaceSet true_set(truth_list);
        for (int n_t : {64, 256})
        {
            const UcaSpec array = UcaSpec::standard(n_t, cfg.wavelength());
            const ChannelContext ctx{array, &cache.table(array), cfg.eta};
            for (std::size_t m = 0; m < draw.ues.size(); ++m)
            {
                const UeTruth& ue = draw.ues[m];
                const Eigen::MatrixXcd ref =
                    oracle::channel(truth_list, ue.position, ue.orientation, ue.n_antennas, cache.table(array), cfg.eta);
                if (ref.squaredNorm() == 0.0)
                    continue;
                std::mt19937_64 rng(draw.error_seeds[m]);
                const UeEstimate est = inject_position_error(ue, 0.0, rng);
                const auto paths = enumerate_paths(true_set, est, ctx);
                const UlaSpec ula{ue.n_antennas, cfg.wavelength(), ue.orientation};
                const ComplexMatrix h = reconstruct_channel(paths, ula, array, FlagMode::Indicator);
                worst = std::max(worst, (h - ref).squaredNorm() / ref.squaredNorm());
                ++channels;
            }
        }
    }
    // The sweep path with the ideal scheme must report exactly the same.
    cfg.schemes = {Scheme::ICr};
    cfg.sigma_e_sq = {0.0};
    cfg.antennas = {64};
    cfg.beams = {256};
    cfg.trials = 100;
    double sweep_worst = 0.0;
    for (const auto& r : run_nmse_sweep(cfg, 1))
        sweep_worst = std::max(sweep_worst, r.nmse);
    const double elapsed = seconds_since(start);
    return {worst < 1e-10 && sweep_worst < 1e-10 && elapsed < 60.0,
            fmt("max NMSE vs independent channel %.3g over %d channels; sweep I-CR NMSE %.3g; %.1f s", worst,
                channels, sweep_worst, elapsed)};
}

// 2. Path indicators against brute-force segment intersection.
Outcome path_existence()
{
    ExperimentConfig cfg = base_config();
    BeamwidthCache cache;
    const UcaSpec array = UcaSpec::standard(64, cfg.wavelength());
    long pairs = 0;
    long indicators = 0;
    long mismatches = 0;
    long perceived_pairs = 0;
    auto check = [&](const std::vector<ReflectiveSurface>& list, Point2 ue) {
        const SurfaceSet set(list);
        ++indicators;
        mismatches += los_existence(set, ue) != oracle::los(list, ue);
        for (std::size_t l = 0; l < list.size(); ++l)
        {
            if (list[l].kind != SurfaceKind::Visible)
                continue;
            ++indicators;
            mismatches += nlos_existence(set, l, ue) != oracle::nlos(list, l, ue);
        }
    };
    std::mt19937_64 rng(20240611);
    for (int scene_no = 0; pairs < 100000; ++scene_no)
    {
        const Scene scene = generate_scene(cfg.scene, rng());
        const auto truth = true_front_surfaces(scene);
        for (int m = 0; m < 10; ++m, ++pairs)
            check(truth, place_ue(scene, 32, rng).position);
        if (scene_no % 5 == 0)
        {
            const auto perceived = perceived_list(cfg, truth, array, 256, cache);
            for (int m = 0; m < 10; ++m, ++perceived_pairs)
                check(perceived, place_ue(scene, 32, rng).position);
        }
    }
    return {mismatches == 0,
            fmt("%ld true-scene pairs + %ld perceived-scene pairs, %ld indicators, %ld disagreements", pairs,
                perceived_pairs, indicators, mismatches)};
}

// 3. Reflection-model energy bound and the diffuse normalization.
Outcome conservation()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double half_pi = std::numbers::pi / 2.0;
    long violations = 0;
    double worst_ratio = 0.0;
    double worst_alpha = 0.0;
    double worst_terms = 0.0;
    for (int i = 0; i < 100000; ++i)
    {
        ReflectionGeometry g;
        g.phi_in = (2.0 * u(rng) - 1.0) * half_pi * 0.999;
        g.phi_r = (2.0 * u(rng) - 1.0) * half_pi * 0.999;
        g.d_t = std::exp(std::log(0.01) + u(rng) * std::log(5e3));
        g.d_r = std::exp(std::log(0.01) + u(rng) * std::log(5e3));
        g.beamwidth = 1e-3 + u(rng) * 1.5;
        g.aperture = std::exp(std::log(1e-3) + u(rng) * std::log(1e3));
        g.eta = 0.01 + 0.98 * u(rng);
        // Physical materials reflect no more than they receive.
        const double rs = u(rng);
        const double rd = (1.0 - rs) * u(rng);
        const Material m{1, rs, rd, 2.0 * std::numbers::pi * u(rng)};
        const double s = specular_power_fraction(g, m);
        const double d = diffuse_power_fraction(g, m);
        violations += !(s >= 0.0 && d >= 0.0 && s + d <= g.eta * (1.0 + 1e-12));
        worst_ratio = std::max(worst_ratio, (s + d) / g.eta);
        const double alpha_sq = std::norm(reflection_coefficient(g, m, 0.005));
        worst_alpha = std::max(worst_alpha, std::abs(alpha_sq - (s + d)));
        const auto ref = oracle::reflection_terms(g.phi_in, g.phi_r, g.d_t, g.d_r, g.beamwidth, g.aperture, g.eta,
                                                  rs, rd);
        worst_terms = std::max({worst_terms, std::abs(ref.specular - s), std::abs(ref.diffuse - d)});
    }
    // c_n solves c_n * integral(cos) = 1 over the half space.
    const double cos_integral =
        oracle::integrate([](double phi) { return std::cos(phi); }, -half_pi, half_pi);
    const double c_n = 1.0 / cos_integral;
    const bool pass = violations == 0 && std::abs(c_n - 0.5) < 1e-10 && worst_alpha < 1e-12 && worst_terms < 1e-10;
    return {pass, fmt("10^5 draws: %ld bound violations, max (Ps+Pd)/eta %.6f, max ||alpha|^2 - sum| %.2g, "
                      "max gap to term-wise oracle %.2g; quadrature c_n = %.15f",
                      violations, worst_ratio, worst_alpha, worst_terms, c_n)};
}

// Star-shaped room around the AP, one material per wall.
std::vector<ReflectiveSurface> star_room(std::mt19937_64& rng, const MaterialTable& table)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int walls = 3 + static_cast<int>(u(rng) * 4.0);
    std::vector<double> angles;
    const double gap = 2.0 * std::numbers::pi / walls;
    const double phase = u(rng) * 2.0 * std::numbers::pi;
    for (int i = 0; i < walls; ++i)
        angles.push_back(phase + gap * (i + 0.3 + 0.4 * u(rng)));
    std::vector<Point2> corners;
    for (double a : angles)
    {
        const double r = 3.0 + 9.0 * u(rng);
        corners.push_back({r * std::cos(a), r * std::sin(a)});
    }
    std::vector<std::size_t> rows(table.size());
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::vector<ReflectiveSurface> out;
    for (int i = 0; i < walls; ++i)
        out.push_back({Segment2::make(corners[i], corners[(i + 1) % walls]), table.rows()[rows[i]],
                       SurfaceKind::Visible});
    return out;
}

// 4. Clustering soundness and the residual threshold.
Outcome clustering()
{
    ExperimentConfig cfg = base_config();
    const MaterialTable& table = cfg.scene.materials;
    BeamwidthCache cache;
    std::mt19937_64 rng(404);
    long targets_checked = 0;
    long misclustered = 0;
    long mislabelled = 0;
    for (int room = 0; room < 300; ++room)
    {
        const auto walls = star_room(rng, table);
        for (int n_t : {64, 256})
        {
            const UcaSpec array = UcaSpec::standard(n_t, cfg.wavelength());
            for (int k : {256, 512, 1024})
            {
                const auto targets = sense_room(walls, SensingSetup{array, k, cfg.eta, cfg.wavelength()}, cache);
                const PerceptionParams params{cfg.eta, cfg.zeta, array.radius, cfg.orthogonality_eps, false};
                const auto clusters = cluster_targets(targets, cache.probe_widths(array, k), table, params);
                for (const auto& c : clusters)
                {
                    std::map<std::size_t, int> votes;
                    for (std::size_t i : c.members)
                        ++votes[oracle::first_hit(walls, targets[i].theta)->surface];
                    const auto majority =
                        std::max_element(votes.begin(), votes.end(),
                                         [](const auto& a, const auto& b) { return a.second < b.second; });
                    targets_checked += static_cast<long>(c.members.size());
                    misclustered += static_cast<long>(c.members.size()) - majority->second;
                    if (table.rows()[c.label].index != walls[majority->first].material.index)
                        mislabelled += static_cast<long>(c.members.size());
                }
            }
        }
    }

    // Reflectance lookups with incidence off by up to one beam spacing.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const UcaSpec array = UcaSpec::standard(128, cfg.wavelength());
    const double width = cache.probe_widths(array, 512).front();
    const std::vector<double> zetas{5e-6, 5e-7, 5e-8};
    std::vector<long> wrong(zetas.size(), 0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
    {
        const double tau = (0.3 + 15.0 * u(rng)) / kSpeedOfLight;
        const double phi = (2.0 * u(rng) - 1.0) * 1.4;
        const std::size_t row = static_cast<std::size_t>(u(rng) * table.size()) % table.size();
        const auto g = monostatic_geometry(tau, phi, width, array.radius, cfg.eta);
        const double alpha_sq = std::norm(reflection_coefficient(g, table.rows()[row], cfg.wavelength()));
        const double seen = phi + (2.0 * u(rng) - 1.0) * 2.0 * std::numbers::pi / 512.0;
        for (std::size_t z = 0; z < zetas.size(); ++z)
        {
            const auto match =
                estimate_reflectance(tau, seen, alpha_sq, table, cfg.eta, zetas[z], width, array.radius);
            wrong[z] += match && match->row != row;
        }
    }
    const bool monotone = wrong[0] >= wrong[1] && wrong[1] >= wrong[2];
    return {misclustered == 0 && mislabelled == 0 && monotone,
            fmt("%ld targets in 1800 exact-echo sweeps: %ld misclustered, %ld mislabelled; wrong-material rate "
                "at zeta 5e-6/5e-7/5e-8 = %.4f/%.4f/%.4f",
                targets_checked, misclustered, mislabelled, double(wrong[0]) / draws, double(wrong[1]) / draws,
                double(wrong[2]) / draws)};
}

using NmseKey = std::tuple<Scheme, int, int, double>;

std::map<NmseKey, double> by_cell(const std::vector<NmseRecord>& records)
{
    std::map<NmseKey, double> out;
    for (const auto& r : records)
        out[{r.scheme, r.n_t, r.k, r.sigma_e_sq}] = r.nmse;
    return out;
}

// 5. NMSE trends in N_T and K at zero position error.
Outcome antenna_and_beam_trends()
{
    const auto start = Clock::now();
    ExperimentConfig cfg = base_config();
    cfg.antennas = {64, 128, 256};
    cfg.beams = {256, 512, 1024};
    cfg.sigma_e_sq = {0.0};
    cfg.trials = 200;
    const auto cells = by_cell(run_nmse_sweep(cfg, 1));
    int breaks = 0;
    std::ostringstream worst;
    for (Scheme s : cfg.schemes)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j + 1 < 3; ++j)
            {
                // Along N_T at fixed K, then along K at fixed N_T.
                if (!(cells.at({s, cfg.antennas[j + 1], cfg.beams[i], 0.0}) < cells.at({s, cfg.antennas[j], cfg.beams[i], 0.0})))
                    ++breaks;
                if (!(cells.at({s, cfg.antennas[i], cfg.beams[j + 1], 0.0}) < cells.at({s, cfg.antennas[i], cfg.beams[j], 0.0})))
                    ++breaks;
            }
    int order = 0;
    for (int n : cfg.antennas)
        for (int k : cfg.beams)
            order += !(cells.at({Scheme::ApCrf, n, k, 0.0}) < cells.at({Scheme::ApCr, n, k, 0.0}));
    const double elapsed = seconds_since(start);
    return {breaks == 0 && order == 0 && elapsed < 1800.0,
            fmt("AP-CR %.3f -> %.3f, AP-CRF %.3f -> %.3f (N_T=64,K=256 -> N_T=256,K=1024); %d monotonicity "
                "breaks, %d cells with AP-CRF >= AP-CR; %.1f s",
                cells.at({Scheme::ApCr, 64, 256, 0.0}), cells.at({Scheme::ApCr, 256, 1024, 0.0}),
                cells.at({Scheme::ApCrf, 64, 256, 0.0}), cells.at({Scheme::ApCrf, 256, 1024, 0.0}), breaks, order,
                elapsed)};
}

// 6. NMSE growth in the position error and the antenna-count crossover.
Outcome position_error_trend()
{
    ExperimentConfig cfg = base_config();
    cfg.antennas = {64, 256};
    cfg.beams = {512};
    cfg.trials = 200;
    const auto cells = by_cell(run_nmse_sweep(cfg, 1));
    int breaks = 0;
    for (Scheme s : cfg.schemes)
        for (int n : cfg.antennas)
            for (std::size_t e = 0; e + 1 < cfg.sigma_e_sq.size(); ++e)
                breaks += !(cells.at({s, n, 512, cfg.sigma_e_sq[e + 1]}) > cells.at({s, n, 512, cfg.sigma_e_sq[e]}));
    double crossover = -1.0;
    for (double e : cfg.sigma_e_sq)
        if (e > 0.0004 && cells.at({Scheme::ApCr, 64, 512, e}) < cells.at({Scheme::ApCr, 256, 512, e}))
        {
            crossover = e;
            break;
        }
    return {breaks == 0 && crossover > 0.0,
            fmt("%d monotonicity breaks; first AP-CR crossover (N_T=64 below N_T=256) at sigma_e^2 = %g", breaks,
                crossover)};
}

// 7. Rate anchors at K = 512.
Outcome rate_anchors()
{
    ExperimentConfig cfg = base_config();
    cfg.antennas = {64, 256};
    cfg.beams = {512};
    cfg.sigma_e_sq = {0.0, 0.001};
    cfg.schemes = {Scheme::ICr, Scheme::ApCr, Scheme::ApCrf};
    cfg.trials = 200;
    std::map<std::tuple<Scheme, bool, int, double, double>, double> rate;
    for (const auto& r : run_rate_sweep(cfg, 1))
        rate[{r.scheme, r.approx, r.n_t, r.sigma_e_sq, r.snr_db}] = r.mean_rate;
    const double top = cfg.snr_db.back();
    auto drop = [&](int n) {
        const double before = rate[{Scheme::ApCrf, false, n, 0.0, top}];
        return (before - rate[{Scheme::ApCrf, false, n, 0.001, top}]) / before;
    };
    const double drop256 = drop(256);
    const double drop64 = drop(64);
    double ideal_gap = 0.0;
    double approx_gap = 0.0;
    for (int n : cfg.antennas)
        for (double snr : cfg.snr_db)
        {
            const double sim = rate[{Scheme::ApCrf, false, n, 0.0, snr}];
            ideal_gap = std::max(ideal_gap, std::abs(sim - rate[{Scheme::ICr, false, n, 0.0, snr}]) /
                                                rate[{Scheme::ICr, false, n, 0.0, snr}]);
            approx_gap = std::max(approx_gap, std::abs(rate[{Scheme::ApCrf, true, n, 0.0, snr}] - sim) / sim);
        }
    const bool pass = std::abs(drop256 - 0.20) <= 0.08 && std::abs(drop64 - 0.04) <= 0.04 && ideal_gap < 0.05 &&
                      approx_gap < 0.05;
    return {pass, fmt("AP-CRF drop at %g dB: N_T=256 %.1f%%, N_T=64 %.1f%%; max |AP-CRF - I-CR| %.2f%%; "
                      "max |approx - AP-CRF| %.2f%%",
                      top, 100.0 * drop256, 100.0 * drop64, 100.0 * ideal_gap, 100.0 * approx_gap)};
}

// 8. Byte-identical CSVs across repeated runs and thread counts.
Outcome determinism()
{
    ExperimentConfig cfg = base_config();
    cfg.antennas = {64, 128};
    cfg.beams = {256};
    cfg.sigma_e_sq = {0.0, 0.002};
    cfg.schemes = {Scheme::ApCr, Scheme::ApCrf, Scheme::ICr};
    cfg.trials = 24;
    auto csvs = [&](int threads) {
        std::ostringstream nmse;
        std::ostringstream rate;
        write_nmse_csv(nmse, run_nmse_sweep(cfg, threads));
        write_rate_csv(rate, run_rate_sweep(cfg, threads));
        return nmse.str() + rate.str();
    };
    const std::string first = csvs(1);
    const std::string again = csvs(1);
    const std::string threaded = csvs(4);
    return {first == again && first == threaded,
            fmt("%zu-byte output; repeat %s, 4 threads %s", first.size(), first == again ? "identical" : "differs",
                first == threaded ? "identical" : "differs")};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria run"};
    std::vector<int> allowed;
    app.add_option("--allow-fail", allowed, "criterion numbers whose FAIL does not change the exit status")
        ->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);
    const std::set<int> tolerated(allowed.begin(), allowed.end());

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"path existence vs brute force", path_existence},
        {"reflection energy bound", conservation},
        {"clustering soundness", clustering},
        {"NMSE trend in N_T and K", antenna_and_beam_trends},
        {"NMSE trend in position error", position_error_trend},
        {"rate anchors", rate_anchors},
        {"determinism", determinism},
    };
    bool all = true;
    std::vector<int> tolerated_failures;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const int number = static_cast<int>(i) + 1;
        if (!o.pass && tolerated.contains(number))
            tolerated_failures.push_back(number);
        else
            all = all && o.pass;
        std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL")
                  << " - " << o.detail << std::endl;
    }
    for (int n : tolerated_failures)
        std::cout << "note: criterion " << n << " failed but is listed with --allow-fail" << std::endl;
    return all ? 0 : 1;
}
