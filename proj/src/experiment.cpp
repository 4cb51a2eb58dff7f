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

#include "ambient/experiment.hpp"

#include "ambient/errors.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

namespace ambient
{
namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Runs body(i) for i in [0, n) on `threads` workers; rethrows the first failure.
template <typename Body>
void parallel_for(int n, int threads, Body&& body)
{
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < n; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
            }
        }
    };
    const int count = std::max(1, std::min(threads, n));
    if (count == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < count; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
}

struct MeanCi
{
    double mean = 0.0;
    double ci95 = 0.0;
    int n = 0;
};

// Summation in trial order keeps the result independent of scheduling.
MeanCi summarize(const std::vector<double>& values)
{
    MeanCi out;
    out.n = static_cast<int>(values.size());
    if (values.empty())
        return out;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    out.mean = sum / out.n;
    if (out.n > 1)
    {
        double sq = 0.0;
        for (double v : values)
            sq += (v - out.mean) * (v - out.mean);
        out.ci95 = 1.96 * std::sqrt(sq / (out.n - 1) / out.n);
    }
    return out;
}

bool needs_perception(const ExperimentConfig& cfg)
{
    for (Scheme s : cfg.schemes)
        if (s != Scheme::ICr)
            return true;
    return false;
}

FlagMode flag_mode(Scheme s) { return s == Scheme::ApCrf ? FlagMode::Feedback : FlagMode::Indicator; }

// Everything that depends on the trial and the AP array size only.
struct ArrayStage
{
    UcaSpec array;
    ChannelContext ctx;
    std::vector<TruthChannel> truth;
    std::vector<UlaSpec> ue_arrays;
};

ArrayStage make_array_stage(const ExperimentConfig& cfg, const TrialDraw& draw, const SurfaceSet& true_set,
                            int n_t, BeamwidthCache& cache)
{
    ArrayStage st;
    st.array = UcaSpec::standard(n_t, cfg.wavelength());
    st.ctx = ChannelContext{st.array, &cache.table(st.array), cfg.eta};
    for (const auto& ue : draw.ues)
    {
        st.truth.push_back(ground_truth_channel(true_set, ue, st.ctx));
        st.ue_arrays.push_back(UlaSpec{ue.n_antennas, cfg.wavelength(), ue.orientation});
    }
    return st;
}

SurfaceSet perceived_surfaces(const ExperimentConfig& cfg, const std::vector<ReflectiveSurface>& truth_list,
                              const UcaSpec& array, int k, BeamwidthCache& cache)
{
    const SensingSetup setup{array, k, cfg.eta, cfg.wavelength()};
    const auto targets = sense_room(truth_list, setup, cache);
    const PerceptionParams params{cfg.eta, cfg.zeta, array.radius, cfg.orthogonality_eps, cfg.least_squares};
    return SurfaceSet(perceive(targets, cache.probe_widths(array, k), cfg.scene.materials, params).all_surfaces());
}

// Reconstructed paths of every UE for every configured scheme.
std::vector<std::vector<std::vector<Path>>> scheme_paths(const ExperimentConfig& cfg, const TrialDraw& draw,
                                                         const ArrayStage& st, const SurfaceSet& true_set,
                                                         const SurfaceSet* perceived, double sigma_e_sq)
{
    std::vector<std::vector<std::vector<Path>>> out(cfg.schemes.size(),
                                                    std::vector<std::vector<Path>>(draw.ues.size()));
    for (std::size_t m = 0; m < draw.ues.size(); ++m)
    {
        std::mt19937_64 rng(draw.error_seeds[m]);
        const UeEstimate est = inject_position_error(draw.ues[m], sigma_e_sq, rng);
        std::optional<std::vector<Path>> ap_paths;
        for (std::size_t s = 0; s < cfg.schemes.size(); ++s)
        {
            if (cfg.schemes[s] == Scheme::ICr)
            {
                out[s][m] = enumerate_paths(true_set, est, st.ctx);
                continue;
            }
            if (!ap_paths)
            {
                ap_paths = enumerate_paths(*perceived, est, st.ctx);
                compute_feedback(*ap_paths, st.truth[m].paths, st.ue_arrays[m]);
            }
            out[s][m] = *ap_paths;
        }
    }
    return out;
}

void warm_cache(const ExperimentConfig& cfg, BeamwidthCache& cache)
{
    for (int n : cfg.antennas)
    {
        const UcaSpec array = UcaSpec::standard(n, cfg.wavelength());
        cache.table(array);
        if (needs_perception(cfg))
            for (int k : cfg.beams)
                cache.probe_widths(array, k);
    }
}

} // namespace

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial)
{
    return splitmix64(splitmix64(master) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

UeEstimate inject_position_error(const UeTruth& ue, double sigma_e_sq, std::mt19937_64& rng)
{
    if (!(sigma_e_sq >= 0.0))
        throw ConfigError("position error variance must be non-negative");
    std::normal_distribution<double> unit(0.0, 1.0);
    const double sigma = std::sqrt(sigma_e_sq);
    const double dx = unit(rng);
    const double dy = unit(rng);
    return UeEstimate{{ue.position.x + sigma * dx, ue.position.y + sigma * dy}, ue.position, ue.n_antennas,
                      ue.orientation};
}

TrialDraw draw_trial(const ExperimentConfig& cfg, std::uint64_t trial)
{
    return draw_ues(cfg, generate_scene(cfg.scene, trial_seed(cfg.seed, trial)));
}

TrialDraw draw_ues(const ExperimentConfig& cfg, Scene scene)
{
    TrialDraw draw;
    draw.scene = std::move(scene);
    std::mt19937_64 rng(splitmix64(draw.scene.seed ^ 0x5ce9e5ULL));
    for (int m = 0; m < cfg.num_ues; ++m)
    {
        draw.ues.push_back(place_ue(draw.scene, cfg.ue_antennas, rng, cfg.scene.ap_clearance));
        draw.error_seeds.push_back(rng());
    }
    return draw;
}

int resolve_threads(int requested)
{
    if (const char* env = std::getenv("AMBIENTSIM_THREADS"))
    {
        try
        {
            const int n = std::stoi(env);
            if (n > 0)
                return n;
        }
        catch (const std::logic_error&)
        {
        }
        throw ConfigError(std::string("AMBIENTSIM_THREADS must be a positive integer, got '") + env + "'");
    }
    if (requested > 0)
        return requested;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<NmseRecord> run_nmse_sweep(const ExperimentConfig& cfg, int threads)
{
    cfg.validate();
    BeamwidthCache cache;
    warm_cache(cfg, cache);

    const std::size_t n_s = cfg.schemes.size();
    const std::size_t n_n = cfg.antennas.size();
    const std::size_t n_k = cfg.beams.size();
    const std::size_t n_e = cfg.sigma_e_sq.size();
    auto cell = [&](std::size_t s, std::size_t n, std::size_t k, std::size_t e) {
        return ((s * n_n + n) * n_k + k) * n_e + e;
    };
    const std::size_t n_cells = n_s * n_n * n_k * n_e;

    std::vector<std::vector<std::optional<double>>> per_trial(cfg.trials);
    parallel_for(cfg.trials, threads, [&](int trial) {
        auto& out = per_trial[trial];
        out.assign(n_cells, std::nullopt);
        const TrialDraw draw = draw_trial(cfg, static_cast<std::uint64_t>(trial));
        const auto truth_list = true_front_surfaces(draw.scene);
        const SurfaceSet true_set(truth_list);
        for (std::size_t n = 0; n < n_n; ++n)
        {
            const ArrayStage st = make_array_stage(cfg, draw, true_set, cfg.antennas[n], cache);
            for (std::size_t k = 0; k < n_k; ++k)
            {
                std::optional<SurfaceSet> perceived;
                if (needs_perception(cfg))
                    perceived = perceived_surfaces(cfg, truth_list, st.array, cfg.beams[k], cache);
                for (std::size_t e = 0; e < n_e; ++e)
                {
                    const auto paths = scheme_paths(cfg, draw, st, true_set, perceived ? &*perceived : nullptr,
                                                    cfg.sigma_e_sq[e]);
                    for (std::size_t s = 0; s < n_s; ++s)
                    {
                        double sum = 0.0;
                        bool any = false;
                        for (std::size_t m = 0; m < draw.ues.size(); ++m)
                        {
                            const ComplexMatrix& h = st.truth[m].h;
                            const double ref = h.squaredNorm();
                            if (ref == 0.0)
                                continue;
                            const ComplexMatrix est = reconstruct_channel(paths[s][m], st.ue_arrays[m], st.array,
                                                                          flag_mode(cfg.schemes[s]));
                            sum += (est - h).squaredNorm() / ref;
                            any = true;
                        }
                        if (any)
                            out[cell(s, n, k, e)] = sum;
                    }
                }
            }
        }
    });

    std::vector<NmseRecord> records;
    for (std::size_t s = 0; s < n_s; ++s)
        for (std::size_t n = 0; n < n_n; ++n)
            for (std::size_t k = 0; k < n_k; ++k)
                for (std::size_t e = 0; e < n_e; ++e)
                {
                    std::vector<double> values;
                    for (const auto& t : per_trial)
                        if (const auto& v = t[cell(s, n, k, e)])
                            values.push_back(*v);
                    const MeanCi stat = summarize(values);
                    records.push_back(NmseRecord{cfg.schemes[s], cfg.antennas[n], cfg.beams[k], cfg.sigma_e_sq[e],
                                                 stat.mean, stat.ci95, stat.n});
                }
    return records;
}

std::vector<RateRecord> run_rate_sweep(const ExperimentConfig& cfg, int threads)
{
    cfg.validate();
    BeamwidthCache cache;
    warm_cache(cfg, cache);

    const std::size_t n_s = cfg.schemes.size();
    const std::size_t n_n = cfg.antennas.size();
    const std::size_t n_k = cfg.beams.size();
    const std::size_t n_e = cfg.sigma_e_sq.size();
    auto cell = [&](std::size_t s, std::size_t n, std::size_t k, std::size_t e) {
        return ((s * n_n + n) * n_k + k) * n_e + e;
    };
    const std::size_t n_cells = n_s * n_n * n_k * n_e;

    std::vector<std::vector<std::vector<LinkGains>>> per_trial(cfg.trials);
    parallel_for(cfg.trials, threads, [&](int trial) {
        auto& out = per_trial[trial];
        out.assign(n_cells, {});
        const TrialDraw draw = draw_trial(cfg, static_cast<std::uint64_t>(trial));
        const auto truth_list = true_front_surfaces(draw.scene);
        const SurfaceSet true_set(truth_list);
        for (std::size_t n = 0; n < n_n; ++n)
        {
            const ArrayStage st = make_array_stage(cfg, draw, true_set, cfg.antennas[n], cache);
            std::vector<ComplexMatrix> truth_h;
            for (const auto& t : st.truth)
                truth_h.push_back(t.h);
            for (std::size_t k = 0; k < n_k; ++k)
            {
                std::optional<SurfaceSet> perceived;
                if (needs_perception(cfg))
                    perceived = perceived_surfaces(cfg, truth_list, st.array, cfg.beams[k], cache);
                for (std::size_t e = 0; e < n_e; ++e)
                {
                    const auto paths = scheme_paths(cfg, draw, st, true_set, perceived ? &*perceived : nullptr,
                                                    cfg.sigma_e_sq[e]);
                    for (std::size_t s = 0; s < n_s; ++s)
                        out[cell(s, n, k, e)] =
                            link_gains(paths[s], truth_h, st.ue_arrays, st.array, flag_mode(cfg.schemes[s]));
                }
            }
        }
    });

    std::vector<RateRecord> records;
    for (std::size_t s = 0; s < n_s; ++s)
        for (int approx = 0; approx < 2; ++approx)
            for (std::size_t n = 0; n < n_n; ++n)
                for (std::size_t k = 0; k < n_k; ++k)
                    for (std::size_t e = 0; e < n_e; ++e)
                        for (double snr : cfg.snr_db)
                        {
                            const LinkBudget budget{cfg.tx_power, cfg.tx_power / std::pow(10.0, snr / 10.0),
                                                    cfg.bandwidth};
                            std::vector<double> values;
                            for (const auto& t : per_trial)
                            {
                                const auto& gains = t[cell(s, n, k, e)];
                                double sum = 0.0;
                                for (const auto& g : gains)
                                {
                                    const LinkResult r = evaluate_link(g, budget);
                                    sum += approx ? r.approx_rate : r.rate;
                                }
                                values.push_back(sum / static_cast<double>(gains.size()));
                            }
                            const MeanCi stat = summarize(values);
                            records.push_back(RateRecord{cfg.schemes[s], approx == 1, cfg.antennas[n],
                                                         cfg.beams[k], cfg.sigma_e_sq[e], snr, stat.mean,
                                                         stat.ci95});
                        }
    return records;
}

void write_nmse_csv(std::ostream& out, const std::vector<NmseRecord>& records)
{
    out << "scheme,n_T,K,sigma_e_sq,nmse,ci95,n_valid_trials\n" << std::setprecision(12);
    for (const auto& r : records)
        out << scheme_name(r.scheme) << ',' << r.n_t << ',' << r.k << ',' << r.sigma_e_sq << ',' << r.nmse << ','
            << r.ci95 << ',' << r.n_valid_trials << '\n';
}

void write_rate_csv(std::ostream& out, const std::vector<RateRecord>& records)
{
    out << "scheme,n_T,K,sigma_e_sq,snr_db,mean_rate_bps,ci95_bps\n" << std::setprecision(12);
    for (const auto& r : records)
        out << scheme_name(r.scheme) << (r.approx ? "-approx" : "") << ',' << r.n_t << ',' << r.k << ','
            << r.sigma_e_sq << ',' << r.snr_db << ',' << r.mean_rate << ',' << r.ci95 << '\n';
}

void write_metadata(std::ostream& out, const ExperimentConfig& cfg)
{
    out << "# ambientsim run metadata\n"
        << "# benchmark channel: all true faces block, object backs included; single-bounce paths only\n"
        << "# NLoS existence also checks the AP to reflection point leg\n"
        << "# NMSE per trial: sum over UEs with nonzero benchmark channel, averaged over valid trials\n"
        << "# rates: per-trial mean over UEs (unserved UEs count as 0), SNR = P_T / sigma_n^2\n"
        << "# position errors share one standard-normal draw per (trial, UE) across all cells\n";
    write_config(out, cfg);
}

} // namespace ambient
