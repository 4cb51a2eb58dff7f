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

#pragma once

#include "ambient/comm.hpp"
#include "ambient/config.hpp"
#include "ambient/oracle.hpp"
#include "ambient/perception.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

namespace ambient
{

// Independent stream seed for trial i.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

// Adds N(0, sigma_e_sq) to each coordinate of the true position.
UeEstimate inject_position_error(const UeTruth& ue, double sigma_e_sq, std::mt19937_64& rng);

// Random inputs of one Monte Carlo trial. They do not depend on the sweep
// cell, so every cell sees the same scenes, UEs and error directions.
struct TrialDraw
{
    Scene scene;
    std::vector<UeTruth> ues;
    // Per-UE seed of the position-error stream.
    std::vector<std::uint64_t> error_seeds;
};

TrialDraw draw_trial(const ExperimentConfig& cfg, std::uint64_t trial);

// UE draws of a trial, seeded from the scene's own seed so a replayed scene
// gets the same UEs back.
TrialDraw draw_ues(const ExperimentConfig& cfg, Scene scene);

// Worker count: AMBIENTSIM_THREADS, else `requested`, else hardware concurrency.
int resolve_threads(int requested);

struct NmseRecord
{
    Scheme scheme = Scheme::ApCr;
    int n_t = 0;
    int k = 0;
    double sigma_e_sq = 0.0;
    double nmse = 0.0;
    double ci95 = 0.0;
    int n_valid_trials = 0;
};

struct RateRecord
{
    Scheme scheme = Scheme::ApCr;
    bool approx = false;
    int n_t = 0;
    int k = 0;
    double sigma_e_sq = 0.0;
    double snr_db = 0.0;
    double mean_rate = 0.0;
    double ci95 = 0.0;
};

std::vector<NmseRecord> run_nmse_sweep(const ExperimentConfig& cfg, int threads);
std::vector<RateRecord> run_rate_sweep(const ExperimentConfig& cfg, int threads);

// CSV headers: scheme,n_T,K,sigma_e_sq,nmse,ci95,n_valid_trials and
// scheme,n_T,K,sigma_e_sq,snr_db,mean_rate_bps,ci95_bps.
void write_nmse_csv(std::ostream& out, const std::vector<NmseRecord>& records);
void write_rate_csv(std::ostream& out, const std::vector<RateRecord>& records);

// Run notes written next to every sweep CSV.
void write_metadata(std::ostream& out, const ExperimentConfig& cfg);

} // namespace ambient
